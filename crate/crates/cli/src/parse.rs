//! Expression syntax.
//!
//! ```text
//! program := ["alphabet" letters ";"] expr
//! expr    := shuf ("|" shuf)*
//! shuf    := inter (("<>" | "⧢") inter)*
//! inter   := atom ("&" atom)*
//! atom    := word | "ε" | "∅" | "{" [word ("," word)*] "}" ["*" | "+"]
//!          | "perm(" word ")" | "F(" letter "," n ["," n] ")"
//!          | "sh*(" expr ")" | "project(" expr "," "{" letters "}" ")"
//!          | "invproject(" expr ")" | "(" expr ")"
//! ```
//!
//! A word literal stands for its commutative closure. `{a,b}*` and `{a,b}+`
//! are `Γ*` and `Γ⁺`; `{ab,ba}` is a finite set of words.

use std::collections::BTreeSet;
use std::fmt;

use comlang::{Alphabet, Count};

/// Parsed expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    WordLit(String),
    SetLit(Vec<String>),
    Perm(String),
    Fcount(char, Count),
    Fmod(char, Count, Count),
    Star(Vec<char>),
    Plus(Vec<char>),
    Union(Box<Expr>, Box<Expr>),
    Intersect(Box<Expr>, Box<Expr>),
    Shuffle(Box<Expr>, Box<Expr>),
    IterShuffle(Box<Expr>),
    Project(Box<Expr>, Vec<char>),
    InvProject(Box<Expr>),
}

impl Expr {
    /// Every letter mentioned anywhere in the expression.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Expr::WordLit(w) | Expr::Perm(w) => out.extend(w.chars()),
            Expr::SetLit(ws) => out.extend(ws.iter().flat_map(|w| w.chars())),
            Expr::Fcount(a, _) | Expr::Fmod(a, _, _) => {
                out.insert(*a);
            }
            Expr::Star(g) | Expr::Plus(g) => out.extend(g.iter().copied()),
            Expr::Union(x, y) | Expr::Intersect(x, y) | Expr::Shuffle(x, y) => {
                x.collect_letters(out);
                y.collect_letters(out);
            }
            Expr::IterShuffle(x) | Expr::InvProject(x) => x.collect_letters(out),
            Expr::Project(x, keep) => {
                x.collect_letters(out);
                out.extend(keep.iter().copied());
            }
        }
    }
}

/// An expression with the alphabet declared in front of it, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub alphabet: Option<Alphabet>,
    pub expr: Expr,
}

/// Syntax error at a character offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.position, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Bar,
    Amp,
    Shuffle,
    Star,
    Plus,
    Epsilon,
    Empty,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "'{s}'"),
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::LBrace => "'{'",
            Tok::RBrace => "'}'",
            Tok::Comma => "','",
            Tok::Semi => "';'",
            Tok::Bar => "'|'",
            Tok::Amp => "'&'",
            Tok::Shuffle => "'<>'",
            Tok::Star => "'*'",
            Tok::Plus => "'+'",
            Tok::Epsilon => "'ε'",
            Tok::Empty => "'∅'",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '|' | '∪' => Tok::Bar,
            '&' | '∩' => Tok::Amp,
            '⧢' => Tok::Shuffle,
            '<' if chars.get(i + 1) == Some(&'>') => {
                out.push((i, Tok::Shuffle));
                i += 2;
                continue;
            }
            '*' => Tok::Star,
            '+' => Tok::Plus,
            'ε' => Tok::Epsilon,
            '∅' => Tok::Empty,
            c if c.is_alphanumeric() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') && chars[i] != 'ε' {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            c => {
                return Err(SyntaxError { position: i, message: format!("unexpected character '{c}'") });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    alphabet: Option<&'a Alphabet>,
}

/// Parses a program. Letters are checked against `declared` (or against an
/// `alphabet ...;` statement, which must agree with it).
pub fn parse_program(text: &str, declared: Option<&Alphabet>) -> Result<Program, SyntaxError> {
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser { toks, pos: 0, end, alphabet: None };
    let mut stated = None;
    if matches!(p.peek(), Some(Tok::Ident(s)) if s == "alphabet")
        && matches!(p.peek_at(1), Some(Tok::Ident(_)))
        && matches!(p.peek_at(2), Some(Tok::Semi))
    {
        p.pos += 1;
        let at = p.offset();
        let letters = p.ident()?;
        p.expect(Tok::Semi)?;
        let a = Alphabet::parse(&letters).map_err(|e| SyntaxError { position: at, message: e.to_string() })?;
        if let Some(d) = declared {
            if d != &a {
                return Err(SyntaxError {
                    position: at,
                    message: format!("alphabet statement {a} disagrees with --alphabet {d}"),
                });
            }
        }
        stated = Some(a);
    }
    let alphabet = stated.clone().or_else(|| declared.cloned());
    p.alphabet = alphabet.as_ref();
    let expr = p.expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected("end of input"));
    }
    Ok(Program { alphabet: stated, expr })
}

/// Parses an expression without an alphabet statement.
pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    parse_program(text, None).map(|p| p.expr)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.peek_at(0)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        let message = match self.peek() {
            Some(t) => format!("expected {wanted}, found {t}"),
            None => format!("expected {wanted}, found end of input"),
        };
        SyntaxError { position: self.offset(), message }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<(), SyntaxError> {
        if self.eat(&t) {
            Ok(())
        } else {
            let wanted = match t {
                Tok::RParen => "')' (unbalanced parentheses)".to_string(),
                other => other.to_string(),
            };
            Err(self.unexpected(&wanted))
        }
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("a word")),
        }
    }

    fn check_letters(&self, at: usize, s: &str) -> Result<(), SyntaxError> {
        if let Some(a) = self.alphabet {
            if let Some(c) = s.chars().find(|&c| a.index_of(c).is_none()) {
                return Err(SyntaxError { position: at, message: format!("unknown letter '{c}' (alphabet {a})") });
            }
        }
        Ok(())
    }

    fn word(&mut self) -> Result<String, SyntaxError> {
        let at = self.offset();
        if self.eat(&Tok::Epsilon) {
            return Ok(String::new());
        }
        let w = self.ident()?;
        self.check_letters(at, &w)?;
        Ok(w)
    }

    fn letter(&mut self) -> Result<char, SyntaxError> {
        let at = self.offset();
        let w = self.word()?;
        let mut it = w.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(SyntaxError { position: at, message: format!("expected a single letter, found '{w}'") }),
        }
    }

    fn number(&mut self) -> Result<Count, SyntaxError> {
        let at = self.offset();
        let s = self.ident().map_err(|_| self.unexpected("a number"))?;
        s.parse().map_err(|_| SyntaxError { position: at, message: format!("expected a number, found '{s}'") })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.shuf()?;
        while self.eat(&Tok::Bar) {
            e = Expr::Union(Box::new(e), Box::new(self.shuf()?));
        }
        Ok(e)
    }

    fn shuf(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.inter()?;
        while self.eat(&Tok::Shuffle) {
            e = Expr::Shuffle(Box::new(e), Box::new(self.inter()?));
        }
        Ok(e)
    }

    fn inter(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.atom()?;
        while self.eat(&Tok::Amp) {
            e = Expr::Intersect(Box::new(e), Box::new(self.atom()?));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Epsilon) => {
                self.pos += 1;
                Ok(Expr::WordLit(String::new()))
            }
            Some(Tok::Empty) => {
                self.pos += 1;
                Ok(Expr::SetLit(Vec::new()))
            }
            Some(Tok::LBrace) => self.set_literal(),
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match (name.as_str(), self.peek()) {
                    ("sh", Some(Tok::Star)) => {
                        self.pos += 1;
                        self.expect(Tok::LParen)?;
                        let e = self.expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::IterShuffle(Box::new(e)))
                    }
                    ("perm", Some(Tok::LParen)) => {
                        self.pos += 1;
                        let w = self.word()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Perm(w))
                    }
                    ("F", Some(Tok::LParen)) => self.f_set(at),
                    ("project", Some(Tok::LParen)) => {
                        self.pos += 1;
                        let e = self.expr()?;
                        self.expect(Tok::Comma)?;
                        let keep = self.letter_set()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::Project(Box::new(e), keep))
                    }
                    ("invproject", Some(Tok::LParen)) => {
                        self.pos += 1;
                        let e = self.expr()?;
                        self.expect(Tok::RParen)?;
                        Ok(Expr::InvProject(Box::new(e)))
                    }
                    (_, Some(Tok::LParen)) => Err(SyntaxError { position: at, message: format!("unknown function '{name}'") }),
                    _ => {
                        self.check_letters(at, &name)?;
                        Ok(Expr::WordLit(name))
                    }
                }
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn f_set(&mut self, at: usize) -> Result<Expr, SyntaxError> {
        self.expect(Tok::LParen)?;
        let a = self.letter()?;
        self.expect(Tok::Comma)?;
        let first = self.number()?;
        let e = if self.eat(&Tok::Comma) {
            let n = self.number()?;
            if n == 0 {
                return Err(SyntaxError { position: at, message: "modulus must be positive".into() });
            }
            if first >= n {
                return Err(SyntaxError { position: at, message: "residue must be < modulus".into() });
            }
            Expr::Fmod(a, first, n)
        } else {
            Expr::Fcount(a, first)
        };
        self.expect(Tok::RParen)?;
        Ok(e)
    }

    fn braced_words(&mut self) -> Result<Vec<String>, SyntaxError> {
        self.expect(Tok::LBrace)?;
        let mut items = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                items.push(self.word()?);
                if self.eat(&Tok::RBrace) {
                    break;
                }
                self.expect(Tok::Comma).map_err(|_| self.unexpected("',' or '}'"))?;
            }
        }
        Ok(items)
    }

    fn letter_set(&mut self) -> Result<Vec<char>, SyntaxError> {
        let at = self.offset();
        let items = self.braced_words()?;
        let mut letters = Vec::new();
        for w in items {
            let mut it = w.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => letters.push(c),
                _ => return Err(SyntaxError { position: at, message: format!("'{w}' is not a single letter") }),
            }
        }
        letters.sort_unstable();
        letters.dedup();
        Ok(letters)
    }

    fn set_literal(&mut self) -> Result<Expr, SyntaxError> {
        let start = self.pos;
        let items = self.braced_words()?;
        if matches!(self.peek(), Some(Tok::Star | Tok::Plus)) {
            let plus = self.peek() == Some(&Tok::Plus);
            self.pos = start;
            let letters = self.letter_set()?;
            self.pos += 1;
            return Ok(if plus { Expr::Plus(letters) } else { Expr::Star(letters) });
        }
        let mut items = items;
        items.sort();
        items.dedup();
        Ok(Expr::SetLit(items))
    }
}

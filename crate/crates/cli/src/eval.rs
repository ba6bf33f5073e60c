//! Evaluation of expressions to normal forms.

use comlang::closure::{closure_member, iterated_shuffle};
use comlang::{
    Alphabet, ClosureOutcome, Count, DiagonalPeriodic, DplUnion, Error, Generator, Limits, ParikhVector,
};

use crate::parse::Expr;
use crate::CliError;

/// The value of an expression.
///
/// Everything the algebra can normalize is `Regular`. Iterated shuffles
/// without a normal form, and Boolean or shuffle combinations involving
/// them, keep exact membership but nothing else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Regular(DplUnion),
    Closure { base: DplUnion, outcome: ClosureOutcome },
    Union(Box<Value>, Box<Value>),
    Intersect(Box<Value>, Box<Value>),
    Shuffle(Box<Value>, Box<Value>),
}

impl Value {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Value::Regular(u) => u.alphabet(),
            Value::Closure { base, .. } => base.alphabet(),
            Value::Union(x, _) | Value::Intersect(x, _) | Value::Shuffle(x, _) => x.alphabet(),
        }
    }

    pub fn as_regular(&self) -> Option<&DplUnion> {
        match self {
            Value::Regular(u) => Some(u),
            _ => None,
        }
    }

    /// Exact membership; fails only when the closure search is too large.
    pub fn member(&self, v: &ParikhVector) -> Result<bool, CliError> {
        match self {
            Value::Regular(u) => Ok(u.member(v)),
            Value::Closure { base, outcome } => match outcome {
                ClosureOutcome::Regular(u) => Ok(u.member(v)),
                _ => closure_member(base, v).ok_or_else(|| {
                    CliError::Resource(format!("closure membership search below {} is too large", v.render(base.alphabet())))
                }),
            },
            Value::Union(x, y) => Ok(x.member(v)? || y.member(v)?),
            Value::Intersect(x, y) => Ok(x.member(v)? && y.member(v)?),
            Value::Shuffle(x, y) => {
                for part in below(v) {
                    let rest = v.checked_sub(&part).expect("part lies below v");
                    if x.member(&part)? && y.member(&rest)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// `regular`, `non-regular` or `undecided`.
    pub fn status(&self) -> &'static str {
        match self {
            Value::Regular(_) => "regular",
            Value::Closure { outcome, .. } => outcome.status(),
            _ => "undecided",
        }
    }

    /// Verdict JSON for the `regular?` command.
    pub fn verdict_json(&self) -> serde_json::Value {
        match self {
            Value::Regular(u) => ClosureOutcome::Regular(u.clone()).to_json_value(),
            Value::Closure { outcome, .. } => outcome.to_json_value(),
            _ => serde_json::json!({
                "status": "undecided",
                "reason": "Boolean or shuffle combination of a closure without a normal form",
            }),
        }
    }

    fn require_regular(self, what: &str) -> Result<DplUnion, CliError> {
        match self {
            Value::Regular(u) => Ok(u),
            Value::Closure { outcome: ClosureOutcome::NonRegular { witness }, .. } => Err(CliError::Fragment(format!(
                "{what} of a non-regular iterated shuffle (criterion fails at letter '{witness}'); \
                 this needs a closure property for non-regular commutative languages"
            ))),
            Value::Closure { outcome: ClosureOutcome::Undecided { reason }, .. } => Err(CliError::Fragment(format!(
                "{what} of an iterated shuffle that is undecided by the implemented criteria ({reason}); \
                 this needs a regularity criterion for iterated shuffles of arbitrary commutative regular languages"
            ))),
            Value::Closure { outcome: ClosureOutcome::Regular(u), .. } => Ok(u),
            _ => Err(CliError::Fragment(format!(
                "{what} of a combination involving a closure without a normal form is outside the implemented fragment"
            ))),
        }
    }
}

fn below(v: &ParikhVector) -> Vec<ParikhVector> {
    let mut out = vec![ParikhVector::zero(v.dim())];
    for i in 0..v.dim() {
        let mut next = Vec::with_capacity(out.len() * (v.get(i) as usize + 1));
        for p in &out {
            for c in 0..=v.get(i) {
                let mut q = p.clone();
                q.set(i, c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn point(alphabet: &Alphabet, w: &str) -> Result<DiagonalPeriodic, CliError> {
    let word = alphabet.word(w)?;
    Ok(DiagonalPeriodic::point(&comlang::parikh::parikh(alphabet, &word)?))
}

fn generator(alphabet: &Alphabet, g: Generator) -> Result<DplUnion, CliError> {
    Ok(g.to_union(alphabet)?)
}

/// Evaluates `e` in a session over `alphabet`.
///
/// `project(x, {..})` yields a value over the kept letters, and operands
/// combined with it are read over the same letters; `invproject` lifts back
/// to the session alphabet.
pub fn eval(e: &Expr, alphabet: &Alphabet, limits: &Limits) -> Result<Value, CliError> {
    let sigma = natural_alphabet(e, alphabet)?.unwrap_or_else(|| alphabet.clone());
    eval_in(e, &sigma, alphabet, limits)
}

/// The alphabet forced on `e` by projections inside it, if any.
pub fn natural_alphabet(e: &Expr, session: &Alphabet) -> Result<Option<Alphabet>, CliError> {
    Ok(match e {
        Expr::Project(x, keep) => {
            let inner = natural_alphabet(x, session)?.unwrap_or_else(|| session.clone());
            Some(inner.restrict(inner.letter_set(keep.iter().copied())?))
        }
        Expr::InvProject(_) => Some(session.clone()),
        Expr::Union(x, y) | Expr::Intersect(x, y) | Expr::Shuffle(x, y) => {
            match (natural_alphabet(x, session)?, natural_alphabet(y, session)?) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::AlphabetMismatch { left: a.to_string(), right: b.to_string() }.into())
                }
                (a, b) => a.or(b),
            }
        }
        Expr::IterShuffle(x) => natural_alphabet(x, session)?,
        _ => None,
    })
}

fn eval_in(e: &Expr, sigma: &Alphabet, session: &Alphabet, limits: &Limits) -> Result<Value, CliError> {
    let regular = |u: DplUnion| Ok(Value::Regular(u));
    match e {
        Expr::WordLit(w) | Expr::Perm(w) => regular(DplUnion::new(sigma.clone(), vec![point(sigma, w)?])?),
        Expr::SetLit(ws) => {
            let terms = ws.iter().map(|w| point(sigma, w)).collect::<Result<Vec<_>, _>>()?;
            regular(DplUnion::new(sigma.clone(), terms)?)
        }
        Expr::Fcount(a, t) => regular(generator(sigma, Generator::fcount(*a, *t))?),
        Expr::Fmod(a, r, n) => regular(generator(sigma, Generator::fmod(*a, *r, *n))?),
        Expr::Star(g) => regular(generator(sigma, Generator::GammaStar(g.clone()))?),
        Expr::Plus(g) => regular(generator(sigma, Generator::GammaPlus(g.clone()))?),
        Expr::Union(x, y) => {
            let (x, y) = (eval_in(x, sigma, session, limits)?, eval_in(y, sigma, session, limits)?);
            same_alphabet(&x, &y)?;
            match (x, y) {
                (Value::Regular(a), Value::Regular(b)) => regular(a.union(&b)?),
                (x, y) => Ok(Value::Union(Box::new(x), Box::new(y))),
            }
        }
        Expr::Intersect(x, y) => {
            let (x, y) = (eval_in(x, sigma, session, limits)?, eval_in(y, sigma, session, limits)?);
            same_alphabet(&x, &y)?;
            match (x, y) {
                (Value::Regular(a), Value::Regular(b)) => regular(a.intersect(&b, limits)?),
                (x, y) => Ok(Value::Intersect(Box::new(x), Box::new(y))),
            }
        }
        Expr::Shuffle(x, y) => {
            let (x, y) = (eval_in(x, sigma, session, limits)?, eval_in(y, sigma, session, limits)?);
            same_alphabet(&x, &y)?;
            match (x, y) {
                (Value::Regular(a), Value::Regular(b)) => regular(a.shuffle(&b, limits)?),
                (x, y) => Ok(Value::Shuffle(Box::new(x), Box::new(y))),
            }
        }
        Expr::IterShuffle(x) => {
            let base = eval_in(x, sigma, session, limits)?.require_regular("iterated shuffle")?;
            match iterated_shuffle(&base, limits)? {
                ClosureOutcome::Regular(u) => regular(u),
                outcome => Ok(Value::Closure { base, outcome }),
            }
        }
        Expr::Project(x, keep) => {
            let inner_sigma = natural_alphabet(x, session)?.unwrap_or_else(|| session.clone());
            let inner = eval_in(x, &inner_sigma, session, limits)?.require_regular("projection")?;
            regular(inner.project(inner_sigma.letter_set(keep.iter().copied())?))
        }
        Expr::InvProject(x) => {
            let inner_sigma = natural_alphabet(x, session)?.unwrap_or_else(|| session.clone());
            let inner = eval_in(x, &inner_sigma, session, limits)?;
            let sub = inner.alphabet().clone();
            let u = inner.require_regular("inverse projection")?;
            if !sub.is_subalphabet_of(session) {
                return Err(Error::NotSubalphabet(sub.to_string(), session.to_string()).into());
            }
            regular(u.inverse_project(session)?)
        }
    }
}

fn same_alphabet(x: &Value, y: &Value) -> Result<(), CliError> {
    if x.alphabet() != y.alphabet() {
        return Err(Error::AlphabetMismatch { left: x.alphabet().to_string(), right: y.alphabet().to_string() }.into());
    }
    Ok(())
}

/// Vectors of `value` with coordinate sum at most `bound`.
pub fn enumerate(value: &Value, bound: Count) -> Result<comlang::VectorSet, CliError> {
    let alphabet = value.alphabet();
    let mut out = Vec::new();
    for v in alphabet.vectors_up_to(bound) {
        if value.member(&v)? {
            out.push(v);
        }
    }
    Ok(comlang::VectorSet::new(alphabet.clone(), out, bound))
}

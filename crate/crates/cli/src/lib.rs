//! Command-line front end for the `comlang` algebra.
//!
//! Expressions are parsed by [`parse`], evaluated by [`eval`] and answered by
//! the command functions in this module. Each error carries the process exit
//! code through [`CliError::exit_code`].

pub mod check;
pub mod eval;
pub mod parse;

use comlang::automata::dpl_to_dfa;
use comlang::{Alphabet, Count, Dfa, DplUnion, Error, Limits};
use thiserror::Error as ThisError;

pub use check::CheckReport;
pub use eval::Value;
pub use parse::{Expr, Program, SyntaxError};

/// Default bound for `check`.
pub const DEFAULT_BOUND: Count = 10;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Fragment(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("oracle mismatch: {}", .0.render())]
    Mismatch(CheckReport),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Input(_) => 2,
            CliError::Fragment(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Mismatch(_) => 5,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::UnknownLetter(_)
            | Error::DuplicateLetter(_)
            | Error::InvalidResidue { .. }
            | Error::ZeroModulus
            | Error::Format(_) => CliError::Input(msg),
            Error::AlphabetTooLarge { .. } | Error::Resource { .. } | Error::Overflow(_) => CliError::Resource(msg),
            Error::AlphabetMismatch { .. }
            | Error::NotSubalphabet(..)
            | Error::NotCommutative { .. }
            | Error::NotInPositiveClass(_)
            | Error::CriterionViolated(_)
            | Error::Incomparable(_) => CliError::Fragment(msg),
        }
    }
}

/// Settings shared by every command of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionConfig {
    /// Declared alphabet; when absent, the letters of the expression.
    pub alphabet: Option<Alphabet>,
    pub bound: Count,
    pub limits: Limits,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig { alphabet: None, bound: DEFAULT_BOUND, limits: Limits::default() }
    }
}

/// Output format of the `dfa` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DfaFormat {
    #[default]
    Json,
    Dot,
}

/// A parsed expression with its session alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    pub alphabet: Alphabet,
    pub expr: Expr,
    pub limits: Limits,
}

impl Session {
    pub fn open(text: &str, config: &SessionConfig) -> Result<Session, CliError> {
        let program = parse::parse_program(text, config.alphabet.as_ref())?;
        let alphabet = match program.alphabet.or_else(|| config.alphabet.clone()) {
            Some(a) => a,
            None => Alphabet::new(program.expr.letters())?,
        };
        Ok(Session { alphabet, expr: program.expr, limits: config.limits })
    }

    pub fn eval(&self) -> Result<Value, CliError> {
        eval::eval(&self.expr, &self.alphabet, &self.limits)
    }

    fn regular(&self, what: &str) -> Result<DplUnion, CliError> {
        let value = self.eval()?;
        match value {
            Value::Regular(u) => Ok(u),
            other => Err(CliError::Fragment(format!(
                "{what} needs a normal form, but the expression is {} by the implemented criteria",
                other.status()
            ))),
        }
    }
}

/// `normalize <expr>`: canonical JSON normal form.
pub fn normalize(text: &str, config: &SessionConfig) -> Result<String, CliError> {
    Ok(Session::open(text, config)?.regular("normalize")?.to_json_string())
}

/// `member <word> <expr>`.
pub fn member(word: &str, text: &str, config: &SessionConfig) -> Result<bool, CliError> {
    let session = Session::open(text, config)?;
    let value = session.eval()?;
    let alphabet = value.alphabet();
    let w = alphabet.word(word)?;
    value.member(&comlang::parikh::parikh(alphabet, &w)?)
}

/// `regular? <expr>`: verdict JSON with a `status` key.
pub fn regular(text: &str, config: &SessionConfig) -> Result<String, CliError> {
    Ok(Session::open(text, config)?.eval()?.verdict_json().to_string())
}

/// `dfa <expr>`: the compiled automaton.
pub fn dfa(text: &str, config: &SessionConfig, minimize: bool) -> Result<Dfa, CliError> {
    let session = Session::open(text, config)?;
    let d = dpl_to_dfa(&session.regular("dfa")?, &session.limits)?;
    Ok(if minimize { d.minimize() } else { d })
}

pub fn render_dfa(d: &Dfa, format: DfaFormat) -> String {
    match format {
        DfaFormat::Json => d.to_json_value().to_string(),
        DfaFormat::Dot => d.to_dot(),
    }
}

/// `check <expr> --bound N`: symbolic result against the brute-force
/// evaluator. A disagreement is an error with exit code 5.
pub fn check(text: &str, config: &SessionConfig) -> Result<CheckReport, CliError> {
    let session = Session::open(text, config)?;
    let value = session.eval()?;
    let report = check::check(&session.expr, &value, &session.alphabet, config.bound)?;
    if report.passed() {
        Ok(report)
    } else {
        Err(CliError::Mismatch(report))
    }
}

/// `report <expr>`: classification of the minimal automaton.
pub fn report(text: &str, config: &SessionConfig) -> Result<String, CliError> {
    let d = dfa(text, config, true)?;
    Ok(serde_json::to_string(&d.report()).expect("report serializes"))
}

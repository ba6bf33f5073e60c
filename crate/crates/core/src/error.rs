use thiserror::Error;

/// Errors raised by the language algebra.
///
/// Emptiness is never an error: empty intersections and empty unions are
/// ordinary values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(char),

    #[error("letter '{0}' appears twice in the alphabet")]
    DuplicateLetter(char),

    #[error("alphabets with more than {max} letters are not supported (got {got})")]
    AlphabetTooLarge { got: usize, max: usize },

    #[error("operands are over different alphabets ({left} vs {right})")]
    AlphabetMismatch { left: String, right: String },

    #[error("{0} is not a subalphabet of {1}")]
    NotSubalphabet(String, String),

    #[error("residue must be < modulus (got residue {residue}, modulus {modulus})")]
    InvalidResidue { residue: u64, modulus: u64 },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("{what} exceeds the limit of {limit} (needed {needed})")]
    Resource {
        what: &'static str,
        limit: usize,
        needed: usize,
    },

    #[error("automaton is not commutative: delta({state}, {first}{second}) != delta({state}, {second}{first})")]
    NotCommutative {
        state: usize,
        first: char,
        second: char,
    },

    #[error("not in the positive class: {0}")]
    NotInPositiveClass(String),

    #[error("criterion violated: letter '{0}' occurs in the language but no word of the language lies in {0}+")]
    CriterionViolated(char),

    #[error("oracle sets are not comparable: {0}")]
    Incomparable(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("numeric overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

//! Commutative regular languages in diagonal-periodic normal form.
//!
//! A commutative language is determined by the Parikh vectors of its words.
//! This crate represents the languages closed under iterated shuffle as
//! finite unions of *diagonal periodic* terms, `⧢_{a∈Γ} a^{k_a}(a^{p_a})*`,
//! and provides:
//!
//! - [`unary`]: progressions, generalized CRT and sumset decomposition;
//! - [`dpl`]: union, intersection, shuffle, iterated shuffle and projection
//!   on [`DplUnion`];
//! - [`aperiodic`]: star-free languages as unions of `perm(u) ⧢ Γ*`;
//! - [`automata`]: compilation to DFAs, minimization, projection and the
//!   commutative/aperiodic/permutation predicates;
//! - [`regularity`]: the regularity criterion for iterated shuffles of
//!   finite languages and bounded Nerode evidence;
//! - [`closure`]: iterated shuffle of arbitrary finite unions of terms;
//! - [`oracle`]: brute-force Parikh-vector ground truth.
//!
//! The arithmetic layer is generic over the count type (any unsigned
//! primitive integer); the language layers use [`Count`].

pub mod aperiodic;
pub mod automata;
pub mod closure;
pub mod dpl;
pub mod error;
pub mod limits;
pub mod num;
pub mod oracle;
pub mod parikh;
pub mod regularity;
pub mod unary;

/// Letter counts, offsets and periods throughout the language layers.
pub type Count = u64;

pub type Progression = unary::Progression<Count>;
pub type Congruence = unary::Congruence<Count>;

pub use aperiodic::{AperiodicUnion, IntervalConstraint, PermShuffleTerm, UpperBound};
pub use automata::{AutomatonReport, Dfa};
pub use closure::ClosureOutcome;
pub use dpl::{Component, DiagonalPeriodic, DplUnion, Generator, PosBoolExpr};
pub use error::{Error, Result};
pub use limits::Limits;
pub use oracle::VectorSet;
pub use parikh::{Alphabet, LetterSet, ParikhVector, Word};
pub use regularity::{FiniteLang, NerodeEvidence, RegularityVerdict};

use std::collections::BTreeMap;

use super::{Component, DiagonalPeriodic, DplUnion};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parikh::{Alphabet, LetterSet};
use crate::{Count, Progression};

/// Generating languages of the positive class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `F(a, t)`: at least `t` occurrences of `a`.
    Fcount { letter: char, threshold: Count },
    /// `F(a, r, n)`: the count of `a` is `r` modulo `n`.
    Fmod { letter: char, residue: Count, modulus: Count },
    /// `Γ*`.
    GammaStar(Vec<char>),
    /// `Γ⁺`.
    GammaPlus(Vec<char>),
}

impl Generator {
    pub fn fcount(letter: char, threshold: Count) -> Self {
        Generator::Fcount { letter, threshold }
    }

    pub fn fmod(letter: char, residue: Count, modulus: Count) -> Self {
        Generator::Fmod { letter, residue, modulus }
    }

    pub fn validate(&self, alphabet: &Alphabet) -> Result<()> {
        match self {
            Generator::Fcount { letter, .. } => alphabet.try_index(*letter).map(|_| ()),
            Generator::Fmod { letter, residue, modulus } => {
                alphabet.try_index(*letter)?;
                check_residue(*residue, *modulus)
            }
            Generator::GammaStar(g) | Generator::GammaPlus(g) => alphabet.letter_set(g.iter().copied()).map(|_| ()),
        }
    }

    /// The generator as a union of terms over `alphabet`.
    pub fn to_union(&self, alphabet: &Alphabet) -> Result<DplUnion> {
        self.validate(alphabet)?;
        let dim = alphabet.len();
        let single = |i: usize, prog: Progression| {
            let mut components = vec![Component::any(); dim];
            components[i] = Component::Periodic(prog);
            DiagonalPeriodic::new(components)
        };
        let terms = match self {
            Generator::Fcount { letter, threshold } => {
                let i = alphabet.try_index(*letter)?;
                vec![single(i, Progression::new(*threshold, 1).expect("period 1"))]
            }
            Generator::Fmod { letter, residue, modulus } => {
                let i = alphabet.try_index(*letter)?;
                vec![single(i, Progression::new(*residue, *modulus).ok_or(Error::ZeroModulus)?)]
            }
            Generator::GammaStar(g) => {
                let set = alphabet.letter_set(g.iter().copied())?;
                vec![DiagonalPeriodic::star(dim, set)]
            }
            Generator::GammaPlus(g) => {
                let set = alphabet.letter_set(g.iter().copied())?;
                set.iter()
                    .map(|i| {
                        let mut t = DiagonalPeriodic::star(dim, set);
                        t.components[i] = Component::Periodic(Progression::new(1, 1).expect("period 1"));
                        t
                    })
                    .collect()
            }
        };
        DplUnion::new(alphabet.clone(), terms)
    }
}

fn check_residue(residue: Count, modulus: Count) -> Result<()> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    if residue >= modulus {
        return Err(Error::InvalidResidue { residue, modulus });
    }
    Ok(())
}

/// Positive boolean combinations of generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PosBoolExpr {
    Leaf(Generator),
    /// An empty union denotes `∅`.
    Union(Vec<PosBoolExpr>),
    /// An empty intersection denotes `Σ*`.
    Intersect(Vec<PosBoolExpr>),
}

impl PosBoolExpr {
    pub fn leaf(g: Generator) -> Self {
        PosBoolExpr::Leaf(g)
    }

    /// Whether only `F(a, t)` and `F(a, r, n)` leaves occur.
    pub fn is_f_only(&self) -> bool {
        match self {
            PosBoolExpr::Leaf(g) => matches!(g, Generator::Fcount { .. } | Generator::Fmod { .. }),
            PosBoolExpr::Union(xs) | PosBoolExpr::Intersect(xs) => xs.iter().all(PosBoolExpr::is_f_only),
        }
    }
}

impl DplUnion {
    /// Normal form of a positive boolean combination of generators.
    ///
    /// Intersections are distributed over unions; a [`Error::Resource`] error
    /// is raised when a distribution step would produce more than
    /// `limits.max_clauses` clauses.
    pub fn from_generators(alphabet: &Alphabet, expr: &PosBoolExpr, limits: &Limits) -> Result<DplUnion> {
        match expr {
            PosBoolExpr::Leaf(g) => g.to_union(alphabet),
            PosBoolExpr::Union(xs) => {
                let mut acc = DplUnion::empty(alphabet.clone());
                for x in xs {
                    acc = acc.union(&DplUnion::from_generators(alphabet, x, limits)?)?;
                }
                Ok(acc)
            }
            PosBoolExpr::Intersect(xs) => {
                let mut acc = DplUnion::full(alphabet.clone());
                for x in xs {
                    acc = acc.intersect(&DplUnion::from_generators(alphabet, x, limits)?, limits)?;
                }
                Ok(acc)
            }
        }
    }
}

/// Closed form of `⋂ F(a, t_a) ∩ ⋂ F(a, r_a, n_a) ∩ Γ*` as a single term.
///
/// Every letter gets offset `k_a` and period `p_a` from the per-letter case
/// table; letters outside `gamma` must admit count 0, otherwise the
/// intersection is empty and `None` is returned.
pub fn clause_closed_form(
    alphabet: &Alphabet,
    thresholds: &BTreeMap<char, Count>,
    moduli: &BTreeMap<char, (Count, Count)>,
    gamma: LetterSet,
) -> Result<Option<DiagonalPeriodic>> {
    for &c in thresholds.keys() {
        alphabet.try_index(c)?;
    }
    for (&c, &(r, n)) in moduli {
        alphabet.try_index(c)?;
        check_residue(r, n)?;
    }
    let mut components = Vec::with_capacity(alphabet.len());
    for (i, &c) in alphabet.letters().iter().enumerate() {
        let (k, p) = match (thresholds.get(&c), moduli.get(&c)) {
            (Some(&t), Some(&(r, n))) if t > r => (least_at_least(t, r, n), n),
            (Some(_), Some(&(r, n))) => (r, n),
            (None, Some(&(r, n))) => (r, n),
            (Some(&t), None) => (t, 1),
            (None, None) => (0, 1),
        };
        if gamma.contains(i) {
            components.push(Component::Periodic(Progression::new(k, p).expect("positive period")));
        } else if k == 0 {
            components.push(Component::Fixed(0));
        } else {
            return Ok(None);
        }
    }
    Ok(Some(DiagonalPeriodic::new(components)))
}

/// Least `x >= t` with `x ≡ r (mod n)`, for `t > r`.
fn least_at_least(t: Count, r: Count, n: Count) -> Count {
    t + (n - (t - r) % n) % n
}

#[cfg(test)]
pub(super) fn least_at_least_for_tests(t: Count, r: Count, n: Count) -> Count {
    least_at_least(t, r, n)
}

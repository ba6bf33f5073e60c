//! Finite unions of diagonal periodic languages.
//!
//! A diagonal periodic term fixes, for every letter of the alphabet, either
//! an arithmetic progression of allowed counts (the letter is in the term's
//! support Γ) or an exact count. The class of languages in the strict sense
//! uses exact count 0 only; exact nonzero counts appear when a term is
//! shifted by a fixed word, as in `perm(u) ⧢ L`, and are kept so that such
//! shifts stay exact.

mod generators;
mod json;

use std::fmt;

use num_integer::Integer;

pub use generators::{clause_closed_form, Generator, PosBoolExpr};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parikh::{Alphabet, LetterSet, ParikhVector};
use crate::{Count, Progression};

/// Per-letter constraint of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// The letter occurs exactly this many times. `Fixed(0)` means the letter
    /// is outside the term's support.
    Fixed(Count),
    /// The letter count lies in the progression.
    Periodic(Progression),
}

impl Component {
    pub fn any() -> Self {
        Component::Periodic(Progression::full())
    }

    pub fn contains(&self, n: Count) -> bool {
        match self {
            Component::Fixed(m) => *m == n,
            Component::Periodic(p) => p.contains(n),
        }
    }

    /// Least admissible count.
    pub fn min(&self) -> Count {
        match self {
            Component::Fixed(m) => *m,
            Component::Periodic(p) => p.offset(),
        }
    }

    pub fn includes(&self, other: &Component) -> bool {
        match (self, other) {
            (Component::Fixed(a), Component::Fixed(b)) => a == b,
            (Component::Periodic(p), Component::Fixed(b)) => p.contains(*b),
            (Component::Fixed(_), Component::Periodic(_)) => false,
            (Component::Periodic(p), Component::Periodic(q)) => p.includes(q),
        }
    }

    pub fn intersect(&self, other: &Component) -> Option<Component> {
        match (self, other) {
            (Component::Fixed(a), Component::Fixed(b)) => (a == b).then_some(*self),
            (Component::Periodic(p), Component::Fixed(b)) | (Component::Fixed(b), Component::Periodic(p)) => {
                p.contains(*b).then_some(Component::Fixed(*b))
            }
            (Component::Periodic(p), Component::Periodic(q)) => p.intersect(q).map(Component::Periodic),
        }
    }

    /// Per-letter concatenation, i.e. the sumset of the two count sets.
    pub fn sumset(&self, other: &Component) -> Vec<Component> {
        match (self, other) {
            (Component::Fixed(a), Component::Fixed(b)) => vec![Component::Fixed(a + b)],
            (Component::Periodic(p), Component::Fixed(b)) | (Component::Fixed(b), Component::Periodic(p)) => {
                vec![Component::Periodic(p.shift(*b))]
            }
            (Component::Periodic(p), Component::Periodic(q)) => {
                p.sumset(q).into_iter().map(Component::Periodic).collect()
            }
        }
    }

    pub fn shift(&self, by: Count) -> Component {
        match self {
            Component::Fixed(m) => Component::Fixed(m + by),
            Component::Periodic(p) => Component::Periodic(p.shift(by)),
        }
    }
}

/// `⧢_{a} C_a`: one [`Component`] per alphabet letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalPeriodic {
    components: Vec<Component>,
}

impl DiagonalPeriodic {
    pub fn new(components: Vec<Component>) -> Self {
        DiagonalPeriodic { components }
    }

    /// `{ε}`: empty support, every count fixed at 0.
    pub fn epsilon(dim: usize) -> Self {
        DiagonalPeriodic { components: vec![Component::Fixed(0); dim] }
    }

    /// `Γ*` for `Γ` = `support`.
    pub fn star(dim: usize, support: LetterSet) -> Self {
        DiagonalPeriodic {
            components: (0..dim)
                .map(|i| if support.contains(i) { Component::any() } else { Component::Fixed(0) })
                .collect(),
        }
    }

    /// `perm(u) ⧢ Γ*`.
    pub fn perm_shuffle_star(u: &ParikhVector, gamma: LetterSet) -> Self {
        DiagonalPeriodic {
            components: u
                .counts()
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    if gamma.contains(i) {
                        Component::Periodic(Progression::new(n, 1).expect("period 1"))
                    } else {
                        Component::Fixed(n)
                    }
                })
                .collect(),
        }
    }

    /// Single point `perm(u)`.
    pub fn point(u: &ParikhVector) -> Self {
        DiagonalPeriodic { components: u.counts().iter().map(|&n| Component::Fixed(n)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, index: usize) -> &Component {
        &self.components[index]
    }

    /// Letters with a periodic component.
    pub fn support(&self) -> LetterSet {
        LetterSet::from_indices(
            self.components
                .iter()
                .enumerate()
                .filter(|(_, c)| matches!(c, Component::Periodic(_)))
                .map(|(i, _)| i),
        )
    }

    pub fn is_epsilon(&self) -> bool {
        self.components.iter().all(|c| *c == Component::Fixed(0))
    }

    /// True when no letter is fixed at a nonzero count.
    pub fn is_diagonal_periodic(&self) -> bool {
        self.components.iter().all(|c| !matches!(c, Component::Fixed(n) if *n > 0))
    }

    /// Least member, componentwise.
    pub fn min_vector(&self) -> ParikhVector {
        ParikhVector::from_counts(self.components.iter().map(Component::min).collect())
    }

    /// Periods of the support letters, `(letter, period)`.
    pub fn periods(&self) -> impl Iterator<Item = (usize, Count)> + '_ {
        self.components.iter().enumerate().filter_map(|(i, c)| match c {
            Component::Periodic(p) => Some((i, p.period())),
            Component::Fixed(_) => None,
        })
    }

    pub fn member(&self, v: &ParikhVector) -> bool {
        v.dim() == self.dim() && self.components.iter().zip(v.counts()).all(|(c, &n)| c.contains(n))
    }

    pub fn includes(&self, other: &DiagonalPeriodic) -> bool {
        self.components.iter().zip(&other.components).all(|(a, b)| a.includes(b))
    }

    pub fn intersect(&self, other: &DiagonalPeriodic) -> Option<DiagonalPeriodic> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.intersect(b))
            .collect::<Option<Vec<_>>>()?;
        Some(DiagonalPeriodic { components })
    }

    /// Shuffle of two terms: per-letter sumsets, expanded to a union.
    pub fn shuffle(&self, other: &DiagonalPeriodic) -> Vec<DiagonalPeriodic> {
        let per_letter: Vec<Vec<Component>> =
            self.components.iter().zip(&other.components).map(|(a, b)| a.sumset(b)).collect();
        cross_product(&per_letter)
    }

    /// Adds `u` to every member.
    pub fn shift(&self, u: &ParikhVector) -> DiagonalPeriodic {
        DiagonalPeriodic {
            components: self.components.iter().zip(u.counts()).map(|(c, &n)| c.shift(n)).collect(),
        }
    }

    /// Iterated shuffle of a strict diagonal periodic term:
    /// `{ε} ∪ ⋃_{i=1}^{N} ⧢_{a∈Γ} a^{i·k_a}(a^{p_a})*` with `N = lcm p_a`.
    fn iterated_shuffle(&self) -> Vec<DiagonalPeriodic> {
        let n = self.periods().fold(1, |acc, (_, p)| acc.lcm(&p));
        let mut out = vec![DiagonalPeriodic::epsilon(self.dim())];
        for i in 1..=n {
            out.push(DiagonalPeriodic {
                components: self
                    .components
                    .iter()
                    .map(|c| match c {
                        Component::Periodic(p) => Component::Periodic(p.scale_offset(i)),
                        fixed => *fixed,
                    })
                    .collect(),
            });
        }
        out
    }

    pub fn project(&self, keep: LetterSet) -> DiagonalPeriodic {
        DiagonalPeriodic { components: keep.iter().map(|i| self.components[i]).collect() }
    }

    /// Places this term's letters at `positions` in a term of dimension
    /// `dim`; the remaining letters become unconstrained.
    fn lift(&self, positions: &[usize], dim: usize) -> DiagonalPeriodic {
        let mut components = vec![Component::any(); dim];
        for (j, &i) in positions.iter().enumerate() {
            components[i] = self.components[j];
        }
        DiagonalPeriodic { components }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.is_epsilon() {
            return "{ε}".to_string();
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != Component::Fixed(0))
            .map(|(i, c)| {
                let a = alphabet.letter(i);
                match c {
                    Component::Fixed(n) => format!("{a}^{n}"),
                    Component::Periodic(p) => format!("{a}^{}({a}^{})*", p.offset(), p.period()),
                }
            })
            .collect();
        parts.join(" ⧢ ")
    }
}

fn cross_product(per_letter: &[Vec<Component>]) -> Vec<DiagonalPeriodic> {
    let mut acc: Vec<Vec<Component>> = vec![Vec::with_capacity(per_letter.len())];
    for options in per_letter {
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for prefix in &acc {
            for c in options {
                let mut v = prefix.clone();
                v.push(*c);
                next.push(v);
            }
        }
        acc = next;
    }
    acc.into_iter().map(DiagonalPeriodic::new).collect()
}

/// A finite union of [`DiagonalPeriodic`] terms over one alphabet.
///
/// Terms are kept sorted, deduplicated, and free of terms contained in
/// another term, so equal term lists serialize identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DplUnion {
    alphabet: Alphabet,
    terms: Vec<DiagonalPeriodic>,
}

impl DplUnion {
    pub fn new(alphabet: Alphabet, terms: Vec<DiagonalPeriodic>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.dim() != alphabet.len()) {
            return Err(Error::AlphabetMismatch {
                left: alphabet.to_string(),
                right: format!("{}-letter term", t.dim()),
            });
        }
        Ok(Self::from_terms_unchecked(alphabet, terms))
    }

    fn from_terms_unchecked(alphabet: Alphabet, mut terms: Vec<DiagonalPeriodic>) -> Self {
        terms.sort();
        terms.dedup();
        let mut kept: Vec<DiagonalPeriodic> = Vec::with_capacity(terms.len());
        // visit general terms first so that subsumed ones are dropped
        let mut order: Vec<usize> = (0..terms.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(generality(&terms[i])));
        let mut keep = vec![false; terms.len()];
        for &i in &order {
            if !kept.iter().any(|k| k.includes(&terms[i])) {
                kept.push(terms[i].clone());
                keep[i] = true;
            }
        }
        let terms = terms.into_iter().zip(keep).filter(|(_, k)| *k).map(|(t, _)| t).collect();
        DplUnion { alphabet, terms }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        DplUnion { alphabet, terms: Vec::new() }
    }

    pub fn epsilon(alphabet: Alphabet) -> Self {
        let dim = alphabet.len();
        DplUnion { alphabet, terms: vec![DiagonalPeriodic::epsilon(dim)] }
    }

    /// `Σ*`.
    pub fn full(alphabet: Alphabet) -> Self {
        let dim = alphabet.len();
        DplUnion { alphabet, terms: vec![DiagonalPeriodic::star(dim, LetterSet::all(dim))] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> &[DiagonalPeriodic] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every term is diagonal periodic in the strict sense.
    pub fn is_positive_class(&self) -> bool {
        self.terms.iter().all(DiagonalPeriodic::is_diagonal_periodic)
    }

    /// Whether every term is a single point, i.e. the language is finite.
    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|t| t.support().is_empty())
    }

    pub fn member(&self, v: &ParikhVector) -> bool {
        self.terms.iter().any(|t| t.member(v))
    }

    fn check_same_alphabet(&self, other: &DplUnion) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &DplUnion) -> Result<DplUnion> {
        self.check_same_alphabet(other)?;
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(Self::from_terms_unchecked(self.alphabet.clone(), terms))
    }

    /// Pairwise intersection of terms.
    pub fn intersect(&self, other: &DplUnion, limits: &Limits) -> Result<DplUnion> {
        self.check_same_alphabet(other)?;
        let needed = self.terms.len() * other.terms.len();
        if needed > limits.max_clauses {
            return Err(Error::Resource { what: "intersection clauses", limit: limits.max_clauses, needed });
        }
        let terms = self
            .terms
            .iter()
            .flat_map(|a| other.terms.iter().filter_map(move |b| a.intersect(b)))
            .collect();
        Ok(Self::from_terms_unchecked(self.alphabet.clone(), terms))
    }

    /// Binary shuffle: pairwise on terms, per-letter sumsets on each pair.
    pub fn shuffle(&self, other: &DplUnion, limits: &Limits) -> Result<DplUnion> {
        self.check_same_alphabet(other)?;
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.extend(a.shuffle(b));
                if terms.len() > limits.max_terms {
                    return Err(Error::Resource { what: "shuffle terms", limit: limits.max_terms, needed: terms.len() });
                }
            }
        }
        Ok(Self::from_terms_unchecked(self.alphabet.clone(), terms))
    }

    /// Iterated shuffle of a union of strict diagonal periodic terms.
    ///
    /// Each term `L` closes to `{ε} ∪ ⋃_{i=1}^{N} ⧢ a^{i·k_a}(a^{p_a})*` with
    /// `N` the lcm of its periods; a union closes to the shuffle of the
    /// closures of its terms. Unions containing terms with a nonzero fixed
    /// count are rejected: see [`crate::closure::iterated_shuffle`].
    pub fn iterated_shuffle(&self, limits: &Limits) -> Result<DplUnion> {
        if let Some(t) = self.terms.iter().find(|t| !t.is_diagonal_periodic()) {
            return Err(Error::NotInPositiveClass(format!(
                "term {} fixes a nonzero letter count",
                t.render(&self.alphabet)
            )));
        }
        let mut acc = DplUnion::epsilon(self.alphabet.clone());
        for t in &self.terms {
            let closed = Self::from_terms_unchecked(self.alphabet.clone(), t.iterated_shuffle());
            acc = acc.shuffle(&closed, limits)?;
        }
        Ok(acc)
    }

    /// Image under the projection onto `keep`; the result lives over the
    /// restricted alphabet.
    pub fn project(&self, keep: LetterSet) -> DplUnion {
        let keep = keep.intersection(self.alphabet.full());
        let alphabet = self.alphabet.restrict(keep);
        let terms = self.terms.iter().map(|t| t.project(keep)).collect();
        Self::from_terms_unchecked(alphabet, terms)
    }

    /// Preimage under the projection from `sigma` onto this union's alphabet:
    /// letters of `sigma` not in the alphabet become unconstrained.
    pub fn inverse_project(&self, sigma: &Alphabet) -> Result<DplUnion> {
        let positions: Vec<usize> = self
            .alphabet
            .letters()
            .iter()
            .map(|&c| sigma.index_of(c))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotSubalphabet(self.alphabet.to_string(), sigma.to_string()))?;
        let terms = self.terms.iter().map(|t| t.lift(&positions, sigma.len())).collect();
        Ok(Self::from_terms_unchecked(sigma.clone(), terms))
    }

    /// Adds `u` to every member: `perm(u) ⧢ L`.
    pub fn shift(&self, u: &ParikhVector) -> DplUnion {
        let terms = self.terms.iter().map(|t| t.shift(u)).collect();
        Self::from_terms_unchecked(self.alphabet.clone(), terms)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "∅".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.render(&self.alphabet)).collect();
        parts.join(" ∪ ")
    }
}

// Rough size of a term, used to try containers before the terms they contain.
fn generality(t: &DiagonalPeriodic) -> (usize, std::cmp::Reverse<Vec<Count>>) {
    let support = t.support().len();
    let periods: Vec<Count> = t
        .components()
        .iter()
        .map(|c| match c {
            Component::Periodic(p) => p.period(),
            Component::Fixed(_) => Count::MAX,
        })
        .collect();
    (support, std::cmp::Reverse(periods))
}

impl fmt::Display for DplUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

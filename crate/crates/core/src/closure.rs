//! Iterated shuffle of arbitrary finite unions of terms.
//!
//! A term with nonzero fixed counts is a linear set `b + ⟨P⟩` with `P`
//! axis-parallel. The closure of a union of such terms is
//!
//! ```text
//! {0} ∪ ⋃_{∅ ≠ A} ( Σ_{j∈A} b_j + ⟨ b_j, P_j : j ∈ A ⟩ )
//! ```
//!
//! and each piece, a *fragment*, is regular when every letter used by one of
//! its generators also has an axis-parallel generator. Fragments failing that
//! test are absorbed where possible: if `F = s + ⟨G⟩` has a sloped generator
//! `g` and some regular fragment `R` satisfies `G ⊆ ⟨G_R⟩` and
//! `s + K·g ∈ R`, then `F ⊆ R ∪ ⋃_{c<K} (s + c·g + ⟨G ∖ {g}⟩)`. What cannot
//! be absorbed is reported as undecided, never guessed.

use std::collections::BTreeSet;

use serde_json::json;

use crate::dpl::{Component, DplUnion};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parikh::{Alphabet, LetterSet, ParikhVector};
use crate::regularity::{decide_finite, decide_prefixed, FiniteLang};
use crate::Count;

/// Most terms the fragment engine accepts (it visits every subset).
pub const MAX_ENGINE_TERMS: usize = 12;
/// Largest multiple of a sloped generator tried during absorption.
pub const MAX_ABSORB_MULTIPLE: Count = 64;
/// Largest box explored by the linear-set membership test.
const MAX_BOX: usize = 1 << 21;

/// Result of closing a union under iterated shuffle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOutcome {
    Regular(DplUnion),
    /// The closure is not regular; `witness` violates the finite-language
    /// criterion.
    NonRegular { witness: char },
    /// None of the implemented criteria applies.
    Undecided { reason: String },
}

impl ClosureOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            ClosureOutcome::Regular(_) => "regular",
            ClosureOutcome::NonRegular { .. } => "non-regular",
            ClosureOutcome::Undecided { .. } => "undecided",
        }
    }

    pub fn representation(&self) -> Option<&DplUnion> {
        match self {
            ClosureOutcome::Regular(u) => Some(u),
            _ => None,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            ClosureOutcome::Regular(u) => json!({"status": "regular", "representation": u.to_json_value()}),
            ClosureOutcome::NonRegular { witness } => {
                json!({"status": "non-regular", "witness": witness.to_string()})
            }
            ClosureOutcome::Undecided { reason } => json!({"status": "undecided", "reason": reason}),
        }
    }
}

/// `u^{⧢,*}` for any union.
///
/// Unions in the strict positive class close symbolically; finite unions are
/// decided by the finite-language criterion; everything else goes through
/// the fragment engine.
pub fn iterated_shuffle(u: &DplUnion, limits: &Limits) -> Result<ClosureOutcome> {
    if u.is_positive_class() {
        return Ok(ClosureOutcome::Regular(u.iterated_shuffle(limits)?));
    }
    if u.is_finite() {
        let words = u.terms().iter().map(|t| u.alphabet().canonical_word(&t.min_vector()));
        let lang = FiniteLang::new(u.alphabet().clone(), words)?;
        let verdict = decide_finite(&lang, limits)?;
        return Ok(match (verdict.representation, verdict.witness) {
            (Some(rep), _) => ClosureOutcome::Regular(rep),
            (None, Some(witness)) => ClosureOutcome::NonRegular { witness },
            (None, None) => unreachable!("verdict carries a witness or a representation"),
        });
    }
    fragment_engine(u, limits)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Fragment {
    base: ParikhVector,
    gens: Vec<ParikhVector>,
}

impl Fragment {
    fn new(base: ParikhVector, gens: impl IntoIterator<Item = ParikhVector>) -> Self {
        let gens: BTreeSet<ParikhVector> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Fragment { base, gens: gens.into_iter().collect() }
    }

    fn axis_letters(&self) -> LetterSet {
        self.gens
            .iter()
            .filter(|g| g.support().len() == 1)
            .fold(LetterSet::empty(), |acc, g| acc.union(g.support()))
    }

    /// Generators using a letter without an axis-parallel generator.
    fn bad_generators(&self) -> Vec<usize> {
        let axis = self.axis_letters();
        (0..self.gens.len()).filter(|&i| !self.gens[i].support().is_subset(axis)).collect()
    }

    fn contains(&self, v: &ParikhVector) -> Option<bool> {
        match v.checked_sub(&self.base) {
            None => Some(false),
            Some(d) => in_monoid(&d, &self.gens),
        }
    }

    fn representation(&self, alphabet: &Alphabet, limits: &Limits) -> Result<DplUnion> {
        let lang = FiniteLang::new(alphabet.clone(), self.gens.iter().map(|g| alphabet.canonical_word(g)))?;
        let verdict = decide_prefixed(&alphabet.canonical_word(&self.base), &lang, limits)?;
        verdict.representation.ok_or_else(|| Error::CriterionViolated(verdict.witness.unwrap_or('?')))
    }

    fn render(&self, alphabet: &Alphabet) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| g.render(alphabet)).collect();
        format!("{} + <{}>", self.base.render(alphabet), gens.join(", "))
    }
}

/// Whether `target` is a sum of `gens` (with repetition). `None` when the
/// search box is too large.
fn in_monoid(target: &ParikhVector, gens: &[ParikhVector]) -> Option<bool> {
    if target.is_zero() {
        return Some(true);
    }
    let dims: Vec<usize> = target.counts().iter().map(|&t| t as usize + 1).collect();
    let size = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).filter(|&s| s <= MAX_BOX)?;
    let useful: Vec<&ParikhVector> = gens.iter().filter(|g| g.le_pointwise(target)).collect();
    // mixed-radix index, last coordinate fastest
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let offsets: Vec<(usize, &ParikhVector)> = useful
        .iter()
        .map(|g| (g.counts().iter().zip(&strides).map(|(&c, &s)| c as usize * s).sum(), *g))
        .collect();
    let mut reach = vec![false; size];
    reach[0] = true;
    let mut coords = vec![0usize; dims.len()];
    for idx in 1..size {
        // advance coords to idx
        for i in (0..dims.len()).rev() {
            coords[i] += 1;
            if coords[i] < dims[i] {
                break;
            }
            coords[i] = 0;
        }
        reach[idx] = offsets.iter().any(|(off, g)| {
            g.counts().iter().zip(&coords).all(|(&c, &x)| c as usize <= x) && reach[idx - off]
        });
    }
    Some(reach[size - 1])
}

fn fragment_engine(u: &DplUnion, limits: &Limits) -> Result<ClosureOutcome> {
    let alphabet = u.alphabet();
    let dim = alphabet.len();
    let n = u.terms().len();
    if n > MAX_ENGINE_TERMS {
        return Err(Error::Resource { what: "terms in a non-strict iterated shuffle", limit: MAX_ENGINE_TERMS, needed: n });
    }
    let term_parts: Vec<(ParikhVector, Vec<ParikhVector>)> = u
        .terms()
        .iter()
        .map(|t| {
            let periods = t
                .components()
                .iter()
                .enumerate()
                .filter_map(|(i, c)| match c {
                    Component::Periodic(p) => Some(ParikhVector::unit(dim, i).scale(p.period())),
                    Component::Fixed(_) => None,
                })
                .collect();
            (t.min_vector(), periods)
        })
        .collect();

    let mut fragments = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let mut base = ParikhVector::zero(dim);
        let mut gens = Vec::new();
        for (j, (b, periods)) in term_parts.iter().enumerate() {
            if mask & (1 << j) != 0 {
                base = base.add(b);
                gens.push(b.clone());
                gens.extend(periods.iter().cloned());
            }
        }
        fragments.insert(Fragment::new(base, gens));
    }

    let (absorbers, mut pending): (Vec<Fragment>, Vec<Fragment>) =
        fragments.into_iter().partition(|f| f.bad_generators().is_empty());
    let mut regular: BTreeSet<Fragment> = absorbers.iter().cloned().collect();
    let mut unresolved = Vec::new();
    let mut produced = 0usize;

    while let Some(f) = pending.pop() {
        if f.bad_generators().is_empty() {
            regular.insert(f);
            continue;
        }
        match absorb(&f, &absorbers) {
            Some((g, k)) => {
                let rest: Vec<ParikhVector> =
                    f.gens.iter().enumerate().filter(|&(i, _)| i != g).map(|(_, x)| x.clone()).collect();
                for c in 0..k {
                    pending.push(Fragment::new(f.base.add(&f.gens[g].scale(c)), rest.iter().cloned()));
                }
                produced += k as usize;
                if produced > limits.max_terms {
                    return Err(Error::Resource { what: "absorption pieces", limit: limits.max_terms, needed: produced });
                }
            }
            None => unresolved.push(f),
        }
    }

    if !unresolved.is_empty() {
        unresolved.sort();
        return Ok(ClosureOutcome::Undecided {
            reason: format!(
                "{} fragment(s) of the closure, e.g. {}, have a generator whose letters lack unary generators and are not absorbed by a regular fragment",
                unresolved.len(),
                unresolved[0].render(alphabet)
            ),
        });
    }

    let mut acc = DplUnion::epsilon(alphabet.clone());
    for f in &regular {
        acc = acc.union(&f.representation(alphabet, limits)?)?;
        if acc.terms().len() > limits.max_terms {
            return Err(Error::Resource { what: "closure terms", limit: limits.max_terms, needed: acc.terms().len() });
        }
    }
    Ok(ClosureOutcome::Regular(acc))
}

/// Finds a bad generator `g` of `f` and the least `K` such that some regular
/// fragment contains `f.base + K·g` and is closed under `f`'s generators.
fn absorb(f: &Fragment, absorbers: &[Fragment]) -> Option<(usize, Count)> {
    let mut best: Option<(usize, Count)> = None;
    for g in f.bad_generators() {
        for r in absorbers {
            let closed = f.gens.iter().all(|x| in_monoid(x, &r.gens) == Some(true));
            if !closed {
                continue;
            }
            let limit = best.map_or(MAX_ABSORB_MULTIPLE, |(_, k)| k.saturating_sub(1));
            let mut point = f.base.clone();
            for k in 0..=limit {
                if r.contains(&point) == Some(true) {
                    best = Some((g, k));
                    break;
                }
                point = point.add(&f.gens[g]);
            }
        }
    }
    best
}

/// Exact membership of `v` in `u^{⧢,*}`, by search over the box below `v`.
/// `None` when the box is too large.
pub fn closure_member(u: &DplUnion, v: &ParikhVector) -> Option<bool> {
    if v.is_zero() {
        return Some(true);
    }
    let below: Vec<ParikhVector> = box_vectors(v)?.into_iter().filter(|w| !w.is_zero() && u.member(w)).collect();
    in_monoid(v, &below)
}

fn box_vectors(v: &ParikhVector) -> Option<Vec<ParikhVector>> {
    let size = v.counts().iter().try_fold(1usize, |acc, &t| acc.checked_mul(t as usize + 1)).filter(|&s| s <= MAX_BOX)?;
    let mut out = Vec::with_capacity(size);
    let mut cur = vec![0 as Count; v.dim()];
    loop {
        out.push(ParikhVector::from_counts(cur.clone()));
        let mut i = v.dim();
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            if cur[i] < v.get(i) {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
    }
}

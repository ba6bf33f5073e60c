//! Regularity of iterated shuffles of finite languages.
//!
//! For a finite `L`, `perm(L)^{⧢,*}` is regular exactly when every letter
//! occurring in `L` also occurs in a unary word `a⁺ ∩ L`. The same criterion
//! decides `perm(u) ⧢ perm(L)^{⧢,*}` for any word `u`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::json;

use crate::dpl::{Component, DiagonalPeriodic, DplUnion};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parikh::{parikh, Alphabet, LetterSet, ParikhVector, Word};
use crate::{Count, Progression};

/// A finite set of words over an alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLang {
    alphabet: Alphabet,
    words: BTreeSet<Word>,
}

impl FiniteLang {
    pub fn new<I: IntoIterator<Item = Word>>(alphabet: Alphabet, words: I) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        for w in &words {
            parikh(&alphabet, w)?;
        }
        Ok(FiniteLang { alphabet, words })
    }

    pub fn parse(alphabet: &Alphabet, words: &[&str]) -> Result<Self> {
        let words = words.iter().map(|w| alphabet.word(w)).collect::<Result<Vec<_>>>()?;
        FiniteLang::new(alphabet.clone(), words)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    /// Parikh vectors of the words, in word order, without repetitions.
    pub fn vectors(&self) -> Vec<ParikhVector> {
        let mut seen = BTreeSet::new();
        self.words
            .iter()
            .map(|w| parikh(&self.alphabet, w).expect("validated"))
            .filter(|v| seen.insert(v.clone()))
            .collect()
    }

    /// Letters occurring in some word.
    pub fn occurring(&self) -> LetterSet {
        self.vectors().iter().fold(LetterSet::empty(), |acc, v| acc.union(v.support()))
    }

    /// First letter, in alphabet order, that occurs in the language but has
    /// no unary word in it.
    pub fn criterion_witness(&self) -> Option<char> {
        let vectors = self.vectors();
        let unary = vectors
            .iter()
            .filter(|v| v.support().len() == 1)
            .fold(LetterSet::empty(), |acc, v| acc.union(v.support()));
        self.occurring().difference(unary).iter().next().map(|i| self.alphabet.letter(i))
    }
}

/// Outcome of the regularity decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub regular: bool,
    pub witness: Option<char>,
    pub representation: Option<DplUnion>,
}

impl RegularityVerdict {
    pub fn non_regular(witness: char) -> Self {
        RegularityVerdict { regular: false, witness: Some(witness), representation: None }
    }

    pub fn regular(representation: DplUnion) -> Self {
        RegularityVerdict { regular: true, witness: None, representation: Some(representation) }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "regular": self.regular,
            "witness": self.witness.map(|c| c.to_string()),
            "representation": self.representation.as_ref().map(DplUnion::to_json_value),
        })
    }
}

/// Decides whether `perm(L)^{⧢,*}` is regular.
pub fn decide_finite(lang: &FiniteLang, limits: &Limits) -> Result<RegularityVerdict> {
    match lang.criterion_witness() {
        Some(a) => Ok(RegularityVerdict::non_regular(a)),
        None => Ok(RegularityVerdict::regular(build_representation(lang, limits)?)),
    }
}

/// Decides whether `perm(u) ⧢ perm(L)^{⧢,*}` is regular.
pub fn decide_prefixed(u: &Word, lang: &FiniteLang, limits: &Limits) -> Result<RegularityVerdict> {
    let shift = parikh(&lang.alphabet, u)?;
    match lang.criterion_witness() {
        Some(a) => Ok(RegularityVerdict::non_regular(a)),
        None => Ok(RegularityVerdict::regular(build_representation(lang, limits)?.shift(&shift))),
    }
}

/// Explicit normal form of `perm(L)^{⧢,*}` when the criterion holds.
///
/// For every occurring letter `a` one unary word `a^{m_a}` is selected
/// (smallest `m_a`). With `B = ∏ m_a`, the closure is the union over
/// coefficients `0 <= c_j < B` of the remaining words `u_j` of the terms with
/// offset `Σ c_j ψ(u_j)` and period `m_a` on each occurring letter, plus `{ε}`.
/// Offsets dominated by a smaller offset in the same residue class are
/// dropped as they are generated.
pub fn build_representation(lang: &FiniteLang, limits: &Limits) -> Result<DplUnion> {
    if let Some(a) = lang.criterion_witness() {
        return Err(Error::CriterionViolated(a));
    }
    let dim = lang.alphabet.len();
    let vectors: Vec<ParikhVector> = lang.vectors().into_iter().filter(|v| !v.is_zero()).collect();
    let occurring = lang.occurring();

    let mut periods: BTreeMap<usize, (Count, usize)> = BTreeMap::new();
    for (j, v) in vectors.iter().enumerate() {
        if v.support().len() == 1 {
            let a = v.support().iter().next().expect("one letter");
            let m = v.get(a);
            let better = periods.get(&a).is_none_or(|&(best, _)| m < best);
            if better {
                periods.insert(a, (m, j));
            }
        }
    }
    let selected: BTreeSet<usize> = periods.values().map(|&(_, j)| j).collect();
    let modulus: Vec<Count> = (0..dim).map(|a| periods.get(&a).map_or(1, |&(m, _)| m)).collect();
    let big_b: Count = periods
        .values()
        .try_fold(1 as Count, |acc, &(m, _)| acc.checked_mul(m))
        .ok_or(Error::Overflow("coefficient bound"))?;

    let mut offsets = vec![ParikhVector::zero(dim)];
    for (j, w) in vectors.iter().enumerate() {
        if selected.contains(&j) {
            continue;
        }
        let mut next = Vec::with_capacity(offsets.len() * big_b as usize);
        for s in &offsets {
            let mut cur = s.clone();
            for _ in 0..big_b {
                next.push(cur.clone());
                cur = cur.add(w);
            }
            if next.len() > limits.max_terms {
                return Err(Error::Resource { what: "representation terms", limit: limits.max_terms, needed: next.len() });
            }
        }
        offsets = prune_dominated(next, &modulus);
    }

    let mut terms = vec![DiagonalPeriodic::epsilon(dim)];
    for s in offsets {
        let components = (0..dim)
            .map(|a| {
                if occurring.contains(a) {
                    Component::Periodic(Progression::new(s.get(a), modulus[a]).expect("positive period"))
                } else {
                    Component::Fixed(0)
                }
            })
            .collect();
        terms.push(DiagonalPeriodic::new(components));
    }
    DplUnion::new(lang.alphabet.clone(), terms)
}

/// Keeps, per residue class modulo `modulus`, the componentwise-minimal offsets.
fn prune_dominated(mut offsets: Vec<ParikhVector>, modulus: &[Count]) -> Vec<ParikhVector> {
    offsets.sort_by(ParikhVector::graded_cmp);
    offsets.dedup();
    let mut classes: HashMap<Vec<Count>, Vec<ParikhVector>> = HashMap::new();
    let mut kept = Vec::new();
    for s in offsets {
        let key: Vec<Count> = s.counts().iter().zip(modulus).map(|(x, m)| x % m).collect();
        let class = classes.entry(key).or_default();
        if !class.iter().any(|t| t.le_pointwise(&s)) {
            class.push(s.clone());
            kept.push(s);
        }
    }
    kept
}

/// Largest word length accepted by [`nerode_evidence`].
pub const MAX_NERODE_BOUND: usize = 12;
/// Largest number of words of length at most the bound.
pub const MAX_NERODE_WORDS: usize = 4096;

/// Bounded Nerode-class counts for a language given by membership.
///
/// This is evidence only: growing counts suggest, but never prove, an
/// infinite index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NerodeEvidence {
    pub length_bound: usize,
    /// `(b, n)`: words of length at most `b` fall into `n` classes when
    /// separated by suffixes of length at most `b`.
    pub class_counts: Vec<(usize, usize)>,
    /// `(u, v, x)` with exactly one of `ux`, `vx` in the language.
    pub distinguished: Vec<(Word, Word, Word)>,
}

impl NerodeEvidence {
    pub fn count_at(&self, bound: usize) -> Option<usize> {
        self.class_counts.iter().find(|(b, _)| *b == bound).map(|(_, n)| *n)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "lengthBound": self.length_bound,
            "classCounts": self.class_counts.iter().map(|(b, n)| json!([b, n])).collect::<Vec<_>>(),
            "distinguished": self
                .distinguished
                .iter()
                .map(|(u, v, x)| json!([u.to_string(), v.to_string(), x.to_string()]))
                .collect::<Vec<_>>(),
        })
    }
}

const SAMPLE_PAIRS: usize = 8;

pub fn nerode_evidence(member: &dyn Fn(&Word) -> bool, alphabet: &Alphabet, bound: usize) -> Result<NerodeEvidence> {
    if bound > MAX_NERODE_BOUND {
        return Err(Error::Resource { what: "Nerode length bound", limit: MAX_NERODE_BOUND, needed: bound });
    }
    let mut total = 0usize;
    let mut layer = 1usize;
    for _ in 0..=bound {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(alphabet.len().max(1));
    }
    if total > MAX_NERODE_WORDS {
        return Err(Error::Resource { what: "Nerode word count", limit: MAX_NERODE_WORDS, needed: total });
    }
    let words = alphabet.words_up_to(bound);
    let ends: Vec<usize> = (0..=bound).map(|b| words.iter().take_while(|w| w.len() <= b).count()).collect();

    let signatures: Vec<Vec<bool>> =
        words.iter().map(|u| words.iter().map(|x| member(&u.concat(x))).collect()).collect();

    let mut class_counts = Vec::with_capacity(bound + 1);
    let mut reps: Vec<usize> = Vec::new();
    for (b, &end) in ends.iter().enumerate() {
        let mut seen: HashMap<&[bool], usize> = HashMap::new();
        reps.clear();
        for (i, sig) in signatures.iter().take(end).enumerate() {
            seen.entry(&sig[..end]).or_insert_with(|| {
                reps.push(i);
                i
            });
        }
        class_counts.push((b, seen.len()));
    }

    let end = ends[bound];
    let distinguished = reps
        .windows(2)
        .take(SAMPLE_PAIRS)
        .map(|pair| {
            let (i, j) = (pair[0], pair[1]);
            let x = (0..end).find(|&k| signatures[i][k] != signatures[j][k]).expect("distinct classes");
            (words[i].clone(), words[j].clone(), words[x].clone())
        })
        .collect();

    Ok(NerodeEvidence { length_bound: bound, class_counts, distinguished })
}

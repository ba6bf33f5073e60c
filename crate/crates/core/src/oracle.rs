//! Brute-force ground truth on Parikh vectors.
//!
//! Every set here is a finite window: it is exact for vectors whose
//! coordinate sum is at most the recorded bound.

use std::collections::{BTreeSet, VecDeque};

use crate::dpl::DplUnion;
use crate::error::{Error, Result};
use crate::parikh::{Alphabet, ParikhVector, Word};
use crate::Count;

/// Largest coordinate-sum bound accepted by the vector oracles.
pub const MAX_VECTOR_BOUND: Count = 60;
/// Largest word length accepted by [`word_language`].
pub const MAX_WORD_BOUND: usize = 10;

/// Parikh vectors with coordinate sum at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    alphabet: Alphabet,
    vectors: BTreeSet<ParikhVector>,
    bound: Count,
}

impl VectorSet {
    /// Keeps only the vectors within `bound`.
    pub fn new<I: IntoIterator<Item = ParikhVector>>(alphabet: Alphabet, vectors: I, bound: Count) -> Self {
        let dim = alphabet.len();
        let vectors = vectors.into_iter().filter(|v| v.dim() == dim && v.sum() <= bound).collect();
        VectorSet { alphabet, vectors, bound }
    }

    /// Vectors of `words` within `bound`.
    pub fn from_words<'a, I: IntoIterator<Item = &'a Word>>(alphabet: &Alphabet, words: I, bound: Count) -> Result<Self> {
        let vectors = words
            .into_iter()
            .map(|w| crate::parikh::parikh(alphabet, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorSet::new(alphabet.clone(), vectors, bound))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn bound(&self) -> Count {
        self.bound
    }

    pub fn vectors(&self) -> &BTreeSet<ParikhVector> {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &ParikhVector) -> bool {
        self.vectors.contains(v)
    }

    /// All pairwise sums within the bound.
    pub fn sumset(&self, other: &VectorSet) -> VectorSet {
        let bound = self.bound.min(other.bound);
        let mut out = BTreeSet::new();
        for x in &self.vectors {
            for y in &other.vectors {
                if x.sum() + y.sum() <= bound {
                    out.insert(x.add(y));
                }
            }
        }
        VectorSet { alphabet: self.alphabet.clone(), vectors: out, bound }
    }

    /// Keeps the vectors satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&ParikhVector) -> bool) -> VectorSet {
        VectorSet {
            alphabet: self.alphabet.clone(),
            vectors: self.vectors.iter().filter(|v| keep(v)).cloned().collect(),
            bound: self.bound,
        }
    }
}

fn check_bound(bound: Count) -> Result<()> {
    if bound > MAX_VECTOR_BOUND {
        return Err(Error::Resource {
            what: "oracle vector bound",
            limit: MAX_VECTOR_BOUND as usize,
            needed: bound as usize,
        });
    }
    Ok(())
}

/// Smallest superset of `{0} ∪ base` closed under addition, within `bound`.
pub fn closure_under_addition(base: &VectorSet, bound: Count) -> Result<VectorSet> {
    check_bound(bound)?;
    let dim = base.alphabet.len();
    let generators: Vec<&ParikhVector> =
        base.vectors.iter().filter(|v| !v.is_zero() && v.sum() <= bound).collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(ParikhVector::zero(dim));
    queue.push_back(ParikhVector::zero(dim));
    while let Some(v) = queue.pop_front() {
        for g in &generators {
            if v.sum() + g.sum() <= bound {
                let w = v.add(g);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(VectorSet { alphabet: base.alphabet.clone(), vectors: seen, bound })
}

/// Members of `u` with coordinate sum at most `bound`.
pub fn dpl_enumerate(u: &DplUnion, bound: Count) -> Result<VectorSet> {
    check_bound(bound)?;
    let vectors = u.alphabet().vectors_up_to(bound).into_iter().filter(|v| u.member(v)).collect();
    Ok(VectorSet { alphabet: u.alphabet().clone(), vectors, bound })
}

/// Vectors within `bound` satisfying `member`.
pub fn enumerate_predicate(alphabet: &Alphabet, member: impl Fn(&ParikhVector) -> bool, bound: Count) -> Result<VectorSet> {
    check_bound(bound)?;
    let vectors = alphabet.vectors_up_to(bound).into_iter().filter(|v| member(v)).collect();
    Ok(VectorSet { alphabet: alphabet.clone(), vectors, bound })
}

/// Set comparison; on inequality returns the least differing vector
/// (by coordinate sum, then lexicographically).
pub fn sets_equal(x: &VectorSet, y: &VectorSet) -> Result<(bool, Option<ParikhVector>)> {
    if x.alphabet != y.alphabet {
        return Err(Error::Incomparable(format!("alphabets {} and {}", x.alphabet, y.alphabet)));
    }
    if x.bound != y.bound {
        return Err(Error::Incomparable(format!("bounds {} and {}", x.bound, y.bound)));
    }
    let witness = x
        .vectors
        .symmetric_difference(&y.vectors)
        .min_by(|a, b| ParikhVector::graded_cmp(a, b))
        .cloned();
    Ok((witness.is_none(), witness))
}

/// Words of length at most `bound` whose Parikh vector satisfies `member`.
pub fn word_language(
    member: impl Fn(&ParikhVector) -> bool,
    alphabet: &Alphabet,
    bound: usize,
) -> Result<BTreeSet<Word>> {
    if bound > MAX_WORD_BOUND {
        return Err(Error::Resource { what: "oracle word bound", limit: MAX_WORD_BOUND, needed: bound });
    }
    let mut out = BTreeSet::new();
    for w in alphabet.words_up_to(bound) {
        let v = crate::parikh::parikh(alphabet, &w)?;
        if member(&v) {
            out.insert(w);
        }
    }
    Ok(out)
}

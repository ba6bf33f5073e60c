//! Alphabets, words and Parikh vectors.
//!
//! Every commutative language in this crate is described by the set of
//! Parikh vectors of its words, so [`ParikhVector`] is the common currency of
//! all other modules. Coordinates follow the (sorted) letter order of the
//! [`Alphabet`] the vector was built against.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::Count;

/// Longest word [`perm_set`] will expand.
pub const PERM_SET_MAX_LEN: usize = 12;

/// Largest supported alphabet (letter sets are 64-bit masks).
pub const MAX_LETTERS: usize = 64;

/// A finite, canonically ordered set of single-character letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in letters {
            if !seen.insert(c) {
                return Err(Error::DuplicateLetter(c));
            }
        }
        if seen.len() > MAX_LETTERS {
            return Err(Error::AlphabetTooLarge {
                got: seen.len(),
                max: MAX_LETTERS,
            });
        }
        Ok(Alphabet {
            letters: seen.into_iter().collect(),
        })
    }

    /// Builds an alphabet from the characters of `s`, e.g. `"abc"`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.chars().filter(|c| !c.is_whitespace() && *c != ','))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: usize) -> char {
        self.letters[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.binary_search(&c).ok()
    }

    pub fn try_index(&self, c: char) -> Result<usize> {
        self.index_of(c).ok_or(Error::UnknownLetter(c))
    }

    pub fn full(&self) -> LetterSet {
        LetterSet::all(self.len())
    }

    pub fn letter_set<I: IntoIterator<Item = char>>(&self, letters: I) -> Result<LetterSet> {
        let mut set = LetterSet::empty();
        for c in letters {
            set.insert(self.try_index(c)?);
        }
        Ok(set)
    }

    /// The alphabet consisting of the members of `set`, in order.
    pub fn restrict(&self, set: LetterSet) -> Alphabet {
        Alphabet {
            letters: set.iter().map(|i| self.letters[i]).collect(),
        }
    }

    /// Whether every letter of `self` also belongs to `other`.
    pub fn is_subalphabet_of(&self, other: &Alphabet) -> bool {
        self.letters.iter().all(|c| other.index_of(*c).is_some())
    }

    /// The members of `other` (which must be a subalphabet) as a set over `self`.
    pub fn embed(&self, other: &Alphabet) -> Result<LetterSet> {
        if !other.is_subalphabet_of(self) {
            return Err(Error::NotSubalphabet(other.to_string(), self.to_string()));
        }
        self.letter_set(other.letters.iter().copied())
    }

    pub fn word(&self, s: &str) -> Result<Word> {
        let symbols: Vec<char> = s.chars().collect();
        for c in &symbols {
            self.try_index(*c)?;
        }
        Ok(Word(symbols))
    }

    pub fn render_set(&self, set: LetterSet) -> String {
        let inner: Vec<String> = set.iter().map(|i| self.letters[i].to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Word `a_1^{v_1} a_2^{v_2} ...` with the given Parikh vector.
    pub fn canonical_word(&self, v: &ParikhVector) -> Word {
        let mut symbols = Vec::with_capacity(v.sum() as usize);
        for (i, &n) in v.counts().iter().enumerate() {
            symbols.extend(std::iter::repeat_n(self.letters[i], n as usize));
        }
        Word(symbols)
    }

    /// All Parikh vectors over this alphabet with coordinate sum at most `bound`,
    /// ordered by sum and then lexicographically.
    pub fn vectors_up_to(&self, bound: Count) -> Vec<ParikhVector> {
        let dim = self.len();
        let mut out = Vec::new();
        for total in 0..=bound {
            let mut current = vec![0; dim];
            compositions(total, 0, &mut current, &mut out);
            if dim == 0 {
                out.push(ParikhVector::zero(0));
                break;
            }
        }
        out.sort_by(ParikhVector::graded_cmp);
        out
    }

    /// All words of length at most `max_len`, in length-then-lexicographic order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(frontier.len() * self.len());
            for w in &frontier {
                for &c in &self.letters {
                    let mut s = w.0.clone();
                    s.push(c);
                    next.push(Word(s));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

fn compositions(remaining: Count, pos: usize, current: &mut Vec<Count>, out: &mut Vec<ParikhVector>) {
    let dim = current.len();
    if dim == 0 {
        return;
    }
    if pos == dim - 1 {
        current[pos] = remaining;
        out.push(ParikhVector(current.clone()));
        return;
    }
    for n in 0..=remaining {
        current[pos] = n;
        compositions(remaining - n, pos + 1, current, out);
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().collect();
        write!(f, "{{{s}}}")
    }
}

/// A subset of an alphabet, stored as a bit mask over letter indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LetterSet(u64);

impl LetterSet {
    pub const fn empty() -> Self {
        LetterSet(0)
    }

    pub fn all(len: usize) -> Self {
        if len >= 64 {
            LetterSet(u64::MAX)
        } else {
            LetterSet((1u64 << len) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        LetterSet(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut s = LetterSet::empty();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    pub fn insert(&mut self, index: usize) {
        self.0 |= 1 << index;
    }

    pub fn remove(&mut self, index: usize) {
        self.0 &= !(1 << index);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        LetterSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        LetterSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        LetterSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self.0 & (1u64 << i) != 0)
    }
}

/// A finite word. Ordered by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<char>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut s = self.0.clone();
        s.extend_from_slice(&other.0);
        Word(s)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let s: String = self.0.iter().collect();
        f.write_str(&s)
    }
}

/// Letter counts of a word, one coordinate per alphabet letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParikhVector(Vec<Count>);

impl ParikhVector {
    pub fn zero(dim: usize) -> Self {
        ParikhVector(vec![0; dim])
    }

    pub fn from_counts(counts: Vec<Count>) -> Self {
        ParikhVector(counts)
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = vec![0; dim];
        v[index] = 1;
        ParikhVector(v)
    }

    pub fn counts(&self) -> &[Count] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> Count {
        self.0[index]
    }

    pub fn set(&mut self, index: usize, value: Count) {
        self.0[index] = value;
    }

    pub fn sum(&self) -> Count {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&n| n == 0)
    }

    pub fn support(&self) -> LetterSet {
        LetterSet::from_indices(self.0.iter().enumerate().filter(|(_, &n)| n > 0).map(|(i, _)| i))
    }

    pub fn add(&self, other: &ParikhVector) -> ParikhVector {
        debug_assert_eq!(self.dim(), other.dim());
        ParikhVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, factor: Count) -> ParikhVector {
        ParikhVector(self.0.iter().map(|a| a * factor).collect())
    }

    /// `self - other` if `other <= self` pointwise.
    pub fn checked_sub(&self, other: &ParikhVector) -> Option<ParikhVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ParikhVector)
    }

    /// Pointwise `self <= other`.
    pub fn le_pointwise(&self, other: &ParikhVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Coordinates in `set`, as a vector over the restricted alphabet.
    pub fn restrict(&self, set: LetterSet) -> ParikhVector {
        ParikhVector(set.iter().filter(|&i| i < self.dim()).map(|i| self.0[i]).collect())
    }

    /// Inverse of [`restrict`](Self::restrict): places coordinates at the
    /// positions of `set` inside a vector of dimension `dim`.
    pub fn embed(&self, set: LetterSet, dim: usize) -> ParikhVector {
        let mut out = vec![0; dim];
        for (j, i) in set.iter().enumerate() {
            out[i] = self.0[j];
        }
        ParikhVector(out)
    }

    /// Order by coordinate sum, then lexicographically.
    pub fn graded_cmp(a: &ParikhVector, b: &ParikhVector) -> Ordering {
        a.sum().cmp(&b.sum()).then_with(|| a.0.cmp(&b.0))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, n)| format!("{}:{}", alphabet.letter(i), n))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Letter counts of `w` over `alphabet`.
pub fn parikh(alphabet: &Alphabet, w: &Word) -> Result<ParikhVector> {
    let mut counts = vec![0; alphabet.len()];
    for &c in w.symbols() {
        counts[alphabet.try_index(c)?] += 1;
    }
    Ok(ParikhVector(counts))
}

/// All distinct rearrangements of `w`, in canonical word order.
pub fn perm_set(w: &Word) -> Result<Vec<Word>> {
    if w.len() > PERM_SET_MAX_LEN {
        return Err(Error::Resource {
            what: "perm_set word length",
            limit: PERM_SET_MAX_LEN,
            needed: w.len(),
        });
    }
    let mut symbols = w.symbols().to_vec();
    symbols.sort_unstable();
    let mut out = vec![Word(symbols.clone())];
    // lexicographic next-permutation enumerates each multiset permutation once
    while next_permutation(&mut symbols) {
        out.push(Word(symbols.clone()));
    }
    out.sort();
    Ok(out)
}

fn next_permutation(s: &mut [char]) -> bool {
    if s.len() < 2 {
        return false;
    }
    let mut i = s.len() - 1;
    while i > 0 && s[i - 1] >= s[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = s.len() - 1;
    while s[j] <= s[i - 1] {
        j -= 1;
    }
    s.swap(i - 1, j);
    s[i..].reverse();
    true
}

/// Erases from `w` every letter outside `keep` (indices into `alphabet`).
pub fn project_word(alphabet: &Alphabet, w: &Word, keep: LetterSet) -> Word {
    Word(
        w.symbols()
            .iter()
            .copied()
            .filter(|&c| alphabet.index_of(c).is_some_and(|i| keep.contains(i)))
            .collect(),
    )
}

//! Star-free commutative languages as unions of `perm(u) ⧢ Γ*`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closure::{self, ClosureOutcome};
use crate::dpl::{DiagonalPeriodic, DplUnion};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parikh::{Alphabet, LetterSet, ParikhVector};
use crate::regularity::{decide_prefixed, FiniteLang};
use crate::Count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UpperBound {
    Finite(Count),
    Infinite,
}

impl UpperBound {
    fn exceeds(self, n: Count) -> bool {
        match self {
            UpperBound::Finite(s) => n < s,
            UpperBound::Infinite => true,
        }
    }
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Finite(s) => write!(f, "{s}"),
            UpperBound::Infinite => f.write_str("∞"),
        }
    }
}

/// `I(a, r, s)`: words with `r <= |w|_a < s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntervalConstraint {
    letter: char,
    lower: Count,
    upper: UpperBound,
}

impl IntervalConstraint {
    /// `None` when the interval is empty.
    pub fn new(letter: char, lower: Count, upper: UpperBound) -> Option<Self> {
        upper.exceeds(lower).then_some(IntervalConstraint { letter, lower, upper })
    }

    pub fn at_least(letter: char, lower: Count) -> Self {
        IntervalConstraint { letter, lower, upper: UpperBound::Infinite }
    }

    pub fn letter(&self) -> char {
        self.letter
    }

    pub fn lower(&self) -> Count {
        self.lower
    }

    pub fn upper(&self) -> UpperBound {
        self.upper
    }

    pub fn contains(&self, n: Count) -> bool {
        n >= self.lower && self.upper.exceeds(n)
    }

    /// `I(a, max r, min s)`, or `None` when empty.
    pub fn intersect(&self, other: &IntervalConstraint) -> Result<Option<IntervalConstraint>> {
        if self.letter != other.letter {
            return Err(Error::AlphabetMismatch { left: self.letter.to_string(), right: other.letter.to_string() });
        }
        Ok(IntervalConstraint::new(self.letter, self.lower.max(other.lower), self.upper.min(other.upper)))
    }
}

/// `perm(u) ⧢ Γ*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermShuffleTerm {
    base: ParikhVector,
    tail: LetterSet,
}

impl PermShuffleTerm {
    pub fn new(base: ParikhVector, tail: LetterSet) -> Self {
        PermShuffleTerm { base, tail }
    }

    pub fn base(&self) -> &ParikhVector {
        &self.base
    }

    pub fn tail(&self) -> LetterSet {
        self.tail
    }

    /// `v >= u` with the surplus on `Γ`.
    pub fn member(&self, v: &ParikhVector) -> bool {
        v.checked_sub(&self.base).is_some_and(|d| d.support().is_subset(self.tail))
    }

    /// Image under the projection onto `keep`, over the restricted alphabet.
    pub fn project(&self, keep: LetterSet) -> PermShuffleTerm {
        let kept: Vec<usize> = keep.iter().collect();
        let tail = LetterSet::from_indices(kept.iter().enumerate().filter(|(_, &i)| self.tail.contains(i)).map(|(j, _)| j));
        PermShuffleTerm { base: self.base.restrict(keep), tail }
    }

    /// Whether `(perm(u) ⧢ Γ*)^{⧢,*}` is regular: `u` uses at most one letter,
    /// or only letters of `Γ`.
    pub fn iterated_shuffle_regular(&self) -> bool {
        self.base.support().len() <= 1 || self.base.support().is_subset(self.tail)
    }

    pub fn to_term(&self) -> DiagonalPeriodic {
        DiagonalPeriodic::perm_shuffle_star(&self.base, self.tail)
    }

    /// Normal form of `{ε} ∪ perm(u) ⧢ perm({u} ∪ Γ)^{⧢,*}`.
    pub fn iterated_shuffle_normal_form(&self, alphabet: &Alphabet, limits: &Limits) -> Result<DplUnion> {
        if !self.iterated_shuffle_regular() {
            let offending = self.base.support().difference(self.tail).iter().next().expect("criterion failed");
            return Err(Error::CriterionViolated(alphabet.letter(offending)));
        }
        let u = alphabet.canonical_word(&self.base);
        let mut words = vec![u.clone()];
        words.extend(self.tail.iter().map(|i| alphabet.canonical_word(&ParikhVector::unit(alphabet.len(), i))));
        let lang = FiniteLang::new(alphabet.clone(), words)?;
        let verdict = decide_prefixed(&u, &lang, limits)?;
        let rep = verdict.representation.expect("criterion holds");
        rep.union(&DplUnion::epsilon(alphabet.clone()))
    }
}

/// A finite union of [`PermShuffleTerm`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperiodicUnion {
    alphabet: Alphabet,
    terms: Vec<PermShuffleTerm>,
}

impl AperiodicUnion {
    pub fn new(alphabet: Alphabet, mut terms: Vec<PermShuffleTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.base.dim() != alphabet.len() || !t.tail.is_subset(alphabet.full())) {
            return Err(Error::AlphabetMismatch { left: alphabet.to_string(), right: format!("{:?}", t) });
        }
        terms.sort();
        terms.dedup();
        Ok(AperiodicUnion { alphabet, terms })
    }

    /// Words satisfying every constraint, as a union of terms.
    ///
    /// Constraints on the same letter are intersected first. Letters with a
    /// finite upper bound contribute one term per admissible count; the other
    /// letters form `Γ`.
    pub fn from_intervals(constraints: &[IntervalConstraint], alphabet: &Alphabet) -> Result<Self> {
        let mut per_letter: BTreeMap<usize, IntervalConstraint> = BTreeMap::new();
        for c in constraints {
            let i = alphabet.try_index(c.letter)?;
            match per_letter.get(&i) {
                None => {
                    per_letter.insert(i, *c);
                }
                Some(prev) => match prev.intersect(c)? {
                    Some(merged) => {
                        per_letter.insert(i, merged);
                    }
                    None => return AperiodicUnion::new(alphabet.clone(), Vec::new()),
                },
            }
        }
        let dim = alphabet.len();
        let mut tail = alphabet.full();
        let mut choices: Vec<Vec<(usize, Count)>> = Vec::new();
        for (&i, c) in &per_letter {
            match c.upper {
                UpperBound::Infinite => choices.push(vec![(i, c.lower)]),
                UpperBound::Finite(s) => {
                    tail.remove(i);
                    choices.push((c.lower..s).map(|n| (i, n)).collect());
                }
            }
        }
        let mut bases = vec![ParikhVector::zero(dim)];
        for options in &choices {
            bases = bases
                .iter()
                .flat_map(|b| {
                    options.iter().map(move |&(i, n)| {
                        let mut b = b.clone();
                        b.set(i, n);
                        b
                    })
                })
                .collect();
        }
        AperiodicUnion::new(alphabet.clone(), bases.into_iter().map(|b| PermShuffleTerm::new(b, tail)).collect())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> &[PermShuffleTerm] {
        &self.terms
    }

    pub fn member(&self, v: &ParikhVector) -> bool {
        self.terms.iter().any(|t| t.member(v))
    }

    pub fn project(&self, keep: LetterSet) -> AperiodicUnion {
        let keep = keep.intersection(self.alphabet.full());
        let mut terms: Vec<PermShuffleTerm> = self.terms.iter().map(|t| t.project(keep)).collect();
        terms.sort();
        terms.dedup();
        AperiodicUnion { alphabet: self.alphabet.restrict(keep), terms }
    }

    pub fn to_dpl_union(&self) -> DplUnion {
        DplUnion::new(self.alphabet.clone(), self.terms.iter().map(PermShuffleTerm::to_term).collect())
            .expect("terms match the alphabet")
    }

    /// Iterated shuffle of the union.
    ///
    /// When every term passes the single-term criterion the closure is the
    /// shuffle of the terms' closures; otherwise the general fragment engine
    /// decides, possibly reporting [`ClosureOutcome::Undecided`].
    pub fn iterated_shuffle(&self, limits: &Limits) -> Result<ClosureOutcome> {
        if self.terms.iter().all(PermShuffleTerm::iterated_shuffle_regular) {
            let mut acc = DplUnion::epsilon(self.alphabet.clone());
            for t in &self.terms {
                acc = acc.shuffle(&t.iterated_shuffle_normal_form(&self.alphabet, limits)?, limits)?;
            }
            return Ok(ClosureOutcome::Regular(acc));
        }
        closure::iterated_shuffle(&self.to_dpl_union(), limits)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|t| TermJson {
                u: t
                    .base
                    .counts()
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(i, &n)| (self.alphabet.letter(i).to_string(), n))
                    .collect(),
                gamma: t.tail.iter().map(|i| self.alphabet.letter(i).to_string()).collect(),
            })
            .collect();
        let doc = UnionJson { alphabet: self.alphabet.letters().iter().map(char::to_string).collect(), terms };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: UnionJson = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        let letter = |s: &str| -> Result<char> {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::Format(format!("expected a single letter, got {s:?}"))),
            }
        };
        let alphabet = Alphabet::new(doc.alphabet.iter().map(|s| letter(s)).collect::<Result<Vec<_>>>()?)?;
        let mut terms = Vec::with_capacity(doc.terms.len());
        for t in doc.terms {
            let mut base = ParikhVector::zero(alphabet.len());
            for (s, n) in &t.u {
                base.set(alphabet.try_index(letter(s)?)?, *n);
            }
            let tail = alphabet.letter_set(t.gamma.iter().map(|s| letter(s)).collect::<Result<Vec<_>>>()?)?;
            terms.push(PermShuffleTerm::new(base, tail));
        }
        AperiodicUnion::new(alphabet, terms)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnionJson {
    alphabet: Vec<String>,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    u: BTreeMap<String, Count>,
    gamma: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{closure_under_addition, dpl_enumerate, sets_equal, VectorSet};
    use crate::parikh::{parikh, project_word};
    use proptest::prelude::*;

    fn alpha(s: &str) -> Alphabet {
        Alphabet::parse(s).unwrap()
    }

    fn v(c: &[Count]) -> ParikhVector {
        ParikhVector::from_counts(c.to_vec())
    }

    fn set(sigma: &Alphabet, letters: &str) -> LetterSet {
        sigma.letter_set(letters.chars()).unwrap()
    }

    fn iv(letter: char, lower: Count, upper: Option<Count>) -> IntervalConstraint {
        IntervalConstraint::new(letter, lower, upper.map_or(UpperBound::Infinite, UpperBound::Finite)).unwrap()
    }

    #[test]
    fn interval_examples() {
        assert_eq!(iv('a', 1, Some(5)).intersect(&iv('a', 3, None)).unwrap(), Some(iv('a', 3, Some(5))));
        assert_eq!(iv('a', 0, Some(2)).intersect(&iv('a', 2, Some(4))).unwrap(), None);
        let x = iv('a', 2, Some(7));
        assert_eq!(iv('a', 0, None).intersect(&x).unwrap(), Some(x));
        assert!(iv('a', 0, None).intersect(&iv('b', 0, None)).is_err());
        assert_eq!(IntervalConstraint::new('a', 3, UpperBound::Finite(3)), None);
    }

    #[test]
    fn intervals_to_terms_examples() {
        let sigma = alpha("ab");
        let u = AperiodicUnion::from_intervals(&[iv('a', 2, None)], &sigma).unwrap();
        assert_eq!(u.terms(), &[PermShuffleTerm::new(v(&[2, 0]), sigma.full())]);

        let u = AperiodicUnion::from_intervals(&[iv('a', 1, Some(3))], &sigma).unwrap();
        let b = set(&sigma, "b");
        assert_eq!(u.terms(), &[PermShuffleTerm::new(v(&[1, 0]), b), PermShuffleTerm::new(v(&[2, 0]), b)]);
        for w in sigma.words_up_to(6) {
            let x = parikh(&sigma, &w).unwrap();
            assert_eq!(u.member(&x), (1..3).contains(&x.get(0)));
        }

        let u = AperiodicUnion::from_intervals(&[iv('a', 0, Some(1)), iv('b', 0, Some(1))], &sigma).unwrap();
        assert_eq!(u.terms(), &[PermShuffleTerm::new(v(&[0, 0]), LetterSet::empty())]);
    }

    #[test]
    fn term_member_examples() {
        let sigma = alpha("ab");
        let t = PermShuffleTerm::new(v(&[1, 1]), set(&sigma, "a"));
        assert!(t.member(&v(&[2, 1])));
        assert!(!t.member(&v(&[1, 2])));
        assert!(t.member(&v(&[1, 1])));
    }

    #[test]
    fn term_project_examples() {
        let sigma = alpha("abc");
        let t = PermShuffleTerm::new(v(&[1, 2, 0]), set(&sigma, "c"));
        assert_eq!(t.project(set(&sigma, "ac")), PermShuffleTerm::new(v(&[1, 0]), LetterSet::singleton(1)));
        assert_eq!(t.project(sigma.full()), t);

        let sigma = alpha("ab");
        let t = PermShuffleTerm::new(v(&[3, 0]), sigma.full());
        let p = t.project(set(&sigma, "b"));
        assert_eq!(p, PermShuffleTerm::new(v(&[0]), LetterSet::singleton(0)));
        // π_b(a³ ⧢ {a,b}*) = b*, by word enumeration
        let b_only = alpha("b");
        let images: std::collections::BTreeSet<_> = sigma
            .words_up_to(8)
            .into_iter()
            .filter(|w| t.member(&parikh(&sigma, w).unwrap()))
            .map(|w| project_word(&sigma, &w, set(&sigma, "b")))
            .filter(|w| w.len() <= 5)
            .collect();
        for w in b_only.words_up_to(5) {
            assert_eq!(images.contains(&w), p.member(&parikh(&b_only, &w).unwrap()));
        }
    }

    #[test]
    fn single_term_criterion() {
        let sigma = alpha("abc");
        assert!(!PermShuffleTerm::new(v(&[1, 1, 0]), set(&sigma, "a")).iterated_shuffle_regular());
        assert!(PermShuffleTerm::new(v(&[2, 0, 0]), set(&sigma, "c")).iterated_shuffle_regular());
        assert!(PermShuffleTerm::new(v(&[1, 1, 0]), set(&sigma, "ab")).iterated_shuffle_regular());
    }

    fn closed(t: &PermShuffleTerm, sigma: &Alphabet, bound: Count) -> VectorSet {
        let base = crate::oracle::enumerate_predicate(sigma, |x| t.member(x), bound).unwrap();
        closure_under_addition(&base, bound).unwrap()
    }

    #[test]
    fn single_term_normal_forms() {
        let limits = Limits::default();
        let a = alpha("a");
        let t = PermShuffleTerm::new(v(&[2]), LetterSet::empty());
        let nf = t.iterated_shuffle_normal_form(&a, &limits).unwrap();
        for n in 0..12 {
            assert_eq!(nf.member(&v(&[n])), n % 2 == 0);
        }

        let ab = alpha("ab");
        let t = PermShuffleTerm::new(v(&[1, 1]), ab.full());
        let nf = t.iterated_shuffle_normal_form(&ab, &limits).unwrap();
        assert_eq!(dpl_enumerate(&nf, 10).unwrap(), closed(&t, &ab, 10));
        for x in ab.vectors_up_to(10) {
            assert_eq!(nf.member(&x), x.is_zero() || (x.get(0) >= 1 && x.get(1) >= 1));
        }

        let t = PermShuffleTerm::new(v(&[0]), LetterSet::singleton(0));
        assert_eq!(t.iterated_shuffle_normal_form(&a, &limits).unwrap(), DplUnion::full(a.clone()));

        let bad = PermShuffleTerm::new(v(&[1, 1]), set(&ab, "a"));
        assert_eq!(bad.iterated_shuffle_normal_form(&ab, &limits), Err(Error::CriterionViolated('b')));
    }

    #[test]
    fn json_shape() {
        let sigma = alpha("ab");
        let u = AperiodicUnion::new(sigma.clone(), vec![PermShuffleTerm::new(v(&[1, 0]), sigma.full())]).unwrap();
        let s = u.to_json_value().to_string();
        assert_eq!(s, r#"{"alphabet":["a","b"],"terms":[{"gamma":["a","b"],"u":{"a":1}}]}"#);
        assert_eq!(AperiodicUnion::from_json_str(&s).unwrap(), u);
    }

    fn interval_strategy() -> impl Strategy<Value = Vec<IntervalConstraint>> {
        let one = (prop::sample::select(vec!['a', 'b', 'c']), 0..=3u64, prop::option::of(1..=3u64))
            .prop_map(|(c, r, w)| iv(c, r, w.map(|w| r + w)));
        prop::collection::vec(one, 0..=4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn intervals_match_constraints(cs in interval_strategy()) {
            let sigma = alpha("abc");
            let u = AperiodicUnion::from_intervals(&cs, &sigma).unwrap();
            for w in sigma.words_up_to(8) {
                let x = parikh(&sigma, &w).unwrap();
                let expected = cs.iter().all(|c| c.contains(x.get(sigma.index_of(c.letter()).unwrap())));
                prop_assert_eq!(u.member(&x), expected);
            }
        }

        #[test]
        fn projection_of_interval_unions_is_interval_union(cs in interval_strategy(), mask in 0u64..8) {
            let sigma = alpha("abc");
            let keep = LetterSet::from_indices((0..3).filter(|i| mask & (1 << i) != 0));
            let u = AperiodicUnion::from_intervals(&cs, &sigma).unwrap();
            let projected = u.project(keep);
            // the same language from the constraints on kept letters alone
            let restricted = sigma.restrict(keep);
            let kept_cs: Vec<_> = cs.iter().filter(|c| keep.contains(sigma.index_of(c.letter()).unwrap())).copied().collect();
            let direct = AperiodicUnion::from_intervals(&kept_cs, &restricted).unwrap();
            let nonempty = sigma.vectors_up_to(12).iter().any(|x| u.member(x));
            for x in restricted.vectors_up_to(8) {
                prop_assert_eq!(projected.member(&x), nonempty && direct.member(&x));
            }
        }
    }

    fn example_item(n: usize) -> AperiodicUnion {
        let sigma = alpha("abc");
        let ab = set(&sigma, "ab");
        let t = |u: &[Count], g: LetterSet| PermShuffleTerm::new(v(u), g);
        let terms = match n {
            1 => vec![t(&[1, 1, 0], LetterSet::empty()), t(&[0, 0, 1], ab)],
            2 => vec![t(&[1, 1, 0], set(&sigma, "c")), t(&[1, 0, 1], ab)],
            3 => vec![t(&[1, 1, 0], LetterSet::empty()), t(&[0, 0, 1], ab), t(&[1, 2, 0], ab)],
            _ => vec![
                t(&[1, 1, 0], LetterSet::empty()),
                t(&[0, 0, 1], ab),
                t(&[1, 2, 0], set(&sigma, "a")),
                t(&[0, 2, 0], LetterSet::empty()),
            ],
        };
        AperiodicUnion::new(sigma, terms).unwrap()
    }

    #[test]
    fn worked_examples() {
        let limits = Limits::default();
        for n in 1..=2 {
            let out = example_item(n).iterated_shuffle(&limits).unwrap();
            assert_eq!(out.status(), "undecided", "item {n}");
        }
        for n in 3..=4 {
            let u = example_item(n);
            let out = u.iterated_shuffle(&limits).unwrap();
            let rep = out.representation().unwrap_or_else(|| panic!("item {n}: {out:?}"));
            let base = crate::oracle::enumerate_predicate(u.alphabet(), |x| u.member(x), 9).unwrap();
            let closed = closure_under_addition(&base, 9).unwrap();
            let (eq, witness) = sets_equal(&dpl_enumerate(rep, 9).unwrap(), &closed).unwrap();
            assert!(eq, "item {n} differs at {witness:?}");
        }
    }
}

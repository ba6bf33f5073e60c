use num_integer::Integer;
use serde::Serialize;

use super::Dfa;
use crate::error::{Error, Result};

impl Dfa {
    /// First `(q, a, b)` with `δ(q, ab) != δ(q, ba)`; both undefined counts
    /// as equal.
    pub fn commutativity_violation(&self) -> Option<(usize, char, char)> {
        let k = self.alphabet.len();
        for q in 0..self.state_count() {
            for a in 0..k {
                for b in a + 1..k {
                    let ab = self.step(q, a).and_then(|p| self.step(p, b));
                    let ba = self.step(q, b).and_then(|p| self.step(p, a));
                    if ab != ba {
                        return Some((q, self.alphabet.letter(a), self.alphabet.letter(b)));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_violation().is_none()
    }

    pub(super) fn require_commutative(&self) -> Result<()> {
        match self.commutativity_violation() {
            None => Ok(()),
            Some((state, first, second)) => Err(Error::NotCommutative { state, first, second }),
        }
    }

    /// Action of letter `a` on states, with undefined sent to an extra sink
    /// state `n`.
    pub(super) fn letter_map(&self, a: usize) -> Vec<usize> {
        let n = self.state_count();
        let mut f: Vec<usize> = (0..n).map(|q| self.step(q, a).unwrap_or(n)).collect();
        f.push(n);
        f
    }

    /// Whether every letter's action `f` satisfies `f^m = f^{m+1}` for some
    /// `m`. Only meaningful for commutative automata, so others are rejected.
    pub fn is_aperiodic(&self) -> Result<bool> {
        self.require_commutative()?;
        Ok((0..self.alphabet.len()).all(|a| {
            let f = self.letter_map(a);
            let (_, period) = index_and_period(&f);
            period == 1
        }))
    }

    /// Whether the automaton is complete and every letter permutes the states.
    pub fn is_permutation(&self) -> bool {
        if !self.is_complete() {
            return false;
        }
        let n = self.state_count();
        (0..self.alphabet.len()).all(|a| {
            let mut hit = vec![false; n];
            (0..n).all(|q| {
                let t = self.step(q, a).expect("complete");
                !std::mem::replace(&mut hit[t], true)
            })
        })
    }

    pub fn report(&self) -> AutomatonReport {
        let commutative = self.is_commutative();
        AutomatonReport {
            commutative,
            aperiodic: if commutative { self.is_aperiodic().ok() } else { None },
            permutation: self.is_permutation(),
            state_count: self.state_count(),
            complete: self.is_complete(),
        }
    }
}

/// Least `(m, l)` with `f^m = f^{m+l}`, `l >= 1`, as maps on `0..f.len()`:
/// `m` is the longest tail and `l` the lcm of the cycle lengths of `f`.
pub(super) fn index_and_period(f: &[usize]) -> (usize, usize) {
    let n = f.len();
    const UNSEEN: usize = usize::MAX;
    // tail[q]: steps from q into a cycle, once known
    let mut tail = vec![UNSEEN; n];
    let mut stamp = vec![UNSEEN; n];
    let mut period = 1usize;
    for s in 0..n {
        if tail[s] != UNSEEN {
            continue;
        }
        let mut path = Vec::new();
        let mut q = s;
        while tail[q] == UNSEEN && stamp[q] == UNSEEN {
            stamp[q] = s;
            path.push(q);
            q = f[q];
        }
        if tail[q] == UNSEEN {
            // q is on a new cycle that closes inside `path`
            let start = path.iter().position(|&p| p == q).expect("cycle on path");
            period = period.lcm(&(path.len() - start));
            for &c in &path[start..] {
                tail[c] = 0;
            }
            path.truncate(start);
        }
        let mut t = tail[q];
        for &p in path.iter().rev() {
            t += 1;
            tail[p] = t;
        }
    }
    (tail.into_iter().max().unwrap_or(0), period)
}

/// Summary of the classification predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AutomatonReport {
    pub commutative: bool,
    /// `None` for non-commutative automata, where the per-letter test does
    /// not apply.
    pub aperiodic: Option<bool>,
    pub permutation: bool,
    pub state_count: usize,
    pub complete: bool,
}

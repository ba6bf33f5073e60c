//! Deterministic automata for commutative languages.
//!
//! Transitions may be undefined; an undefined transition rejects. Undefined
//! transitions are how letters fixed at count zero are encoded.

mod build;
mod extract;
mod minimize;
mod predicates;
mod project;

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parikh::{Alphabet, ParikhVector, Word};

pub use build::dpl_to_dfa;
pub use extract::dfa_to_dpl;
pub use predicates::AutomatonReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: usize,
    finals: Vec<bool>,
    /// `delta[q][i]` is the successor of `q` on the `i`-th letter.
    delta: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, start: usize, finals: Vec<bool>, delta: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = delta.len();
        if n == 0 || start >= n || finals.len() != n {
            return Err(Error::Format(format!("automaton with {n} states, start {start}, {} final flags", finals.len())));
        }
        for row in &delta {
            if row.len() != alphabet.len() || row.iter().flatten().any(|&t| t >= n) {
                return Err(Error::Format("transition row does not match the alphabet or states".to_string()));
            }
        }
        Ok(Dfa { alphabet, start, finals, delta })
    }

    /// Builds from `(from, letter, to)` triples.
    pub fn from_transitions(
        alphabet: Alphabet,
        states: usize,
        start: usize,
        finals: &[usize],
        transitions: &[(usize, char, usize)],
    ) -> Result<Self> {
        let mut delta = vec![vec![None; alphabet.len()]; states];
        for &(from, c, to) in transitions {
            let i = alphabet.try_index(c)?;
            let row = delta.get_mut(from).ok_or_else(|| Error::Format(format!("state {from} out of range")))?;
            if row[i].is_some_and(|t| t != to) {
                return Err(Error::Format(format!("two transitions from {from} on {c}")));
            }
            row[i] = Some(to);
        }
        let mut flags = vec![false; states];
        for &f in finals {
            *flags.get_mut(f).ok_or_else(|| Error::Format(format!("final state {f} out of range")))? = true;
        }
        Dfa::new(alphabet, start, flags, delta)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&q| self.finals[q]).collect()
    }

    pub fn step(&self, q: usize, letter: usize) -> Option<usize> {
        self.delta[q][letter]
    }

    /// State reached from `q` on `w`, if every step is defined.
    pub fn run_from(&self, q: usize, w: &Word) -> Option<usize> {
        w.symbols().iter().try_fold(q, |q, &c| self.step(q, self.alphabet.index_of(c)?))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.run_from(self.start, w).is_some_and(|q| self.finals[q])
    }

    /// Acceptance of the canonical word with Parikh vector `v`; for a
    /// commutative language this decides membership of `v`.
    pub fn accepts_vector(&self, v: &ParikhVector) -> bool {
        self.accepts(&self.alphabet.canonical_word(v))
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// The same automaton with undefined transitions sent to a fresh sink.
    pub fn completed(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let sink = self.state_count();
        let mut delta: Vec<Vec<Option<usize>>> =
            self.delta.iter().map(|row| row.iter().map(|t| Some(t.unwrap_or(sink))).collect()).collect();
        delta.push(vec![Some(sink); self.alphabet.len()]);
        let mut finals = self.finals.clone();
        finals.push(false);
        Dfa { alphabet: self.alphabet.clone(), start: self.start, finals, delta }
    }

    /// Keeps the states reachable from the start, renumbered in BFS order
    /// (letters in alphabet order).
    pub fn trimmed(&self) -> Dfa {
        let order = bfs_order(self.start, self.state_count(), |q| self.delta[q].iter().flatten().copied().collect());
        self.renumbered(&order)
    }

    fn renumbered(&self, order: &[usize]) -> Dfa {
        let mut index = vec![usize::MAX; self.state_count()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|t| t.map(|t| index[t])).collect())
            .collect();
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa { alphabet: self.alphabet.clone(), start: 0, finals, delta }
    }

    pub fn minimize(&self) -> Dfa {
        minimize::minimize(self)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.finals[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {q} [shape={shape}];");
        }
        let _ = writeln!(out, "  init -> {};", self.start);
        for (q, row) in self.delta.iter().enumerate() {
            for (i, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    let _ = writeln!(out, "  {q} -> {t} [label=\"{}\"];", self.alphabet.letter(i));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let delta = self
            .delta
            .iter()
            .enumerate()
            .flat_map(|(q, row)| {
                row.iter()
                    .enumerate()
                    .filter_map(move |(i, t)| t.map(|t| (q, self.alphabet.letter(i).to_string(), t)))
            })
            .collect();
        let doc = DfaJson {
            alphabet: self.alphabet.letters().iter().map(char::to_string).collect(),
            states: self.state_count(),
            start: self.start,
            finals: self.finals(),
            delta,
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Dfa> {
        let doc: DfaJson = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        let letter = |s: &str| -> Result<char> {
            let mut chars = s.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(Error::Format(format!("expected a single letter, got {s:?}"))),
            }
        };
        let alphabet = Alphabet::new(doc.alphabet.iter().map(|s| letter(s)).collect::<Result<Vec<_>>>()?)?;
        let transitions =
            doc.delta.iter().map(|(q, c, t)| Ok((*q, letter(c)?, *t))).collect::<Result<Vec<_>>>()?;
        Dfa::from_transitions(alphabet, doc.states, doc.start, &doc.finals, &transitions)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DfaJson {
    alphabet: Vec<String>,
    states: usize,
    start: usize,
    finals: Vec<usize>,
    delta: Vec<(usize, String, usize)>,
}

/// States reachable from `start`, in BFS order.
fn bfs_order(start: usize, n: usize, succ: impl Fn(usize) -> Vec<usize>) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(q) = queue.pop_front() {
        order.push(q);
        for t in succ(q) {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    order
}

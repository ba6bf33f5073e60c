use super::{bfs_order, Dfa};
use crate::error::Result;
use crate::parikh::LetterSet;

impl Dfa {
    /// Automaton for the projection onto `keep` of a commutative language.
    ///
    /// States are those reachable by words over `keep`; a state accepts when
    /// some word over the dropped letters leads from it to a final state.
    /// The result is over the restricted alphabet and has at most as many
    /// states as the input.
    pub fn project_automaton(&self, keep: LetterSet) -> Result<Dfa> {
        self.require_commutative()?;
        let k = self.alphabet.len();
        let keep = keep.intersection(self.alphabet.full());
        let kept: Vec<usize> = keep.iter().collect();
        let dropped: Vec<usize> = (0..k).filter(|&i| !keep.contains(i)).collect();
        let n = self.state_count();

        let order = bfs_order(self.start, n, |q| kept.iter().filter_map(|&a| self.step(q, a)).collect());
        let mut index = vec![usize::MAX; n];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }

        // states that reach a final state over dropped letters
        let mut good: Vec<bool> = self.finals.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for q in 0..n {
                if !good[q] && dropped.iter().any(|&a| self.step(q, a).is_some_and(|t| good[t])) {
                    good[q] = true;
                    changed = true;
                }
            }
        }

        let delta = order
            .iter()
            .map(|&q| kept.iter().map(|&a| self.step(q, a).map(|t| index[t])).collect())
            .collect();
        let finals = order.iter().map(|&q| good[q]).collect();
        Dfa::new(self.alphabet.restrict(keep), 0, finals, delta)
    }
}

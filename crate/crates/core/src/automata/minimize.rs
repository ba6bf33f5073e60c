use std::collections::HashMap;

use super::Dfa;

/// Minimal complete DFA: complete with a sink, trim, then refine the
/// accepting/rejecting partition until successors agree.
pub(super) fn minimize(d: &Dfa) -> Dfa {
    let d = d.completed().trimmed();
    let n = d.state_count();
    let k = d.alphabet.len();
    let mut class: Vec<usize> = d.finals.iter().map(|&f| usize::from(f)).collect();
    let mut count = renumber(&mut class);
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let mut key = Vec::with_capacity(k + 1);
            key.push(class[q]);
            key.extend(d.delta[q].iter().map(|t| class[t.expect("complete")]));
            let fresh = ids.len();
            next[q] = *ids.entry(key).or_insert(fresh);
        }
        let new_count = ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    let mut delta = vec![Vec::new(); count];
    let mut finals = vec![false; count];
    for q in 0..n {
        let c = class[q];
        if delta[c].is_empty() {
            delta[c] = d.delta[q].iter().map(|t| t.map(|t| class[t])).collect();
            finals[c] = d.finals[q];
        }
    }
    Dfa { alphabet: d.alphabet.clone(), start: class[d.start], finals, delta }.trimmed()
}

fn renumber(class: &mut [usize]) -> usize {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    for c in class.iter_mut() {
        let fresh = ids.len();
        *c = *ids.entry(*c).or_insert(fresh);
    }
    ids.len()
}

use num_integer::Integer;

use super::Dfa;
use crate::dpl::{Component, DplUnion};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parikh::ParikhVector;
use crate::Count;

/// Per-letter capped counter: counts below `threshold` are exact, larger
/// counts are kept modulo `cycle`. Without any periodic component the
/// counter stops at `threshold - 1` and further letters are undefined.
#[derive(Debug, Clone, Copy)]
struct Counter {
    threshold: Count,
    cycle: Count,
    bounded: bool,
}

impl Counter {
    fn size(&self) -> Count {
        if self.bounded {
            self.threshold
        } else {
            self.threshold + self.cycle
        }
    }

    fn next(&self, c: Count) -> Option<Count> {
        if c + 1 < self.size() {
            Some(c + 1)
        } else if self.bounded {
            None
        } else {
            Some(self.threshold)
        }
    }
}

/// Compiles a union into a DFA over shared per-letter counters.
///
/// For each letter the counter is exact below the largest offset (or fixed
/// count plus one) and cycles with the lcm of the letter's periods above
/// it, so every term's membership is a function of the counter state.
pub fn dpl_to_dfa(u: &DplUnion, limits: &Limits) -> Result<Dfa> {
    let dim = u.alphabet().len();
    if u.is_empty() {
        return Dfa::new(u.alphabet().clone(), 0, vec![false], vec![vec![None; dim]]);
    }
    let counters: Vec<Counter> = (0..dim)
        .map(|a| {
            let mut threshold = 0;
            let mut cycle = 1;
            let mut bounded = true;
            for t in u.terms() {
                match t.component(a) {
                    Component::Fixed(n) => threshold = threshold.max(n + 1),
                    Component::Periodic(p) => {
                        bounded = false;
                        threshold = threshold.max(p.offset());
                        cycle = cycle.lcm(&p.period());
                    }
                }
            }
            Counter { threshold, cycle, bounded }
        })
        .collect();

    let needed = counters.iter().fold(1u128, |acc, c| acc.saturating_mul(c.size() as u128));
    if needed > limits.max_states as u128 {
        return Err(Error::Resource {
            what: "automaton states",
            limit: limits.max_states,
            needed: usize::try_from(needed).unwrap_or(usize::MAX),
        });
    }
    let size = needed as usize;

    let radix: Vec<usize> = counters.iter().map(|c| c.size() as usize).collect();
    let encode = |v: &[Count]| v.iter().zip(&radix).fold(0usize, |acc, (&x, &r)| acc * r + x as usize);
    let decode = |mut code: usize| {
        let mut v = vec![0 as Count; dim];
        for i in (0..dim).rev() {
            v[i] = (code % radix[i]) as Count;
            code /= radix[i];
        }
        v
    };

    let mut delta = Vec::with_capacity(size);
    let mut finals = Vec::with_capacity(size);
    for code in 0..size {
        let v = decode(code);
        finals.push(u.member(&ParikhVector::from_counts(v.clone())));
        let row = (0..dim)
            .map(|a| {
                counters[a].next(v[a]).map(|n| {
                    let mut w = v.clone();
                    w[a] = n;
                    encode(&w)
                })
            })
            .collect();
        delta.push(row);
    }
    Ok(Dfa::new(u.alphabet().clone(), 0, finals, delta)?.trimmed())
}

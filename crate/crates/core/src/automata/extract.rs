use super::predicates::index_and_period;
use super::Dfa;
use crate::dpl::{Component, DiagonalPeriodic, DplUnion};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parikh::ParikhVector;
use crate::{Count, Progression};

/// Largest number of words checked during verification before falling back
/// to one canonical word per Parikh vector.
const MAX_VERIFY_WORDS: usize = 200_000;

/// Reads a union of diagonal periodic terms off a commutative automaton.
///
/// Each letter's action on the states has an index `T_a` and a period `L_a`,
/// so acceptance depends only on the class of each count (exact below `T_a`,
/// modulo `L_a` above). Accepted classes become terms; an exact class `s > 0`
/// is widened to a progression when the language is closed under pushing the
/// count above the index, and otherwise the language is outside the positive
/// class. The result is checked against the automaton on all words of length
/// at most `bound` (default `2·(|Q| + 1)`), or, when there are too many such
/// words, on every vector whose count of each letter `a` is below
/// `2·(T_a + L_a)`.
pub fn dfa_to_dpl(d: &Dfa, bound: Option<usize>, limits: &Limits) -> Result<DplUnion> {
    d.require_commutative()?;
    let m = d.minimize();
    let alphabet = m.alphabet().clone();
    let dim = alphabet.len();
    let shape: Vec<(Count, Count)> = (0..dim)
        .map(|a| {
            let (index, period) = index_and_period(&m.letter_map(a));
            (index as Count, period as Count)
        })
        .collect();
    let needed = shape.iter().fold(1u128, |acc, &(t, l)| acc.saturating_mul((t + l) as u128));
    if needed > limits.max_states as u128 {
        return Err(Error::Resource {
            what: "count classes",
            limit: limits.max_states,
            needed: usize::try_from(needed).unwrap_or(usize::MAX),
        });
    }

    let classes: Vec<ParikhVector> = class_representatives(&shape);
    let mut terms = Vec::new();
    for rep in classes.iter().filter(|r| m.accepts_vector(r)) {
        let exact: Vec<usize> = (0..dim).filter(|&a| rep.get(a) > 0 && rep.get(a) < shape[a].0).collect();
        // every way of pushing exact nonzero counts past the index must stay accepted
        for mask in 1u64..(1 << exact.len()) {
            let mut lifted = rep.clone();
            for (j, &a) in exact.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    lifted.set(a, lift(rep.get(a), shape[a]));
                }
            }
            if !m.accepts_vector(&lifted) {
                let a = exact.iter().enumerate().find(|(j, _)| mask & (1 << j) != 0).map(|(_, &a)| a).unwrap_or(0);
                return Err(Error::NotInPositiveClass(format!(
                    "{} is accepted but adding more '{}' leaves the language",
                    rep.render(&alphabet),
                    alphabet.letter(a)
                )));
            }
        }
        let components = (0..dim)
            .map(|a| {
                let (t, l) = shape[a];
                let c = rep.get(a);
                if c >= t {
                    Component::Periodic(Progression::new(c, l).expect("positive period"))
                } else if c == 0 {
                    Component::Fixed(0)
                } else {
                    Component::Periodic(Progression::new(c, lift(c, (t, l)) - c).expect("positive period"))
                }
            })
            .collect();
        terms.push(DiagonalPeriodic::new(components));
    }
    let u = DplUnion::new(alphabet.clone(), terms)?;
    let boxed: Vec<Count> = shape.iter().map(|&(t, l)| 2 * (t + l)).collect();
    verify(&u, d, bound.unwrap_or(2 * (d.state_count() + 1)), &boxed)?;
    Ok(u)
}

/// Least count `c + j·L >= T` with `j >= 1`.
fn lift(c: Count, (t, l): (Count, Count)) -> Count {
    let mut x = c + l;
    while x < t {
        x += l;
    }
    x
}

fn class_representatives(shape: &[(Count, Count)]) -> Vec<ParikhVector> {
    let mut out = vec![Vec::new()];
    for &(t, l) in shape {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Count>| {
                (0..t + l).map(move |c| {
                    let mut v = prefix.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(ParikhVector::from_counts).collect()
}

fn verify(u: &DplUnion, d: &Dfa, bound: usize, boxed: &[Count]) -> Result<()> {
    let alphabet = d.alphabet();
    let k = alphabet.len().max(1);
    let words_needed = (0..=bound as u32).fold(0usize, |acc, i| acc.saturating_add(k.saturating_pow(i)));
    if words_needed <= MAX_VERIFY_WORDS {
        for w in alphabet.words_up_to(bound) {
            let v = crate::parikh::parikh(alphabet, &w)?;
            if u.member(&v) != d.accepts(&w) {
                return Err(Error::NotInPositiveClass(format!("extracted union disagrees with the automaton on {w}")));
            }
        }
    } else {
        let mut cur = vec![0 as Count; boxed.len()];
        loop {
            let v = ParikhVector::from_counts(cur.clone());
            if u.member(&v) != d.accepts_vector(&v) {
                return Err(Error::NotInPositiveClass(format!(
                    "extracted union disagrees with the automaton on {}",
                    v.render(alphabet)
                )));
            }
            let Some(i) = (0..cur.len()).find(|&i| cur[i] + 1 < boxed[i]) else {
                break;
            };
            cur[i] += 1;
            cur[..i].fill(0);
        }
    }
    Ok(())
}

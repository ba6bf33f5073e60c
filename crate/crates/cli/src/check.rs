//! Brute-force evaluation on Parikh vectors, for `check`.
//!
//! Every operator is evaluated directly on bounded vector sets: union and
//! intersection as set operations, shuffle as the sumset, iterated shuffle
//! as the additive closure. Only projection is not exact at a fixed bound,
//! because a short image can have a long preimage; its operand is enumerated
//! with extra room for the erased letters.

use comlang::oracle::{closure_under_addition, enumerate_predicate, sets_equal, MAX_VECTOR_BOUND};
use comlang::{Alphabet, Count, ParikhVector, VectorSet};

use crate::eval::{enumerate, natural_alphabet, Value};
use crate::parse::Expr;
use crate::CliError;

/// Result of comparing an evaluated expression with the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub bound: Count,
    pub symbolic: usize,
    pub oracle: usize,
    pub counterexample: Option<ParikhVector>,
    pub alphabet: Alphabet,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn render(&self) -> String {
        match &self.counterexample {
            None => format!("PASS: {} vectors agree up to bound {}", self.symbolic, self.bound),
            Some(v) => format!(
                "FAIL: first difference at {} (symbolic {} vectors, oracle {} vectors, bound {})",
                v.render(&self.alphabet),
                self.symbolic,
                self.oracle,
                self.bound
            ),
        }
    }
}

/// Compares `value`, the evaluation of `e`, with a brute-force evaluation of `e`.
pub fn check(e: &Expr, value: &Value, session: &Alphabet, bound: Count) -> Result<CheckReport, CliError> {
    let sigma = natural_alphabet(e, session)?.unwrap_or_else(|| session.clone());
    let oracle = brute(e, &sigma, session, bound)?;
    let symbolic = enumerate(value, bound)?;
    let (_, counterexample) = sets_equal(&symbolic, &oracle)?;
    Ok(CheckReport {
        bound,
        symbolic: symbolic.len(),
        oracle: oracle.len(),
        counterexample,
        alphabet: sigma,
    })
}

/// Extra bound granted to the operand of a projection.
fn preimage_bound(bound: Count) -> Count {
    (2 * bound).min(MAX_VECTOR_BOUND).max(bound)
}

/// Members of `e` over `sigma` with coordinate sum at most `bound`.
pub fn brute(e: &Expr, sigma: &Alphabet, session: &Alphabet, bound: Count) -> Result<VectorSet, CliError> {
    let pred = |f: &dyn Fn(&ParikhVector) -> bool| Ok(enumerate_predicate(sigma, f, bound)?);
    let count = |v: &ParikhVector, a: char| sigma.index_of(a).map(|i| v.get(i));
    let check_letters = |letters: &[char]| -> Result<(), CliError> {
        sigma.letter_set(letters.iter().copied())?;
        Ok(())
    };
    match e {
        Expr::WordLit(w) | Expr::Perm(w) => {
            let target = comlang::parikh::parikh(sigma, &sigma.word(w)?)?;
            pred(&|v| *v == target)
        }
        Expr::SetLit(ws) => {
            let targets = ws
                .iter()
                .map(|w| Ok(comlang::parikh::parikh(sigma, &sigma.word(w)?)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            pred(&|v| targets.contains(v))
        }
        Expr::Fcount(a, t) => {
            check_letters(&[*a])?;
            pred(&|v| count(v, *a).unwrap() >= *t)
        }
        Expr::Fmod(a, r, n) => {
            check_letters(&[*a])?;
            pred(&|v| count(v, *a).unwrap() % n == *r)
        }
        Expr::Star(g) | Expr::Plus(g) => {
            check_letters(g)?;
            let plus = matches!(e, Expr::Plus(_));
            pred(&|v| {
                (0..sigma.len()).all(|i| v.get(i) == 0 || g.contains(&sigma.letter(i))) && !(plus && v.is_zero())
            })
        }
        Expr::Union(x, y) | Expr::Intersect(x, y) => {
            let (x, y) = (brute(x, sigma, session, bound)?, brute(y, sigma, session, bound)?);
            let both = matches!(e, Expr::Intersect(..));
            Ok(VectorSet::new(
                sigma.clone(),
                sigma
                    .vectors_up_to(bound)
                    .into_iter()
                    .filter(|v| if both { x.contains(v) && y.contains(v) } else { x.contains(v) || y.contains(v) }),
                bound,
            ))
        }
        Expr::Shuffle(x, y) => {
            let (x, y) = (brute(x, sigma, session, bound)?, brute(y, sigma, session, bound)?);
            Ok(x.sumset(&y))
        }
        Expr::IterShuffle(x) => Ok(closure_under_addition(&brute(x, sigma, session, bound)?, bound)?),
        Expr::Project(x, keep) => {
            let inner_sigma = natural_alphabet(x, session)?.unwrap_or_else(|| session.clone());
            let keep = inner_sigma.letter_set(keep.iter().copied())?;
            let inner = brute(x, &inner_sigma, session, preimage_bound(bound))?;
            let images = inner.vectors().iter().map(|v| v.restrict(keep)).filter(|v| v.sum() <= bound);
            Ok(VectorSet::new(sigma.clone(), images, bound))
        }
        Expr::InvProject(x) => {
            let inner_sigma = natural_alphabet(x, session)?.unwrap_or_else(|| session.clone());
            let inner = brute(x, &inner_sigma, session, bound)?;
            let sub = sigma.embed(&inner_sigma)?;
            pred(&|v| inner.contains(&v.restrict(sub)))
        }
    }
}

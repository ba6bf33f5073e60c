//! Arithmetic progressions over a single letter count.
//!
//! A [`Progression`] `(k, p)` denotes `{k, k+p, k+2p, ...}`, the Parikh image
//! of `a^k (a^p)*`. Per-letter intersection goes through the generalized
//! Chinese remainder theorem ([`crt_solve`]); per-letter concatenation
//! (which is what shuffle does on a single letter) decomposes the sumset of
//! two progressions with the two-generator numerical semigroup.

use std::fmt;

use crate::num::{inv_mod, Natural};

/// `x ≡ residue (mod modulus)`, with `residue < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence<N> {
    residue: N,
    modulus: N,
}

impl<N: Natural> Congruence<N> {
    /// Returns `None` when `modulus == 0` or `residue >= modulus`.
    pub fn new(residue: N, modulus: N) -> Option<Self> {
        (!modulus.is_zero() && residue < modulus).then_some(Congruence { residue, modulus })
    }

    pub fn residue(&self) -> N {
        self.residue
    }

    pub fn modulus(&self) -> N {
        self.modulus
    }

    pub fn holds(&self, x: N) -> bool {
        x % self.modulus == self.residue
    }

    /// Combines two congruences into one, or `None` if they have no common solution.
    ///
    /// # Panics
    /// If the lcm of the moduli does not fit in `N`.
    pub fn merge(&self, other: &Self) -> Option<Self> {
        let (r1, m1) = (self.residue, self.modulus);
        let (r2, m2) = (other.residue, other.modulus);
        let g = m1.gcd(&m2);
        if r1 % g != r2 % g {
            return None;
        }
        let m2g = m2 / g;
        let lcm = (m1 / g).checked_mul(&m2).expect("lcm of moduli overflows");
        // m1 * t ≡ r2 - r1 (mod m2)  <=>  (m1/g) * t ≡ (r2 - r1)/g (mod m2/g)
        let diff = ((r2 % m2) + m2 - (r1 % m2)) % m2 / g;
        let t = crate::num::mul_mod(diff, inv_mod((m1 / g) % m2g, m2g), m2g);
        let x = m1.checked_mul(&t).and_then(|v| v.checked_add(&r1)).expect("CRT solution overflows");
        Some(Congruence {
            residue: x % lcm,
            modulus: lcm,
        })
    }
}

/// Solves a system of congruences by pairwise folding.
///
/// Returns the unique class `r (mod lcm)` satisfying every congruence, or
/// `None` when the system is unsolvable. The empty system is `0 (mod 1)`.
pub fn crt_solve<N: Natural>(system: &[Congruence<N>]) -> Option<Congruence<N>> {
    system
        .iter()
        .try_fold(Congruence { residue: N::zero(), modulus: N::one() }, |acc, c| acc.merge(c))
}

/// The set `{offset + i * period : i >= 0}`, with `period >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Progression<N> {
    offset: N,
    period: N,
}

impl<N: Natural> Progression<N> {
    /// Returns `None` for a zero period.
    pub fn new(offset: N, period: N) -> Option<Self> {
        (!period.is_zero()).then_some(Progression { offset, period })
    }

    /// All of `N`: `(0, 1)`.
    pub fn full() -> Self {
        Progression { offset: N::zero(), period: N::one() }
    }

    pub fn offset(&self) -> N {
        self.offset
    }

    pub fn period(&self) -> N {
        self.period
    }

    pub fn contains(&self, n: N) -> bool {
        n >= self.offset && (n - self.offset) % self.period == N::zero()
    }

    /// Whether every member of `other` is a member of `self`.
    pub fn includes(&self, other: &Self) -> bool {
        self.contains(other.offset) && (other.period % self.period).is_zero()
    }

    /// Intersection of two progressions; `None` when it is empty.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let c1 = Congruence { residue: self.offset % self.period, modulus: self.period };
        let c2 = Congruence { residue: other.offset % other.period, modulus: other.period };
        let class = c1.merge(&c2)?;
        let lo = self.offset.max(other.offset);
        let m = class.modulus;
        let bump = (class.residue + m - lo % m) % m;
        Some(Progression { offset: lo + bump, period: m })
    }

    /// Sumset `{x + y : x ∈ self, y ∈ other}` as a finite union of progressions.
    ///
    /// With `g = gcd(p1, p2)`, the sumset is `k1 + k2 + g·S` where `S` is the
    /// numerical semigroup generated by `p1/g` and `p2/g`. Members of `S`
    /// below its conductor `c` become progressions of period `p1`; everything
    /// from `c` on is covered by `(k1 + k2 + g·c, g)`.
    pub fn sumset(&self, other: &Self) -> Vec<Self> {
        let base = self.offset + other.offset;
        let g = self.period.gcd(&other.period);
        let a = self.period / g;
        let b = other.period / g;
        let conductor = two_generator_conductor(a, b);
        let mut out = Vec::new();
        let members = semigroup_members_below(&[a, b], conductor);
        for (e, &member) in members.iter().enumerate() {
            if member {
                let e = N::from_u64(e as u64).expect("semigroup index fits");
                out.push(Progression { offset: base + g * e, period: self.period });
            }
        }
        out.push(Progression { offset: base + g * conductor, period: g });
        normalize(out)
    }

    /// `{m * offset + i * period}`: the progression of `m`-fold sums whose
    /// offsets are all taken at the minimum.
    pub fn scale_offset(&self, m: N) -> Self {
        Progression { offset: self.offset * m, period: self.period }
    }

    pub fn shift(&self, by: N) -> Self {
        Progression { offset: self.offset + by, period: self.period }
    }
}

impl<N: Natural> fmt::Display for Progression<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}N", self.offset, self.period)
    }
}

/// Sorts, deduplicates and drops progressions contained in another member.
pub fn normalize<N: Natural>(mut progs: Vec<Progression<N>>) -> Vec<Progression<N>> {
    // coarser periods first so containers are visited before the contained
    progs.sort_by(|x, y| x.period.cmp(&y.period).then(x.offset.cmp(&y.offset)));
    progs.dedup();
    let mut kept: Vec<Progression<N>> = Vec::with_capacity(progs.len());
    for p in progs {
        if !kept.iter().any(|k| k.includes(&p)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

/// Conductor of the numerical semigroup `<a, b>` for coprime `a, b`:
/// `(a - 1)(b - 1)`, which is 0 when either generator is 1.
pub fn two_generator_conductor<N: Natural>(a: N, b: N) -> N {
    debug_assert!(a.gcd(&b) == N::one(), "generators must be coprime");
    (a - N::one()) * (b - N::one())
}

/// Membership table of the numerical semigroup generated by `gens` for
/// `0..limit`, by dynamic programming.
pub fn semigroup_members_below<N: Natural>(gens: &[N], limit: N) -> Vec<bool> {
    let limit = limit.to_usize().expect("semigroup limit fits in usize");
    let mut member = vec![false; limit];
    if limit > 0 {
        member[0] = true;
    }
    let gens: Vec<usize> = gens.iter().filter_map(|g| g.to_usize()).filter(|&g| g > 0).collect();
    for n in 1..limit {
        member[n] = gens.iter().any(|&g| g <= n && member[n - g]);
    }
    member
}

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{PrimInt, Unsigned};

/// Non-negative machine integer used for letter counts, offsets and periods.
pub trait Natural:
    PrimInt + Unsigned + Integer + Debug + Display + Hash + Default + Send + Sync + 'static
{
    fn from_u64(v: u64) -> Option<Self> {
        <Self as num_traits::NumCast>::from(v)
    }

    fn to_u64_saturating(self) -> u64 {
        self.to_u64().unwrap_or(u64::MAX)
    }
}

impl<T> Natural for T where
    T: PrimInt + Unsigned + Integer + Debug + Display + Hash + Default + Send + Sync + 'static
{
}

/// `(a * b) mod m` without intermediate overflow, provided `2 * m` fits in `N`.
pub(crate) fn mul_mod<N: Natural>(a: N, b: N, m: N) -> N {
    let (mut a, mut b) = (a % m, b % m);
    if let Some(p) = a.checked_mul(&b) {
        return p % m;
    }
    let mut acc = N::zero();
    while !b.is_zero() {
        if b.is_odd() {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b = b >> 1;
    }
    acc
}

fn add_mod<N: Natural>(a: N, b: N, m: N) -> N {
    // a, b < m
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

/// Inverse of `a` modulo `m`, assuming `gcd(a, m) == 1`.
pub(crate) fn inv_mod<N: Natural>(a: N, m: N) -> N {
    if m == N::one() {
        return N::zero();
    }
    // Extended Euclid with the Bezout coefficient kept in [0, m).
    let (mut old_r, mut r) = (a % m, m);
    let (mut old_s, mut s) = (N::one(), N::zero());
    while !r.is_zero() {
        let q = old_r / r;
        let next_r = old_r - q * r;
        old_r = r;
        r = next_r;
        let qs = mul_mod(q, s, m);
        let next_s = if old_s >= qs {
            old_s - qs
        } else {
            m - (qs - old_s)
        };
        old_s = s;
        s = next_s;
    }
    debug_assert!(old_r == N::one(), "inverse requested for non-unit");
    old_s % m
}

//! A fixed enumeration of ℚ: `r_1 = 0`, then the `j`-th positive rational of
//! the Calkin–Wilf sequence at position `2j` and its negation at `2j+1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::rational::Rational;

pub const ENUMERATION_TAG: &str = "calkin_wilf_signed";

/// Stern's diatomic sequence: `fusc(0) = 0`, `fusc(1) = 1`,
/// `fusc(2n) = fusc(n)`, `fusc(2n+1) = fusc(n) + fusc(n+1)`.
pub fn fusc(mut n: u64) -> u64 {
    let (mut a, mut b) = (1u64, 0u64);
    while n > 0 {
        if n & 1 == 1 {
            b += a;
        } else {
            a += b;
        }
        n >>= 1;
    }
    b
}

fn positive(j: u64) -> Rational {
    Rational::new(fusc(j), fusc(j + 1)).expect("fusc(j+1) > 0")
}

/// `r_i` for `i >= 1`.
///
/// # Panics
/// If `i == 0`.
pub fn enumerate_rationals(i: usize) -> Rational {
    assert!(i >= 1, "rationals are enumerated from index 1");
    if i == 1 {
        return Rational::zero();
    }
    let r = positive((i / 2) as u64);
    if i.is_multiple_of(2) {
        r
    } else {
        -r
    }
}

/// Successor in the Calkin–Wilf sequence: `1 / (2⌊x⌋ + 1 - x)`.
pub fn calkin_wilf_next(x: &Rational) -> Rational {
    (Rational::from(2 * x.floor() + 1) - x).recip()
}

/// The index `i` with `enumerate_rationals(i) == r`, or `None` if it does not
/// fit in `u64`.
pub fn rational_index(r: &Rational) -> Option<u64> {
    if r.is_zero() {
        return Some(1);
    }
    let (mut p, mut q) = (r.numer().abs(), r.denom().clone());
    // path from the node up to the root 1/1, as runs of (bit, length)
    let mut runs: Vec<(u64, u64)> = Vec::new();
    let mut depth = 0u64;
    let one = BigInt::one();
    while !(p.is_one() && q.is_one()) {
        let (bit, k) = if p < q {
            let k = (&q - &one) / &p;
            q -= &k * &p;
            (0, k)
        } else {
            let k = (&p - &one) / &q;
            p -= &k * &q;
            (1, k)
        };
        let k = k.to_u64()?;
        depth = depth.checked_add(k)?;
        if depth > 62 {
            return None;
        }
        runs.push((bit, k));
    }
    let mut j = 1u64;
    for &(bit, k) in runs.iter().rev() {
        for _ in 0..k {
            j = 2 * j + bit;
        }
    }
    Some(2 * j + u64::from(r.is_negative()))
}

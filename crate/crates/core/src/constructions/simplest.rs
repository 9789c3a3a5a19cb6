use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Rational;

/// The rational of least denominator in the open interval `(lo, hi)`, ties
/// broken by least numerator. Assumes `lo < hi`.
///
/// Continued-fraction form of the Stern–Brocot descent: strip the integer
/// part, then continue on the reciprocal interval. Runs on unreduced integer
/// pairs; convergents come out coprime.
fn simplest(lo: &Rational, hi: &Rational) -> Rational {
    let (mut ln, mut ld) = (lo.numer().clone(), lo.denom().clone());
    let (mut hn, mut hd) = (hi.numer().clone(), hi.denom().clone());
    let mut terms: Vec<BigInt> = Vec::new();
    loop {
        let fl = ln.div_floor(&ld);
        let next = &fl + 1;
        if &next * &hd < hn {
            terms.push(next);
            break;
        }
        // (lo, hi) lies inside (fl, fl + 1]
        let rl = &ln - &fl * &ld;
        let rh = &hn - &fl * &hd;
        terms.push(fl);
        if rl.is_zero() {
            terms.push(hd.div_floor(&rh) + 1);
            break;
        }
        // (1/(hi - fl), 1/(lo - fl))
        (ln, ld, hn, hd) = (hd, rh, ld, rl);
    }
    let mut num = terms.pop().expect("at least one term");
    let mut den = BigInt::one();
    for t in terms.into_iter().rev() {
        let n = &t * &num + &den;
        den = num;
        num = n;
    }
    Rational::new(num, den).expect("denominator is positive")
}

/// Like [`simplest_rational_in`], with the forbidden set given as a predicate.
pub fn simplest_rational_avoiding(
    lo: &Rational,
    hi: &Rational,
    mut forbidden: impl FnMut(&Rational) -> bool,
) -> Rational {
    assert!(lo < hi, "empty interval ({lo}, {hi})");
    let mut hi = hi.clone();
    loop {
        let c = simplest(lo, &hi);
        if !forbidden(&c) {
            return c;
        }
        hi = c;
    }
}

/// The simplest rational in `(lo, hi)` outside `forbidden`: least denominator,
/// then least numerator. A forbidden candidate `c` sends the search into
/// `(lo, c)`.
///
/// # Panics
/// If `lo >= hi`.
pub fn simplest_rational_in(
    lo: &Rational,
    hi: &Rational,
    forbidden: &BTreeSet<Rational>,
) -> Rational {
    simplest_rational_avoiding(lo, hi, |c| forbidden.contains(c))
}

use crate::error::{Error, Result};
use crate::error_term::ErrorTerm;
use crate::rational::Rational;
use crate::sequence::SequencePrefix;

/// A sequence subadditive on all pairs `n, m >= N` but not on all pairs.
///
/// `a(n) = 1` for `n <= n_1`. On `[n_i, n_{i+1})` the value is `1` when
/// `n_{i+1} - n ∈ [2, N]` and `n / n_i` otherwise; past the last anchor it is
/// `n / n_last`. The band clause takes precedence, so `a(n_{i+1} - 1)` is
/// always `(n_{i+1} - 1) / n_i`. Anchors may lie beyond `h`.
///
/// Requires `N >= 2`, `N <= n_1`, and gaps `n_{i+1} - n_i > N + 1` so that
/// consecutive bands stay apart.
pub fn threshold_gap_example(
    threshold: usize,
    anchors: &[usize],
    h: usize,
) -> Result<SequencePrefix> {
    let bad = |msg: String| Err(Error::InvalidArgument(msg));
    if threshold < 2 {
        return bad(format!("N must be >= 2, got {threshold}"));
    }
    let Some(&first) = anchors.first() else {
        return bad("at least one anchor is required".into());
    };
    if first < threshold {
        return bad(format!("first anchor {first} is below N = {threshold}"));
    }
    if let Some(w) = anchors.windows(2).find(|w| w[1] <= w[0] + threshold + 1) {
        return bad(format!(
            "anchors {} and {} are closer than N + 2 = {}",
            w[0],
            w[1],
            threshold + 2
        ));
    }
    if h == 0 {
        return bad("horizon must be >= 1".into());
    }
    let mut seg = 0;
    SequencePrefix::from_fn(h, |n| {
        if n <= first {
            return Rational::one();
        }
        while seg + 1 < anchors.len() && anchors[seg + 1] <= n {
            seg += 1;
        }
        if let Some(&next) = anchors.get(seg + 1) {
            if (2..=threshold).contains(&(next - n)) {
                return Rational::one();
            }
        }
        Rational::new(n, anchors[seg]).expect("anchor is positive")
    })
}

/// Greedy anchors: the least `n` with `f(n)/n > L/2`, then repeatedly the least
/// such `n` at least two past the previous one.
pub fn linear_error_anchors(f: &ErrorTerm, l: &Rational, h: usize) -> Result<Vec<usize>> {
    if !l.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "L must be positive, got {l}"
        )));
    }
    if h > f.horizon() {
        return Err(Error::HorizonTooShort {
            needed: h,
            available: f.horizon(),
        });
    }
    let half = l / Rational::from(2);
    let mut anchors: Vec<usize> = Vec::new();
    let mut n = 1;
    while n <= h {
        if f.at(n).div_index(n) > half {
            anchors.push(n);
            n += 2;
        } else {
            n += 1;
        }
    }
    if anchors.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "only {} index with f(n)/n > L/2 in 1..={h}; need two",
            anchors.len()
        )));
    }
    Ok(anchors)
}

/// `a(n_i) = f(n_i)` on the anchors of [`linear_error_anchors`], zero
/// elsewhere. Since `0 <= a <= f` pointwise, `a` is `f`-subadditive, yet its
/// slopes keep returning to 0 and to values above `L/2`.
pub fn linear_error_example(f: &ErrorTerm, l: &Rational, h: usize) -> Result<SequencePrefix> {
    let anchors = linear_error_anchors(f, l, h)?;
    let mut values = vec![Rational::zero(); h];
    for n in anchors {
        values[n - 1] = f.at(n).clone();
    }
    SequencePrefix::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::scan_violations;
    use crate::domain::PairDomain;
    use crate::error_term::{builtin_error_term, Family};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn threshold_values() {
        let a = threshold_gap_example(3, &[5, 20], 19).unwrap();
        assert!((1..=5).all(|n| a.at(n) == &Rational::one()));
        assert_eq!(a.at(6), &r("6/5"));
        assert_eq!(a.at(16), &r("16/5"));
        assert_eq!(a.at(17), &Rational::one());
        assert_eq!(a.at(18), &Rational::one());
        assert_eq!(a.at(19), &r("19/5"));
        let report = scan_violations(&a, None, &PairDomain::Full).unwrap();
        let v = report
            .violations
            .iter()
            .find(|v| (v.n, v.m) == (1, 18))
            .unwrap();
        assert_eq!(v.deficit, r("9/5"));
        assert!(
            scan_violations(&a, None, &PairDomain::threshold(3).unwrap())
                .unwrap()
                .is_clean()
        );
    }

    #[test]
    fn past_the_last_anchor() {
        let a = threshold_gap_example(2, &[3, 9], 12).unwrap();
        assert_eq!(a.at(7), &Rational::one());
        assert_eq!(a.at(8), &r("8/3"));
        assert_eq!(a.at(9), &Rational::one());
        assert_eq!(a.at(12), &r("12/9"));
    }

    #[test]
    fn threshold_preconditions() {
        assert!(threshold_gap_example(1, &[5, 20], 10).is_err());
        assert!(threshold_gap_example(3, &[2, 20], 10).is_err());
        assert!(threshold_gap_example(3, &[5, 9], 10).is_err());
        assert!(threshold_gap_example(3, &[5, 10], 10).is_ok());
        assert!(threshold_gap_example(3, &[], 10).is_err());
    }

    #[test]
    fn linear_error_values() {
        let f = builtin_error_term(&Family::Linear { c: Rational::one() }, 20).unwrap();
        let a = linear_error_example(&f, &Rational::one(), 20).unwrap();
        assert_eq!(
            linear_error_anchors(&f, &Rational::one(), 20).unwrap()[..3],
            [1, 3, 5]
        );
        assert_eq!(a.at(3), &r("3"));
        assert_eq!(a.at(4), &r("0"));
        assert_eq!(a.at(5), &r("5"));
        assert!(scan_violations(&a, Some(&f), &PairDomain::Full)
            .unwrap()
            .is_clean());
    }

    #[test]
    fn linear_error_needs_two_anchors() {
        let f = builtin_error_term(&Family::FloorSqrt, 10).unwrap();
        // ⌊√n⌋/n > 1/2 only at n = 1
        assert!(linear_error_example(&f, &Rational::one(), 10).is_err());
        assert!(linear_error_example(&f, &Rational::zero(), 10).is_err());
    }
}

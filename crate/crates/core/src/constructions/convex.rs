use crate::error::{Error, Result};
use crate::error_term::ErrorTerm;
use crate::rational::Rational;
use crate::sequence::SequencePrefix;

/// `a(n) = n · Σ_{i<=n} f(i)/i²` on `1..=h`, with `f(1)` taken as 0.
///
/// The result is convex and `f`-subadditive on all pairs.
pub fn convex_from_error(f: &ErrorTerm, h: usize) -> Result<SequencePrefix> {
    if h == 0 {
        return Err(Error::InvalidArgument("horizon must be >= 1".into()));
    }
    if h > f.horizon() {
        return Err(Error::HorizonTooShort {
            needed: h,
            available: f.horizon(),
        });
    }
    let mut partial = Rational::zero();
    let mut values = Vec::with_capacity(h);
    values.push(Rational::zero());
    for n in 2..=h {
        partial += &f.at(n).div_index(n * n);
        values.push(partial.mul_index(n));
    }
    SequencePrefix::new(values)
}

/// `f(n+1)/(n+1) - (n-1)f(n)/n²`, the second difference of
/// [`convex_from_error`] at `n >= 2`.
pub fn convexity_identity(f: &ErrorTerm, n: usize) -> Rational {
    f.at(n + 1).div_index(n + 1) - f.at(n).mul_index(n - 1).div_index(n * n)
}

/// `f(n+1)/((n+1)n²)`, a lower bound for [`convexity_identity`] when `f` is
/// non-decreasing.
pub fn convexity_lower_bound(f: &ErrorTerm, n: usize) -> Rational {
    f.at(n + 1).div_index((n + 1) * n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::second_differences;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn identity_error_term() {
        let f = ErrorTerm::new((1..=6).map(Rational::from).collect()).unwrap();
        let a = convex_from_error(&f, 6).unwrap();
        assert_eq!(a.at(1), &r("0"));
        assert_eq!(a.at(2), &r("1"));
        assert_eq!(a.at(3), &r("5/2"));
        assert_eq!(a.at(4), &r("13/3"));
    }

    #[test]
    fn zero_error_term() {
        let a = convex_from_error(&ErrorTerm::zero(10), 10).unwrap();
        assert!(a.values().iter().all(Rational::is_zero));
    }

    #[test]
    fn f1_is_ignored() {
        let f = ErrorTerm::new(vec![r("7"), r("7"), r("7")]).unwrap();
        let g = ErrorTerm::new(vec![r("0"), r("7"), r("7")]).unwrap();
        assert_eq!(
            convex_from_error(&f, 3).unwrap(),
            convex_from_error(&g, 3).unwrap()
        );
    }

    #[test]
    fn second_difference_identity() {
        let f = ErrorTerm::new((1..=40).map(|n| Rational::from(n * n / 7)).collect()).unwrap();
        let a = convex_from_error(&f, 40).unwrap();
        for (d, n) in second_differences(&a).unwrap().iter().zip(2..) {
            assert_eq!(d, &convexity_identity(&f, n), "n = {n}");
            assert!(d >= &convexity_lower_bound(&f, n));
        }
    }

    #[test]
    fn horizon_checks() {
        assert!(matches!(
            convex_from_error(&ErrorTerm::zero(3), 4),
            Err(Error::HorizonTooShort { .. })
        ));
        assert!(convex_from_error(&ErrorTerm::zero(3), 0).is_err());
    }
}

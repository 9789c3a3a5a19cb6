//! Error terms `f` for the nearly subadditive inequality
//! `a(n+m) <= a(n) + a(m) + f(n+m)`.
//!
//! Builtin families are floored to integers, so monotonicity and every
//! downstream comparison are decided exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Zero,
    /// `⌊c⌋`
    Constant {
        c: Rational,
    },
    /// `⌊√n⌋`
    FloorSqrt,
    /// `⌊c · n^(1-δ)⌋` for `δ ∈ (0, 1]`
    FloorPower {
        c: Rational,
        delta: Rational,
    },
    /// `⌊n / log₂(n+1)⌋`
    LinearOverLog,
    /// `⌊c · n⌋`
    Linear {
        c: Rational,
    },
}

impl Family {
    pub const NAMES: [&'static str; 6] = [
        "zero",
        "constant",
        "floor_sqrt",
        "floor_power",
        "linear_over_log",
        "linear",
    ];

    /// Resolves a family from its name and `key -> value` parameters.
    pub fn from_name(name: &str, params: &BTreeMap<String, Rational>) -> Result<Self> {
        let get = |key: &str| -> Result<Rational> {
            params
                .get(key)
                .cloned()
                .ok_or_else(|| Error::Parameter(format!("{name} needs parameter {key:?}")))
        };
        let allow = |keys: &[&str]| -> Result<()> {
            match params.keys().find(|k| !keys.contains(&k.as_str())) {
                Some(k) => Err(Error::Parameter(format!("{name} has no parameter {k:?}"))),
                None => Ok(()),
            }
        };
        let family = match name {
            "zero" => {
                allow(&[])?;
                Family::Zero
            }
            "constant" => {
                allow(&["c"])?;
                Family::Constant { c: get("c")? }
            }
            "floor_sqrt" => {
                allow(&[])?;
                Family::FloorSqrt
            }
            "floor_power" => {
                allow(&["c", "delta"])?;
                Family::FloorPower {
                    c: get("c")?,
                    delta: get("delta")?,
                }
            }
            "linear_over_log" => {
                allow(&[])?;
                Family::LinearOverLog
            }
            "linear" => {
                allow(&["c"])?;
                Family::Linear { c: get("c")? }
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        let nonneg = |c: &Rational| {
            if c.is_negative() {
                Err(Error::Parameter(format!("c must be >= 0, got {c}")))
            } else {
                Ok(())
            }
        };
        match self {
            Family::Zero | Family::FloorSqrt | Family::LinearOverLog => Ok(()),
            Family::Constant { c } | Family::Linear { c } => nonneg(c),
            Family::FloorPower { c, delta } => {
                nonneg(c)?;
                if !delta.is_positive() || delta > &Rational::one() {
                    return Err(Error::Parameter(format!(
                        "delta must lie in (0, 1], got {delta}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Evaluates `f(1), ..., f(h)`.
    pub fn table(&self, h: usize) -> Vec<BigInt> {
        match self {
            Family::Zero => vec![BigInt::zero(); h],
            Family::Constant { c } => vec![c.floor(); h],
            Family::FloorSqrt => (1..=h).map(|n| BigInt::from(n).sqrt()).collect(),
            Family::Linear { c } => (1..=h).map(|n| c.mul_index(n).floor()).collect(),
            Family::LinearOverLog => linear_over_log_table(h),
            Family::FloorPower { c, delta } => floor_power_table(c, delta, h),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Zero => f.write_str("zero"),
            Family::Constant { c } => write!(f, "constant,c={c}"),
            Family::FloorSqrt => f.write_str("floor_sqrt"),
            Family::FloorPower { c, delta } => write!(f, "floor_power,c={c},delta={delta}"),
            Family::LinearOverLog => f.write_str("linear_over_log"),
            Family::Linear { c } => write!(f, "linear,c={c}"),
        }
    }
}

/// `(n+1)^t <= 2^n`, i.e. `t·log₂(n+1) <= n`.
fn pow_fits_in_power_of_two(n: usize, t: u32) -> bool {
    // f64 error here is far below the margin; near-ties go to the exact test
    let gap = n as f64 - t as f64 * ((n + 1) as f64).log2();
    if gap.abs() > 1e-6 * (n as f64).max(1.0) {
        return gap > 0.0;
    }
    let p = BigUint::from(n + 1).pow(t);
    let bits = p.bits();
    bits <= n as u64 || (bits == n as u64 + 1 && p.trailing_zeros() == Some(n as u64))
}

/// `⌊n / log₂(n+1)⌋` for `n = 1..=h`.
///
/// `n / log₂(n+1)` has slope below 1 for `n >= 1`, so consecutive floors
/// differ by at most one and only `t+1` needs testing at each step.
fn linear_over_log_table(h: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(h);
    let mut t: u32 = 0;
    for n in 1..=h {
        if pow_fits_in_power_of_two(n, t + 1) {
            t += 1;
        }
        out.push(BigInt::from(t));
    }
    out
}

/// `⌊c · n^(1-δ)⌋`: the largest `t >= 0` with `(t·b)^q <= a^q · n^(q-p)`
/// where `c = a/b` and `δ = p/q`.
fn floor_power_table(c: &Rational, delta: &Rational, h: usize) -> Vec<BigInt> {
    if c.is_zero() {
        return vec![BigInt::zero(); h];
    }
    let (a, b) = (c.numer().clone(), c.denom().clone());
    let q = delta
        .denom()
        .to_u32()
        .expect("delta denominator fits in u32");
    let p = delta.numer().to_u32().expect("delta numerator fits in u32");
    let e = q - p;
    let aq = num_traits::Pow::pow(&a, q);
    let mut out = Vec::with_capacity(h);
    let mut t = BigInt::zero();
    for n in 1..=h {
        let rhs = &aq * num_traits::Pow::pow(BigInt::from(n), e);
        let fits = |t: &BigInt| num_traits::Pow::pow(t * &b, q) <= rhs;
        // gallop upward from the previous value, then bisect
        let mut step = BigInt::one();
        while fits(&(&t + &step)) {
            t += &step;
            step *= 2;
        }
        while step > BigInt::one() {
            step /= 2;
            if fits(&(&t + &step)) {
                t += &step;
            }
        }
        out.push(t.clone());
    }
    out
}

/// A finite table `f(1), ..., f(H)`, non-negative and non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorTerm {
    values: Vec<Rational>,
    family: Option<Family>,
}

impl ErrorTerm {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        Self::validated(values, None)
    }

    fn validated(values: Vec<Rational>, family: Option<Family>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(i) = values.iter().position(|v| v.is_negative()) {
            return Err(Error::InvalidErrorTerm(format!(
                "f({}) = {} is negative",
                i + 1,
                values[i]
            )));
        }
        if let Some(i) = values.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidErrorTerm(format!(
                "f({}) = {} > f({}) = {}",
                i + 1,
                values[i],
                i + 2,
                values[i + 1]
            )));
        }
        Ok(ErrorTerm { values, family })
    }

    pub fn zero(h: usize) -> Self {
        ErrorTerm {
            values: vec![Rational::zero(); h.max(1)],
            family: Some(Family::Zero),
        }
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// `f(n)`; panics past the horizon or at `n = 0`.
    pub fn at(&self, n: usize) -> &Rational {
        &self.values[n - 1]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(Rational::is_zero)
    }
}

/// Tabulates a builtin family on `1..=h`.
pub fn builtin_error_term(family: &Family, h: usize) -> Result<ErrorTerm> {
    if h == 0 {
        return Err(Error::InvalidArgument("horizon must be >= 1".into()));
    }
    family.validate()?;
    let values = family.table(h).into_iter().map(Rational::from).collect();
    ErrorTerm::validated(values, Some(family.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(t: &ErrorTerm) -> Vec<i64> {
        t.values()
            .iter()
            .map(|v| v.numer().to_i64().unwrap())
            .collect()
    }

    fn params(kv: &[(&str, &str)]) -> BTreeMap<String, Rational> {
        kv.iter()
            .map(|(k, v)| (k.to_string(), v.parse().unwrap()))
            .collect()
    }

    #[test]
    fn small_tables() {
        let zero = builtin_error_term(&Family::Zero, 5).unwrap();
        assert_eq!(ints(&zero), vec![0; 5]);
        let sqrt = builtin_error_term(&Family::FloorSqrt, 5).unwrap();
        assert_eq!(ints(&sqrt), vec![1, 1, 1, 2, 2]);
        // 4 / log2(5) = 1.72..., so f(4) = 1
        let lol = builtin_error_term(&Family::LinearOverLog, 4).unwrap();
        assert_eq!(ints(&lol), vec![1, 1, 1, 1]);
        let lin = builtin_error_term(
            &Family::Linear {
                c: "3/2".parse().unwrap(),
            },
            4,
        )
        .unwrap();
        assert_eq!(ints(&lin), vec![1, 3, 4, 6]);
    }

    /// Independent oracle: binary search on the exact inequality, cross-checked
    /// against f64 wherever the real value is not within 1e-9 of an integer.
    fn linear_over_log_oracle(n: usize) -> i64 {
        let (mut lo, mut hi) = (0u32, n as u32 + 1);
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if BigUint::from(n + 1).pow(mid) <= BigUint::one() << n {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let approx = n as f64 / ((n + 1) as f64).log2();
        if (approx - approx.round()).abs() > 1e-9 {
            assert_eq!(lo as i64, approx.floor() as i64, "n = {n}");
        }
        lo as i64
    }

    #[test]
    fn linear_over_log_matches_oracle() {
        let table = builtin_error_term(&Family::LinearOverLog, 600).unwrap();
        for (i, v) in ints(&table).into_iter().enumerate() {
            assert_eq!(v, linear_over_log_oracle(i + 1));
        }
        // exact power-of-two case: 3 / log2(4) = 3/2
        assert_eq!(ints(&table)[2], 1);
        // 7 / log2(8) = 7/3
        assert_eq!(ints(&table)[6], 2);
    }

    #[test]
    fn floor_power_half_is_floor_sqrt() {
        let fp =
            Family::from_name("floor_power", &params(&[("c", "1"), ("delta", "1/2")])).unwrap();
        let a = builtin_error_term(&fp, 3000).unwrap();
        let b = builtin_error_term(&Family::FloorSqrt, 3000).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn floor_power_general() {
        // 3 * n^(2/3): n = 8 -> 12, n = 27 -> 27, n = 26 -> floor(26.3..) = 26
        let fp = Family::FloorPower {
            c: Rational::from(3),
            delta: "1/3".parse().unwrap(),
        };
        let t = builtin_error_term(&fp, 27).unwrap();
        assert_eq!(t.at(8), &Rational::from(12));
        assert_eq!(t.at(27), &Rational::from(27));
        assert_eq!(t.at(26), &Rational::from(26));
        for n in 1..=27usize {
            let approx = 3.0 * (n as f64).powf(2.0 / 3.0);
            assert_eq!(t.at(n).to_f64().unwrap(), (approx + 1e-9).floor());
        }
        // delta = 1 is the constant floor(c)
        let flat = builtin_error_term(
            &Family::FloorPower {
                c: "7/2".parse().unwrap(),
                delta: Rational::one(),
            },
            4,
        )
        .unwrap();
        assert_eq!(ints(&flat), vec![3; 4]);
    }

    #[test]
    fn parameter_errors() {
        assert!(matches!(
            Family::from_name("nope", &BTreeMap::new()),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            Family::from_name("constant", &params(&[("c", "-1")])),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            Family::from_name("floor_power", &params(&[("c", "1"), ("delta", "3/2")])),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            Family::from_name("floor_power", &params(&[("c", "1"), ("delta", "0")])),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            Family::from_name("floor_sqrt", &params(&[("c", "1")])),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            Family::from_name("linear", &BTreeMap::new()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn explicit_terms_are_validated() {
        let v = |xs: &[i64]| xs.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>();
        assert!(ErrorTerm::new(v(&[0, 1, 1, 2])).is_ok());
        assert!(matches!(
            ErrorTerm::new(v(&[0, 2, 1])),
            Err(Error::InvalidErrorTerm(_))
        ));
        assert!(matches!(
            ErrorTerm::new(v(&[-1, 0])),
            Err(Error::InvalidErrorTerm(_))
        ));
    }
}

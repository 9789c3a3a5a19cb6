//! Limit estimation from prefixes.
//!
//! Nothing here asserts the limit of `a(n)/n` itself, which may be `-∞` and is
//! not determined by finitely many terms. What a prefix does certify is an
//! upper bound (the minimum slope past the threshold) and explicit instances of
//! the tail estimate for `n >= 2k`.

mod mu_chain;

pub use mu_chain::{
    chain_exponent, find_split, mu_chain_certificate, split_coverage_exhaustive,
    verify_split_coverage, MuChainCertificate, Splitter,
};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::error_term::ErrorTerm;
use crate::rational::Rational;
use crate::sequence::SequencePrefix;

/// `bound = a(k)/k + max{|a(k+1)|, ..., |a(2k-1)|} / n`, an upper bound for
/// `a(n)/n` when `n >= 2k`, `k >= N` and the sequence is subadditive past `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailBoundSample {
    pub n: usize,
    pub k: usize,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitBracket {
    #[serde(rename = "N")]
    pub threshold: usize,
    pub horizon: usize,
    /// `min { a(k)/k : N <= k <= H }`.
    pub min_slope: Rational,
    /// Smallest `k` attaining `min_slope`.
    pub argmin_k: usize,
    pub tail_samples: Vec<TailBoundSample>,
}

/// Summarizes what the prefix certifies about `lim a(n)/n` for any
/// extension that is subadditive on pairs with `n, m >= N`.
///
/// Tail samples are taken at `n = H` for `k = N` and for the slope minimizer
/// over `N <= k <= ⌊H/2⌋`, whenever `2k <= H`.
pub fn fekete_bracket(a: &SequencePrefix, threshold: usize) -> Result<LimitBracket> {
    let h = a.horizon();
    if threshold == 0 || threshold > h {
        return Err(Error::InvalidArgument(format!(
            "threshold N = {threshold} must lie in [1, {h}]"
        )));
    }
    let slopes: Vec<Rational> = (1..=h).map(|k| a.slope(k)).collect();
    let argmin = |hi: usize| {
        (threshold..=hi)
            .min_by(|&x, &y| slopes[x - 1].cmp(&slopes[y - 1]))
            .expect("non-empty range")
    };
    let argmin_k = argmin(h);

    let mut ks = vec![threshold];
    if 2 * threshold <= h {
        let k = argmin(h / 2);
        if k != threshold {
            ks.push(k);
        }
    }
    let tail_samples = ks
        .into_iter()
        .filter(|&k| 2 * k <= h)
        .map(|k| TailBoundSample {
            n: h,
            k,
            bound: tail_bound(a, k, h),
        })
        .collect();

    Ok(LimitBracket {
        threshold,
        horizon: h,
        min_slope: slopes[argmin_k - 1].clone(),
        argmin_k,
        tail_samples,
    })
}

/// `a(k)/k + max{|a(k+1)|, ..., |a(2k-1)|} / n`; the max over an empty window is 0.
pub fn tail_bound(a: &SequencePrefix, k: usize, n: usize) -> Rational {
    let window_max = (k + 1..2 * k)
        .map(|j| a.at(j).abs())
        .max()
        .unwrap_or_default();
    a.slope(k) + window_max.div_index(n)
}

fn check_pair(a: &SequencePrefix, f: &ErrorTerm, n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument("n and m must be >= 1".into()));
    }
    let available = a.horizon().min(f.horizon());
    if n + m > available {
        return Err(Error::HorizonTooShort {
            needed: n + m,
            available,
        });
    }
    Ok(())
}

/// `G(n+m) - G(n) - G(m)` for `G(n) = a(n) + 3n·Σ_{x>=n} f(x)/x²`.
///
/// The infinite tails cancel:
/// `G(n+m) - G(n) - G(m) = [a(n+m) - a(n) - a(m)]
///     - 3n·Σ_{n<=x<n+m} f(x)/x² - 3m·Σ_{m<=x<n+m} f(x)/x²`.
pub fn g_deficit(a: &SequencePrefix, f: &ErrorTerm, n: usize, m: usize) -> Result<Rational> {
    check_pair(a, f, n, m)?;
    let window =
        |from: usize| -> Rational { (from..n + m).map(|x| f.at(x).div_index(x * x)).sum() };
    let plain = a.at(n + m) - a.at(n) - a.at(m);
    Ok(plain - window(n).mul_index(3 * n) - window(m).mul_index(3 * m))
}

/// Precomputed partial sums of `f(x)/x²` for many G-deficit queries.
///
/// Values are kept as integers over one common denominator, so a query costs
/// a few big-integer additions and a single reduction.
pub struct GTransform<'a> {
    a: &'a SequencePrefix,
    f: &'a ErrorTerm,
    denom: BigInt,
    /// `a(n)·denom`, 1-based with a dummy at 0.
    scaled_a: Vec<BigInt>,
    /// `Σ_{x<k} f(x)/x² · denom` for `k = 0..=H+1`.
    scaled_partial: Vec<BigInt>,
}

impl<'a> GTransform<'a> {
    pub fn new(a: &'a SequencePrefix, f: &'a ErrorTerm) -> Self {
        let h = a.horizon().min(f.horizon());
        let mut partial = Vec::with_capacity(h + 2);
        partial.push(Rational::zero());
        partial.push(Rational::zero());
        for x in 1..=h {
            let next = &partial[x] + f.at(x).div_index(x * x);
            partial.push(next);
        }
        let denom = Rational::common_denominator(a.values()[..h].iter().chain(&partial));
        let scaled_a = std::iter::once(BigInt::zero())
            .chain(a.values()[..h].iter().map(|v| v.scaled_numer(&denom)))
            .collect();
        let scaled_partial = partial.iter().map(|v| v.scaled_numer(&denom)).collect();
        GTransform {
            a,
            f,
            denom,
            scaled_a,
            scaled_partial,
        }
    }

    pub fn deficit(&self, n: usize, m: usize) -> Result<Rational> {
        check_pair(self.a, self.f, n, m)?;
        let s = n + m;
        let (a, p) = (&self.scaled_a, &self.scaled_partial);
        let plain = &a[s] - &a[n] - &a[m];
        let wn = (&p[s] - &p[n]) * BigInt::from(3 * n);
        let wm = (&p[s] - &p[m]) * BigInt::from(3 * m);
        Ok(Rational::new(plain - wn - wm, self.denom.clone()).expect("positive denominator"))
    }
}

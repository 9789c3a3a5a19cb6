//! Doubling chains versus `(1+μ)`-growth chains.
//!
//! For `μ > 1` let `k` be the smallest positive integer with
//! `(1+μ)^(k-1) <= 2^(k+1) < (1+μ)^k`. From a base `n` the chains
//! `u_{i+1} = 2u_i` and `v_{i+1} = v_i + ⌊μ v_i⌋` satisfy `2u_k <= v_k` once
//! `n >= N1`, and every `z ∈ [u_{i+1}, v_{i+1}]` splits as `z = x + y` with
//! `x ∈ [u_i, v_i]`, `x <= y <= μx` once `n >= N2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuChainCertificate {
    pub mu: Rational,
    #[serde(rename = "N")]
    pub threshold: usize,
    pub k: u32,
    #[serde(rename = "N1")]
    pub n1: u64,
    #[serde(rename = "N2")]
    pub n2: u64,
    #[serde(rename = "n")]
    pub base: u64,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    /// `2u_k <= v_k` for this base.
    pub doubling_covered: bool,
}

impl MuChainCertificate {
    /// `max(N1, N2)`: from here on both properties are guaranteed.
    pub fn guaranteed_from(&self) -> u64 {
        self.n1.max(self.n2)
    }
}

fn check_mu(mu: &Rational) -> Result<()> {
    if mu <= &Rational::one() {
        Err(Error::InvalidArgument(format!(
            "mu must exceed 1, got {mu}"
        )))
    } else {
        Ok(())
    }
}

/// Smallest `k >= 1` with `(1+μ)^(k-1) <= 2^(k+1) < (1+μ)^k`.
///
/// At the first `k` with `2^(k+1) < (1+μ)^k` the left inequality is automatic,
/// since `(1+μ)^(k-1) <= 2^k` held one step earlier.
pub fn chain_exponent(mu: &Rational) -> Result<u32> {
    check_mu(mu)?;
    let base = mu + Rational::one();
    let two = Rational::from(2);
    let mut k = 1u32;
    let mut grow = base.clone();
    let mut pow2 = Rational::from(4);
    while pow2 >= grow {
        k = k
            .checked_add(1)
            .ok_or_else(|| Error::Overflow("chain exponent".into()))?;
        grow = &grow * &base;
        pow2 = &pow2 * &two;
    }
    debug_assert!(base.pow(k - 1) <= pow2);
    Ok(k)
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64().ok_or_else(|| Error::Overflow(what.into()))
}

pub fn mu_chain_certificate(
    mu: &Rational,
    threshold: usize,
    base: u64,
) -> Result<MuChainCertificate> {
    check_mu(mu)?;
    if threshold == 0 || base == 0 {
        return Err(Error::InvalidArgument("N and n must be >= 1".into()));
    }
    let k = chain_exponent(mu)?;
    let grow = (mu + Rational::one()).pow(k);
    let gap = &grow - Rational::from(2).pow(k + 1);
    // v_k > (1+μ)^k n - (1+μ)^k/μ >= 2^(k+1) n  once  n >= ((1+μ)^k/μ) / gap
    let n1 = to_u64(&((&grow / mu) / gap).ceil(), "N1")?.max(1);
    let n2 = to_u64(&(mu - Rational::one()).recip().ceil(), "N2")?.max(threshold as u64);

    let mut u = vec![base];
    let mut v = vec![base];
    for i in 0..k as usize {
        let next_u = u[i]
            .checked_mul(2)
            .ok_or_else(|| Error::Overflow("u chain".into()))?;
        let step = to_u64(&mu.mul_index(v[i] as usize).floor(), "v chain")?;
        let next_v = v[i]
            .checked_add(step)
            .ok_or_else(|| Error::Overflow("v chain".into()))?;
        u.push(next_u);
        v.push(next_v);
    }
    let doubling_covered = u[k as usize]
        .checked_mul(2)
        .is_some_and(|d| d <= v[k as usize]);
    Ok(MuChainCertificate {
        mu: mu.clone(),
        threshold,
        k,
        n1,
        n2,
        base,
        u,
        v,
        doubling_covered,
    })
}

/// Splits `z = x + y` with `lo <= x <= hi` and `x <= y <= μx`.
#[derive(Clone, Debug)]
pub struct Splitter {
    p: BigInt,
    q: BigInt,
    small: Option<(u128, u128)>,
}

impl Splitter {
    pub fn new(mu: &Rational) -> Self {
        let (p, q) = (mu.numer().clone(), mu.denom().clone());
        let small = p
            .to_u64()
            .zip(q.to_u64())
            .map(|(p, q)| (p as u128, q as u128));
        Splitter { p, q, small }
    }

    /// Smallest `x` with `⌈z/(1+μ)⌉ <= x`, i.e. `z - x <= μx`.
    fn least_x(&self, z: u64) -> u64 {
        match self.small {
            Some((p, q)) => (q * z as u128).div_ceil(p + q) as u64,
            None => (BigInt::from(z) * &self.q)
                .div_ceil(&(&self.p + &self.q))
                .to_u64()
                .expect("bounded by z"),
        }
    }

    /// Smallest feasible `x`, or `None`.
    pub fn find(&self, z: u64, lo: u64, hi: u64) -> Option<(u64, u64)> {
        let x_min = self.least_x(z).max(lo).max(1);
        let x_max = hi.min(z / 2);
        (x_min <= x_max).then(|| (x_min, z - x_min))
    }

    /// `⌊μx⌋`
    pub fn mu_floor(&self, x: u64) -> u64 {
        match self.small {
            Some((p, q)) => (p * x as u128 / q) as u64,
            None => (BigInt::from(x) * &self.p / &self.q)
                .to_u64()
                .expect("mu*x fits in u64"),
        }
    }
}

pub fn find_split(z: u64, lo: u64, hi: u64, mu: &Rational) -> Option<(u64, u64)> {
    Splitter::new(mu).find(z, lo, hi)
}

/// Checks that each `[u_{i+1}, v_{i+1}]` is covered by the split intervals
/// `[2x, x + ⌊μx⌋]`, `x ∈ [u_i, v_i]`; returns the first uncovered `z`.
///
/// Exact for every `z`: `⌊μx⌋ - x` is non-decreasing in `x`, so once one
/// interval reaches the start of the next (`⌊μx⌋ >= x + 1`) all later ones
/// chain without gaps up to `v_i + ⌊μv_i⌋ = v_{i+1}`. Only the gapped prefix
/// below that point is swept individually.
pub fn verify_split_coverage(cert: &MuChainCertificate) -> std::result::Result<(), u64> {
    let splitter = Splitter::new(&cert.mu);
    for i in 0..cert.k as usize {
        let (lo, hi) = (cert.u[i], cert.v[i]);
        let target_end = cert.v[i + 1];
        let mut covered_to = cert.u[i + 1] - 1;
        let mut x = lo;
        loop {
            if 2 * x > covered_to + 1 {
                return Err(covered_to + 1);
            }
            let reach = splitter.mu_floor(x);
            if reach > x {
                covered_to = covered_to.max(hi + splitter.mu_floor(hi));
                break;
            }
            covered_to = covered_to.max(x + reach);
            if x == hi {
                break;
            }
            x += 1;
        }
        if covered_to < target_end {
            return Err(covered_to + 1);
        }
    }
    Ok(())
}

/// Per-`z` enumeration: the first `z ∈ [u_{i+1}, v_{i+1}]` for which
/// [`Splitter::find`] fails, if any.
pub fn split_coverage_exhaustive(cert: &MuChainCertificate) -> Option<u64> {
    let splitter = Splitter::new(&cert.mu);
    (0..cert.k as usize).find_map(|i| {
        (cert.u[i + 1]..=cert.v[i + 1]).find(|&z| splitter.find(z, cert.u[i], cert.v[i]).is_none())
    })
}

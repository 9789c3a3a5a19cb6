//! Exhaustive verification of subadditivity-type inequalities on a prefix.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::PairDomain;
use crate::error::{Error, Result};
use crate::error_term::ErrorTerm;
use crate::rational::Rational;
use crate::sequence::SequencePrefix;

/// One admitted pair where `a(n+m) > a(n) + a(m) + f(n+m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub n: usize,
    pub m: usize,
    /// `a(n+m) - a(n) - a(m) - f(n+m)`, always positive.
    pub deficit: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationReport {
    pub domain: PairDomain,
    pub pairs_checked: usize,
    /// Sorted by `(n+m, n)`.
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every admitted pair `n <= m`, `n + m <= H` violating
/// `a(n+m) <= a(n) + a(m) + f(n+m)`; `f = None` is the zero error term.
///
/// All values are brought to one common denominator first, so the inner loop
/// is a single big-integer addition and comparison per pair. Sums `n+m` are
/// distributed over the rayon pool and merged back in order.
pub fn scan_violations(
    a: &SequencePrefix,
    f: Option<&ErrorTerm>,
    domain: &PairDomain,
) -> Result<ViolationReport> {
    let h = a.horizon();
    if let Some(f) = f {
        if f.horizon() < h {
            return Err(Error::HorizonTooShort {
                needed: h,
                available: f.horizon(),
            });
        }
    }
    let f_prefix = f.map(|f| &f.values()[..h]).unwrap_or(&[]);
    let d = Rational::common_denominator(a.values().iter().chain(f_prefix));
    let scaled: Vec<BigInt> = a.values().iter().map(|v| v.scaled_numer(&d)).collect();
    // lhs[s] = (a(s) - f(s))·d; (n, m) violates iff lhs[n+m] > A[n] + A[m]
    let lhs: Vec<BigInt> = match f {
        Some(_) => scaled
            .iter()
            .zip(f_prefix)
            .map(|(x, fv)| x - fv.scaled_numer(&d))
            .collect(),
        None => scaled.clone(),
    };
    let enumerator = domain.enumerator(h);
    let per_sum: Vec<(usize, Vec<Violation>)> = (2..=h)
        .into_par_iter()
        .map(|s| {
            let target = &lhs[s - 1];
            let mut checked = 0;
            let mut found = Vec::new();
            for n in enumerator.firsts(s) {
                checked += 1;
                let m = s - n;
                let excess = target - (&scaled[n - 1] + &scaled[m - 1]);
                if excess.is_positive() {
                    found.push(Violation {
                        n,
                        m,
                        deficit: Rational::new(excess, d.clone()).expect("nonzero denominator"),
                    });
                }
            }
            (checked, found)
        })
        .collect();
    let mut pairs_checked = 0;
    let mut violations = Vec::new();
    for (c, v) in per_sum {
        pairs_checked += c;
        violations.extend(v);
    }
    Ok(ViolationReport {
        domain: domain.clone(),
        pairs_checked,
        violations,
    })
}

/// `q(n) = max { a(j)/j : n <= j <= 2n }` for `n_lo <= n <= ⌊H/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSequence {
    pub n_lo: usize,
    pub values: Vec<Rational>,
}

impl QSequence {
    pub fn get(&self, n: usize) -> &Rational {
        &self.values[n - self.n_lo]
    }

    pub fn n_hi(&self) -> usize {
        self.n_lo + self.values.len() - 1
    }
}

pub fn q_sequence(a: &SequencePrefix, n_lo: usize) -> Result<QSequence> {
    if n_lo == 0 {
        return Err(Error::InvalidArgument("n_lo must be >= 1".into()));
    }
    let h = a.horizon();
    if 2 * n_lo > h {
        return Err(Error::HorizonTooShort {
            needed: 2 * n_lo,
            available: h,
        });
    }
    let slopes: Vec<Rational> = (1..=h).map(|j| a.slope(j)).collect();
    let values = (n_lo..=h / 2)
        .map(|n| {
            slopes[n - 1..2 * n]
                .iter()
                .max()
                .expect("window is non-empty")
                .clone()
        })
        .collect();
    Ok(QSequence { n_lo, values })
}

/// Indices `n` in `[N, ⌊H/2⌋ - 1]` with `q(n) < q(n+1)`.
pub fn check_q_monotone(a: &SequencePrefix, threshold: usize) -> Result<Vec<usize>> {
    if threshold == 0 {
        return Err(Error::InvalidArgument("threshold N must be >= 1".into()));
    }
    if 2 * (threshold + 1) > a.horizon() {
        return Err(Error::HorizonTooShort {
            needed: 2 * (threshold + 1),
            available: a.horizon(),
        });
    }
    let q = q_sequence(a, threshold)?;
    Ok((threshold..q.n_hi())
        .filter(|&n| q.get(n) < q.get(n + 1))
        .collect())
}

/// `a(n-1) + a(n+1) - 2a(n)` for `n = 2..=H-1`.
pub fn second_differences(a: &SequencePrefix) -> Result<Vec<Rational>> {
    if a.horizon() < 3 {
        return Err(Error::HorizonTooShort {
            needed: 3,
            available: a.horizon(),
        });
    }
    Ok((2..a.horizon())
        .map(|n| a.at(n - 1) + a.at(n + 1) - a.at(n).mul_index(2))
        .collect())
}

/// Indices `n` in `[2, H-1]` where the second difference is negative.
pub fn check_convexity(a: &SequencePrefix) -> Result<Vec<usize>> {
    Ok(second_differences(a)?
        .iter()
        .zip(2..)
        .filter(|(d, _)| d.is_negative())
        .map(|(_, n)| n)
        .collect())
}

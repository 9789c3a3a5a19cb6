//! Pair domains: the set of pairs `(n, m)` on which the subadditive inequality
//! is asserted.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairDomain {
    /// All `n, m >= 1`.
    Full,
    /// All `n, m >= threshold`.
    Threshold { threshold: usize },
    /// `threshold <= n <= m <= mu·n`.
    MuBand { mu: Rational, threshold: usize },
    /// `(n, n)` and `(n, n+1)` for `n >= threshold`.
    OnePlus { threshold: usize },
    /// An explicit finite set, stored with `n <= m`.
    Explicit { pairs: BTreeSet<(usize, usize)> },
}

impl PairDomain {
    pub fn threshold(n: usize) -> Result<Self> {
        check_threshold(n)?;
        Ok(PairDomain::Threshold { threshold: n })
    }

    pub fn mu_band(mu: Rational, n: usize) -> Result<Self> {
        check_threshold(n)?;
        if mu <= Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "mu must exceed 1, got {mu}"
            )));
        }
        Ok(PairDomain::MuBand { mu, threshold: n })
    }

    pub fn one_plus(n: usize) -> Result<Self> {
        check_threshold(n)?;
        Ok(PairDomain::OnePlus { threshold: n })
    }

    /// Pairs are normalized to `n <= m`; zero entries are rejected.
    pub fn explicit(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (n, m) in pairs {
            if n == 0 || m == 0 {
                return Err(Error::InvalidArgument(format!(
                    "pair ({n}, {m}) has a zero entry"
                )));
            }
            set.insert((n.min(m), n.max(m)));
        }
        Ok(PairDomain::Explicit { pairs: set })
    }

    /// Whether the unordered pair `{n, m}` is admitted.
    pub fn admits(&self, n: usize, m: usize) -> bool {
        let (lo, hi) = (n.min(m), n.max(m));
        if lo == 0 {
            return false;
        }
        match self {
            PairDomain::Full => true,
            PairDomain::Threshold { threshold } => lo >= *threshold,
            PairDomain::MuBand { mu, threshold } => {
                lo >= *threshold && BigInt::from(hi) * mu.denom() <= BigInt::from(lo) * mu.numer()
            }
            PairDomain::OnePlus { threshold } => lo >= *threshold && hi - lo <= 1,
            PairDomain::Explicit { pairs } => pairs.contains(&(lo, hi)),
        }
    }

    /// Enumerates the admitted pairs `n <= m` with `n + m <= horizon`.
    pub fn enumerator(&self, horizon: usize) -> PairEnumerator<'_> {
        let explicit = match self {
            PairDomain::Explicit { pairs } => {
                let mut by_sum: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for &(n, m) in pairs {
                    if n + m <= horizon {
                        by_sum.entry(n + m).or_default().push(n);
                    }
                }
                Some(by_sum)
            }
            _ => None,
        };
        PairEnumerator {
            domain: self,
            horizon,
            explicit,
        }
    }
}

fn check_threshold(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("threshold N must be >= 1".into()))
    } else {
        Ok(())
    }
}

pub struct PairEnumerator<'a> {
    domain: &'a PairDomain,
    horizon: usize,
    explicit: Option<BTreeMap<usize, Vec<usize>>>,
}

impl PairEnumerator<'_> {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Smaller members `n` of the admitted pairs `(n, s-n)`, `n <= s-n`, ascending.
    pub fn firsts(&self, s: usize) -> Firsts<'_> {
        if let Some(by_sum) = &self.explicit {
            return match by_sum.get(&s) {
                Some(v) => Firsts::List(v.iter()),
                None => Firsts::Range(empty()),
            };
        }
        if s < 2 || s > self.horizon {
            return Firsts::Range(empty());
        }
        let half = s / 2;
        let range = match self.domain {
            PairDomain::Full => 1..=half,
            PairDomain::Threshold { threshold } => *threshold..=half,
            PairDomain::OnePlus { threshold } => half.max(*threshold)..=half,
            PairDomain::MuBand { mu, threshold } => {
                // s - n <= mu·n  <=>  n >= q·s / (p+q)
                let (p, q) = (mu.numer(), mu.denom());
                let lo = (BigInt::from(s) * q).div_ceil(&(p + q));
                let lo = lo.to_usize().unwrap_or(usize::MAX);
                lo.max(*threshold)..=half
            }
            PairDomain::Explicit { .. } => unreachable!(),
        };
        Firsts::Range(range)
    }

    /// Number of admitted pairs with `n <= m`, `n + m <= horizon`.
    pub fn count(&self) -> usize {
        (2..=self.horizon).map(|s| self.firsts(s).count()).sum()
    }
}

#[allow(clippy::reversed_empty_ranges)]
fn empty() -> RangeInclusive<usize> {
    1..=0
}

pub enum Firsts<'a> {
    Range(RangeInclusive<usize>),
    List(std::slice::Iter<'a, usize>),
}

impl Iterator for Firsts<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        match self {
            Firsts::Range(r) => r.next(),
            Firsts::List(it) => it.next().copied(),
        }
    }
}

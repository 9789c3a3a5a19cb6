//! A sequence `b(n) = a(n) - c(n)·n` with `a` from
//! [`convex_from_error`](crate::constructions::convex_from_error) and
//! `c` non-decreasing, whose slopes `b(n)/n` are pairwise distinct rationals
//! and include prescribed targets `r_1, ..., r_K`.
//!
//! Subtracting `c(n)·n` with `c` non-decreasing never breaks
//! `f`-subadditivity, so `b` inherits it from `a`. Write `A(x) = a(x)/x`.
//! Slopes can only rise along `x` as fast as `A` grows, while they may fall
//! arbitrarily fast.
//!
//! Targets are realized one by one. A target already present as a slope is
//! recorded and skipped. Otherwise the next pinned index is
//! `n' = min{x > n : A(x) - c(n) > r}` and `c(n') = A(n') - r`. The slopes of the
//! skipped indices `n < x < n'` are the simplest rationals in their admissible
//! windows avoiding every earlier slope and `r`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::constructions::enumerate::{enumerate_rationals, ENUMERATION_TAG};
use crate::constructions::simplest::simplest_rational_avoiding;
use crate::error::{Error, Result};
use crate::error_term::ErrorTerm;
use crate::rational::Rational;
use crate::sequence::SequencePrefix;

/// The order in which `r_1, ..., r_K` are realized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetOrder {
    /// Largest target first. Every step after the first moves the slope down,
    /// so no growth of `A` is spent. The initial `c(1..n_0)` lie in the unit
    /// interval `(-⌈max r⌉ - 1, -⌈max r⌉)`, which puts the first slopes above
    /// every target.
    #[default]
    Descending,
    /// Index order `r_1, r_2, ...`, with initial `c(1..n_0)` in `(0, 1)`. Each
    /// rise `r_i -> r_{i+1}` consumes `r_{i+1} - r_i` of growth of `A`.
    Enumeration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionOutput {
    pub enumeration: String,
    pub order: TargetOrder,
    pub n0: usize,
    /// `b(n) = a(n) - c(n)·n` on `1..=H`, where `H` is the last fixed index.
    #[serde(with = "values_only")]
    pub b: SequencePrefix,
    pub c: Vec<Rational>,
    /// `b(n)/n`, in index order.
    pub slopes: Vec<Rational>,
    /// Target index `i` -> the index `n` with `b(n)/n = r_i`.
    pub coverage: BTreeMap<usize, usize>,
    #[serde(with = "values_only")]
    pub a: SequencePrefix,
}

mod values_only {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::rational::Rational;
    use crate::sequence::SequencePrefix;

    pub fn serialize<S: Serializer>(s: &SequencePrefix, ser: S) -> Result<S::Ok, S::Error> {
        s.values().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<SequencePrefix, D::Error> {
        let v = Vec::<Rational>::deserialize(de)?;
        SequencePrefix::new(v).map_err(serde::de::Error::custom)
    }
}

/// [`rational_slope_sequence_with`] in [`TargetOrder::Descending`].
pub fn rational_slope_sequence(
    f: &ErrorTerm,
    k: usize,
    h_max: usize,
) -> Result<ConstructionOutput> {
    rational_slope_sequence_with(f, k, h_max, TargetOrder::Descending)
}

/// `A(x) = a(x)/x = Σ_{2<=i<=x} f(i)/i²`, extended on demand. Denominators
/// grow quickly, so only indices the construction reaches are computed.
struct Averages<'a> {
    f: &'a ErrorTerm,
    /// 1-based, with a dummy at 0
    values: Vec<Rational>,
}

impl<'a> Averages<'a> {
    fn new(f: &'a ErrorTerm) -> Self {
        Averages {
            f,
            values: vec![Rational::zero(), Rational::zero()],
        }
    }

    fn reach(&mut self, x: usize) {
        while self.values.len() <= x {
            let n = self.values.len();
            let next = self.values[n - 1].clone() + self.f.at(n).div_index(n * n);
            self.values.push(next);
        }
    }
}

struct Registry {
    slopes: Vec<Rational>,
    index_of: BTreeMap<Rational, usize>,
}

impl Registry {
    fn push(&mut self, s: Rational) {
        let n = self.slopes.len() + 1;
        let fresh = self.index_of.insert(s.clone(), n).is_none();
        debug_assert!(fresh, "slope {s} repeated");
        self.slopes.push(s);
    }

    fn contains(&self, s: &Rational) -> bool {
        self.index_of.contains_key(s)
    }
}

/// Builds `b` on at most `h_max` indices so that every `r_i`, `i <= k`, is a
/// slope. Fails with [`Error::HorizonExhausted`] if a pinned index would pass
/// `h_max`, and with [`Error::ZeroErrorTerm`] if `f` vanishes on `2..=h_max`.
pub fn rational_slope_sequence_with(
    f: &ErrorTerm,
    k: usize,
    h_max: usize,
    order: TargetOrder,
) -> Result<ConstructionOutput> {
    if k == 0 {
        return Err(Error::InvalidArgument("K must be >= 1".into()));
    }
    if h_max == 0 {
        return Err(Error::InvalidArgument("horizon must be >= 1".into()));
    }
    if h_max > f.horizon() {
        return Err(Error::HorizonTooShort {
            needed: h_max,
            available: f.horizon(),
        });
    }
    let mut big_a = Averages::new(f);
    let n0 = (2..=h_max)
        .find(|&x| f.at(x).is_positive())
        .ok_or(Error::ZeroErrorTerm)?;

    let targets: Vec<(usize, Rational)> = (1..=k).map(|i| (i, enumerate_rationals(i))).collect();
    let mut schedule = targets.clone();
    let lo = match order {
        TargetOrder::Descending => {
            schedule.sort_by(|x, y| y.1.cmp(&x.1));
            let top = Rational::from(schedule[0].1.ceil());
            -top - Rational::one()
        }
        TargetOrder::Enumeration => Rational::zero(),
    };

    let mut reg = Registry {
        slopes: Vec::new(),
        index_of: BTreeMap::new(),
    };
    // c[0] is a placeholder so that c[x] is c(x)
    let mut c = vec![Rational::zero()];

    // initial segment: c strictly increasing inside (lo, lo + 1)
    let lo_plus_one = &lo + Rational::one();
    let mut floor = lo;
    big_a.reach(n0);
    for x in 1..=n0 {
        let ax = &big_a.values[x];
        let cx =
            simplest_rational_avoiding(&floor, &lo_plus_one, |cand| reg.contains(&(ax - cand)));
        reg.push(ax - &cx);
        floor = cx.clone();
        c.push(cx);
    }

    let mut coverage = BTreeMap::new();
    let mut cur = n0;
    for (i, r) in schedule {
        if let Some(&x) = reg.index_of.get(&r) {
            coverage.insert(i, x);
            continue;
        }
        let mut next = cur + 1;
        loop {
            if next > h_max {
                return Err(Error::HorizonExhausted {
                    horizon: h_max,
                    index: i,
                    target: r.to_string(),
                    covered: coverage.len(),
                });
            }
            big_a.reach(next);
            if &big_a.values[next] - &c[cur] > r {
                break;
            }
            next += 1;
        }
        let c_next = &big_a.values[next] - &r;
        for x in cur + 1..next {
            let ax = &big_a.values[x];
            let s = simplest_rational_avoiding(&(ax - &c_next), &(ax - &c[x - 1]), |cand| {
                *cand == r || reg.contains(cand)
            });
            c.push(ax - &s);
            reg.push(s);
        }
        c.push(c_next);
        reg.push(r);
        coverage.insert(i, next);
        cur = next;
    }

    let b = SequencePrefix::from_fn(cur, |x| reg.slopes[x - 1].mul_index(x))?;
    let out = ConstructionOutput {
        enumeration: ENUMERATION_TAG.to_string(),
        order,
        n0,
        b,
        c: c.split_off(1),
        slopes: reg.slopes,
        coverage,
        a: SequencePrefix::from_fn(cur, |x| big_a.values[x].mul_index(x))?,
    };
    debug_assert!(out.c.windows(2).all(|w| w[0] <= w[1]));
    debug_assert_eq!(
        out.slopes.iter().collect::<BTreeSet<_>>().len(),
        out.slopes.len()
    );
    Ok(out)
}

impl ConstructionOutput {
    /// `H`, the number of emitted indices.
    pub fn horizon(&self) -> usize {
        self.b.horizon()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::scan_violations;
    use crate::domain::PairDomain;
    use crate::error_term::{builtin_error_term, Family};

    fn check(out: &ConstructionOutput, f: &ErrorTerm, k: usize) {
        let h = out.horizon();
        assert_eq!(out.c.len(), h);
        assert_eq!(out.slopes.len(), h);
        assert!(out.c.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(
            out.a,
            crate::constructions::convex_from_error(f, h).unwrap()
        );
        for x in 1..=h {
            assert_eq!(out.b.slope(x), out.slopes[x - 1]);
            assert_eq!(out.b.at(x), &(out.a.at(x) - out.c[x - 1].mul_index(x)));
        }
        let distinct: BTreeSet<_> = out.slopes.iter().collect();
        assert_eq!(distinct.len(), h);
        for i in 1..=k {
            let x = out.coverage[&i];
            assert_eq!(out.slopes[x - 1], enumerate_rationals(i));
        }
        assert!(scan_violations(&out.b, Some(f), &PairDomain::Full)
            .unwrap()
            .is_clean());
    }

    #[test]
    fn zero_error_term_is_rejected() {
        let f = ErrorTerm::zero(50);
        assert_eq!(
            rational_slope_sequence(&f, 3, 50),
            Err(Error::ZeroErrorTerm)
        );
    }

    #[test]
    fn descending_small() {
        let f = builtin_error_term(&Family::LinearOverLog, 200).unwrap();
        let out = rational_slope_sequence(&f, 10, 200).unwrap();
        check(&out, &f, 10);
        assert_eq!(out.n0, 2);
        assert_eq!(out.c[0], "-5/2".parse().unwrap());
        assert_eq!(out.coverage.len(), 10);
    }

    #[test]
    fn enumeration_order_uses_skipped_indices() {
        let f = builtin_error_term(
            &Family::Linear {
                c: Rational::from(2),
            },
            3000,
        )
        .unwrap();
        let out = rational_slope_sequence_with(&f, 10, 3000, TargetOrder::Enumeration).unwrap();
        check(&out, &f, 10);
        assert!(out.horizon() > out.n0 + 10);
        assert!(out.c[..out.n0]
            .iter()
            .all(|c| c.is_positive() && c < &Rational::one()));
    }

    #[test]
    fn enumeration_order_runs_out_for_slow_growth() {
        let f = builtin_error_term(&Family::LinearOverLog, 3000).unwrap();
        let err = rational_slope_sequence_with(&f, 10, 3000, TargetOrder::Enumeration).unwrap_err();
        assert!(
            matches!(err, Error::HorizonExhausted { horizon: 3000, .. }),
            "{err}"
        );
    }

    #[test]
    fn json_has_b_array() {
        let f = builtin_error_term(&Family::FloorSqrt, 100).unwrap();
        let out = rational_slope_sequence(&f, 4, 100).unwrap();
        let v: serde_json::Value = serde_json::to_value(&out).unwrap();
        assert_eq!(v["enumeration"], "calkin_wilf_signed");
        assert_eq!(v["order"], "descending");
        assert!(v["b"].is_array());
        let back: ConstructionOutput = serde_json::from_value(v).unwrap();
        assert_eq!(back, out);
    }
}

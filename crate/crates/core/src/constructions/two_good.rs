//! Merge chains of 2-good multisets.
//!
//! Write `n = (⌊n/k⌋ - 1)·k + β` with `k <= β <= 2k - 1`. Starting from
//! `{k, ..., k, β}` and repeatedly replacing the two smallest elements by
//! their sum ends at `{n}`. Every intermediate multiset has max/min at most 2,
//! so each merge is a pair `x <= y <= 2x`. Summing `a` over the multisets
//! therefore telescopes into `a(n) <= (⌊n/k⌋ - 1)·a(k) + a(β)` whenever `a` is
//! subadditive on such pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sequence::SequencePrefix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGoodChain {
    pub n: usize,
    pub k: usize,
    pub beta: usize,
    /// `X_{⌊n/k⌋}, ..., X_1`, each sorted ascending.
    pub chain: Vec<Vec<usize>>,
    /// `(x, y, x + y)` for each merge, `x <= y`.
    pub merge_trace: Vec<(usize, usize, usize)>,
}

pub fn two_good_chain(n: usize, k: usize) -> Result<TwoGoodChain> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2k >= 2, got n = {n}, k = {k}"
        )));
    }
    let t = n / k;
    let beta = n - (t - 1) * k;
    let mut current = vec![k; t - 1];
    current.push(beta);
    let mut chain = vec![current.clone()];
    let mut merge_trace = Vec::with_capacity(t - 1);
    while current.len() > 1 {
        let (x, y) = (current[0], current[1]);
        let s = x + y;
        current.drain(..2);
        let at = current.partition_point(|&v| v <= s);
        current.insert(at, s);
        merge_trace.push((x, y, s));
        chain.push(current.clone());
    }
    Ok(TwoGoodChain {
        n,
        k,
        beta,
        chain,
        merge_trace,
    })
}

/// `max <= 2·min` for a sorted non-empty multiset.
pub fn is_two_good(sorted: &[usize]) -> bool {
    match (sorted.first(), sorted.last()) {
        (Some(&lo), Some(&hi)) => hi <= 2 * lo,
        _ => false,
    }
}

impl TwoGoodChain {
    pub fn all_two_good(&self) -> bool {
        self.chain.iter().all(|x| is_two_good(x))
    }

    /// `Σ_{x ∈ X_t} a(x)` along the chain, starting at
    /// `(⌊n/k⌋ - 1)·a(k) + a(β)` and ending at `a(n)`. Consecutive entries
    /// differ by `a(x+y) - a(x) - a(y)` for the merged pair.
    pub fn telescoping_sums(&self, a: &SequencePrefix) -> Result<Vec<Rational>> {
        if self.n > a.horizon() {
            return Err(Error::HorizonTooShort {
                needed: self.n,
                available: a.horizon(),
            });
        }
        let mut sum: Rational = self.chain[0].iter().map(|&x| a.at(x)).sum();
        let mut out = Vec::with_capacity(self.chain.len());
        out.push(sum.clone());
        for &(x, y, s) in &self.merge_trace {
            sum = sum + a.at(s) - a.at(x) - a.at(y);
            out.push(sum.clone());
        }
        Ok(out)
    }
}

//! Exact analysis of nearly subadditive sequences.
//!
//! A sequence prefix `a(1..H)` is checked against
//! `a(n+m) <= a(n) + a(m) + f(n+m)` on a chosen set of pairs, its slopes
//! `a(n)/n` are bracketed, and the classical counterexample sequences are
//! generated. Every scalar is an exact [`Rational`]; no floating point enters
//! a decision.
//!
//! ```
//! use fekete::{scan_violations, PairDomain, Rational, SequencePrefix};
//!
//! let a = SequencePrefix::new(vec![1.into(), 1.into(), 3.into()]).unwrap();
//! let report = scan_violations(&a, None, &PairDomain::Full).unwrap();
//! assert_eq!(report.violations[0].deficit, Rational::from(1));
//! ```

pub mod checker;
pub mod constructions;
pub mod domain;
pub mod error;
pub mod error_term;
pub mod io;
pub mod limits;
pub mod rational;
pub mod sequence;

pub use checker::{
    check_convexity, check_q_monotone, q_sequence, scan_violations, second_differences, QSequence,
    Violation, ViolationReport,
};
pub use constructions::{
    convex_from_error, enumerate_rationals, linear_error_example, rational_slope_sequence,
    rational_slope_sequence_with, simplest_rational_in, threshold_gap_example, two_good_chain,
    ConstructionOutput, TargetOrder, TwoGoodChain,
};
pub use domain::PairDomain;
pub use error::{Error, Result};
pub use error_term::{builtin_error_term, ErrorTerm, Family};
pub use limits::{
    fekete_bracket, find_split, g_deficit, mu_chain_certificate, GTransform, LimitBracket,
    MuChainCertificate,
};
pub use rational::Rational;
pub use sequence::SequencePrefix;

//! Explicit sequences: the convex `f`-subadditive sequence, the sequence whose
//! slopes realize prescribed rationals, the threshold and linear-error
//! examples, and 2-good merge chains.

mod convex;
mod enumerate;
mod examples;
mod simplest;
mod slopes;
mod two_good;

pub use convex::{convex_from_error, convexity_identity, convexity_lower_bound};
pub use enumerate::{calkin_wilf_next, enumerate_rationals, fusc, rational_index, ENUMERATION_TAG};
pub use examples::{linear_error_anchors, linear_error_example, threshold_gap_example};
pub use simplest::{simplest_rational_avoiding, simplest_rational_in};
pub use slopes::{
    rational_slope_sequence, rational_slope_sequence_with, ConstructionOutput, TargetOrder,
};
pub use two_good::{two_good_chain, TwoGoodChain};

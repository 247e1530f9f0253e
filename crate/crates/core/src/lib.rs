//! Weighted sorting of permutations by genome rearrangements.
//!
//! The crate covers signed and unsigned permutations, the five rearrangement
//! operations (reversal, transposition, the two transreversals and revrev),
//! breakpoint and strip analysis, cost schemes with exact rational weights,
//! an exact A* solver, the polynomial reductions between the decision
//! problems, and an exhaustive checker for the combinatorial bounds the
//! approximation algorithms rely on.

pub mod breakpoints;
pub mod cost;
pub mod error;
pub mod lab;
pub mod ops;
pub mod perm;
pub mod rational;
pub mod reductions;
pub mod solver;

pub use breakpoints::{breakpoint_count, count_breakpoints, strips, BreakpointKind, Strip, StripClass};
pub use cost::{cost, lower_bound, sequence_cost, CostScheme, Model, ModelName};
pub use error::{Error, Result};
pub use ops::{apply, apply_sequence, enumerate_operations, OpKind, Rearrangement};
pub use perm::{Permutation, Signedness};
pub use rational::Rational;
pub use solver::{bfs_oracle, exact_distance, fwst_decide, sb3t_decide, Outcome, SortingCertificate, Solver};

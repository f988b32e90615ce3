//! Two-solution ordinal scheduling on identical machines.
//!
//! In ordinal scheduling the jobs arrive sorted by nonincreasing size but
//! the sizes themselves are unknown, so a solution is a fixed partition of
//! job indices over the `m` machines. A two-solution algorithm keeps two
//! such partitions and is charged the smaller of the two makespans.
//!
//! The crate provides:
//!
//! * [`rational`] and [`realization`]: exact arithmetic, sorted size vectors,
//!   prefix/suffix sums and the arithmetic-progression suffix bound.
//! * [`patterns`]: prefix + periodic assignment rules and the built-in
//!   solution pairs for `m = 2..=5`.
//! * [`oracle`]: the exact optimal makespan (branch and bound), its
//!   standard lower bounds, LPT, and a brute-force reference.
//! * [`verify`]: competitive ratios, per-machine load inequalities behind
//!   the upper bounds, seeded stress search and tightness instances.
//! * [`lowerbounds`]: exhaustive two-solution game search, the many-solution
//!   adversary for two machines, and the closed-form single-solution bounds.

pub mod error;
pub mod lowerbounds;
pub mod oracle;
pub mod patterns;
pub mod rational;
pub mod realization;
pub mod verify;

pub use error::{Error, Result};
pub use oracle::{optimal_makespan, OptResult};
pub use patterns::{builtin_pair, AssignmentRule, Evaluation, SolutionPair};
pub use rational::Rational;
pub use realization::{Realization, RunLengthRealization};

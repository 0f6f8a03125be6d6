//! Solvers for Subset-Sum-Ratio problems.
//!
//! The centre of the crate is an exact pseudo-polynomial algorithm for the
//! semi-restricted 2-Set SSR problem ([`solver`]). The generic approximation
//! driver in [`fptas`] turns it into a `(1+ε)`-approximation by rescaling
//! the weights around every possible pivot. Plain SSR and Factor-r SSR are
//! handled by encoding them as 2-Set instances ([`reductions`]). The
//! exhaustive solvers in [`oracle`] serve as ground truth.

pub mod error;
pub mod fptas;
pub mod generate;
pub mod instance;
pub mod oracle;
pub mod ratio;
pub mod rational;
pub mod reductions;
pub mod solver;

pub use error::{Error, Result};
pub use fptas::{
    approximate, fptas_solve, scale_instance, ApproxResult, FptasOptions, PivotRecord,
    RoundingChecks, ScaleContext,
};
pub use instance::{
    check_feasible_anchored, check_feasible_semi_restricted, check_feasible_two_set,
    IntegerInstance, SolutionPair, TwoSetInstance,
};
pub use oracle::{OracleResult, SourceOptimum};
pub use ratio::{max_ratio, ratio, IndexSet, RatioValue};
pub use rational::Rational;
pub use reductions::{
    decode, encode_factor_r, encode_ssr, solve_factor_r, solve_ssr, DecodedSolution,
    FactorRInstance, SourceKind, SsrInstance,
};
pub use solver::{
    solve_anchored, solve_semi_restricted, AnchoredSolver, ExactSolver, SemiRestrictedSolver,
    Solved,
};

#![forbid(unsafe_code)]

//! Cost-model laboratory for the parallel recursive triangular solve (TRSM).
//!
//! Solving `L·X = B` (L lower triangular, B holding k right-hand sides) on p
//! processors is commonly analyzed by splitting the parameter space into
//! regimes of the ratio `r = k/n` and stating a bandwidth bound per regime.
//! This crate makes that analysis executable:
//!
//! - [`cost`] — the alpha-beta-gamma cost algebra: `(F, W, S)` vectors along a
//!   critical path and `T = alpha·S + beta·W + gamma·F`.
//! - [`classify`] — the three-regime categorization under an original and a
//!   revised condition set, with exact gap and overlap regions of `r`.
//! - [`bounds`] — claimed vs. corrected bandwidth-bound formulas, their exact
//!   ratios, and the processor-grid split `p_r`.
//! - [`kernel`] — a numeric recursive TRSM validated against forward
//!   substitution, grounding the simulated recursion in a correct algorithm.
//! - [`sim`] — an analytic recursion-tree simulator that charges `(F, W, S)`
//!   along the critical path, with a CARMA-style matmul sub-recursion.
//! - [`sweep`] — parameter sweeps over `(r, p)` to CSV records.
//! - [`cli`] — the command-line front end used by the `trsm-costlab` binary.
//!
//! Every runnable capability also has a standalone program under `examples/`.
//! All communication is modeled, never performed; see [`sim`] for the exact
//! charging rules.

pub mod bounds;
pub mod classify;
pub mod cli;
pub mod cost;
pub mod kernel;
pub mod sim;
pub mod sweep;

pub use bounds::BoundsReport;
pub use classify::{CaseLabel, Classification, RatioInterval, RegionMap, RuleSet};
pub use cost::{CostVector, MachineParams, ProblemShape};
pub use kernel::{DenseMatrix, TriangularMatrix};
pub use sim::{CommModel, MatmulShape, RecursionTree, SimReport};

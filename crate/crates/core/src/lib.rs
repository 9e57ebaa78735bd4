//! Gradient-boosted regression trees combined with iterative collective
//! inference for transductive regression on partially labeled graphs.
//!
//! The crate provides three model families over attributed graphs:
//!
//! * `gb` — plain squared-loss gradient boosting on node attributes,
//! * `rgb` — boosting with one static relational feature (median of the
//!   known neighbors' labels), applied with iterative collective inference,
//! * `mgb` — boosting whose training loop runs collective inference after
//!   every stage so that residual models see refreshed neighbor estimates.
//!
//! Supporting modules cover graph loading and partitioning ([`graph`]), the
//! regression-tree weak learner ([`tree`]), relational feature assembly
//! ([`relfeat`]), the ICA/ICA2 inference loops ([`collective`]), a synthetic
//! graph generator with controllable label autocorrelation ([`synth`]), and
//! a cross-validation harness ([`eval`]).

pub mod boosting;
pub mod collective;
pub mod error;
pub mod eval;
pub mod graph;
pub mod matrix;
pub mod mgb;
pub mod relfeat;
pub mod seed;
pub(crate) mod stats;
pub mod synth;
#[cfg(test)]
pub(crate) mod testutil;
pub mod tree;

pub use boosting::{BoostedModel, FeatureSchema, ModelKind};
pub use error::{Error, Result};
pub use graph::{AttributedGraph, FoldAssignment};
pub use matrix::Matrix;
pub use relfeat::{FeatureMask, StageState};
pub use tree::RegressionTree;

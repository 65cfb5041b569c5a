//! Core imputations of cooperative packing games computed as exact optimal
//! dual solutions of linear programs.
//!
//! Everything is generic over a [`Scalar`]; [`Rational`] (exact, arbitrary
//! precision) is the default and the only type used by the CLI.

pub mod cli;
pub mod error;
pub mod games;
pub mod graphs;
pub mod io;
pub mod lp;
pub mod matroids;
pub mod scalar;
pub mod subset;
pub(crate) mod wire;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use subset::Subset;

/// Exact arbitrary-precision rational scalar used by default.
pub type Rational = num_rational::BigRational;

pub type RationalProgram = lp::LinearProgram<Rational>;
pub type RationalSolution = lp::LpSolution<Rational>;
pub type RationalGame = games::GameInstance<Rational>;
pub type RationalImputation = games::Imputation<Rational>;
pub type RationalGraph = graphs::WeightedGraph<Rational>;
pub type RationalMatroid = matroids::WeightedMatroid<Rational>;

/// Double-precision variants for quick, tolerance-based experiments.
pub type FloatProgram = lp::LinearProgram<f64>;
pub type FloatGame = games::GameInstance<f64>;

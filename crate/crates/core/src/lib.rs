//! Two-community labeled stochastic block model (LSBM).
//!
//! The crate covers the full experimental loop around the model:
//!
//! * [`model`]: seeded samplers for the LSBM, the labeled Erdős–Rényi null
//!   model and the labeled Galton–Watson tree, plus the exact likelihood.
//! * [`weights`]: the threshold `tau`, optimal / log-likelihood edge weights,
//!   signal statistics and the overlap score.
//! * [`spectral`], [`sdp`], [`bisection`]: three reconstruction algorithms
//!   working on the label-weighted adjacency matrix.
//! * [`cycles`]: labeled cycle census and the LSBM-vs-ER test built on it.
//! * [`tree`]: exact root posteriors on labeled trees.
//! * [`harness`]: experiment configuration, sweeps and output files.
//!
//! Numerical code is generic over [`Scalar`] (implemented for `f32` and
//! `f64`); the aliases below fix the common `f64` instantiations.

// `!(x > 0)` is used on purpose so that NaN takes the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bisection;
pub mod cycles;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod model;
mod rng;
pub mod scalar;
pub mod sdp;
pub mod spectral;
pub mod tree;
pub mod weights;

pub use error::{Error, Result};
pub use model::{Label, LabelAlphabet, LabeledGraph, LabeledTree, TypeAssignment};
pub use scalar::Scalar;

/// Default floating-point type used by the CLI and the harness.
pub type Real = f64;

pub type ModelParams = model::ModelParams<f64>;
pub type ModelParamsF32 = model::ModelParams<f32>;
pub type WeightFunction = weights::WeightFunction<f64>;
pub type WeightFunctionF32 = weights::WeightFunction<f32>;
pub type WeightedAdjacency = weights::WeightedAdjacency<f64>;
pub type WeightedAdjacencyF32 = weights::WeightedAdjacency<f32>;
pub type EigenResult = spectral::EigenResult<f64>;
pub type EigenResultF32 = spectral::EigenResult<f32>;
pub type SymMatrix = linalg::SymMatrix<f64>;
pub type SdpSolution = sdp::SdpSolution<f64>;
pub type PoissonMeans = cycles::PoissonMeans<f64>;

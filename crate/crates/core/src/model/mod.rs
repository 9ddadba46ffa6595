//! Generative side of the model: parameters, graphs, samplers and likelihood.

mod graph;
pub mod io;
mod likelihood;
mod params;
mod sample;
mod tree;

pub use graph::{Edge, LabeledGraph, TypeAssignment};
pub use likelihood::{log_likelihood, LogLikelihood};
pub use params::{Label, LabelAlphabet, ModelParams};
pub use sample::{
    balanced_types, er_pair_law, lsbm_pair_law, sample_labeled_er, sample_lsbm,
    sample_lsbm_given_types, PairLaw,
};
pub use tree::{sample_gw_tree, LabeledTree, TreeNode};

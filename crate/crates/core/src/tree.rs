//! Exact root posteriors on labeled trees and the non-reconstruction
//! experiment.
//!
//! Given the types of the nodes at the observation depth and every edge
//! label, belief propagation from the observed level up to the root gives
//! `P(sigma_root = +1 | tree, labels, observed types)` exactly.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::harness::trial_seed;
use crate::model::{sample_gw_tree, Label, LabeledTree, ModelParams};
use crate::scalar::Scalar;

pub const TREE_CSV_HEADER: &str = "depth,mean_abs,stderr,trials";

/// Root posterior with the nodes at the tree's depth limit observed.
pub fn root_posterior<T: Scalar>(t: &LabeledTree, params: &ModelParams<T>) -> Result<T> {
    root_posterior_at(t, params, t.depth_limit())
}

/// Root posterior observing only the nodes at depth `observe`; deeper
/// nodes are ignored. At `observe = 0` nothing is observed.
pub fn root_posterior_at<T: Scalar>(t: &LabeledTree, params: &ModelParams<T>, observe: usize) -> Result<T> {
    let half = T::of(0.5);
    if observe == 0 {
        return Ok(half);
    }
    let total = params.a + params.b;
    let kernel = |same: bool, l: Label| -> T {
        if same {
            params.a / total * params.mu[l.index()]
        } else {
            params.b / total * params.nu[l.index()]
        }
    };
    let nodes = t.nodes();
    // msg[i] = (P(obs below i | sigma_i = +1), P(obs below i | sigma_i = -1)), up to scale.
    let mut msg = vec![(T::one(), T::one()); nodes.len()];
    for i in (0..nodes.len()).rev() {
        let node = &nodes[i];
        if node.depth > observe {
            continue;
        }
        let mut m = if node.depth == observe {
            if node.spin == 1 { (T::one(), T::zero()) } else { (T::zero(), T::one()) }
        } else {
            let mut acc = (T::one(), T::one());
            for &c in &node.children {
                let l = nodes[c].label.expect("non-root nodes carry a label");
                let (cp, cm) = msg[c];
                let (same, diff) = (kernel(true, l), kernel(false, l));
                acc.0 *= same * cp + diff * cm;
                acc.1 *= diff * cp + same * cm;
            }
            acc
        };
        let z = m.0 + m.1;
        if !(z > T::zero()) {
            return Err(Error::ZeroProbability(format!("observed types below node {i} have probability 0")));
        }
        m.0 /= z;
        m.1 /= z;
        msg[i] = m;
    }
    let (p, m) = msg[t.root()];
    Ok(p / (p + m))
}

/// Mean of `|2P - 1|` over trials at one observation depth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepthSummary {
    pub depth: usize,
    pub mean_abs: f64,
    pub stderr: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionCurve {
    /// Depths `0..=depth`.
    pub per_depth: Vec<DepthSummary>,
}

impl ReconstructionCurve {
    /// Summary at the deepest observation level.
    pub fn last(&self) -> &DepthSummary {
        self.per_depth.last().expect("curve covers depth 0")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut out = std::io::BufWriter::new(out);
        writeln!(out, "{TREE_CSV_HEADER}")?;
        for s in &self.per_depth {
            writeln!(out, "{},{:?},{:?},{}", s.depth, s.mean_abs, s.stderr, s.trials)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Samples `trials` trees of the given depth and records `|2P - 1|` when
/// observing each level `0..=depth` of the same tree. Trees that die out
/// before a level contribute `P = 1/2` there.
pub fn nonreconstruction_experiment<T: Scalar>(
    params: &ModelParams<T>,
    depth: usize,
    trials: usize,
    seed: u64,
) -> Result<ReconstructionCurve> {
    if trials == 0 {
        return Err(Error::InvalidParams("trials must be at least 1".into()));
    }
    let rows: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let t = sample_gw_tree(params, depth, trial_seed(seed, i))?;
            (0..=depth)
                .map(|d| root_posterior_at(&t, params, d).map(|p| (T::of(2.0) * p - T::one()).abs().as_f64()))
                .collect()
        })
        .collect::<Result<_>>()?;
    let per_depth = (0..=depth)
        .map(|d| {
            let xs: Vec<f64> = rows.iter().map(|r| r[d]).collect();
            let (mean, stderr) = mean_stderr(&xs);
            DepthSummary { depth: d, mean_abs: mean, stderr, trials }
        })
        .collect();
    Ok(ReconstructionCurve { per_depth })
}

/// Sample mean and its standard error (zero for a single sample).
pub(crate) fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

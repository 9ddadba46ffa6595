//! Exact weighted minimum bisection by exhaustive enumeration.
//!
//! Only usable as a small-instance oracle: the search visits
//! `C(n-1, n/2-1)` assignments.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{LabeledGraph, ModelParams, TypeAssignment};
use crate::scalar::Scalar;
use crate::weights::{mle_weight, WeightedAdjacency};

/// Largest `n` accepted by [`min_bisection_exact`].
pub const MAX_BISECTION_N: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BalanceMode {
    /// `sum sigma = 0`; odd `n` is rejected.
    #[default]
    Exact,
    /// `|sum sigma| <= 1`, allowing odd `n`.
    Relaxed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bisection<T = f64> {
    /// Optimal assignment with `sigma_0 = +1`.
    pub assignment: TypeAssignment,
    pub cut: T,
    /// Number of assignments evaluated.
    pub evaluated: usize,
}

/// Total weight across the partition: `sum_{u<v, sigma_u != sigma_v} W_uv`.
pub fn cut_value<T: Scalar>(w: &WeightedAdjacency<T>, sigma: &TypeAssignment) -> Result<T> {
    if sigma.len() != w.n() {
        return Err(Error::LengthMismatch { left: w.n(), right: sigma.len() });
    }
    Ok(w.upper_entries().filter(|&(u, v, _)| !sigma.same(u, v)).map(|(_, _, x)| x).sum())
}

/// Lexicographic order on assignments encoded as `+1` bits, with
/// `-1 < +1` compared from vertex 0.
fn lex_cmp(a: u32, b: u32) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    if a & (diff & diff.wrapping_neg()) == 0 { Ordering::Less } else { Ordering::Greater }
}

/// Successor of `x` among integers with the same popcount (Gosper).
fn next_same_popcount(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Minimum-weight balanced cut; ties go to the lexicographically smallest
/// assignment among those with `sigma_0 = +1`.
pub fn min_bisection_exact<T: Scalar>(w: &WeightedAdjacency<T>, mode: BalanceMode) -> Result<Bisection<T>> {
    let n = w.n();
    if n == 0 {
        return Err(Error::InvalidParams("bisection of an empty vertex set".into()));
    }
    if n > MAX_BISECTION_N {
        return Err(Error::SizeGuard(format!("exact bisection needs n <= {MAX_BISECTION_N}, got {n}")));
    }
    if n % 2 == 1 && mode == BalanceMode::Exact {
        return Err(Error::Balance(format!("n = {n} is odd; use the relaxed balance mode")));
    }
    // Vertex 0 is always on the + side; choose the other + vertices among 1..n.
    let plus_sizes = if n.is_multiple_of(2) { vec![n / 2] } else { vec![n / 2, n / 2 + 1] };
    let extra_sizes: Vec<usize> = plus_sizes.into_iter().filter(|&s| s >= 1).map(|s| s - 1).collect();
    let mut masks = Vec::new();
    for k in extra_sizes {
        let rest = (n - 1) as u32;
        if k == 0 {
            masks.push(1u32);
            continue;
        }
        let limit = 1u32 << rest;
        let mut x = (1u32 << k) - 1;
        while x < limit {
            masks.push((x << 1) | 1);
            x = next_same_popcount(x);
        }
    }
    let entries: Vec<(usize, usize, T)> = w.upper_entries().collect();
    let cut_of = |mask: u32| -> T {
        let mut acc = T::zero();
        for &(u, v, x) in &entries {
            if ((mask >> u) ^ (mask >> v)) & 1 == 1 {
                acc += x;
            }
        }
        acc
    };
    let better = |a: (T, u32), b: (T, u32)| -> (T, u32) {
        match a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal).then_with(|| lex_cmp(a.1, b.1)) {
            Ordering::Greater => b,
            _ => a,
        }
    };
    let (cut, mask) = masks
        .par_iter()
        .map(|&m| (cut_of(m), m))
        .reduce_with(better)
        .expect("at least one balanced assignment");
    let spins = (0..n).map(|u| if (mask >> u) & 1 == 1 { 1 } else { -1 }).collect();
    Ok(Bisection { assignment: TypeAssignment::new(spins)?, cut, evaluated: masks.len() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapEstimate<T = f64> {
    pub assignment: TypeAssignment,
    pub cut: T,
    /// Every log-likelihood weight is zero, so all balanced assignments
    /// are equally likely and the tie-break decided.
    pub no_signal: bool,
}

/// Balanced maximum-likelihood assignment: minimum bisection under the
/// log-likelihood-ratio weights.
pub fn map_estimate<T: Scalar>(
    g: &LabeledGraph,
    params: &ModelParams<T>,
    mode: BalanceMode,
) -> Result<MapEstimate<T>> {
    let w = mle_weight(params, Some(g.n()))?;
    let adj = WeightedAdjacency::from_graph(g, &w)?;
    let best = min_bisection_exact(&adj, mode)?;
    Ok(MapEstimate { assignment: best.assignment, cut: best.cut, no_signal: w.is_zero() })
}

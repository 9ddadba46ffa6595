use crate::error::{Error, Result};
use crate::model::{LabeledGraph, ModelParams, TypeAssignment};
use crate::scalar::Scalar;

/// Joint log-probability `log P(G, L, sigma)`.
///
/// A zero factor is reported as [`LogLikelihood::Impossible`] instead of
/// silently returning `-inf`, so it cannot be confused with underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogLikelihood<T> {
    Finite(T),
    /// Some pair has probability zero; carries the first offending pair
    /// when it is an observed edge.
    Impossible { edge: Option<(usize, usize)> },
}

impl<T: Scalar> LogLikelihood<T> {
    /// Numeric value, `-inf` for impossible observations.
    pub fn value(self) -> T {
        match self {
            LogLikelihood::Finite(x) => x,
            LogLikelihood::Impossible { .. } => T::neg_infinity(),
        }
    }

    pub fn is_impossible(self) -> bool {
        matches!(self, LogLikelihood::Impossible { .. })
    }
}

/// `-n log 2 + sum_{u<v} log phi_uv` with the four-case pair factor
/// (edge/non-edge times same/different type).
///
/// Runs in O(n + m): non-edge factors are counted per type class.
pub fn log_likelihood<T: Scalar>(
    g: &LabeledGraph,
    sigma: &TypeAssignment,
    params: &ModelParams<T>,
) -> Result<LogLikelihood<T>> {
    let n = g.n();
    if sigma.len() != n {
        return Err(Error::LengthMismatch { left: n, right: sigma.len() });
    }
    if params.num_labels() != g.alphabet().len() {
        return Err(Error::InvalidParams("label alphabet size differs from graph".into()));
    }
    let nn = T::of_usize(n);
    let (p, q) = (params.a / nn, params.b / nn);

    let mut total = -nn * T::of(2.0).ln();
    let (mut same_edges, mut cross_edges) = (0usize, 0usize);
    for e in g.edges() {
        let l = e.label.index();
        let factor = if sigma.same(e.u, e.v) {
            same_edges += 1;
            p * params.mu[l]
        } else {
            cross_edges += 1;
            q * params.nu[l]
        };
        if factor <= T::zero() {
            return Ok(LogLikelihood::Impossible { edge: Some((e.u, e.v)) });
        }
        total += factor.ln();
    }

    let plus = sigma.count_plus();
    let minus = n - plus;
    let same_pairs = plus * plus.saturating_sub(1) / 2 + minus * minus.saturating_sub(1) / 2;
    let cross_pairs = plus * minus;
    for (absent, keep) in [(same_pairs - same_edges, T::one() - p), (cross_pairs - cross_edges, T::one() - q)] {
        if absent == 0 {
            continue;
        }
        if keep <= T::zero() {
            return Ok(LogLikelihood::Impossible { edge: None });
        }
        total += T::of_usize(absent) * keep.ln();
    }
    Ok(LogLikelihood::Finite(total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_lsbm, Edge, Label, LabelAlphabet};

    /// Direct product over all pairs.
    fn naive(g: &LabeledGraph, sigma: &TypeAssignment, p: &ModelParams<f64>) -> f64 {
        let n = g.n();
        let (pa, pb) = (p.a / n as f64, p.b / n as f64);
        let mut prod = 0.5f64.powi(n as i32);
        for u in 0..n {
            for v in (u + 1)..n {
                let same = sigma.same(u, v);
                prod *= match (g.label_between(u, v), same) {
                    (Some(l), true) => pa * p.mu[l.index()],
                    (Some(l), false) => pb * p.nu[l.index()],
                    (None, true) => 1.0 - pa,
                    (None, false) => 1.0 - pb,
                };
            }
        }
        prod.ln()
    }

    #[test]
    fn empty_two_vertex_graph() {
        let p = ModelParams::<f64>::unlabeled(0.0, 0.0).unwrap();
        let g = LabeledGraph::empty(2, LabelAlphabet::single());
        let s = TypeAssignment::new(vec![1, -1]).unwrap();
        let ll = log_likelihood(&g, &s, &p).unwrap().value();
        assert!((ll + 2.0 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn matches_naive_product() {
        let alpha = LabelAlphabet::new(["x", "y"]).unwrap();
        let p = ModelParams::new(1.7, 0.9, vec![0.3, 0.7], vec![0.55, 0.45], alpha.clone()).unwrap();
        let g = LabeledGraph::new(
            3,
            alpha,
            vec![Edge { u: 0, v: 1, label: Label(1) }, Edge { u: 1, v: 2, label: Label(0) }],
        )
        .unwrap();
        for spins in [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [1, 1, -1]] {
            let s = TypeAssignment::new(spins.to_vec()).unwrap();
            let fast = log_likelihood(&g, &s, &p).unwrap().value();
            assert!((fast - naive(&g, &s, &p)).abs() < 1e-12);
        }
        let p = ModelParams::<f64>::binary(3.0, 2.0, 0.3).unwrap();
        for seed in 0..5 {
            let (g, s) = sample_lsbm(&p, 9, seed).unwrap();
            let fast = log_likelihood(&g, &s, &p).unwrap().value();
            assert!((fast - naive(&g, &s, &p)).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_probability_label_is_flagged() {
        let alpha = LabelAlphabet::new(["x", "y"]).unwrap();
        let p = ModelParams::new(1.0, 1.0, vec![1.0, 0.0], vec![0.5, 0.5], alpha.clone()).unwrap();
        let g = LabeledGraph::new(2, alpha, vec![Edge { u: 0, v: 1, label: Label(1) }]).unwrap();
        let ll = log_likelihood(&g, &TypeAssignment::all_plus(2), &p).unwrap();
        assert_eq!(ll, LogLikelihood::Impossible { edge: Some((0, 1)) });
        assert_eq!(ll.value(), f64::NEG_INFINITY);
        let cross = TypeAssignment::new(vec![1, -1]).unwrap();
        assert!(!log_likelihood(&g, &cross, &p).unwrap().is_impossible());
    }

    #[test]
    fn invariant_under_global_flip() {
        let p = ModelParams::<f64>::binary(4.0, 1.0, 0.2).unwrap();
        let (g, s) = sample_lsbm(&p, 40, 11).unwrap();
        let x = log_likelihood(&g, &s, &p).unwrap().value();
        let y = log_likelihood(&g, &-&s, &p).unwrap().value();
        assert_eq!(x, y);
    }
}

//! Threshold and weight-function calculus.
//!
//! All sums run over the label alphabet. Labels with `a mu(l) + b nu(l) = 0`
//! never occur and contribute nothing (0/0 := 0).

mod adjacency;
pub mod io;

pub use adjacency::WeightedAdjacency;

use crate::error::{Error, Result};
use crate::model::{Label, LabeledGraph, ModelParams, TypeAssignment};
use crate::scalar::Scalar;

/// Edge weight per label.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction<T = f64> {
    values: Vec<T>,
}

impl<T: Scalar> WeightFunction<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    pub fn constant(value: T, labels: usize) -> Self {
        Self { values: vec![value; labels] }
    }

    #[inline]
    pub fn get(&self, label: Label) -> T {
        self.values[label.index()]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All weights lie in `[-1, 1]`.
    pub fn is_bounded(&self) -> bool {
        self.values.iter().all(|w| w.abs() <= T::one())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|w| w.is_zero())
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, w| m.max(w.abs()))
    }

    /// Divides by `max |w|`. A positive rescaling leaves every cut ordering,
    /// hence the minimum bisection, unchanged.
    pub fn normalized(&self) -> Self {
        let m = self.max_abs();
        if m.is_zero() {
            return self.clone();
        }
        Self { values: self.values.iter().map(|&w| w / m).collect() }
    }

    pub fn scaled(&self, c: T) -> Self {
        Self { values: self.values.iter().map(|&w| w * c).collect() }
    }

    fn check_len(&self, params: &ModelParams<T>) -> Result<()> {
        if self.values.len() != params.num_labels() {
            return Err(Error::LengthMismatch { left: self.values.len(), right: params.num_labels() });
        }
        Ok(())
    }
}

/// `tau = sum_l (a mu - b nu)^2 / (2 (a mu + b nu))`.
pub fn tau<T: Scalar>(params: &ModelParams<T>) -> T {
    (0..params.num_labels())
        .map(|l| {
            let plus = params.plus(l);
            if plus > T::zero() {
                let minus = params.minus(l);
                minus * minus / (T::of(2.0) * plus)
            } else {
                T::zero()
            }
        })
        .sum()
}

/// `w*(l) = (a mu - b nu) / (a mu + b nu)`, which maximises the signal
/// statistic; always bounded.
pub fn optimal_weight<T: Scalar>(params: &ModelParams<T>) -> WeightFunction<T> {
    WeightFunction::new(
        (0..params.num_labels())
            .map(|l| {
                let plus = params.plus(l);
                if plus > T::zero() {
                    params.minus(l) / plus
                } else {
                    T::zero()
                }
            })
            .collect(),
    )
}

/// Log-likelihood-ratio weight `log[a (1 - b/n) mu / (b (1 - a/n) nu)]`.
///
/// With `n = None` the finite-size factors are dropped (`n -> inf`). The
/// result may be unbounded; see [`WeightFunction::normalized`].
pub fn mle_weight<T: Scalar>(params: &ModelParams<T>, n: Option<usize>) -> Result<WeightFunction<T>> {
    let (keep_a, keep_b) = match n {
        Some(n) => {
            let nn = T::of_usize(n);
            (T::one() - params.a / nn, T::one() - params.b / nn)
        }
        None => (T::one(), T::one()),
    };
    let mut values = Vec::with_capacity(params.num_labels());
    for l in params.alphabet.labels() {
        let i = l.index();
        let num = params.a * params.mu[i] * keep_b;
        let den = params.b * params.nu[i] * keep_a;
        if params.plus(i).is_zero() {
            values.push(T::zero());
            continue;
        }
        if !(num > T::zero() && den > T::zero()) {
            return Err(Error::InfiniteWeight { label: params.alphabet.token(l).to_string() });
        }
        values.push((num / den).ln());
    }
    Ok(WeightFunction::new(values))
}

/// `alpha = 1/2 sum w (a mu + b nu)`, `beta = 1/2 sum w (a mu - b nu)`:
/// the coefficients of `E[W | sigma] = (alpha/n) J + (beta/n) sigma sigma^T`
/// off the diagonal.
pub fn alpha_beta<T: Scalar>(params: &ModelParams<T>, w: &WeightFunction<T>) -> Result<(T, T)> {
    w.check_len(params)?;
    let half = T::of(0.5);
    let (mut alpha, mut beta) = (T::zero(), T::zero());
    for (l, &wl) in w.values.iter().enumerate() {
        alpha += wl * params.plus(l);
        beta += wl * params.minus(l);
    }
    Ok((half * alpha, half * beta))
}

/// `sum (a mu - b nu) w / sqrt(sum (a mu + b nu) w^2)`.
pub fn snr_statistic<T: Scalar>(params: &ModelParams<T>, w: &WeightFunction<T>) -> Result<T> {
    w.check_len(params)?;
    let (mut num, mut den) = (T::zero(), T::zero());
    for (l, &wl) in w.values.iter().enumerate() {
        num += params.minus(l) * wl;
        den += params.plus(l) * wl * wl;
    }
    if !(den > T::zero()) {
        return Err(Error::UndefinedStatistic(
            "sum (a mu + b nu) w^2 is zero; the weight vanishes on every observable label".into(),
        ));
    }
    Ok(num / den.sqrt())
}

/// Sufficient conditions of the recovery guarantees, evaluated for a
/// weight function. These are reported, never enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport<T = f64> {
    pub statistic: T,
    /// `sum a mu w^2` and `sum b nu w^2`.
    pub within_energy: T,
    pub across_energy: T,
    /// Minimum bisection: statistic > sqrt(128 ln 2) with both energies > 8 ln 2.
    pub bisection: bool,
    pub bisection_technical: bool,
    /// SDP: statistic > 512 sqrt(ln 2) with total energy > 8 ln 2.
    pub sdp: bool,
    pub sdp_technical: bool,
    /// Dense-regime spectral: statistic^2 > 256.
    pub spectral_dense: bool,
}

pub fn condition_report<T: Scalar>(params: &ModelParams<T>, w: &WeightFunction<T>) -> Result<ConditionReport<T>> {
    let statistic = snr_statistic(params, w)?;
    let (mut within, mut across) = (T::zero(), T::zero());
    for (l, &wl) in w.values.iter().enumerate() {
        within += params.a * params.mu[l] * wl * wl;
        across += params.b * params.nu[l] * wl * wl;
    }
    let ln2 = T::of(2.0).ln();
    let eight_ln2 = T::of(8.0) * ln2;
    let bisection_technical = within > eight_ln2 && across > eight_ln2;
    let sdp_technical = within + across > eight_ln2;
    Ok(ConditionReport {
        statistic,
        within_energy: within,
        across_energy: across,
        bisection: bisection_technical && statistic > (T::of(128.0) * ln2).sqrt(),
        bisection_technical,
        sdp: sdp_technical && statistic > T::of(512.0) * ln2.sqrt(),
        sdp_technical,
        spectral_dense: statistic * statistic > T::of(256.0),
    })
}

/// Overlap `Q = 1/2 - min(d(sigma, hat), d(sigma, -hat)) / n`, in `[0, 1/2]`.
pub fn overlap(sigma: &TypeAssignment, sigma_hat: &TypeAssignment) -> Result<f64> {
    let d = sigma.hamming(sigma_hat)?;
    let n = sigma.len();
    if n == 0 {
        return Ok(0.0);
    }
    Ok(0.5 - d.min(n - d) as f64 / n as f64)
}

/// Default margin for [`is_positively_correlated`].
pub const CORRELATION_MARGIN: f64 = 0.05;

/// Finite-n surrogate for "positively correlated": `Q > margin`.
pub fn is_positively_correlated(q: f64, margin: f64) -> bool {
    q > margin
}

/// `W_uv = w(L_uv)` on edges, zero elsewhere.
pub fn build_weighted_adjacency<T: Scalar>(g: &LabeledGraph, w: &WeightFunction<T>) -> Result<WeightedAdjacency<T>> {
    WeightedAdjacency::from_graph(g, w)
}

use crate::cycles::census::{count_labeled_cycles, CycleCensus};
use crate::cycles::means::{poisson_means, sequence_eta};
use crate::error::{Error, Result};
use crate::model::{LabeledGraph, ModelParams};
use crate::scalar::Scalar;
use crate::weights::tau;

/// Below this total ER mean the cycle counts are too small for the test to
/// separate the models at this `n`.
pub const LOW_POWER_LAMBDA: f64 = 5.0;

/// `X_k = sum over length-k keys of count * eta`. Sequences with undefined
/// `eta` (a label of zero mass in both models) contribute nothing.
pub fn test_statistic<T: Scalar>(census: &CycleCensus, params: &ModelParams<T>, k: usize) -> Result<T> {
    census.check_length(k)?;
    Ok(census
        .entries_at(k)
        .filter_map(|(seq, count)| sequence_eta(params, seq).map(|eta| T::of(count as f64) * eta))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Lsbm,
    Er,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Lsbm => "LSBM",
            Verdict::Er => "ER",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestReport<T = f64> {
    pub k: usize,
    pub tau: T,
    pub statistic: T,
    /// `E_ER[X_k] + rho`.
    pub threshold: T,
    /// `tau^k / (6k)`.
    pub rho: T,
    pub mean_er: T,
    pub mean_lsbm: T,
    /// Sum of the ER means over all length-`k` sequences.
    pub total_lambda: T,
    pub low_power: bool,
    pub verdict: Verdict,
}

/// Decides LSBM iff `X_k > E_ER[X_k] + tau^k / (6k)`.
pub fn hypothesis_test<T: Scalar>(g: &LabeledGraph, params: &ModelParams<T>, k: usize) -> Result<TestReport<T>> {
    let t = tau(params);
    if !(t > T::zero()) {
        return Err(Error::DegenerateTest("tau = 0: the LSBM and ER models coincide".into()));
    }
    let census = count_labeled_cycles(g, k)?;
    let means = poisson_means(params, k)?;
    let statistic = test_statistic(&census, params, k)?;
    let mean_er = means.null_mean();
    let rho = t.powi(k as i32) / T::of_usize(6 * k);
    let threshold = mean_er + rho;
    let total_lambda = means.total_lambda();
    Ok(TestReport {
        k,
        tau: t,
        statistic,
        threshold,
        rho,
        mean_er,
        mean_lsbm: means.alternative_mean(),
        total_lambda,
        low_power: total_lambda < T::of(LOW_POWER_LAMBDA),
        verdict: if statistic > threshold { Verdict::Lsbm } else { Verdict::Er },
    })
}

use crate::error::{Error, Result};
use crate::model::{Label, ModelParams};
use crate::scalar::Scalar;

/// Largest number of label sequences [`poisson_means`] will enumerate.
pub const MAX_SEQUENCES: usize = 1 << 22;

/// Limiting Poisson means for one label sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceMeans<T = f64> {
    pub labels: Vec<Label>,
    /// Mean count under the labeled ER model.
    pub lambda: T,
    /// Mean count under the LSBM.
    pub xi: T,
    /// `xi / lambda - 1`.
    pub eta: T,
}

/// Label sequence left out because `lambda = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcludedSequence {
    pub labels: Vec<Label>,
    pub reason: String,
}

/// Means for every label sequence of one cycle length, in lexicographic
/// label order.
#[derive(Debug, Clone, PartialEq)]
pub struct PoissonMeans<T = f64> {
    pub k: usize,
    pub entries: Vec<SequenceMeans<T>>,
    pub excluded: Vec<ExcludedSequence>,
}

impl<T: Scalar> PoissonMeans<T> {
    pub fn get(&self, labels: &[Label]) -> Option<&SequenceMeans<T>> {
        self.entries.binary_search_by(|e| e.labels.as_slice().cmp(labels)).ok().map(|i| &self.entries[i])
    }

    pub fn total_lambda(&self) -> T {
        self.entries.iter().map(|e| e.lambda).sum()
    }

    /// `E[X_k]` under the ER model: `sum lambda eta`.
    pub fn null_mean(&self) -> T {
        self.entries.iter().map(|e| e.lambda * e.eta).sum()
    }

    /// `E[X_k]` under the LSBM: `sum xi eta`.
    pub fn alternative_mean(&self) -> T {
        self.entries.iter().map(|e| e.xi * e.eta).sum()
    }

    /// `sum lambda eta^2`, the mean gap between the two models.
    pub fn signal(&self) -> T {
        self.entries.iter().map(|e| e.lambda * e.eta * e.eta).sum()
    }
}

/// `eta` of a single sequence: `prod (a mu - b nu) / prod (a mu + b nu)`,
/// or `None` if some factor of the denominator vanishes.
pub fn sequence_eta<T: Scalar>(params: &ModelParams<T>, labels: &[Label]) -> Option<T> {
    let mut ratio = T::one();
    for l in labels {
        let plus = params.plus(l.index());
        if !(plus > T::zero()) {
            return None;
        }
        ratio *= params.minus(l.index()) / plus;
    }
    Some(ratio)
}

/// `lambda = prod (a mu + b nu) / (2^{k+1} k)` and
/// `xi = (prod (a mu + b nu) + prod (a mu - b nu)) / (2^{k+1} k)` for every
/// sequence of length `k`.
pub fn poisson_means<T: Scalar>(params: &ModelParams<T>, k: usize) -> Result<PoissonMeans<T>> {
    params.validate()?;
    if k < 3 {
        return Err(Error::InvalidParams(format!("cycle length must be at least 3, got {k}")));
    }
    let q = params.num_labels();
    let total = q.checked_pow(k as u32).filter(|&t| t <= MAX_SEQUENCES).ok_or_else(|| {
        Error::SizeGuard(format!("{q}^{k} label sequences exceed the limit {MAX_SEQUENCES}"))
    })?;
    let norm = T::of(2f64.powi(k as i32 + 1) * k as f64);
    let mut entries = Vec::new();
    let mut excluded = Vec::new();
    let mut digits = vec![0usize; k];
    for _ in 0..total {
        let labels: Vec<Label> = digits.iter().map(|&d| Label(d as u16)).collect();
        let sum_prod: T = digits.iter().map(|&d| params.plus(d)).fold(T::one(), |p, x| p * x);
        let diff_prod: T = digits.iter().map(|&d| params.minus(d)).fold(T::one(), |p, x| p * x);
        if let (true, Some(eta)) = (sum_prod > T::zero(), sequence_eta(params, &labels)) {
            let lambda = sum_prod / norm;
            entries.push(SequenceMeans { labels, lambda, xi: (sum_prod + diff_prod) / norm, eta });
        } else {
            excluded.push(ExcludedSequence {
                labels,
                reason: "lambda = 0: a label with a mu + b nu = 0 never appears".into(),
            });
        }
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(PoissonMeans { k, entries, excluded })
}

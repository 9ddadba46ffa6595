//! Extreme eigenpairs of implicit symmetric operators.

use rand::Rng;

use crate::error::{EigenFailure, Error, Result};
use crate::linalg::{tridiagonal_eigen, SymMatrix};
use crate::rng::{substream, Stream};
use crate::scalar::Scalar;
use crate::weights::WeightedAdjacency;

const KRYLOV_DIM: usize = 100;
const STAGNATION_WINDOW: usize = 50;
const STAGNATION_REL_CHANGE: f64 = 1e-14;

/// Symmetric linear map available only through products.
pub trait SymmetricOperator<T: Scalar>: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[T], y: &mut [T]);
    /// Upper bound on the spectral radius.
    fn radius_bound(&self) -> T;
}

/// `D' = W' - (alpha/n) J`, applied without forming `J`.
#[derive(Debug, Clone, Copy)]
pub struct DeflatedAdjacency<'a, T: Scalar> {
    pub w: &'a WeightedAdjacency<T>,
    pub alpha: T,
}

impl<T: Scalar> SymmetricOperator<T> for DeflatedAdjacency<'_, T> {
    fn dim(&self) -> usize {
        self.w.n()
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        self.w.mul_vec(x, y);
        let n = self.w.n();
        if n == 0 {
            return;
        }
        let shift = self.alpha / T::of_usize(n) * x.iter().copied().sum::<T>();
        for yi in y.iter_mut() {
            *yi -= shift;
        }
    }

    fn radius_bound(&self) -> T {
        self.w.max_abs_row_sum() + self.alpha.abs()
    }
}

impl<T: Scalar> SymmetricOperator<T> for SymMatrix<T> {
    fn dim(&self) -> usize {
        self.n()
    }

    fn apply(&self, x: &[T], y: &mut [T]) {
        self.mul_vec(x, y);
    }

    fn radius_bound(&self) -> T {
        self.max_abs_row_sum()
    }
}

/// Which end of the spectrum to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenTarget {
    /// Largest `|lambda|`; on an exact tie the positive end wins.
    Extreme,
    /// Largest algebraic eigenvalue.
    Largest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    /// Restarted Lanczos with full reorthogonalisation.
    #[default]
    Lanczos,
    /// Power iteration on `A + cI` and `cI - A`, `c` a spectral-radius bound.
    ShiftedPower,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions<T = f64> {
    /// Convergence when `||A x - lambda x|| <= tol`.
    pub tol: T,
    /// Budget in operator applications.
    pub max_iter: usize,
    /// Seed of the start vector.
    pub seed: u64,
    pub method: EigenMethod,
}

impl<T: Scalar> Default for EigenOptions<T> {
    fn default() -> Self {
        Self { tol: T::reachable_tol(1e-8), max_iter: 10_000, seed: 0, method: EigenMethod::Lanczos }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult<T = f64> {
    pub eigenvalue: T,
    /// Unit-norm eigenvector.
    pub eigenvector: Vec<T>,
    /// Operator applications used.
    pub iterations: usize,
    /// `||A x - lambda x||`.
    pub residual: T,
}

/// Eigenpair of `W' - (alpha/n) J` with maximal `|lambda|`.
pub fn extreme_eigenpair<T: Scalar>(
    w: &WeightedAdjacency<T>,
    alpha: T,
    opts: &EigenOptions<T>,
) -> Result<EigenResult<T>> {
    solve_eigen(&DeflatedAdjacency { w, alpha }, EigenTarget::Extreme, opts)
}

/// Eigenpair of `op` at the requested end of the spectrum.
pub fn solve_eigen<T: Scalar, A: SymmetricOperator<T> + ?Sized>(
    op: &A,
    target: EigenTarget,
    opts: &EigenOptions<T>,
) -> Result<EigenResult<T>> {
    if !(opts.tol > T::zero()) {
        return Err(Error::InvalidParams("eigensolver tolerance must be positive".into()));
    }
    if op.dim() == 0 {
        return Err(Error::InvalidGraph("eigenproblem of dimension 0".into()));
    }
    match opts.method {
        EigenMethod::Lanczos => lanczos(op, target, opts),
        EigenMethod::ShiftedPower => shifted_power(op, target, opts),
    }
}

fn random_unit<T: Scalar>(n: usize, seed: u64, stream: Stream) -> Vec<T> {
    let mut rng = substream(seed, stream);
    let mut x: Vec<T> = (0..n).map(|_| T::of(rng.random::<f64>() * 2.0 - 1.0)).collect();
    normalize(&mut x);
    x
}

fn dot<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).map(|(&a, &b)| a * b).sum()
}

fn normalize<T: Scalar>(x: &mut [T]) -> T {
    let norm = dot(x, x).sqrt();
    if norm > T::zero() {
        for xi in x.iter_mut() {
            *xi /= norm;
        }
    }
    norm
}

/// Rayleigh quotient and residual norm of a unit vector; `ax` receives `A x`.
fn rayleigh<T: Scalar, A: SymmetricOperator<T> + ?Sized>(op: &A, x: &[T], ax: &mut [T]) -> (T, T) {
    op.apply(x, ax);
    let lambda = dot(x, ax);
    let res = ax.iter().zip(x).map(|(&a, &b)| (a - lambda * b) * (a - lambda * b)).sum::<T>().sqrt();
    (lambda, res)
}

struct Best<T> {
    lambda: T,
    x: Vec<T>,
    residual: T,
}

impl<T: Scalar> Best<T> {
    fn offer(slot: &mut Option<Self>, lambda: T, x: &[T], residual: T) {
        if slot.as_ref().is_none_or(|b| residual < b.residual) {
            *slot = Some(Best { lambda, x: x.to_vec(), residual });
        }
    }

    fn into_error(self, iterations: usize) -> Error {
        Error::EigenNonConvergence(Box::new(EigenFailure {
            eigenvalue: self.lambda.as_f64(),
            eigenvector: self.x.iter().map(|v| v.as_f64()).collect(),
            residual: self.residual.as_f64(),
            iterations,
        }))
    }
}

fn lanczos<T: Scalar, A: SymmetricOperator<T> + ?Sized>(
    op: &A,
    target: EigenTarget,
    opts: &EigenOptions<T>,
) -> Result<EigenResult<T>> {
    let n = op.dim();
    let m = n.min(KRYLOV_DIM);
    let breakdown = T::of(10.0) * T::epsilon() * op.radius_bound().max(T::min_positive_value());
    let mut start = random_unit::<T>(n, opts.seed, Stream::StartVector);
    let mut ax = vec![T::zero(); n];
    let mut iterations = 0;
    let mut best: Option<Best<T>> = None;

    loop {
        let mut basis: Vec<Vec<T>> = vec![start.clone()];
        let mut diag = Vec::with_capacity(m);
        let mut off = Vec::with_capacity(m);
        for j in 0..m {
            let mut w = vec![T::zero(); n];
            op.apply(&basis[j], &mut w);
            iterations += 1;
            diag.push(dot(&basis[j], &w));
            for _ in 0..2 {
                for v in &basis {
                    let c = dot(v, &w);
                    for (wi, &vi) in w.iter_mut().zip(v) {
                        *wi -= c * vi;
                    }
                }
            }
            let beta = dot(&w, &w).sqrt();
            if j + 1 == m || beta <= breakdown || iterations >= opts.max_iter {
                break;
            }
            for wi in w.iter_mut() {
                *wi /= beta;
            }
            off.push(beta);
            basis.push(w);
        }

        let k = diag.len();
        let ritz = tridiagonal_eigen(&diag, &off[..k - 1])
            .ok_or_else(|| Error::InvalidParams("non-finite values in eigenproblem".into()))?;
        let (top, bottom) = (ritz.values[0], ritz.values[k - 1]);
        let pick = match target {
            EigenTarget::Extreme if bottom.abs() > top.abs() => k - 1,
            _ => 0,
        };
        let mut x = vec![T::zero(); n];
        for (i, v) in basis.iter().enumerate() {
            let c = ritz.vectors[i * k + pick];
            for (xi, &vi) in x.iter_mut().zip(v) {
                *xi += c * vi;
            }
        }
        normalize(&mut x);
        let (lambda, residual) = rayleigh(op, &x, &mut ax);
        iterations += 1;
        if residual <= opts.tol {
            return Ok(EigenResult { eigenvalue: lambda, eigenvector: x, iterations, residual });
        }
        Best::offer(&mut best, lambda, &x, residual);
        if iterations >= opts.max_iter {
            return Err(best.expect("at least one Ritz pair").into_error(iterations));
        }
        start = x;
    }
}

fn shifted_power<T: Scalar, A: SymmetricOperator<T> + ?Sized>(
    op: &A,
    target: EigenTarget,
    opts: &EigenOptions<T>,
) -> Result<EigenResult<T>> {
    let shift = op.radius_bound();
    let upper = power_run(op, shift, T::one(), opts)?;
    if target == EigenTarget::Largest {
        return Ok(upper);
    }
    let lower = power_run(op, shift, -T::one(), opts)?;
    let mut out = if lower.eigenvalue.abs() > upper.eigenvalue.abs() { lower.clone() } else { upper.clone() };
    out.iterations = upper.iterations + lower.iterations;
    Ok(out)
}

/// Power iteration on `c I + s A` with `s = +-1`.
fn power_run<T: Scalar, A: SymmetricOperator<T> + ?Sized>(
    op: &A,
    shift: T,
    sign: T,
    opts: &EigenOptions<T>,
) -> Result<EigenResult<T>> {
    let n = op.dim();
    let mut x = random_unit::<T>(n, opts.seed, Stream::StartVector);
    let mut ax = vec![T::zero(); n];
    let mut best: Option<Best<T>> = None;
    let mut restarted = false;
    let mut stalled = 0;
    let mut previous: Option<T> = None;
    for iter in 1..=opts.max_iter {
        let (lambda, residual) = rayleigh(op, &x, &mut ax);
        if residual <= opts.tol {
            return Ok(EigenResult { eigenvalue: lambda, eigenvector: x, iterations: iter, residual });
        }
        Best::offer(&mut best, lambda, &x, residual);
        if let Some(prev) = previous {
            let change = (lambda - prev).abs() / lambda.abs().max(T::min_positive_value());
            stalled = if change < T::of(STAGNATION_REL_CHANGE) { stalled + 1 } else { 0 };
        }
        previous = Some(lambda);
        if stalled >= STAGNATION_WINDOW && !restarted {
            restarted = true;
            stalled = 0;
            previous = None;
            x = random_unit(n, opts.seed, Stream::Restart);
            continue;
        }
        for (xi, &ai) in x.iter_mut().zip(&ax) {
            *xi = shift * *xi + sign * ai;
        }
        if normalize(&mut x).is_zero() {
            // (cI + sA) x = 0 only for the zero operator.
            let x0 = random_unit::<T>(n, opts.seed, Stream::StartVector);
            let (lambda, residual) = rayleigh(op, &x0, &mut ax);
            return Ok(EigenResult { eigenvalue: lambda, eigenvector: x0, iterations: iter, residual });
        }
    }
    Err(best.expect("max_iter >= 1").into_error(opts.max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::jacobi_eigen;

    fn options(method: EigenMethod) -> EigenOptions<f64> {
        EigenOptions { tol: 1e-10, max_iter: 100_000, seed: 7, method }
    }

    fn planted(n: usize) -> Vec<f64> {
        (0..n).map(|i| if (i * 7 + 3) % 5 < 2 { 1.0 } else { -1.0 }).collect()
    }

    #[test]
    fn zero_operator_returns_seeded_start() {
        let w = WeightedAdjacency::<f64>::from_triplets(5, &[]).unwrap();
        for method in [EigenMethod::Lanczos, EigenMethod::ShiftedPower] {
            let r = extreme_eigenpair(&w, 0.0, &options(method)).unwrap();
            assert_eq!(r.eigenvalue, 0.0);
            assert_eq!(r.eigenvector, random_unit::<f64>(5, 7, Stream::StartVector));
        }
    }

    #[test]
    fn rank_one_spectrum() {
        let n = 12;
        let v = planted(n);
        for beta in [3.0, -2.5] {
            let m = SymMatrix::from_fn(n, |i, j| beta * v[i] * v[j] / n as f64);
            for method in [EigenMethod::Lanczos, EigenMethod::ShiftedPower] {
                let r = solve_eigen(&m, EigenTarget::Extreme, &options(method)).unwrap();
                assert!((r.eigenvalue - beta).abs() < 1e-9, "{method:?} {}", r.eigenvalue);
                let align: f64 = r.eigenvector.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>() / (n as f64).sqrt();
                assert!((align.abs() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn deflation_matches_dense() {
        let w = WeightedAdjacency::from_triplets(4, &[(0, 1, 1.0), (1, 2, -0.5), (2, 3, 0.25)]).unwrap();
        let op = DeflatedAdjacency { w: &w, alpha: 0.8 };
        let dense = SymMatrix::from_fn(4, |i, j| w.get(i, j) - 0.2);
        let x = [0.3, -1.0, 2.0, 0.5];
        let (mut y1, mut y2) = ([0.0f64; 4], [0.0f64; 4]);
        op.apply(&x, &mut y1);
        dense.mul_vec(&x, &mut y2);
        for (a, b) in y1.iter().zip(&y2) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn largest_versus_extreme() {
        let m = SymMatrix::<f64>::from_fn(3, |i, j| if i != j { 0.0 } else { [1.0, -4.0, 2.0][i] });
        let extreme = solve_eigen(&m, EigenTarget::Extreme, &options(EigenMethod::Lanczos)).unwrap();
        let largest = solve_eigen(&m, EigenTarget::Largest, &options(EigenMethod::Lanczos)).unwrap();
        assert!((extreme.eigenvalue + 4.0).abs() < 1e-10);
        assert!((largest.eigenvalue - 2.0).abs() < 1e-10);
    }

    #[test]
    fn agrees_with_jacobi_on_dense() {
        let n = 20;
        let m = SymMatrix::<f64>::from_fn(n, |i, j| (((i * 31 + j * 17) % 13) as f64 - 6.0) / 6.0);
        let oracle = jacobi_eigen(&m);
        let expect = if oracle.values[n - 1].abs() > oracle.values[0].abs() { oracle.values[n - 1] } else { oracle.values[0] };
        for method in [EigenMethod::Lanczos, EigenMethod::ShiftedPower] {
            let r = solve_eigen(&m, EigenTarget::Extreme, &options(method)).unwrap();
            assert!((r.eigenvalue - expect).abs() < 1e-8, "{method:?}");
        }
    }

    #[test]
    fn budget_exhaustion_reports_best_iterate() {
        let n = 200;
        let m = SymMatrix::<f64>::from_fn(n, |i, j| if i == j { 1.0 - i as f64 * 1e-4 } else { 0.0 });
        let opts = EigenOptions { tol: 1e-14, max_iter: 5, seed: 1, method: EigenMethod::ShiftedPower };
        match solve_eigen(&m, EigenTarget::Extreme, &opts) {
            Err(Error::EigenNonConvergence(f)) => {
                assert_eq!(f.iterations, 5);
                assert_eq!(f.eigenvector.len(), n);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_nonpositive_tolerance() {
        let m = SymMatrix::<f64>::identity(2);
        let opts = EigenOptions { tol: 0.0, ..EigenOptions::default() };
        assert!(solve_eigen(&m, EigenTarget::Extreme, &opts).is_err());
    }
}

//! Semidefinite relaxation of minimum bisection.
//!
//! Solves `max <W, Y>` over `Y >= 0`, `diag(Y) = 1`, `<J, Y> = 0` by
//! scaled-form ADMM on the split `Y = X`, `Y` in the affine set `A`,
//! `X` in the face `K = {X >= 0 : X 1 = 0}` of the PSD cone:
//!
//! ```text
//! Y <- P_A(X - U + W / rho)
//! X <- P_K(Y + U) = P_psd(C (Y + U) C),  C = I - J/n
//! U <- U + Y - X
//! ```
//!
//! Every feasible `Y` has `1` in its kernel, so `A` only touches the full
//! cone on this face and no strictly feasible point exists there. Iterating
//! against the face instead restores a strictly feasible point
//! (`n/(n-1) C`) and avoids the slow sublinear tail ADMM shows otherwise.
//!
//! `rho` starts at [`SdpOptions::rho`] and is doubled or halved every
//! [`SdpOptions::balance_every`] iterations when one residual exceeds the
//! other tenfold. The PSD iterate `X` is returned.

use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result, SdpFailure};
use crate::linalg::{jacobi_eigen, jacobi_eigen_in_basis, SymMatrix};
use crate::model::TypeAssignment;
use crate::scalar::Scalar;
use crate::spectral::{solve_eigen, EigenOptions, EigenTarget};
use crate::weights::WeightedAdjacency;

pub const SDP_HEADER: &str = "lsbm-sdp-Y v1";

/// Feasibility required of a solution before rounding.
pub const ROUNDING_TOL: f64 = 1e-3;

const BALANCE_RATIO: f64 = 10.0;
const BALANCE_FACTOR: f64 = 2.0;
/// Warm-started bases are rebuilt from scratch this often to stop
/// orthogonality drift.
const COLD_RESTART_EVERY: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdpOptions<T = f64> {
    /// Bound on the primal residual `||Y - X||_F` and the dual residual
    /// `rho ||X_k - X_{k-1}||_F`.
    pub tol: T,
    pub max_iter: usize,
    /// Initial penalty.
    pub rho: T,
    pub balance_every: usize,
    /// Diagonalise each PSD projection in the previous eigenbasis.
    pub warm_start: bool,
}

impl<T: Scalar> Default for SdpOptions<T> {
    fn default() -> Self {
        Self { tol: T::reachable_tol(1e-6), max_iter: 20_000, rho: T::one(), balance_every: 50, warm_start: true }
    }
}

/// Objective and feasibility of the PSD iterate at a balancing step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdpCheckpoint<T = f64> {
    pub iteration: usize,
    pub objective: T,
    /// `max(diag deviation, |<J, X>| / n^2)`.
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution<T = f64> {
    pub y: SymMatrix<T>,
    /// `<W, Y>`.
    pub objective: T,
    /// `max(0, -lambda_min(Y))`.
    pub psd_violation: T,
    /// `max_u |Y_uu - 1|`.
    pub diag_deviation: T,
    /// `|<J, Y>| / n^2`.
    pub sum_violation: T,
    pub iterations: usize,
    /// Final penalty.
    pub rho: T,
    pub checkpoints: Vec<SdpCheckpoint<T>>,
}

impl<T: Scalar> SdpSolution<T> {
    /// All three residuals within `tol`.
    pub fn is_feasible(&self, tol: T) -> bool {
        self.psd_violation <= tol && self.diag_deviation <= tol && self.sum_violation <= tol
    }
}

/// Frobenius projection onto `{Y : diag(Y) = 1, <J, Y> = 0}`.
///
/// The diagonal is reset to 1 and every off-diagonal entry is shifted by
/// the same `-(n + sum_{u != v} Z_uv) / (n^2 - n)`, which zeroes the total.
pub fn project_affine<T: Scalar>(z: &mut SymMatrix<T>) {
    let n = z.n();
    assert!(n >= 2, "affine set is empty for n < 2");
    let off_sum = z.total() - z.trace();
    let nf = T::of_usize(n);
    let shift = (nf + off_sum) / (nf * nf - nf);
    let data = z.as_mut_slice();
    for i in 0..n {
        for j in 0..n {
            let e = &mut data[i * n + j];
            *e = if i == j { T::one() } else { *e - shift };
        }
    }
}

fn diag_deviation<T: Scalar>(y: &SymMatrix<T>) -> T {
    (0..y.n()).fold(T::zero(), |m, i| m.max((y.get(i, i) - T::one()).abs()))
}

fn sum_violation<T: Scalar>(y: &SymMatrix<T>) -> T {
    let n = T::of_usize(y.n());
    y.total().abs() / (n * n)
}

/// `C V C` with `C = I - J/n`: subtracts row and column means and adds
/// back the grand mean.
fn double_center<T: Scalar>(v: &mut SymMatrix<T>) {
    let n = v.n();
    let nf = T::of_usize(n);
    let means: Vec<T> = (0..n).map(|i| v.row(i).iter().copied().sum::<T>() / nf).collect();
    let grand = means.iter().copied().sum::<T>() / nf;
    let data = v.as_mut_slice();
    for i in 0..n {
        for j in 0..n {
            data[i * n + j] = data[i * n + j] - means[i] - means[j] + grand;
        }
    }
}

fn frob_diff<T: Scalar>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> T {
    a.as_slice().iter().zip(b.as_slice()).map(|(&x, &y)| (x - y) * (x - y)).sum::<T>().sqrt()
}

fn dense<T: Scalar>(w: &WeightedAdjacency<T>) -> SymMatrix<T> {
    SymMatrix::from_row_major(w.n(), w.to_dense())
}

/// Approximately solves the relaxation.
pub fn solve_sdp<T: Scalar>(w: &WeightedAdjacency<T>, opts: &SdpOptions<T>) -> Result<SdpSolution<T>> {
    let n = w.n();
    if n < 2 {
        return Err(Error::InvalidParams("SDP needs n >= 2".into()));
    }
    if !(opts.tol > T::zero() && opts.rho > T::zero()) || opts.max_iter == 0 {
        return Err(Error::InvalidParams("SDP tolerance, penalty and max_iter must be positive".into()));
    }
    let wd = dense(w);
    let mut rho = opts.rho;
    let mut x = SymMatrix::<T>::zeros(n);
    let mut u = SymMatrix::<T>::zeros(n);
    let mut basis: Option<Vec<T>> = None;
    let mut checkpoints = Vec::new();
    let balance_every = opts.balance_every.max(1);

    for iter in 1..=opts.max_iter {
        let mut y = SymMatrix::from_fn(n, |i, j| x.get(i, j) - u.get(i, j) + wd.get(i, j) / rho);
        project_affine(&mut y);

        let mut v = SymMatrix::from_fn(n, |i, j| y.get(i, j) + u.get(i, j));
        double_center(&mut v);
        if iter % COLD_RESTART_EVERY == 0 {
            basis = None;
        }
        let eig = if opts.warm_start { jacobi_eigen_in_basis(&v, basis.as_deref()) } else { jacobi_eigen(&v) };
        let x_next = SymMatrix::from_spectrum(&eig, |l| l.max(T::zero()));
        if opts.warm_start {
            basis = Some(eig.vectors);
        }

        let primal = frob_diff(&y, &x_next);
        let dual = rho * frob_diff(&x_next, &x);
        x = x_next;
        u = SymMatrix::from_fn(n, |i, j| u.get(i, j) + y.get(i, j) - x.get(i, j));

        if primal <= opts.tol && dual <= opts.tol {
            return Ok(finish(x, &wd, iter, rho, checkpoints));
        }
        if iter % balance_every == 0 {
            checkpoints.push(SdpCheckpoint {
                iteration: iter,
                objective: wd.dot(&x),
                residual: diag_deviation(&x).max(sum_violation(&x)),
            });
            let ratio = T::of(BALANCE_RATIO);
            let factor = T::of(BALANCE_FACTOR);
            let scale = if primal > ratio * dual {
                Some(factor)
            } else if dual > ratio * primal {
                Some(T::one() / factor)
            } else {
                None
            };
            if let Some(c) = scale {
                rho *= c;
                u = SymMatrix::from_fn(n, |i, j| u.get(i, j) / c);
            }
        }
    }
    let sol = finish(x, &wd, opts.max_iter, rho, checkpoints);
    Err(Error::SdpNonConvergence(Box::new(SdpFailure {
        n,
        y: sol.y.as_slice().iter().map(|v| v.as_f64()).collect(),
        psd_violation: sol.psd_violation.as_f64(),
        diag_deviation: sol.diag_deviation.as_f64(),
        sum_violation: sol.sum_violation.as_f64(),
        iterations: sol.iterations,
    })))
}

fn finish<T: Scalar>(
    y: SymMatrix<T>,
    w: &SymMatrix<T>,
    iterations: usize,
    rho: T,
    checkpoints: Vec<SdpCheckpoint<T>>,
) -> SdpSolution<T> {
    let psd_violation = (-jacobi_eigen(&y).min_value()).max(T::zero());
    SdpSolution {
        objective: w.dot(&y),
        psd_violation,
        diag_deviation: diag_deviation(&y),
        sum_violation: sum_violation(&y),
        iterations,
        rho,
        checkpoints,
        y,
    }
}

/// Signs of the top eigenvector of `Y` (`sign(0) = +1`).
pub fn round_sdp<T: Scalar>(sol: &SdpSolution<T>, eigen: &EigenOptions<T>) -> Result<TypeAssignment> {
    if !sol.is_feasible(T::of(ROUNDING_TOL)) {
        return Err(Error::Infeasible(format!(
            "residuals psd {:e}, diag {:e}, sum {:e} exceed {ROUNDING_TOL:e}",
            sol.psd_violation.as_f64(),
            sol.diag_deviation.as_f64(),
            sol.sum_violation.as_f64()
        )));
    }
    let top = solve_eigen(&sol.y, EigenTarget::Largest, eigen)?;
    Ok(TypeAssignment::from_signs(&top.eigenvector))
}

/// Writes `Y` as a dense text matrix: header, then one row per line.
pub fn write_sdp_matrix<T: Scalar, W: Write>(y: &SymMatrix<T>, out: W) -> Result<()> {
    let mut out = std::io::BufWriter::new(out);
    writeln!(out, "{SDP_HEADER}")?;
    writeln!(out, "n={}", y.n())?;
    for i in 0..y.n() {
        let row: Vec<String> = y.row(i).iter().map(|v| format!("{:?}", v.as_f64())).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_sdp_matrix<R: Read>(input: R) -> Result<SymMatrix<f64>> {
    let mut lines = BufReader::new(input).lines();
    let mut next = |no: usize| -> Result<String> {
        lines.next().transpose()?.ok_or_else(|| Error::parse(no, "unexpected end of input"))
    };
    if next(1)? != SDP_HEADER {
        return Err(Error::parse(1, format!("expected `{SDP_HEADER}`")));
    }
    let n: usize = next(2)?
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(2, "expected `n=<int>`"))?;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        let line = next(i + 3)?;
        let row: Vec<f64> = line
            .split(' ')
            .map(|t| t.parse::<f64>().map_err(|e| Error::parse(i + 3, e.to_string())))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::parse(i + 3, format!("expected {n} entries, found {}", row.len())));
        }
        data.extend(row);
    }
    let m = SymMatrix::from_row_major(n, data.clone());
    if m.as_slice() != data.as_slice() {
        return Err(Error::parse(3, "matrix is not symmetric"));
    }
    Ok(m)
}

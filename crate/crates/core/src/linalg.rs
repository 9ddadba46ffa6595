//! Dense symmetric matrices and eigensolvers.
//!
//! [`jacobi_eigen`] (cyclic Jacobi rotations) is used both for full
//! eigendecompositions inside the SDP solver and as an independent oracle
//! for the sparse extreme-eigenpair solver. [`tridiagonal_eigen`] (implicit
//! QL) serves the Lanczos projection.

use crate::scalar::Scalar;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major dense symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T = f64> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    /// Builds from `f(i, j)` evaluated on the upper triangle and mirrored.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = f(i, j);
                m.data[i * n + j] = x;
                m.data[j * n + i] = x;
            }
        }
        m
    }

    /// Wraps row-major data; the upper triangle is mirrored to enforce
    /// exact symmetry.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n);
        let mut m = Self { n, data };
        m.symmetrize_from_upper();
        m
    }

    /// Sum of `c_k v_k v_k^T`.
    pub fn from_outer_products(n: usize, terms: &[(T, &[T])]) -> Self {
        Self::from_fn(n, |i, j| terms.iter().map(|&(c, v)| c * v[i] * v[j]).sum())
    }

    fn symmetrize_from_upper(&mut self) {
        let n = self.n;
        for i in 0..n {
            for j in (i + 1)..n {
                self.data[j * n + i] = self.data[i * n + j];
            }
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    /// Sets `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.n + j] = x;
        self.data[j * self.n + i] = x;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[T], y: &mut [T]) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum();
        }
    }

    /// Frobenius inner product.
    pub fn dot(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(&a, &b)| a * b).sum()
    }

    pub fn frobenius(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `1^T M 1`.
    pub fn total(&self) -> T {
        self.data.iter().copied().sum()
    }

    pub fn max_abs_row_sum(&self) -> T {
        (0..self.n).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<T>()).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol))
    }

    /// Reconstructs `V diag(f(lambda)) V^T` from an eigendecomposition.
    pub fn from_spectrum(eig: &SymEigen<T>, mut f: impl FnMut(T) -> T) -> Self {
        let n = eig.values.len();
        let scaled: Vec<T> = eig.values.iter().map(|&l| f(l)).collect();
        let mut m = Self::zeros(n);
        for i in 0..n {
            let vi = &eig.vectors[i * n..(i + 1) * n];
            for j in i..n {
                let vj = &eig.vectors[j * n..(j + 1) * n];
                let mut acc = T::zero();
                for k in 0..n {
                    if !scaled[k].is_zero() {
                        acc += vi[k] * scaled[k] * vj[k];
                    }
                }
                m.data[i * n + j] = acc;
            }
        }
        m.symmetrize_from_upper();
        m
    }
}

/// Eigendecomposition with eigenvalues in descending order; column `k` of
/// the row-major `vectors` matrix is the unit eigenvector of `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen<T = f64> {
    pub values: Vec<T>,
    pub vectors: Vec<T>,
    pub sweeps: usize,
}

impl<T: Scalar> SymEigen<T> {
    pub fn vector(&self, k: usize) -> Vec<T> {
        let n = self.values.len();
        (0..n).map(|i| self.vectors[i * n + k]).collect()
    }

    pub fn min_value(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }
}

/// Full eigendecomposition by cyclic Jacobi rotations.
pub fn jacobi_eigen<T: Scalar>(a: &SymMatrix<T>) -> SymEigen<T> {
    jacobi_eigen_in_basis(a, None)
}

/// Jacobi on `Q^T A Q` for an orthogonal warm-start basis `Q` (row-major),
/// returning eigenvectors in the original coordinates. A basis close to the
/// eigenvectors of `A` leaves `Q^T A Q` nearly diagonal, so few sweeps run.
pub fn jacobi_eigen_in_basis<T: Scalar>(a: &SymMatrix<T>, basis: Option<&[T]>) -> SymEigen<T> {
    let n = a.n;
    let mut m = match basis {
        Some(q) => congruence(a.as_slice(), q, n),
        None => a.data.clone(),
    };
    let mut v = SymMatrix::<T>::identity(n).data;
    let frob = m.iter().map(|&x| x * x).sum::<T>().sqrt();
    let tiny = T::epsilon() * frob / T::of_usize(n.max(1));

    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[p * n + q] * m[p * n + q];
            }
        }
        if off.sqrt() <= T::epsilon() * frob || off.is_zero() {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq.abs() <= tiny {
                    m[p * n + q] = T::zero();
                    m[q * n + p] = T::zero();
                    continue;
                }
                let (app, aqq) = (m[p * n + p], m[q * n + q]);
                let theta = (aqq - app) / (T::of(2.0) * apq);
                let t = {
                    let mag = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
                    if theta < T::zero() { -mag } else { mag }
                };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let (akp, akq) = (m[k * n + p], m[k * n + q]);
                    let np = c * akp - s * akq;
                    let nq = s * akp + c * akq;
                    m[k * n + p] = np;
                    m[p * n + k] = np;
                    m[k * n + q] = nq;
                    m[q * n + k] = nq;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = T::zero();
                m[q * n + p] = T::zero();
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let vectors = match basis {
        Some(q) => matmul(q, &v, n),
        None => v,
    };
    sorted_descending((0..n).map(|i| m[i * n + i]).collect(), vectors, n, sweeps)
}

/// Eigenpairs of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i + 1`), by implicit QL.
/// Returns `None` if the iteration fails to converge.
pub fn tridiagonal_eigen<T: Scalar>(diag: &[T], off: &[T]) -> Option<SymEigen<T>> {
    let n = diag.len();
    assert!(off.len() + 1 >= n);
    let mut d = diag.to_vec();
    let mut e: Vec<T> = (0..n).map(|i| if i + 1 < n { off[i] } else { T::zero() }).collect();
    let mut z = SymMatrix::<T>::identity(n).data;
    let two = T::of(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let eps = T::epsilon();

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return None;
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        let zk1 = z[k * n + i + 1];
                        let zk = z[k * n + i];
                        z[k * n + i + 1] = s * zk + c * zk1;
                        z[k * n + i] = c * zk - s * zk1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if !(e[l].abs() > eps * tst1) {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = T::zero();
    }
    if d.iter().any(|x| !x.is_finite()) {
        return None;
    }
    Some(sorted_descending(d, z, n, 0))
}

fn sorted_descending<T: Scalar>(values: Vec<T>, vectors: Vec<T>, n: usize, sweeps: usize) -> SymEigen<T> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap_or(std::cmp::Ordering::Equal).then(i.cmp(&j)));
    let mut sorted = vec![T::zero(); n * n];
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            sorted[k * n + new] = vectors[k * n + old];
        }
    }
    SymEigen { values: order.iter().map(|&i| values[i]).collect(), vectors: sorted, sweeps }
}

/// Row-major `A B` for square matrices.
pub(crate) fn matmul<T: Scalar>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            let bk = &b[k * n..(k + 1) * n];
            for (o, &x) in row.iter_mut().zip(bk) {
                *o += aik * x;
            }
        }
    }
    out
}

/// `Q^T A Q`, symmetrised.
fn congruence<T: Scalar>(a: &[T], q: &[T], n: usize) -> Vec<T> {
    let aq = matmul(a, q, n);
    let mut out = vec![T::zero(); n * n];
    for k in 0..n {
        for i in 0..n {
            let qki = q[k * n + i];
            if qki.is_zero() {
                continue;
            }
            let src = &aq[k * n..(k + 1) * n];
            let row = &mut out[i * n..(i + 1) * n];
            for (o, &x) in row.iter_mut().zip(src) {
                *o += qki * x;
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (out[i * n + j] + out[j * n + i]) * T::of(0.5);
            out[i * n + j] = avg;
            out[j * n + i] = avg;
        }
    }
    out
}

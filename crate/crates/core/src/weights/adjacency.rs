use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::LabeledGraph;
use crate::scalar::Scalar;
use crate::weights::WeightFunction;

/// Rows at or above this size use a parallel matrix-vector product. Each
/// output row is computed independently, so results are bit-identical.
const PARALLEL_ROWS: usize = 1 << 14;

/// Symmetric sparse matrix `W_uv = w(L_uv)` on edges, zero elsewhere, in
/// CSR form (columns sorted within each row).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAdjacency<T = f64> {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<T>,
}

impl<T: Scalar> WeightedAdjacency<T> {
    pub fn from_graph(g: &LabeledGraph, w: &WeightFunction<T>) -> Result<Self> {
        if w.len() != g.alphabet().len() {
            return Err(Error::LengthMismatch { left: w.len(), right: g.alphabet().len() });
        }
        let n = g.n();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::with_capacity(2 * g.num_edges());
        let mut vals = Vec::with_capacity(2 * g.num_edges());
        row_ptr.push(0);
        for u in 0..n {
            for &(v, l) in g.neighbors(u) {
                if l.index() >= w.len() {
                    return Err(Error::UnknownLabel(format!("label index {}", l.0)));
                }
                cols.push(v);
                vals.push(w.get(l));
            }
            row_ptr.push(cols.len());
        }
        Ok(Self { n, row_ptr, cols, vals })
    }

    /// Builds from symmetric triplets `(u, v, w)` with `u != v`; each
    /// unordered pair given once.
    pub fn from_triplets(n: usize, entries: &[(usize, usize, T)]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for &(u, v, x) in entries {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("bad entry ({u}, {v})")));
            }
            rows[u].push((v, x));
            rows[v].push((u, x));
        }
        let mut row_ptr = vec![0];
        let (mut cols, mut vals) = (Vec::new(), Vec::new());
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            if row.windows(2).any(|p| p[0].0 == p[1].0) {
                return Err(Error::InvalidGraph("duplicate entry".into()));
            }
            for (c, x) in row {
                cols.push(c);
                vals.push(x);
            }
            row_ptr.push(cols.len());
        }
        Ok(Self { n, row_ptr, cols, vals })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Stored entries of row `u` as `(column, value)`.
    pub fn row(&self, u: usize) -> impl Iterator<Item = (usize, T)> + '_ {
        let r = self.row_ptr[u]..self.row_ptr[u + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, u: usize, v: usize) -> T {
        let r = self.row_ptr[u]..self.row_ptr[u + 1];
        match self.cols[r.clone()].binary_search(&v) {
            Ok(i) => self.vals[r.start + i],
            Err(_) => T::zero(),
        }
    }

    /// Upper-triangle entries `(u, v, w)` with `u < v`.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        (0..self.n).flat_map(move |u| self.row(u).filter(move |&(v, _)| v > u).map(move |(v, x)| (u, v, x)))
    }

    /// `y = W x`.
    pub fn mul_vec(&self, x: &[T], y: &mut [T]) {
        assert_eq!(x.len(), self.n);
        assert_eq!(y.len(), self.n);
        let row = |u: usize| -> T {
            let mut acc = T::zero();
            for i in self.row_ptr[u]..self.row_ptr[u + 1] {
                acc += self.vals[i] * x[self.cols[i]];
            }
            acc
        };
        if self.n >= PARALLEL_ROWS {
            y.par_iter_mut().enumerate().for_each(|(u, yu)| *yu = row(u));
        } else {
            for (u, yu) in y.iter_mut().enumerate() {
                *yu = row(u);
            }
        }
    }

    /// `1^T W 1`.
    pub fn total(&self) -> T {
        self.vals.iter().copied().sum()
    }

    /// Entrywise `sum |W_uv|`.
    pub fn l1_norm(&self) -> T {
        self.vals.iter().map(|x| x.abs()).sum()
    }

    /// `max_u sum_v |W_uv|`, an upper bound on the spectral radius.
    pub fn max_abs_row_sum(&self) -> T {
        (0..self.n).map(|u| self.row(u).map(|(_, x)| x.abs()).sum::<T>()).fold(T::zero(), T::max)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<T> {
        let mut d = vec![T::zero(); self.n * self.n];
        for u in 0..self.n {
            for (v, x) in self.row(u) {
                d[u * self.n + v] = x;
            }
        }
        d
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| self.row(u).all(|(v, x)| v != u && self.get(v, u) == x))
    }

    /// `P W P^T` for the relabeling `u -> perm[u]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let entries: Vec<_> = self.upper_entries().map(|(u, v, x)| (perm[u], perm[v], x)).collect();
        Self::from_triplets(self.n, &entries).expect("permutation preserves validity")
    }
}

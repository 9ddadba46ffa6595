use std::ops::Neg;

use crate::error::{Error, Result};
use crate::model::{Label, LabelAlphabet};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: Label,
}

/// Simple undirected graph with one label per edge.
///
/// Edges are stored sorted by `(u, v)` with `u < v`; a CSR neighbour index
/// (sorted by neighbour) supports O(deg) iteration and O(log deg) label lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    alphabet: LabelAlphabet,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<(usize, Label)>,
}

impl LabeledGraph {
    /// Builds a graph, normalising each edge to `u < v` and sorting.
    pub fn new(n: usize, alphabet: LabelAlphabet, mut edges: Vec<Edge>) -> Result<Self> {
        for e in edges.iter_mut() {
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        edges.sort_unstable();
        let g = Self::from_sorted(n, alphabet, edges);
        g.validate()?;
        Ok(g)
    }

    pub fn empty(n: usize, alphabet: LabelAlphabet) -> Self {
        Self::from_sorted(n, alphabet, Vec::new())
    }

    /// Caller guarantees `edges` is sorted with `u < v`; use [`Self::validate`]
    /// to check.
    pub(crate) fn from_sorted(n: usize, alphabet: LabelAlphabet, edges: Vec<Edge>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for e in &edges {
            if e.u < n && e.v < n {
                degree[e.u] += 1;
                degree[e.v] += 1;
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for u in 0..n {
            offsets[u + 1] = offsets[u] + degree[u];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![(0usize, Label(0)); offsets[n]];
        for e in &edges {
            if e.u < n && e.v < n {
                adjacency[fill[e.u]] = (e.v, e.label);
                fill[e.u] += 1;
                adjacency[fill[e.v]] = (e.u, e.label);
                fill[e.v] += 1;
            }
        }
        for u in 0..n {
            adjacency[offsets[u]..offsets[u + 1]].sort_unstable();
        }
        Self { n, alphabet, edges, offsets, adjacency }
    }

    /// Checks every structural invariant, including CSR consistency.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        for (i, e) in self.edges.iter().enumerate() {
            if e.u == e.v {
                return bad(format!("self-loop at {}", e.u));
            }
            if e.u > e.v {
                return bad(format!("edge ({}, {}) not normalised", e.u, e.v));
            }
            if e.v >= self.n {
                return bad(format!("edge ({}, {}) out of range for n = {}", e.u, e.v, self.n));
            }
            if e.label.index() >= self.alphabet.len() {
                return bad(format!("edge ({}, {}) has unknown label index {}", e.u, e.v, e.label.0));
            }
            if i > 0 {
                let p = self.edges[i - 1];
                if (p.u, p.v) == (e.u, e.v) {
                    return bad(format!("duplicate edge ({}, {})", e.u, e.v));
                }
                if (p.u, p.v) > (e.u, e.v) {
                    return bad("edge list not sorted".into());
                }
            }
        }
        if self.offsets.len() != self.n + 1 || self.offsets[self.n] != 2 * self.edges.len() {
            return bad("adjacency size inconsistent with edge list".into());
        }
        for u in 0..self.n {
            for &(v, l) in self.neighbors(u) {
                let (x, y) = if u < v { (u, v) } else { (v, u) };
                match self.edges.binary_search_by(|e| (e.u, e.v).cmp(&(x, y))) {
                    Ok(i) if self.edges[i].label == l => {}
                    _ => return bad(format!("adjacency entry ({u}, {v}) missing from edge list")),
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn alphabet(&self) -> &LabelAlphabet {
        &self.alphabet
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbours of `u` with the connecting label, sorted by neighbour.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[(usize, Label)] {
        &self.adjacency[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn label_between(&self, u: usize, v: usize) -> Option<Label> {
        let nb = self.neighbors(u);
        nb.binary_search_by(|&(w, _)| w.cmp(&v)).ok().map(|i| nb[i].1)
    }

    /// Keeps the edges accepted by `keep`; vertex set unchanged.
    pub fn filter_edges(&self, mut keep: impl FnMut(&Edge) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|e| keep(e)).collect();
        Self::from_sorted(self.n, self.alphabet.clone(), edges)
    }
}

/// `±1` community vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeAssignment(Vec<i8>);

impl TypeAssignment {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if let Some(u) = spins.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidAssignment(format!(
                "entry {u} is {}, expected +1 or -1",
                spins[u]
            )));
        }
        Ok(Self(spins))
    }

    pub fn all_plus(n: usize) -> Self {
        Self(vec![1; n])
    }

    /// Componentwise sign with `sign(0) = +1`.
    pub fn from_signs<T: Scalar>(x: &[T]) -> Self {
        Self(x.iter().map(|&v| if v < T::zero() { -1 } else { 1 }).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn get(&self, u: usize) -> i8 {
        self.0[u]
    }

    #[inline]
    pub fn same(&self, u: usize, v: usize) -> bool {
        self.0[u] == self.0[v]
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    /// `sum_u sigma_u`.
    pub fn balance(&self) -> i64 {
        self.0.iter().map(|&s| s as i64).sum()
    }

    pub fn count_plus(&self) -> usize {
        self.0.iter().filter(|&&s| s == 1).count()
    }

    pub fn hamming(&self, other: &Self) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count())
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut out = vec![0i8; self.len()];
        for (u, &pu) in perm.iter().enumerate() {
            out[pu] = self.0[u];
        }
        Self(out)
    }
}

impl Neg for &TypeAssignment {
    type Output = TypeAssignment;

    fn neg(self) -> TypeAssignment {
        TypeAssignment(self.0.iter().map(|&s| -s).collect())
    }
}

impl Neg for TypeAssignment {
    type Output = TypeAssignment;

    fn neg(self) -> TypeAssignment {
        -&self
    }
}

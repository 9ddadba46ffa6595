//! Independent reference implementations used as test oracles. They are
//! deliberately naive (dense matrices, exhaustive enumeration) and share no
//! code with the library beyond its data types.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lsbm::model::{LabeledGraph, LabeledTree};
use lsbm::{Label, ModelParams};
use rand::Rng;

/// Threshold written in its unsimplified form:
/// `(a+b)/2 * sum_l p(l) * ((a mu - b nu)/(a mu + b nu))^2` with
/// `p(l) = (a mu + b nu)/(a+b)`.
pub fn naive_tau(a: f64, b: f64, mu: &[f64], nu: &[f64]) -> f64 {
    let mut s = 0.0;
    for l in 0..mu.len() {
        let (am, bn) = (a * mu[l], b * nu[l]);
        if am + bn > 0.0 {
            let p = (am + bn) / (a + b);
            let r = (am - bn) / (am + bn);
            s += p * r * r;
        }
    }
    (a + b) / 2.0 * s
}

/// Cyclic Jacobi eigen-decomposition of a dense symmetric matrix.
/// Returns eigenvalues and the matching unit eigenvectors, unsorted.
#[allow(clippy::needless_range_loop)]
pub fn jacobi(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k][p], v[k][q]);
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| a[i][i]).collect();
    let vecs = (0..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect();
    (vals, vecs)
}

/// Spectral norm of a dense symmetric matrix.
pub fn spectral_norm(a: &[Vec<f64>]) -> f64 {
    jacobi(a.to_vec()).0.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn dense(n: usize, entries: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; n]; n];
    for &(u, v, x) in entries {
        d[u][v] = x;
        d[v][u] = x;
    }
    d
}

/// Random sparse symmetric entries with zero diagonal.
pub fn random_sparse(rng: &mut impl Rng, n: usize, density: f64) -> Vec<(usize, usize, f64)> {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < density {
                e.push((u, v, rng.random_range(-1.0..1.0)));
            }
        }
    }
    e
}

/// Exhaustive minimum bisection over every balanced sign vector. Returns
/// the minimal cut `sum_{sigma_u != sigma_v, u<v} W_uv` and all minimisers
/// with vertex 0 on the `+` side.
pub fn brute_min_bisection(w: &[Vec<f64>]) -> (f64, Vec<Vec<i8>>) {
    let n = w.len();
    let mut best = f64::INFINITY;
    let mut argmin = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize * 2 != n || mask & 1 == 0 {
            continue;
        }
        let s: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { 1 } else { -1 }).collect();
        let mut cut = 0.0;
        for u in 0..n {
            for v in u + 1..n {
                if s[u] != s[v] {
                    cut += w[u][v];
                }
            }
        }
        if cut < best - 1e-12 {
            best = cut;
            argmin.clear();
        }
        if (cut - best).abs() <= 1e-12 {
            argmin.push(s);
        }
    }
    (best, argmin)
}

/// Root posterior by summing the joint law over every assignment of the
/// unobserved nodes (those above the depth limit).
pub fn brute_root_posterior(t: &LabeledTree, p: &ModelParams) -> f64 {
    let nodes = t.nodes();
    let limit = t.depth_limit();
    if limit == 0 {
        return 0.5;
    }
    let hidden: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i].depth < limit).collect();
    assert!(hidden.len() <= 20, "too many hidden nodes for enumeration");
    let total = p.a + p.b;
    let (mut plus, mut all) = (0.0, 0.0);
    for mask in 0u32..(1 << hidden.len()) {
        let mut spin: Vec<i8> = nodes.iter().map(|x| x.spin).collect();
        for (bit, &i) in hidden.iter().enumerate() {
            spin[i] = if mask >> bit & 1 == 1 { 1 } else { -1 };
        }
        let mut weight = 0.5;
        for (i, x) in nodes.iter().enumerate().skip(1) {
            if x.depth > limit {
                continue;
            }
            let l = x.label.unwrap().index();
            let parent = x.parent.unwrap();
            weight *= if spin[i] == spin[parent] { p.a / total * p.mu[l] } else { p.b / total * p.nu[l] };
        }
        all += weight;
        if spin[0] == 1 {
            plus += weight;
        }
    }
    plus / all
}

/// Counts simple cycles of length `k` by walking vertex sequences
/// `v0 < v_i` with `v1 > v_{k-1}`: labels are read from the minimum vertex
/// and end at its smaller-index neighbour.
pub fn brute_cycles(g: &LabeledGraph, k: usize) -> BTreeMap<Vec<Label>, u64> {
    let n = g.n();
    let mut out = BTreeMap::new();
    let mut path = Vec::with_capacity(k);
    fn walk(g: &LabeledGraph, k: usize, path: &mut Vec<usize>, out: &mut BTreeMap<Vec<Label>, u64>) {
        let last = *path.last().unwrap();
        if path.len() == k {
            let first = path[0];
            if path[1] > path[k - 1] {
                if let Some(close) = g.label_between(last, first) {
                    let mut labels: Vec<Label> =
                        path.windows(2).map(|p| g.label_between(p[0], p[1]).unwrap()).collect();
                    labels.push(close);
                    *out.entry(labels).or_insert(0) += 1;
                }
            }
            return;
        }
        for v in 0..g.n() {
            if v > path[0] && !path.contains(&v) && g.label_between(last, v).is_some() {
                path.push(v);
                walk(g, k, path, out);
                path.pop();
            }
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        walk(g, k, &mut path, &mut out);
    }
    out
}

pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn unit(mut x: Vec<f64>) -> Vec<f64> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
    x
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

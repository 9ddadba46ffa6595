use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Geometric;

use crate::error::{Error, Result};
use crate::model::{Edge, Label, LabeledGraph, ModelParams, TypeAssignment};
use crate::rng::{substream, Stream};
use crate::scalar::Scalar;

/// Samples `(G, L, sigma)` from the LSBM with i.i.d. uniform types.
pub fn sample_lsbm<T: Scalar>(
    params: &ModelParams<T>,
    n: usize,
    seed: u64,
) -> Result<(LabeledGraph, TypeAssignment)> {
    params.validate()?;
    params.check_size(n)?;
    let mut rng = substream(seed, Stream::VertexTypes);
    let sigma = TypeAssignment::new(
        (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect(),
    )?;
    let g = sample_lsbm_given_types(params, &sigma, seed)?;
    Ok((g, sigma))
}

/// Samples edges and labels conditionally on a fixed type vector.
pub fn sample_lsbm_given_types<T: Scalar>(
    params: &ModelParams<T>,
    sigma: &TypeAssignment,
    seed: u64,
) -> Result<LabeledGraph> {
    params.validate()?;
    let n = sigma.len();
    params.check_size(n)?;
    let nf = n as f64;
    let p_in = params.a.as_f64() / nf;
    let p_out = params.b.as_f64() / nf;

    let (plus, minus): (Vec<usize>, Vec<usize>) = (0..n).partition(|&u| sigma.get(u) == 1);

    let mut pairs = Vec::new();
    let mut rng = substream(seed, Stream::SameTypePairs);
    within_group_pairs(&plus, p_in, &mut rng, &mut pairs)?;
    within_group_pairs(&minus, p_in, &mut rng, &mut pairs)?;
    let mut rng = substream(seed, Stream::CrossTypePairs);
    cross_group_pairs(&plus, &minus, p_out, &mut rng, &mut pairs)?;
    pairs.sort_unstable();

    let same = categorical(&params.mu)?;
    let cross = categorical(&params.nu)?;
    let mut rng = substream(seed, Stream::EdgeLabels);
    let edges = pairs
        .into_iter()
        .map(|(u, v)| {
            let dist = if sigma.same(u, v) { &same } else { &cross };
            let label = Label(dist.sample(&mut rng) as u16);
            Edge { u, v, label }
        })
        .collect();
    Ok(LabeledGraph::from_sorted(n, params.alphabet.clone(), edges))
}

/// Samples the labeled Erdős–Rényi graph with edge probability `(a+b)/(2n)`
/// and label law `(a mu + b nu)/(a + b)`.
pub fn sample_labeled_er<T: Scalar>(
    params: &ModelParams<T>,
    n: usize,
    seed: u64,
) -> Result<LabeledGraph> {
    params.validate()?;
    let law = er_pair_law(params, n)?;
    if law.edge_prob > 1.0 {
        return Err(Error::InvalidParams(format!(
            "edge probability (a+b)/(2n) = {} exceeds 1",
            law.edge_prob
        )));
    }
    let all: Vec<usize> = (0..n).collect();
    let mut pairs = Vec::new();
    let mut rng = substream(seed, Stream::SameTypePairs);
    within_group_pairs(&all, law.edge_prob, &mut rng, &mut pairs)?;
    let dist = WeightedIndex::new(&law.labels)
        .map_err(|e| Error::DegenerateModel(format!("label law: {e}")))?;
    let mut rng = substream(seed, Stream::EdgeLabels);
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge { u, v, label: Label(dist.sample(&mut rng) as u16) })
        .collect();
    Ok(LabeledGraph::from_sorted(n, params.alphabet.clone(), edges))
}

/// Uniformly random balanced assignment (`floor(n/2)` vertices of type +1).
pub fn balanced_types(n: usize, seed: u64) -> TypeAssignment {
    let mut spins: Vec<i8> = (0..n).map(|u| if u < n / 2 { 1 } else { -1 }).collect();
    spins.shuffle(&mut substream(seed, Stream::Balanced));
    TypeAssignment::new(spins).expect("spins are +-1")
}

/// Marginal law of a single vertex pair: edge probability and label
/// distribution given an edge.
#[derive(Debug, Clone, PartialEq)]
pub struct PairLaw {
    pub edge_prob: f64,
    pub labels: Vec<f64>,
}

/// Pair law of the LSBM after averaging over the two endpoint types.
pub fn lsbm_pair_law<T: Scalar>(params: &ModelParams<T>, n: usize) -> PairLaw {
    let (a, b, nf) = (params.a.as_f64(), params.b.as_f64(), n as f64);
    let p_same = 0.5;
    let edge_prob = p_same * a / nf + (1.0 - p_same) * b / nf;
    let labels = (0..params.num_labels())
        .map(|l| {
            let joint = p_same * a / nf * params.mu[l].as_f64()
                + (1.0 - p_same) * b / nf * params.nu[l].as_f64();
            if edge_prob > 0.0 {
                joint / edge_prob
            } else {
                0.0
            }
        })
        .collect();
    PairLaw { edge_prob, labels }
}

/// Pair law of the labeled ER null model.
pub fn er_pair_law<T: Scalar>(params: &ModelParams<T>, n: usize) -> Result<PairLaw> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    let total = params.a.as_f64() + params.b.as_f64();
    if total <= 0.0 {
        return Err(Error::DegenerateModel(
            "a + b = 0: no edges, label distribution undefined".into(),
        ));
    }
    let labels = (0..params.num_labels()).map(|l| params.plus(l).as_f64() / total).collect();
    Ok(PairLaw { edge_prob: total / (2.0 * n as f64), labels })
}

fn categorical<T: Scalar>(dist: &[T]) -> Result<WeightedIndex<f64>> {
    let w: Vec<f64> = dist.iter().map(|x| x.as_f64()).collect();
    WeightedIndex::new(&w).map_err(|e| Error::InvalidParams(format!("label distribution: {e}")))
}

/// Index of the next success after `pos` (exclusive start `None`), using
/// geometric gaps. Returns `None` once past `total`.
struct GapWalker {
    dist: Option<Geometric>,
    next: u64,
    total: u64,
}

impl GapWalker {
    fn new(p: f64, total: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParams(format!("edge probability {p} outside [0, 1]")));
        }
        let dist = if p > 0.0 {
            Some(Geometric::new(p).map_err(|e| Error::InvalidParams(e.to_string()))?)
        } else {
            None
        };
        Ok(Self { dist, next: 0, total })
    }

    fn step(&mut self, rng: &mut ChaCha8Rng) -> Option<u64> {
        let dist = self.dist.as_ref()?;
        let idx = self.next.checked_add(dist.sample(rng))?;
        if idx >= self.total {
            self.next = self.total;
            return None;
        }
        self.next = idx + 1;
        Some(idx)
    }
}

fn within_group_pairs(
    group: &[usize],
    p: f64,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(usize, usize)>,
) -> Result<()> {
    let s = group.len() as u64;
    let total = s * s.saturating_sub(1) / 2;
    let mut walker = GapWalker::new(p, total)?;
    // Pairs (i, j), i < j, enumerated row by row; row i holds s - 1 - i pairs.
    let (mut row, mut row_start) = (0u64, 0u64);
    while let Some(k) = walker.step(rng) {
        while k >= row_start + (s - 1 - row) {
            row_start += s - 1 - row;
            row += 1;
        }
        let col = row + 1 + (k - row_start);
        let (u, v) = (group[row as usize], group[col as usize]);
        out.push((u.min(v), u.max(v)));
    }
    Ok(())
}

fn cross_group_pairs(
    left: &[usize],
    right: &[usize],
    p: f64,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(usize, usize)>,
) -> Result<()> {
    let m = right.len() as u64;
    let mut walker = GapWalker::new(p, left.len() as u64 * m)?;
    while let Some(k) = walker.step(rng) {
        let (u, v) = (left[(k / m) as usize], right[(k % m) as usize]);
        out.push((u.min(v), u.max(v)));
    }
    Ok(())
}

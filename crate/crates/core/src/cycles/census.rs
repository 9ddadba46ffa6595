use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Label, LabelAlphabet, LabeledGraph};

pub const MIN_CYCLE_LEN: usize = 3;
pub const MAX_KMAX: usize = 10;
pub const DEFAULT_KMAX: usize = 6;

pub const CENSUS_CSV_HEADER: &str = "k,label_sequence,count";

/// Counts of simple cycles of length `3..=kmax` keyed by canonical label
/// sequence.
///
/// A cycle is read starting at its minimum-index vertex `v` and ending at
/// the smaller-index of the two neighbours of `v` on the cycle; each
/// geometric cycle therefore has exactly one key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCensus {
    kmax: usize,
    counts: BTreeMap<Vec<Label>, u64>,
}

impl CycleCensus {
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Count for one label sequence; its length is the cycle length.
    pub fn count(&self, labels: &[Label]) -> u64 {
        self.counts.get(labels).copied().unwrap_or(0)
    }

    /// Nonzero entries with cycle length `k`, in label order.
    pub fn entries_at(&self, k: usize) -> impl Iterator<Item = (&[Label], u64)> + '_ {
        self.counts.iter().filter(move |(s, _)| s.len() == k).map(|(s, &c)| (s.as_slice(), c))
    }

    /// Number of `k`-cycles regardless of labels.
    pub fn total_at(&self, k: usize) -> u64 {
        self.entries_at(k).map(|(_, c)| c).sum()
    }

    /// Nonzero entries ordered by length, then label sequence.
    pub fn entries(&self) -> Vec<(&[Label], u64)> {
        let mut out: Vec<_> = self.counts.iter().map(|(s, &c)| (s.as_slice(), c)).collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        out
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub(crate) fn check_length(&self, k: usize) -> Result<()> {
        if k < MIN_CYCLE_LEN || k > self.kmax {
            return Err(Error::Census(format!("census covers k in 3..={}, requested {k}", self.kmax)));
        }
        Ok(())
    }

    /// Writes `k,label_sequence,count` rows with `-`-joined label tokens.
    pub fn write_csv<W: Write>(&self, alphabet: &LabelAlphabet, out: W) -> Result<()> {
        let mut out = std::io::BufWriter::new(out);
        writeln!(out, "{CENSUS_CSV_HEADER}")?;
        for (seq, count) in self.entries() {
            let tokens: Vec<&str> = seq.iter().map(|&l| alphabet.token(l)).collect();
            writeln!(out, "{},{},{}", seq.len(), tokens.join("-"), count)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Enumerates every simple cycle of length `3..=kmax` once.
///
/// Each vertex `v` roots a depth-first search over paths whose other
/// vertices all exceed `v`; a path closing back to `v` is kept in the
/// direction whose last vertex is smaller than its first. Roots are
/// processed in parallel and merged by key.
pub fn count_labeled_cycles(g: &LabeledGraph, kmax: usize) -> Result<CycleCensus> {
    if !(MIN_CYCLE_LEN..=MAX_KMAX).contains(&kmax) {
        return Err(Error::SizeGuard(format!("kmax must lie in {MIN_CYCLE_LEN}..={MAX_KMAX}, got {kmax}")));
    }
    let partial: Vec<BTreeMap<Vec<Label>, u64>> = (0..g.n())
        .into_par_iter()
        .map(|root| {
            let mut local = BTreeMap::new();
            let mut search = Search { g, root, kmax, path: vec![root], labels: Vec::new(), out: &mut local };
            search.extend();
            local
        })
        .collect();
    let mut counts = BTreeMap::new();
    for local in partial {
        for (k, c) in local {
            *counts.entry(k).or_insert(0) += c;
        }
    }
    Ok(CycleCensus { kmax, counts })
}

struct Search<'a> {
    g: &'a LabeledGraph,
    root: usize,
    kmax: usize,
    path: Vec<usize>,
    labels: Vec<Label>,
    out: &'a mut BTreeMap<Vec<Label>, u64>,
}

impl Search<'_> {
    fn extend(&mut self) {
        let last = *self.path.last().expect("path holds the root");
        for &(next, label) in self.g.neighbors(last) {
            if next <= self.root || self.path.contains(&next) {
                continue;
            }
            self.path.push(next);
            self.labels.push(label);
            let len = self.path.len();
            if len >= MIN_CYCLE_LEN && next < self.path[1] {
                if let Some(closing) = self.g.label_between(next, self.root) {
                    let mut seq = self.labels.clone();
                    seq.push(closing);
                    *self.out.entry(seq).or_insert(0) += 1;
                }
            }
            if len < self.kmax {
                self.extend();
            }
            self.path.pop();
            self.labels.pop();
        }
    }
}

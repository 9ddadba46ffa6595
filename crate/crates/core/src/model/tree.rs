use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::model::{Label, ModelParams};
use crate::rng::{substream, Stream};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub spin: i8,
    pub parent: Option<usize>,
    /// Label of the edge to the parent; `None` at the root.
    pub label: Option<Label>,
    pub children: Vec<usize>,
    pub depth: usize,
}

/// Rooted labeled tree; node 0 is the root and nodes are stored in
/// breadth-first order, so every parent precedes its children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    nodes: Vec<TreeNode>,
    depth_limit: usize,
}

impl LabeledTree {
    pub fn new(nodes: Vec<TreeNode>, depth_limit: usize) -> Result<Self> {
        let t = Self { nodes, depth_limit };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidGraph(m));
        let Some(root) = self.nodes.first() else {
            return bad("tree has no nodes".into());
        };
        if root.parent.is_some() || root.label.is_some() || root.depth != 0 {
            return bad("node 0 is not a root".into());
        }
        let mut seen_as_child = vec![false; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            if node.spin != 1 && node.spin != -1 {
                return bad(format!("node {i} has spin {}", node.spin));
            }
            if node.depth > self.depth_limit {
                return bad(format!("node {i} deeper than the limit"));
            }
            if i > 0 {
                let Some(p) = node.parent else {
                    return bad(format!("node {i} has no parent"));
                };
                if p >= i || node.label.is_none() || !self.nodes[p].children.contains(&i) {
                    return bad(format!("node {i} has an inconsistent parent link"));
                }
                if node.depth != self.nodes[p].depth + 1 {
                    return bad(format!("node {i} depth is not parent depth + 1"));
                }
            }
            for &c in &node.children {
                if c >= self.nodes.len() || self.nodes[c].parent != Some(i) || seen_as_child[c] {
                    return bad(format!("node {i} lists an invalid child {c}"));
                }
                seen_as_child[c] = true;
            }
        }
        Ok(())
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Truncation depth the tree was grown to; nodes at this depth are the
    /// observed leaves.
    pub fn depth_limit(&self) -> usize {
        self.depth_limit
    }

    pub fn count_at_depth(&self, d: usize) -> usize {
        self.nodes.iter().filter(|x| x.depth == d).count()
    }
}

/// Labeled Galton–Watson tree: Poisson((a+b)/2) offspring, child keeps the
/// parent's type with probability a/(a+b), edge label from `mu` (same type)
/// or `nu` (different type). Grown breadth-first to `depth`.
pub fn sample_gw_tree<T: Scalar>(
    params: &ModelParams<T>,
    depth: usize,
    seed: u64,
) -> Result<LabeledTree> {
    params.validate()?;
    let mut rng = substream(seed, Stream::Tree);
    let (a, b) = (params.a.as_f64(), params.b.as_f64());
    let root = TreeNode {
        spin: if rng.random::<bool>() { 1 } else { -1 },
        parent: None,
        label: None,
        children: Vec::new(),
        depth: 0,
    };
    let mut nodes = vec![root];
    if a + b <= 0.0 {
        return LabeledTree::new(nodes, depth);
    }
    let offspring = Poisson::new((a + b) / 2.0).map_err(|e| Error::InvalidParams(e.to_string()))?;
    let keep = a / (a + b);
    let mu: Vec<f64> = params.mu.iter().map(|x| x.as_f64()).collect();
    let nu: Vec<f64> = params.nu.iter().map(|x| x.as_f64()).collect();

    let mut next = 0;
    while next < nodes.len() {
        let (spin, d) = (nodes[next].spin, nodes[next].depth);
        if d < depth {
            let count = offspring.sample(&mut rng) as usize;
            for _ in 0..count {
                let same = rng.random::<f64>() < keep;
                let dist = if same { &mu } else { &nu };
                let label = Label(draw(dist, rng.random::<f64>()) as u16);
                let id = nodes.len();
                nodes.push(TreeNode {
                    spin: if same { spin } else { -spin },
                    parent: Some(next),
                    label: Some(label),
                    children: Vec::new(),
                    depth: d + 1,
                });
                nodes[next].children.push(id);
            }
        }
        next += 1;
    }
    LabeledTree::new(nodes, depth)
}

/// Inverse-CDF draw, skipping zero-mass labels.
fn draw(dist: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in dist.iter().enumerate() {
        if p > 0.0 {
            acc += p;
            last = i;
            if u < acc {
                return i;
            }
        }
    }
    last
}

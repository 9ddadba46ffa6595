use crate::model::LabeledGraph;

/// What [`trim`] removed.
#[derive(Debug, Clone, PartialEq)]
pub struct TrimReport {
    /// Degree threshold; vertices with strictly larger degree lose all edges.
    pub threshold: f64,
    /// Vertices whose input degree exceeded the threshold, ascending.
    pub removed_vertices: Vec<usize>,
    pub removed_edges: usize,
}

impl TrimReport {
    /// Report for an untrimmed graph.
    pub fn untouched() -> Self {
        Self { threshold: f64::INFINITY, removed_vertices: Vec::new(), removed_edges: 0 }
    }
}

/// Removes every edge incident to a vertex of degree `> (3/4) avg_degree`.
///
/// Degrees are read once from the input graph; vertices are kept (possibly
/// isolated) so indices are unchanged.
pub fn trim(g: &LabeledGraph, avg_degree: f64) -> (LabeledGraph, TrimReport) {
    let threshold = 0.75 * avg_degree;
    let heavy: Vec<bool> = (0..g.n()).map(|u| g.degree(u) as f64 > threshold).collect();
    let removed_vertices: Vec<usize> = (0..g.n()).filter(|&u| heavy[u]).collect();
    let trimmed = g.filter_edges(|e| !heavy[e.u] && !heavy[e.v]);
    let removed_edges = g.num_edges() - trimmed.num_edges();
    (trimmed, TrimReport { threshold, removed_vertices, removed_edges })
}

//! Shared helpers for unit tests.

use crate::graph::AttributedGraph;
use crate::matrix::Matrix;

/// Tiny graph with one attribute per node (the node index) and the given
/// labels and edges.
pub(crate) fn graph_from(labels: &[Option<f64>], edges: &[(usize, usize)]) -> AttributedGraph {
    let n = labels.len();
    let attrs = Matrix::from_rows(&(0..n).map(|i| vec![i as f64]).collect::<Vec<_>>()).unwrap();
    AttributedGraph::from_parts((0..n as u64).collect(), attrs, labels.to_vec(), edges).unwrap()
}

/// Graph with explicit attribute rows.
pub(crate) fn graph_with_attrs(
    attrs: &[Vec<f64>],
    labels: &[Option<f64>],
    edges: &[(usize, usize)],
) -> AttributedGraph {
    let attrs = Matrix::from_rows(attrs).unwrap();
    AttributedGraph::from_parts(
        (0..labels.len() as u64).collect(),
        attrs,
        labels.to_vec(),
        edges,
    )
    .unwrap()
}

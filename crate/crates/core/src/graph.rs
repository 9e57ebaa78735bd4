//! Partially labeled attributed graphs: loading, validation, partitioning.
//!
//! Node ids in input files may be arbitrary non-negative integers; they are
//! remapped to dense indices `0..n` on load and the original ids are kept for
//! output. Graphs are immutable after construction and safe to share across
//! threads; all mutable prediction state lives outside the graph.

use std::collections::{BTreeSet, HashMap};
use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::seed;

#[derive(Debug, Clone)]
pub struct AttributedGraph {
    external_ids: Vec<u64>,
    attrs: Matrix,
    labels: Vec<Option<f64>>,
    adjacency: Vec<Vec<u32>>,
    n_edges: usize,
}

impl AttributedGraph {
    /// Build and validate a graph from already-dense parts. Edges are given
    /// as dense index pairs; duplicates are removed with a warning, self-loops
    /// are rejected.
    pub fn from_parts(
        external_ids: Vec<u64>,
        attrs: Matrix,
        labels: Vec<Option<f64>>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let n = external_ids.len();
        if n == 0 {
            return Err(Error::invalid("graph must contain at least one node"));
        }
        if attrs.n_rows() != n && !(attrs.n_cols() == 0 && attrs.n_rows() == 0) {
            return Err(Error::invalid(format!(
                "attribute matrix has {} rows for {} nodes",
                attrs.n_rows(),
                n
            )));
        }
        if labels.len() != n {
            return Err(Error::invalid(format!(
                "label vector has {} entries for {} nodes",
                labels.len(),
                n
            )));
        }
        {
            let mut seen = HashMap::with_capacity(n);
            for (dense, &ext) in external_ids.iter().enumerate() {
                if let Some(prev) = seen.insert(ext, dense) {
                    return Err(Error::invalid(format!(
                        "duplicate node id {ext} (rows {prev} and {dense})"
                    )));
                }
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if let Some(y) = l {
                if !y.is_finite() {
                    return Err(Error::invalid(format!("non-finite label on node {i}")));
                }
            }
        }

        let mut unique: BTreeSet<(u32, u32)> = BTreeSet::new();
        let mut duplicates = 0usize;
        for &(a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("self-loop on node {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a},{b}) references a node outside 0..{n}"
                )));
            }
            let key = (a.min(b) as u32, a.max(b) as u32);
            if !unique.insert(key) {
                duplicates += 1;
            }
        }
        if duplicates > 0 {
            log::warn!("deduplicated {duplicates} duplicate edges");
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &unique {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(AttributedGraph {
            external_ids,
            attrs,
            labels,
            adjacency,
            n_edges: unique.len(),
        })
    }

    pub fn n_nodes(&self) -> usize {
        self.external_ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn attr_count(&self) -> usize {
        self.attrs.n_cols()
    }

    pub fn attr_row(&self, node: usize) -> &[f64] {
        self.attrs.row(node)
    }

    pub fn neighbors(&self, node: usize) -> &[u32] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn label(&self, node: usize) -> Option<f64> {
        self.labels[node]
    }

    pub fn labels(&self) -> &[Option<f64>] {
        &self.labels
    }

    pub fn is_known(&self, node: usize) -> bool {
        self.labels[node].is_some()
    }

    pub fn external_id(&self, node: usize) -> u64 {
        self.external_ids[node]
    }

    pub fn known_nodes(&self) -> Vec<usize> {
        (0..self.n_nodes()).filter(|&i| self.is_known(i)).collect()
    }

    pub fn unknown_nodes(&self) -> Vec<usize> {
        (0..self.n_nodes()).filter(|&i| !self.is_known(i)).collect()
    }

    /// Undirected edge list as dense pairs with `a < b`, in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n_edges);
        for (a, list) in self.adjacency.iter().enumerate() {
            for &b in list {
                if (b as usize) > a {
                    out.push((a, b as usize));
                }
            }
        }
        out
    }

    /// Range (min, max) of the known labels, if any node is labeled.
    pub fn known_label_range(&self) -> Option<(f64, f64)> {
        let mut range: Option<(f64, f64)> = None;
        for l in self.labels.iter().flatten() {
            range = Some(match range {
                None => (*l, *l),
                Some((lo, hi)) => (lo.min(*l), hi.max(*l)),
            });
        }
        range
    }

    /// Copy of the graph with labels removed wherever `hide` is true.
    pub fn hide_labels(&self, hide: &[bool]) -> AttributedGraph {
        assert_eq!(hide.len(), self.n_nodes());
        let mut g = self.clone();
        for (l, &h) in g.labels.iter_mut().zip(hide) {
            if h {
                *l = None;
            }
        }
        g
    }

    /// Copy of the graph with labels overwritten by `value` wherever `mask`
    /// is true. Supports the held-out-label poisoning audit.
    pub fn replace_labels(&self, mask: &[bool], value: f64) -> AttributedGraph {
        assert_eq!(mask.len(), self.n_nodes());
        let mut g = self.clone();
        for (l, &m) in g.labels.iter_mut().zip(mask) {
            if m {
                *l = Some(value);
            }
        }
        g
    }
}

/// Cross-validation fold assignment: `fold_of[node]` in `0..k`, sizes
/// differing by at most one.
#[derive(Debug, Clone)]
pub struct FoldAssignment {
    pub fold_of: Vec<usize>,
    pub k: usize,
}

impl FoldAssignment {
    pub fn nodes_in(&self, fold: usize) -> Vec<usize> {
        (0..self.fold_of.len())
            .filter(|&i| self.fold_of[i] == fold)
            .collect()
    }
}

fn check_header(path: &Path, headers: &csv::StringRecord, want_first: &str) -> Result<()> {
    match headers.get(0) {
        Some(f) if f == want_first => Ok(()),
        other => Err(Error::Malformed {
            path: path.to_path_buf(),
            line: 1,
            msg: format!(
                "expected header starting with '{want_first}', got {:?}",
                other.unwrap_or("")
            ),
        }),
    }
}

fn malformed(path: &Path, line: u64, msg: impl Into<String>) -> Error {
    Error::Malformed {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Load a graph from a nodes CSV (`id,x_0,...,x_{p-1},y`; empty `y` means
/// unlabeled) and an edges CSV (`src,dst`, one undirected edge per row).
pub fn load_graph(nodes_path: &Path, edges_path: &Path) -> Result<AttributedGraph> {
    let mut reader = csv::Reader::from_path(nodes_path)?;
    let headers = reader.headers()?.clone();
    check_header(nodes_path, &headers, "id")?;
    if headers.len() < 2 || headers.get(headers.len() - 1) != Some("y") {
        return Err(malformed(
            nodes_path,
            1,
            "nodes header must be id,x_0,...,x_{p-1},y",
        ));
    }
    let p = headers.len() - 2;

    let mut external_ids = Vec::new();
    let mut attrs = Matrix::with_cols(p);
    let mut labels = Vec::new();
    let mut row = Vec::with_capacity(p);
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |pos| pos.line());
        if record.len() != headers.len() {
            return Err(malformed(
                nodes_path,
                line,
                format!("expected {} fields, got {}", headers.len(), record.len()),
            ));
        }
        let id: u64 = record
            .get(0)
            .unwrap()
            .trim()
            .parse()
            .map_err(|_| malformed(nodes_path, line, "node id must be a non-negative integer"))?;
        row.clear();
        for c in 0..p {
            let raw = record.get(1 + c).unwrap().trim();
            let v: f64 = raw
                .parse()
                .map_err(|_| malformed(nodes_path, line, format!("bad attribute x_{c}: '{raw}'")))?;
            if !v.is_finite() {
                return Err(malformed(nodes_path, line, format!("non-finite attribute x_{c}")));
            }
            row.push(v);
        }
        let raw_y = record.get(1 + p).unwrap().trim();
        let label = if raw_y.is_empty() {
            None
        } else {
            let y: f64 = raw_y
                .parse()
                .map_err(|_| malformed(nodes_path, line, format!("bad label: '{raw_y}'")))?;
            if !y.is_finite() {
                return Err(malformed(nodes_path, line, "non-finite label"));
            }
            Some(y)
        };
        external_ids.push(id);
        attrs.push_row(&row);
        labels.push(label);
    }
    if external_ids.is_empty() {
        return Err(malformed(nodes_path, 1, "nodes file contains no rows"));
    }
    let index: HashMap<u64, usize> = external_ids
        .iter()
        .enumerate()
        .map(|(dense, &ext)| (ext, dense))
        .collect();
    if index.len() != external_ids.len() {
        // locate the duplicate for a line-numbered error
        let mut seen = HashMap::new();
        for (dense, &ext) in external_ids.iter().enumerate() {
            if seen.insert(ext, dense).is_some() {
                return Err(malformed(
                    nodes_path,
                    dense as u64 + 2,
                    format!("duplicate node id {ext}"),
                ));
            }
        }
    }

    let mut reader = csv::Reader::from_path(edges_path)?;
    let headers = reader.headers()?.clone();
    check_header(edges_path, &headers, "src")?;
    let mut edges = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |pos| pos.line());
        if record.len() != 2 {
            return Err(malformed(
                edges_path,
                line,
                format!("expected 2 fields, got {}", record.len()),
            ));
        }
        let mut pair = [0usize; 2];
        for (slot, field) in pair.iter_mut().zip(0..2) {
            let raw = record.get(field).unwrap().trim();
            let ext: u64 = raw
                .parse()
                .map_err(|_| malformed(edges_path, line, format!("bad node id: '{raw}'")))?;
            *slot = *index.get(&ext).ok_or(Error::DanglingEndpoint {
                path: edges_path.to_path_buf(),
                line,
                id: ext,
            })?;
        }
        if pair[0] == pair[1] {
            return Err(malformed(
                edges_path,
                line,
                format!("self-loop on node id {}", record.get(0).unwrap()),
            ));
        }
        edges.push((pair[0], pair[1]));
    }

    AttributedGraph::from_parts(external_ids, attrs, labels, &edges)
}

/// Write a graph back to the nodes/edges CSV formats read by [`load_graph`].
/// Floats are written in shortest round-trip form, so write-then-read is
/// lossless.
pub fn save_graph(g: &AttributedGraph, nodes_path: &Path, edges_path: &Path) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(nodes_path)?);
    let p = g.attr_count();
    let mut header = String::from("id");
    for c in 0..p {
        header.push_str(&format!(",x_{c}"));
    }
    header.push_str(",y");
    writeln!(out, "{header}")?;
    for i in 0..g.n_nodes() {
        let mut line = g.external_id(i).to_string();
        for v in g.attr_row(i) {
            line.push(',');
            line.push_str(&v.to_string());
        }
        line.push(',');
        if let Some(y) = g.label(i) {
            line.push_str(&y.to_string());
        }
        writeln!(out, "{line}")?;
    }
    out.flush()?;

    let mut out = std::io::BufWriter::new(std::fs::File::create(edges_path)?);
    writeln!(out, "src,dst")?;
    for (a, b) in g.edges() {
        writeln!(out, "{},{}", g.external_id(a), g.external_id(b))?;
    }
    out.flush()?;
    Ok(())
}

/// Subgraph induced by `keep`: exactly those nodes, and the edges with both
/// endpoints kept. External ids are preserved.
pub fn induced_subgraph(g: &AttributedGraph, keep: &[usize]) -> Result<AttributedGraph> {
    if keep.is_empty() {
        return Err(Error::invalid("induced subgraph over an empty node set"));
    }
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if *keep.last().unwrap() >= g.n_nodes() {
        return Err(Error::invalid("keep set references a node outside the graph"));
    }
    let mut new_index = vec![usize::MAX; g.n_nodes()];
    for (new, &old) in keep.iter().enumerate() {
        new_index[old] = new;
    }
    let mut attrs = Matrix::with_cols(g.attr_count());
    let mut labels = Vec::with_capacity(keep.len());
    let mut external_ids = Vec::with_capacity(keep.len());
    for &old in &keep {
        attrs.push_row(g.attr_row(old));
        labels.push(g.label(old));
        external_ids.push(g.external_id(old));
    }
    let mut edges = Vec::new();
    for &old in &keep {
        for &nb in g.neighbors(old) {
            let nb = nb as usize;
            if nb > old && new_index[nb] != usize::MAX {
                edges.push((new_index[old], new_index[nb]));
            }
        }
    }
    AttributedGraph::from_parts(external_ids, attrs, labels, &edges)
}

/// Uniform random partition of the nodes into `k` folds, deterministic for a
/// given seed. Fold sizes differ by at most one.
pub fn split_folds(g: &AttributedGraph, k: usize, seed: u64) -> Result<FoldAssignment> {
    let n = g.n_nodes();
    if k < 2 {
        return Err(Error::invalid("fold count must be at least 2"));
    }
    if k > n {
        return Err(Error::invalid(format!("cannot split {n} nodes into {k} folds")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut seed::rng(seed));
    let base = n / k;
    let extra = n % k;
    let mut fold_of = vec![0usize; n];
    let mut cursor = 0usize;
    for fold in 0..k {
        let size = base + usize::from(fold < extra);
        for &node in &order[cursor..cursor + size] {
            fold_of[node] = fold;
        }
        cursor += size;
    }
    Ok(FoldAssignment { fold_of, k })
}

/// Random disjoint cover of the nodes into a known set of size
/// `round(frac_known * n)` and its complement. Both sides are returned in
/// ascending node order.
pub fn random_known_unknown_split(
    g: &AttributedGraph,
    frac_known: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(frac_known > 0.0 && frac_known < 1.0) {
        return Err(Error::invalid(format!(
            "known fraction must lie strictly between 0 and 1, got {frac_known}"
        )));
    }
    let n = g.n_nodes();
    let n_known = (frac_known * n as f64).round() as usize;
    if n_known == 0 || n_known == n {
        return Err(Error::invalid(format!(
            "known fraction {frac_known} leaves an empty side on {n} nodes"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut seed::rng(seed));
    let mut known = order[..n_known].to_vec();
    let mut unknown = order[n_known..].to_vec();
    known.sort_unstable();
    unknown.sort_unstable();
    Ok((known, unknown))
}

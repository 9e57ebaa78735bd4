//! Binary regression trees with axis-aligned splits and median leaf values.
//!
//! Trees are grown best-first: at every step the frontier leaf whose best
//! split yields the largest SSE reduction is split, until the leaf budget is
//! exhausted or no split has strictly positive gain. The split criterion is
//! the standard least-squares one (SSE around the mean); leaf predictions are
//! the lower median of the targets routed to the leaf, which keeps leaf
//! values inside the observed target set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::stats::median_lower;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionTree {
    arity: usize,
    nodes: Vec<TreeNode>,
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    feature: usize,
    threshold: f64,
    gain: f64,
}

/// Best split of a row set by SSE reduction. Ties are broken toward the
/// lower feature index, then the lower threshold, by scanning features and
/// thresholds in ascending order and only accepting strict improvements.
/// Targets are centered on the region mean before accumulating sums so the
/// prefix arithmetic stays well conditioned for large-magnitude labels.
fn best_split(x: &Matrix, targets: &[f64], rows: &[u32]) -> Option<Candidate> {
    let n = rows.len();
    if n < 2 {
        return None;
    }
    let center = rows.iter().map(|&r| targets[r as usize]).sum::<f64>() / n as f64;
    let total_sum: f64 = rows.iter().map(|&r| targets[r as usize] - center).sum();
    let total_sq: f64 = rows
        .iter()
        .map(|&r| {
            let t = targets[r as usize] - center;
            t * t
        })
        .sum();
    let parent_sse = total_sq - total_sum * total_sum / n as f64;

    let mut best: Option<Candidate> = None;
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n);
    for feature in 0..x.n_cols() {
        pairs.clear();
        pairs.extend(
            rows.iter()
                .map(|&r| (x.row(r as usize)[feature], targets[r as usize] - center)),
        );
        pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

        let mut left_sum = 0.0;
        let mut left_sq = 0.0;
        for i in 0..n - 1 {
            let t = pairs[i].1;
            left_sum += t;
            left_sq += t * t;
            let (v, v_next) = (pairs[i].0, pairs[i + 1].0);
            if v >= v_next {
                continue;
            }
            let n_left = (i + 1) as f64;
            let n_right = (n - i - 1) as f64;
            let right_sum = total_sum - left_sum;
            let right_sq = total_sq - left_sq;
            let sse_left = left_sq - left_sum * left_sum / n_left;
            let sse_right = right_sq - right_sum * right_sum / n_right;
            let gain = parent_sse - sse_left - sse_right;
            if gain > best.map_or(0.0, |b| b.gain) {
                let mut threshold = v + (v_next - v) * 0.5;
                if threshold >= v_next {
                    threshold = v;
                }
                best = Some(Candidate {
                    feature,
                    threshold,
                    gain,
                });
            }
        }
    }
    best
}

fn leaf_value(targets: &[f64], rows: &[u32]) -> f64 {
    let mut vals: Vec<f64> = rows.iter().map(|&r| targets[r as usize]).collect();
    median_lower(&mut vals)
}

struct Frontier {
    slot: usize,
    rows: Vec<u32>,
    candidate: Option<Candidate>,
    created: usize,
}

impl RegressionTree {
    /// Fit a tree on an `n x d` feature matrix. `max_leaves` is the leaf
    /// budget; a budget of 1 yields a single median leaf.
    pub fn fit(x: &Matrix, targets: &[f64], max_leaves: usize) -> Result<Self> {
        let n = x.n_rows().max(if x.n_cols() == 0 { targets.len() } else { 0 });
        if targets.is_empty() || (x.n_cols() > 0 && x.n_rows() == 0) {
            return Err(Error::invalid("cannot fit a tree on empty input"));
        }
        if x.n_cols() > 0 && x.n_rows() != targets.len() {
            return Err(Error::invalid(format!(
                "feature matrix has {} rows but {} targets",
                x.n_rows(),
                targets.len()
            )));
        }
        if max_leaves < 1 {
            return Err(Error::invalid("max_leaves must be at least 1"));
        }
        if let Some(bad) = targets.iter().find(|t| !t.is_finite()) {
            return Err(Error::invalid(format!("non-finite target {bad}")));
        }

        let all_rows: Vec<u32> = (0..n as u32).collect();
        let mut nodes = vec![TreeNode::Leaf {
            value: leaf_value(targets, &all_rows),
        }];
        let mut frontier = vec![Frontier {
            slot: 0,
            rows: all_rows,
            candidate: best_split(x, targets, &(0..n as u32).collect::<Vec<_>>()),
            created: 0,
        }];
        let mut created = 1usize;
        let mut leaves = 1usize;

        while leaves < max_leaves {
            // frontier leaf with the largest positive gain; earlier-created wins ties
            let pick = frontier
                .iter()
                .enumerate()
                .filter_map(|(i, f)| f.candidate.map(|c| (i, c)))
                .max_by(|(ia, ca), (ib, cb)| {
                    ca.gain
                        .total_cmp(&cb.gain)
                        .then_with(|| frontier[*ib].created.cmp(&frontier[*ia].created))
                        .then_with(|| ib.cmp(ia))
                });
            let Some((idx, cand)) = pick else { break };

            let Frontier { slot, rows, .. } = frontier.swap_remove(idx);
            let (mut left_rows, mut right_rows) = (Vec::new(), Vec::new());
            for &r in &rows {
                if x.row(r as usize)[cand.feature] <= cand.threshold {
                    left_rows.push(r);
                } else {
                    right_rows.push(r);
                }
            }
            debug_assert!(!left_rows.is_empty() && !right_rows.is_empty());

            let left_slot = nodes.len();
            nodes.push(TreeNode::Leaf {
                value: leaf_value(targets, &left_rows),
            });
            let right_slot = nodes.len();
            nodes.push(TreeNode::Leaf {
                value: leaf_value(targets, &right_rows),
            });
            nodes[slot] = TreeNode::Split {
                feature: cand.feature,
                threshold: cand.threshold,
                left: left_slot,
                right: right_slot,
            };
            let left_cand = best_split(x, targets, &left_rows);
            let right_cand = best_split(x, targets, &right_rows);
            frontier.push(Frontier {
                slot: left_slot,
                rows: left_rows,
                candidate: left_cand,
                created,
            });
            frontier.push(Frontier {
                slot: right_slot,
                rows: right_rows,
                candidate: right_cand,
                created: created + 1,
            });
            created += 2;
            leaves += 1;
        }

        Ok(RegressionTree {
            arity: x.n_cols(),
            nodes,
        })
    }

    /// Single-leaf tree that predicts a constant.
    pub fn constant(arity: usize, value: f64) -> Self {
        RegressionTree {
            arity,
            nodes: vec![TreeNode::Leaf { value }],
        }
    }

    /// Build a tree from explicit nodes (root at index 0), validating the
    /// structure. Used by tests and by model deserialization.
    pub fn from_nodes(arity: usize, nodes: Vec<TreeNode>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::invalid("tree must have at least one node"));
        }
        for node in &nodes {
            if let TreeNode::Split {
                feature,
                left,
                right,
                threshold,
            } = node
            {
                if *feature >= arity {
                    return Err(Error::invalid("split feature out of range"));
                }
                if *left >= nodes.len() || *right >= nodes.len() || left == right {
                    return Err(Error::invalid("split child index out of range"));
                }
                if !threshold.is_finite() {
                    return Err(Error::invalid("non-finite split threshold"));
                }
            }
        }
        Ok(RegressionTree { arity, nodes })
    }

    /// Route an input to its leaf; inputs exactly at a threshold go left.
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        let mut idx = 0usize;
        loop {
            match &self.nodes[idx] {
                TreeNode::Leaf { value } => return Ok(*value),
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    idx = if x[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TreeNode::Leaf { .. }))
            .count()
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    /// Index of the leaf an input routes to.
    pub fn leaf_index(&self, x: &[f64]) -> Result<usize> {
        if x.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        let mut idx = 0usize;
        loop {
            match &self.nodes[idx] {
                TreeNode::Leaf { .. } => return Ok(idx),
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    idx = if x[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }
}

/// Convenience wrapper matching the operation vocabulary used elsewhere.
pub fn fit_tree(x: &Matrix, targets: &[f64], max_leaves: usize) -> Result<RegressionTree> {
    RegressionTree::fit(x, targets, max_leaves)
}

pub fn predict_tree(tree: &RegressionTree, x: &[f64]) -> Result<f64> {
    tree.predict(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn matrix_1d(vals: &[f64]) -> Matrix {
        Matrix::from_rows(&vals.iter().map(|&v| vec![v]).collect::<Vec<_>>()).unwrap()
    }

    /// Independent exhaustive split search: every feature, every midpoint
    /// between consecutive distinct values, SSE computed two-pass.
    fn exhaustive_best_gain(x: &Matrix, y: &[f64]) -> f64 {
        let n = y.len();
        let sse = |rows: &[usize]| -> f64 {
            let m = rows.iter().map(|&r| y[r]).sum::<f64>() / rows.len() as f64;
            rows.iter().map(|&r| (y[r] - m) * (y[r] - m)).sum()
        };
        let parent = sse(&(0..n).collect::<Vec<_>>());
        let mut best = 0.0f64;
        for f in 0..x.n_cols() {
            let mut vals: Vec<f64> = (0..n).map(|r| x.row(r)[f]).collect();
            vals.sort_by(f64::total_cmp);
            vals.dedup();
            for w in vals.windows(2) {
                let thr = (w[0] + w[1]) / 2.0;
                let left: Vec<usize> = (0..n).filter(|&r| x.row(r)[f] <= thr).collect();
                let right: Vec<usize> = (0..n).filter(|&r| x.row(r)[f] > thr).collect();
                if left.is_empty() || right.is_empty() {
                    continue;
                }
                let gain = parent - sse(&left) - sse(&right);
                if gain > best {
                    best = gain;
                }
            }
        }
        best
    }

    fn fitted_root_gain(x: &Matrix, y: &[f64]) -> f64 {
        best_split(x, y, &(0..y.len() as u32).collect::<Vec<_>>()).map_or(0.0, |c| c.gain)
    }

    #[test]
    fn two_cluster_split() {
        let x = matrix_1d(&[1.0, 2.0, 3.0, 4.0]);
        let y = [10.0, 10.0, 100.0, 100.0];
        let tree = fit_tree(&x, &y, 2).unwrap();
        match &tree.nodes()[0] {
            TreeNode::Split {
                feature, threshold, ..
            } => {
                assert_eq!(*feature, 0);
                assert!(*threshold > 2.0 && *threshold <= 3.0, "threshold {threshold}");
            }
            other => panic!("expected split at root, got {other:?}"),
        }
        assert_eq!(tree.predict(&[1.5]).unwrap(), 10.0);
        assert_eq!(tree.predict(&[3.5]).unwrap(), 100.0);
        // brute-force oracle agrees on the attained gain
        let oracle = exhaustive_best_gain(&x, &y);
        assert!((fitted_root_gain(&x, &y) - oracle).abs() < 1e-9);
    }

    #[test]
    fn constant_targets_yield_single_leaf() {
        let x = matrix_1d(&[1.0, 2.0, 3.0]);
        let tree = fit_tree(&x, &[5.0, 5.0, 5.0], 4).unwrap();
        assert_eq!(tree.leaf_count(), 1);
        assert_eq!(tree.predict(&[2.0]).unwrap(), 5.0);
    }

    #[test]
    fn single_leaf_is_median() {
        let x = matrix_1d(&[1.0, 2.0, 3.0]);
        let tree = fit_tree(&x, &[1.0, 2.0, 100.0], 1).unwrap();
        assert_eq!(tree.leaf_count(), 1);
        assert_eq!(tree.predict(&[9.0]).unwrap(), 2.0);
    }

    #[test]
    fn boundary_input_routes_left() {
        let nodes = vec![
            TreeNode::Split {
                feature: 0,
                threshold: 2.5,
                left: 1,
                right: 2,
            },
            TreeNode::Leaf { value: -1.0 },
            TreeNode::Leaf { value: 1.0 },
        ];
        let tree = RegressionTree::from_nodes(1, nodes).unwrap();
        assert_eq!(tree.predict(&[2.5]).unwrap(), -1.0);
        assert_eq!(tree.predict(&[2.5000001]).unwrap(), 1.0);
    }

    #[test]
    fn constant_tree_predicts_everywhere() {
        let tree = RegressionTree::constant(3, 7.0);
        assert_eq!(tree.predict(&[0.0, 1.0, 2.0]).unwrap(), 7.0);
        assert_eq!(tree.predict(&[-9.0, 9.0, 0.0]).unwrap(), 7.0);
    }

    #[test]
    fn errors_on_bad_input() {
        let x = matrix_1d(&[1.0]);
        assert!(fit_tree(&Matrix::with_cols(1), &[], 2).is_err());
        assert!(fit_tree(&x, &[1.0], 0).is_err());
        assert!(fit_tree(&x, &[f64::NAN], 2).is_err());
        let tree = fit_tree(&x, &[1.0], 1).unwrap();
        assert!(matches!(
            tree.predict(&[1.0, 2.0]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn oracle_equivalence_on_random_datasets() {
        let mut rng = crate::seed::rng(0xBEEF);
        for _ in 0..30 {
            let n = rng.random_range(2..=50);
            let d = rng.random_range(1..=4);
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..d).map(|_| rng.random_range(-5.0..5.0)).collect())
                .collect();
            let y: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
            let x = Matrix::from_rows(&rows).unwrap();
            let oracle = exhaustive_best_gain(&x, &y);
            let got = fitted_root_gain(&x, &y);
            assert!(
                (got - oracle).abs() < 1e-9,
                "gain {got} vs oracle {oracle} on n={n} d={d}"
            );
        }
    }

    /// Total SSE around per-leaf means, evaluated by replaying the training
    /// rows through a fitted tree.
    fn mean_sse_of_fit(x: &Matrix, y: &[f64], leaves: usize) -> f64 {
        let tree = fit_tree(x, y, leaves).unwrap();
        let mut groups: std::collections::HashMap<usize, Vec<f64>> = Default::default();
        for r in 0..y.len() {
            groups.entry(tree.leaf_index(x.row(r)).unwrap()).or_default().push(y[r]);
        }
        groups
            .values()
            .map(|vals| {
                let m = vals.iter().sum::<f64>() / vals.len() as f64;
                vals.iter().map(|v| (v - m) * (v - m)).sum::<f64>()
            })
            .sum()
    }

    #[test]
    fn growth_monotonically_reduces_mean_sse() {
        let mut rng = crate::seed::rng(42);
        let n = 64;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
            .collect();
        let y: Vec<f64> = rows
            .iter()
            .map(|r| r[0] * 3.0 + (r[1] * 4.0).sin() + rng.random_range(-0.1..0.1))
            .collect();
        let x = Matrix::from_rows(&rows).unwrap();
        let mut prev = f64::INFINITY;
        for leaves in 1..=8 {
            let sse = mean_sse_of_fit(&x, &y, leaves);
            assert!(
                sse <= prev + 1e-9,
                "SSE increased from {prev} to {sse} at {leaves} leaves"
            );
            prev = sse;
        }
    }

    #[test]
    fn replay_consistency_leaf_values_are_medians() {
        let mut rng = crate::seed::rng(7);
        let n = 40;
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| vec![rng.random_range(0.0..4.0), rng.random_range(0.0..4.0)])
            .collect();
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let x = Matrix::from_rows(&rows).unwrap();
        let tree = fit_tree(&x, &y, 5).unwrap();
        let mut groups: std::collections::HashMap<usize, Vec<f64>> = Default::default();
        for r in 0..n {
            groups.entry(tree.leaf_index(x.row(r)).unwrap()).or_default().push(y[r]);
        }
        assert_eq!(groups.len(), tree.leaf_count());
        for (leaf, mut vals) in groups {
            let med = crate::stats::median_lower(&mut vals);
            match &tree.nodes()[leaf] {
                TreeNode::Leaf { value } => assert_eq!(*value, med),
                _ => panic!("routed to non-leaf"),
            }
        }
    }

    #[test]
    fn leaf_budget_respected() {
        let mut rng = crate::seed::rng(3);
        let vals: Vec<f64> = (0..100).map(|_| rng.random_range(0.0..1.0)).collect();
        let y: Vec<f64> = (0..100).map(|_| rng.random_range(0.0..1.0)).collect();
        let x = matrix_1d(&vals);
        for budget in 1..=6 {
            let tree = fit_tree(&x, &y, budget).unwrap();
            assert!(tree.leaf_count() <= budget);
        }
    }
}

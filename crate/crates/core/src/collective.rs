//! Iterative collective inference over partially labeled graphs.
//!
//! [`ica`] serves single-schema relational models (`rgb`): a bootstrap pass
//! predicts every unknown node from its observed neighbors, then up to `itr`
//! sweeps re-predict the unknown nodes in a fresh random order, feeding each
//! node's current estimate into its neighbors' features. Updates within a
//! sweep are in place, so nodes later in the ordering see earlier updates.
//!
//! [`ica2`] serves staged models (`mgb`) and runs in three phases:
//!
//! 1. for every known node and stage, evaluate the stage tree on features
//!    from observed neighbors only and record the true residual
//!    `y - (cumulative prediction so far)`;
//! 2. initialize every unknown node's stage slots the same way;
//! 3. sweep the unknown nodes in random order, re-evaluating all stages per
//!    node against current estimates, until the maximum cumulative-prediction
//!    change falls below tolerance or the sweep budget is exhausted.
//!
//! Convergence uses a scale-relative tolerance: 1e-6 times the range of the
//! visible known labels.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::boosting::{predict_boosted, BoostedModel, ModelKind};
use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::relfeat::{assemble_features, FeatureMask, NeighborMode, StageState};
use crate::seed;

pub const DEFAULT_TOLERANCE_SCALE: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct CiOptions {
    /// Maximum number of iterative sweeps after the bootstrap pass.
    pub max_sweeps: usize,
    pub seed: u64,
    /// Absolute convergence tolerance; `None` selects the scale-relative
    /// default. A negative tolerance disables early stopping.
    pub tolerance: Option<f64>,
}

impl CiOptions {
    pub fn new(max_sweeps: usize, seed: u64) -> Self {
        CiOptions {
            max_sweeps,
            seed,
            tolerance: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CiOutcome {
    /// Final estimates for the unknown nodes, in ascending node order.
    pub predictions: Vec<(usize, f64)>,
    /// Max absolute prediction change per sweep, in sweep order.
    pub sweep_deltas: Vec<f64>,
    pub converged: bool,
    pub sweeps_run: usize,
}

impl CiOutcome {
    pub fn prediction_map(&self) -> std::collections::HashMap<usize, f64> {
        self.predictions.iter().copied().collect()
    }
}

/// Max absolute elementwise change between two sweeps.
pub fn sweep_delta(prev: &[f64], cur: &[f64]) -> Result<f64> {
    if prev.len() != cur.len() {
        return Err(Error::invalid(format!(
            "sweep_delta: {} vs {} entries",
            prev.len(),
            cur.len()
        )));
    }
    Ok(prev
        .iter()
        .zip(cur)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

fn default_tolerance(g: &AttributedGraph, visible: &[Option<f64>]) -> f64 {
    let mut range: Option<(f64, f64)> = None;
    for (i, l) in visible.iter().enumerate() {
        debug_assert!(i < g.n_nodes());
        if let Some(y) = l {
            range = Some(match range {
                None => (*y, *y),
                Some((lo, hi)) => (lo.min(*y), hi.max(*y)),
            });
        }
    }
    match range {
        Some((lo, hi)) => DEFAULT_TOLERANCE_SCALE * (hi - lo),
        None => 0.0,
    }
}

fn fresh_order(rng: &mut ChaCha8Rng, nodes: &[usize]) -> Vec<usize> {
    let mut order = nodes.to_vec();
    order.shuffle(rng);
    order
}

fn visible_labels(g: &AttributedGraph, known_override: Option<&[bool]>) -> Vec<Option<f64>> {
    match known_override {
        None => g.labels().to_vec(),
        Some(mask) => {
            assert_eq!(mask.len(), g.n_nodes());
            (0..g.n_nodes())
                .map(|i| if mask[i] { g.label(i) } else { None })
                .collect()
        }
    }
}

/// Iterative classification for `rgb` models (schema `[x, rf1]`).
pub fn ica(g: &AttributedGraph, model: &BoostedModel, itr: usize, seed: u64) -> Result<CiOutcome> {
    ica_opts(g, model, &CiOptions::new(itr, seed))
}

pub fn ica_opts(g: &AttributedGraph, model: &BoostedModel, opts: &CiOptions) -> Result<CiOutcome> {
    ica_masked(g, model, None, opts)
}

pub(crate) fn ica_masked(
    g: &AttributedGraph,
    model: &BoostedModel,
    known_override: Option<&[bool]>,
    opts: &CiOptions,
) -> Result<CiOutcome> {
    if model.kind != ModelKind::Rgb {
        return Err(Error::WrongModelKind {
            expected: "rgb",
            got: model.kind.to_string(),
        });
    }
    if opts.max_sweeps < 1 {
        return Err(Error::invalid("iteration budget must be at least 1"));
    }
    if model.schema(0).attr_count != g.attr_count() {
        return Err(Error::ArityMismatch {
            expected: model.schema(0).attr_count,
            got: g.attr_count(),
        });
    }
    let visible = visible_labels(g, known_override);
    let unknown: Vec<usize> = (0..g.n_nodes()).filter(|&i| visible[i].is_none()).collect();
    if unknown.is_empty() {
        return Err(Error::invalid("no unknown nodes to infer"));
    }
    let tol = opts.tolerance.unwrap_or_else(|| default_tolerance(g, &visible));
    let mut rng = seed::rng(opts.seed);

    let mut estimate: Vec<Option<f64>> = vec![None; g.n_nodes()];
    let median_rf1 = |estimate: &Vec<Option<f64>>, node: usize| -> f64 {
        let mut vals: Vec<f64> = g
            .neighbors(node)
            .iter()
            .map(|&j| j as usize)
            .filter_map(|j| visible[j].or(estimate[j]))
            .collect();
        if vals.is_empty() {
            0.0
        } else {
            crate::stats::median_lower(&mut vals)
        }
    };

    let mut features = Vec::with_capacity(g.attr_count() + 1);
    // bootstrap from observed neighbors only
    let blank: Vec<Option<f64>> = vec![None; g.n_nodes()];
    let mut boot = Vec::with_capacity(unknown.len());
    for &i in &unknown {
        features.clear();
        features.extend_from_slice(g.attr_row(i));
        features.push(median_rf1(&blank, i));
        boot.push(predict_boosted(model, &features)?);
    }
    for (&i, &p) in unknown.iter().zip(&boot) {
        estimate[i] = Some(p);
    }

    let mut prev: Vec<f64> = unknown.iter().map(|&i| estimate[i].unwrap()).collect();
    let mut deltas = Vec::new();
    let mut converged = false;
    let mut sweeps_run = 0usize;
    for _ in 0..opts.max_sweeps {
        let order = fresh_order(&mut rng, &unknown);
        for &i in &order {
            features.clear();
            features.extend_from_slice(g.attr_row(i));
            features.push(median_rf1(&estimate, i));
            estimate[i] = Some(predict_boosted(model, &features)?);
        }
        sweeps_run += 1;
        let cur: Vec<f64> = unknown.iter().map(|&i| estimate[i].unwrap()).collect();
        let delta = sweep_delta(&prev, &cur)?;
        deltas.push(delta);
        prev = cur;
        if delta <= tol {
            converged = true;
            break;
        }
    }

    Ok(CiOutcome {
        predictions: unknown.iter().map(|&i| (i, estimate[i].unwrap())).collect(),
        sweep_deltas: deltas,
        converged,
        sweeps_run,
    })
}

/// Staged collective inference for `mgb` models.
pub fn ica2(g: &AttributedGraph, model: &BoostedModel, itr: usize, seed: u64) -> Result<CiOutcome> {
    ica2_opts(g, model, &CiOptions::new(itr, seed))
}

pub fn ica2_opts(g: &AttributedGraph, model: &BoostedModel, opts: &CiOptions) -> Result<CiOutcome> {
    ica2_masked(g, model, None, opts)
}

pub(crate) fn ica2_masked(
    g: &AttributedGraph,
    model: &BoostedModel,
    known_override: Option<&[bool]>,
    opts: &CiOptions,
) -> Result<CiOutcome> {
    if model.kind != ModelKind::Mgb {
        return Err(Error::WrongModelKind {
            expected: "mgb",
            got: model.kind.to_string(),
        });
    }
    if opts.max_sweeps < 1 {
        return Err(Error::invalid("iteration budget must be at least 1"));
    }
    for (m, schema) in model.schemas.iter().enumerate() {
        if schema.attr_count != g.attr_count() {
            return Err(Error::invalid(format!(
                "stage {m} schema expects {} attributes, graph has {}",
                schema.attr_count,
                g.attr_count()
            )));
        }
        if model.stages[m].arity() != schema.arity() {
            return Err(Error::invalid(format!("stage {m} schema/tree arity mismatch")));
        }
    }
    let mask = model.mask();
    let visible = visible_labels(g, known_override);
    let unknown: Vec<usize> = (0..g.n_nodes()).filter(|&i| visible[i].is_none()).collect();
    if unknown.is_empty() {
        return Err(Error::invalid("no unknown nodes to infer"));
    }
    let known: Vec<usize> = (0..g.n_nodes()).filter(|&i| visible[i].is_some()).collect();
    let tol = opts.tolerance.unwrap_or_else(|| default_tolerance(g, &visible));
    let mut rng = seed::rng(opts.seed);

    let n_stages = model.n_stages();
    let mut state = StageState::new(g.n_nodes(), n_stages, visible);

    let mut run = Ica2Run {
        g,
        model,
        mask,
        state: &mut state,
    };
    run.known_phase(&known)?;
    run.init_unknown_phase(&unknown)?;

    let mut prev: Vec<f64> = unknown.iter().map(|&i| run.state.cumulative(i)).collect();
    let mut deltas = Vec::new();
    let mut converged = false;
    let mut sweeps_run = 0usize;
    for _ in 0..opts.max_sweeps {
        let order = fresh_order(&mut rng, &unknown);
        for &i in &order {
            run.update_node(i, NeighborMode::WithEstimates)?;
        }
        sweeps_run += 1;
        let cur: Vec<f64> = unknown.iter().map(|&i| run.state.cumulative(i)).collect();
        let delta = sweep_delta(&prev, &cur)?;
        deltas.push(delta);
        prev = cur;
        if delta <= tol {
            converged = true;
            break;
        }
    }

    Ok(CiOutcome {
        predictions: unknown.iter().map(|&i| (i, state.cumulative(i))).collect(),
        sweep_deltas: deltas,
        converged,
        sweeps_run,
    })
}

struct Ica2Run<'a> {
    g: &'a AttributedGraph,
    model: &'a BoostedModel,
    mask: FeatureMask,
    state: &'a mut StageState,
}

impl Ica2Run<'_> {
    /// Phase 1: per stage, record every known node's true residual, then
    /// evaluate the stage tree on observed-neighbor features. Residuals for
    /// a stage are fixed before any evaluation of that stage, so the result
    /// does not depend on the order of the known nodes.
    fn known_phase(&mut self, known: &[usize]) -> Result<()> {
        for m in 0..self.model.n_stages() {
            for &i in known {
                let y = self.state.known_label(i).expect("known node has a label");
                let residual = y - self.state.cumulative_upto(i, m);
                self.state.set_residual(i, m, residual);
            }
            for &i in known {
                let feats =
                    assemble_features(self.g, i, m, self.state, NeighborMode::ObservedOnly, self.mask)?;
                let out = self.model.stages[m].predict(&feats)?;
                self.state.write_slot(i, m, out);
            }
        }
        Ok(())
    }

    /// Phase 2: initialize unknown nodes stage by stage from observed
    /// neighbors only.
    fn init_unknown_phase(&mut self, unknown: &[usize]) -> Result<()> {
        for m in 0..self.model.n_stages() {
            for &i in unknown {
                let feats =
                    assemble_features(self.g, i, m, self.state, NeighborMode::ObservedOnly, self.mask)?;
                let out = self.model.stages[m].predict(&feats)?;
                self.state.write_slot(i, m, out);
            }
        }
        Ok(())
    }

    /// Re-evaluate all stages of one node. Stages run in increasing order, so
    /// the rf4 channel at stage m sees the node's just-updated lower slots.
    fn update_node(&mut self, node: usize, mode: NeighborMode) -> Result<()> {
        for m in 0..self.model.n_stages() {
            let feats = assemble_features(self.g, node, m, self.state, mode, self.mask)?;
            let out = self.model.stages[m].predict(&feats)?;
            self.state.write_slot(node, m, out);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boosting::FeatureSchema;
    use crate::testutil::graph_from;
    use crate::tree::{RegressionTree, TreeNode};

    /// rgb model over p attributes whose prediction equals its rf1 input,
    /// built from step trees over the label range [0, hi].
    fn rf1_identity_rgb(p: usize, hi: f64, steps: usize) -> BoostedModel {
        // sum of `steps` threshold trees on the rf1 column approximates the
        // identity on multiples of hi/steps exactly at grid points
        let step = hi / steps as f64;
        let stages: Vec<RegressionTree> = (0..steps)
            .map(|s| {
                let thr = step * s as f64 + step / 2.0;
                RegressionTree::from_nodes(
                    p + 1,
                    vec![
                        TreeNode::Split {
                            feature: p,
                            threshold: thr,
                            left: 1,
                            right: 2,
                        },
                        TreeNode::Leaf { value: 0.0 },
                        TreeNode::Leaf { value: step },
                    ],
                )
                .unwrap()
            })
            .collect();
        let schemas = vec![FeatureSchema::rgb(p); steps];
        BoostedModel {
            kind: ModelKind::Rgb,
            max_leaves: 2,
            stages,
            schemas,
        }
    }

    #[test]
    fn sweep_delta_cases() {
        assert_eq!(sweep_delta(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(sweep_delta(&[1.0, 2.0], &[1.0, 5.0]).unwrap(), 3.0);
        assert!(sweep_delta(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn ica_on_edgeless_graph_converges_at_first_sweep() {
        let labels = [Some(3.0), Some(9.0), None, None];
        let g = graph_from(&labels, &[]);
        let model = rf1_identity_rgb(1, 10.0, 4);
        let out = ica(&g, &model, 50, 7).unwrap();
        assert!(out.converged);
        assert_eq!(out.sweeps_run, 1);
        assert_eq!(out.sweep_deltas, vec![0.0]);
        // rf1 is always 0 on an edgeless graph, so itr is irrelevant
        let out50 = ica(&g, &model, 1, 7).unwrap();
        assert_eq!(out.predictions, out50.predictions);
    }

    #[test]
    fn ica_two_node_graph_converges_to_known_label() {
        // known label 10; model outputs its rf1 input on the grid
        let g = graph_from(&[Some(10.0), None], &[(0, 1)]);
        let model = rf1_identity_rgb(1, 10.0, 4);
        let out = ica(&g, &model, 50, 3).unwrap();
        assert_eq!(out.predictions, vec![(1, 10.0)]);
        assert!(out.converged);
        assert_eq!(out.sweeps_run, 1);
        // delta trace reaches exactly zero immediately: bootstrap already
        // sees the known neighbor
        assert_eq!(out.sweep_deltas[0], 0.0);
    }

    #[test]
    fn ica_respects_iteration_budget_and_kind() {
        let g = graph_from(&[Some(1.0), None], &[(0, 1)]);
        let model = rf1_identity_rgb(1, 10.0, 4);
        assert!(ica(&g, &model, 0, 0).is_err());
        let out = ica(&g, &model, 50, 0).unwrap();
        assert!(out.sweeps_run <= 50);

        let mut gb = model.clone();
        gb.kind = ModelKind::Gb;
        assert!(matches!(
            ica(&g, &gb, 10, 0),
            Err(Error::WrongModelKind { .. })
        ));
    }

    #[test]
    fn ica_errors_without_unknown_nodes() {
        let g = graph_from(&[Some(1.0), Some(2.0)], &[(0, 1)]);
        let model = rf1_identity_rgb(1, 10.0, 2);
        assert!(ica(&g, &model, 10, 0).is_err());
    }

    /// mgb wrapper around the same step trees: stage trees only read column
    /// p (rf1 slot in both layouts), so with M=0-style single schema the two
    /// procedures must match.
    fn rf1_identity_mgb_stage(p: usize, hi: f64) -> BoostedModel {
        let tree = RegressionTree::from_nodes(
            p + 4,
            vec![
                TreeNode::Split {
                    feature: p,
                    threshold: hi / 2.0,
                    left: 1,
                    right: 2,
                },
                TreeNode::Leaf { value: 0.0 },
                TreeNode::Leaf { value: hi },
            ],
        )
        .unwrap();
        BoostedModel {
            kind: ModelKind::Mgb,
            max_leaves: 2,
            stages: vec![tree],
            schemas: vec![FeatureSchema::mgb(p, FeatureMask::all())],
        }
    }

    #[test]
    fn ica2_single_stage_matches_ica_with_same_seed() {
        let labels = [
            Some(10.0),
            Some(10.0),
            None,
            None,
            Some(0.0),
            None,
            Some(10.0),
            None,
        ];
        let edges = [(0, 2), (1, 3), (4, 5), (6, 7), (2, 3), (3, 5), (5, 7)];
        let g = graph_from(&labels, &edges);

        let single = RegressionTree::from_nodes(
            2,
            vec![
                TreeNode::Split {
                    feature: 1,
                    threshold: 5.0,
                    left: 1,
                    right: 2,
                },
                TreeNode::Leaf { value: 0.0 },
                TreeNode::Leaf { value: 10.0 },
            ],
        )
        .unwrap();
        let rgb = BoostedModel {
            kind: ModelKind::Rgb,
            max_leaves: 2,
            stages: vec![single],
            schemas: vec![FeatureSchema::rgb(1)],
        };
        let mgb = rf1_identity_mgb_stage(1, 10.0);

        for seed in [0u64, 1, 99] {
            let a = ica(&g, &rgb, 50, seed).unwrap();
            let b = ica2(&g, &mgb, 50, seed).unwrap();
            assert_eq!(a.predictions, b.predictions, "seed {seed}");
            assert_eq!(a.sweeps_run, b.sweeps_run, "seed {seed}");
        }
    }

    #[test]
    fn ica2_known_residuals_telescope_for_exact_model() {
        // every node labeled c, single-leaf stages [c, 0, 0]: residuals per
        // stage are [c, 0, 0] and the stage sums reproduce c
        let c = 6.0;
        let g = graph_from(&[Some(c), Some(c), None], &[(0, 1), (1, 2)]);
        let stages = vec![
            RegressionTree::constant(5, c),
            RegressionTree::constant(5, 0.0),
            RegressionTree::constant(5, 0.0),
        ];
        let model = BoostedModel {
            kind: ModelKind::Mgb,
            max_leaves: 1,
            stages,
            schemas: vec![FeatureSchema::mgb(1, FeatureMask::all()); 3],
        };
        let visible = g.labels().to_vec();
        let mut state = StageState::new(3, 3, visible);
        let mut run = Ica2Run {
            g: &g,
            model: &model,
            mask: FeatureMask::all(),
            state: &mut state,
        };
        run.known_phase(&[0, 1]).unwrap();
        for i in [0usize, 1] {
            assert_eq!(state.residual(i, 0), c);
            assert_eq!(state.residual(i, 1), 0.0);
            assert_eq!(state.residual(i, 2), 0.0);
            assert_eq!(state.cumulative(i), c);
        }
        let out = ica2(&g, &model, 50, 0).unwrap();
        assert_eq!(out.predictions, vec![(2, c)]);
    }

    #[test]
    fn ica2_isolated_unknown_node_ignores_iterations() {
        let g = graph_from(&[Some(2.0), Some(4.0), None], &[(0, 1)]);
        // three stages with distinct leaf values so a non-zero rf4 would show
        let stages = vec![
            RegressionTree::constant(5, 3.0),
            rf1_identity_mgb_stage(1, 10.0).stages[0].clone(),
            RegressionTree::from_nodes(
                5,
                vec![
                    TreeNode::Split {
                        feature: 4, // rf4 column
                        threshold: 1.0,
                        left: 1,
                        right: 2,
                    },
                    TreeNode::Leaf { value: -0.5 },
                    TreeNode::Leaf { value: 20.0 },
                ],
            )
            .unwrap(),
        ];
        let model = BoostedModel {
            kind: ModelKind::Mgb,
            max_leaves: 2,
            stages,
            schemas: vec![FeatureSchema::mgb(1, FeatureMask::all()); 3],
        };
        let one = ica2(&g, &model, 1, 5).unwrap();
        let many = ica2(&g, &model, 50, 5).unwrap();
        let p1 = one.prediction_map()[&2];
        let p50 = many.prediction_map()[&2];
        assert_eq!(p1.to_bits(), p50.to_bits());
        // expected: every stage evaluated on [x, 0, 0, 0, 0]
        let mut expected = 0.0;
        for t in &model.stages {
            expected += t.predict(&[2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        }
        assert_eq!(p1, expected);
    }

    #[test]
    fn ica2_preserves_known_state_across_phase3() {
        let labels = [Some(1.0), Some(5.0), Some(9.0), None, None, None];
        let edges = [(0, 3), (1, 4), (2, 5), (3, 4), (4, 5), (0, 1)];
        let g = graph_from(&labels, &edges);
        let model = rf1_identity_mgb_stage(1, 10.0);

        let visible = g.labels().to_vec();
        let mut state = StageState::new(6, 1, visible);
        let snapshot = |state: &StageState| -> Vec<(u64, u64)> {
            (0..3)
                .map(|i| (state.residual(i, 0).to_bits(), state.slot(i, 0).to_bits()))
                .collect()
        };
        let before;
        {
            let mut run = Ica2Run {
                g: &g,
                model: &model,
                mask: FeatureMask::all(),
                state: &mut state,
            };
            run.known_phase(&[0, 1, 2]).unwrap();
            run.init_unknown_phase(&[3, 4, 5]).unwrap();
            before = snapshot(run.state);
            let mut rng = seed::rng(12);
            for _ in 0..5 {
                let order = fresh_order(&mut rng, &[3, 4, 5]);
                for &i in &order {
                    run.update_node(i, NeighborMode::WithEstimates).unwrap();
                }
            }
        }
        let after = snapshot(&state);
        assert_eq!(before, after);
    }

    #[test]
    fn ica2_prediction_equals_slot_sum() {
        let labels = [Some(0.0), Some(10.0), None, None];
        let g = graph_from(&labels, &[(0, 2), (1, 3), (2, 3)]);
        let model = rf1_identity_mgb_stage(1, 10.0);
        let opts = CiOptions::new(50, 4);
        let visible = g.labels().to_vec();
        let mut state = StageState::new(4, 1, visible);
        {
            let mut run = Ica2Run {
                g: &g,
                model: &model,
                mask: FeatureMask::all(),
                state: &mut state,
            };
            run.known_phase(&[0, 1]).unwrap();
            run.init_unknown_phase(&[2, 3]).unwrap();
        }
        let out = ica2_opts(&g, &model, &opts).unwrap();
        for (node, pred) in &out.predictions {
            let _ = node;
            assert!(pred.is_finite());
        }
    }

    #[test]
    fn ica_and_ica2_are_deterministic() {
        let labels = [Some(1.0), Some(7.0), None, Some(3.0), None, None];
        let edges = [(0, 2), (1, 2), (3, 4), (2, 4), (4, 5), (1, 5)];
        let g = graph_from(&labels, &edges);
        let rgb = rf1_identity_rgb(1, 10.0, 4);
        let a = ica(&g, &rgb, 50, 42).unwrap();
        let b = ica(&g, &rgb, 50, 42).unwrap();
        assert_eq!(a.predictions, b.predictions);
        assert_eq!(a.sweep_deltas, b.sweep_deltas);

        let mgb = rf1_identity_mgb_stage(1, 10.0);
        let c = ica2(&g, &mgb, 50, 42).unwrap();
        let d = ica2(&g, &mgb, 50, 42).unwrap();
        assert_eq!(c.predictions, d.predictions);
    }

    #[test]
    fn early_stop_matches_full_run_within_tolerance() {
        let labels = [Some(0.0), Some(10.0), Some(5.0), None, None, None, None];
        let edges = [(0, 3), (1, 4), (2, 5), (3, 4), (4, 5), (5, 6), (0, 6)];
        let g = graph_from(&labels, &edges);
        let model = rf1_identity_rgb(1, 10.0, 4);
        let early = ica(&g, &model, 50, 9).unwrap();
        let full = ica_opts(
            &g,
            &model,
            &CiOptions {
                max_sweeps: 50,
                seed: 9,
                tolerance: Some(-1.0), // never stop early
            },
        )
        .unwrap();
        assert!(early.converged);
        assert_eq!(full.sweeps_run, 50);
        let tol = DEFAULT_TOLERANCE_SCALE * 10.0;
        for ((na, pa), (nb, pb)) in early.predictions.iter().zip(&full.predictions) {
            assert_eq!(na, nb);
            assert!((pa - pb).abs() <= tol.max(1e-12), "{pa} vs {pb}");
        }
    }
}

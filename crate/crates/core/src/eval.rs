//! Cross-validation experiment driver: model comparison over training
//! fractions, feature ablations, RMSE reporting, and the leakage audit.
//!
//! A training fraction `f` over `k` folds designates `ceil(f*k)` consecutive
//! folds (cyclically, starting at the cell's fold index) as known; the rest
//! is the test set. Each cell trains on the induced known subgraph and
//! predicts through the model's own inference path: direct evaluation for
//! `gb`, ICA for `rgb`, staged ICA for `mgb`. Test labels are hidden before
//! inference, and the optional audit re-runs every cell with the held-out
//! labels replaced by a sentinel, verifying bit-identical predictions.

use std::time::Instant;

use rayon::prelude::*;

use crate::boosting::{fit_gb, fit_rgb, predict_boosted, BoostedModel, ModelKind};
use crate::collective::ica;
use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, split_folds, AttributedGraph, FoldAssignment};
use crate::matrix::Matrix;
use crate::mgb::{fit_mgb, predict_mgb, MgbConfig};
use crate::relfeat::FeatureMask;
use crate::seed::{derive, hash_tag};
use crate::stats;

pub const POISON_SENTINEL: f64 = 9.87654321e13;

#[derive(Debug, Clone, Copy)]
pub struct HarnessParams {
    pub boost_rounds: usize,
    pub max_leaves: usize,
    pub trials: usize,
    pub known_frac: f64,
    pub ci_iters: usize,
    /// Re-run every cell with poisoned held-out labels and require
    /// bit-identical predictions.
    pub audit: bool,
    /// Worker threads for the experiment grid; 0 uses the rayon default.
    pub workers: usize,
}

impl Default for HarnessParams {
    fn default() -> Self {
        HarnessParams {
            boost_rounds: 10,
            max_leaves: 5,
            trials: 3,
            known_frac: 0.8,
            ci_iters: 50,
            audit: false,
            workers: 0,
        }
    }
}

impl HarnessParams {
    fn mgb_config(&self, mask: FeatureMask) -> MgbConfig {
        MgbConfig {
            boost_rounds: self.boost_rounds,
            max_leaves: self.max_leaves,
            trials: self.trials,
            known_frac: self.known_frac,
            ci_iters: self.ci_iters,
            mask,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvalRow {
    pub model: ModelKind,
    pub mask: String,
    pub fraction: f64,
    pub fold: usize,
    pub seed: u64,
    pub rmse: f64,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggRow {
    pub fraction: f64,
    pub model_label: String,
    pub mean_rmse: f64,
    pub std_rmse: f64,
}

#[derive(Debug, Clone, Default)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
}

fn mask_column(model: ModelKind, mask: FeatureMask) -> String {
    match model {
        ModelKind::Gb => "-".to_string(),
        ModelKind::Rgb => "rf1".to_string(),
        ModelKind::Mgb => mask.to_string(),
    }
}

fn model_label(model: ModelKind, mask_col: &str) -> String {
    match model {
        ModelKind::Mgb if mask_col != "all" => format!("mgb[{mask_col}]"),
        _ => model.as_str().to_string(),
    }
}

impl EvalReport {
    /// Mean and sample standard deviation of rmse per (fraction, model
    /// label), sorted by fraction then label.
    pub fn aggregate(&self) -> Vec<AggRow> {
        let mut groups: std::collections::BTreeMap<(String, String), Vec<f64>> = Default::default();
        for row in &self.rows {
            let label = model_label(row.model, &row.mask);
            groups
                .entry((format!("{}", row.fraction), label))
                .or_default()
                .push(row.rmse);
        }
        let mut out: Vec<AggRow> = groups
            .into_iter()
            .map(|((fraction, model_label), vals)| AggRow {
                fraction: fraction.parse().unwrap(),
                model_label,
                mean_rmse: stats::mean(&vals),
                std_rmse: stats::sample_std(&vals),
            })
            .collect();
        out.sort_by(|a, b| {
            a.fraction
                .total_cmp(&b.fraction)
                .then_with(|| a.model_label.cmp(&b.model_label))
        });
        out
    }

    pub fn report_csv(&self) -> String {
        let mut s = String::from("model,mask,fraction,fold,seed,rmse,seconds\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{},{:.3}\n",
                r.model, r.mask, r.fraction, r.fold, r.seed, r.rmse, r.seconds
            ));
        }
        s
    }

    /// The report with the wall-time column removed; this is the
    /// byte-reproducible part.
    pub fn report_csv_without_timing(&self) -> String {
        let mut s = String::from("model,mask,fraction,fold,seed,rmse\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.model, r.mask, r.fraction, r.fold, r.seed, r.rmse
            ));
        }
        s
    }

    pub fn plot_csv(&self) -> String {
        let mut s = String::from("fraction,model,mean_rmse,std_rmse\n");
        for a in self.aggregate() {
            s.push_str(&format!(
                "{},{},{},{}\n",
                a.fraction, a.model_label, a.mean_rmse, a.std_rmse
            ));
        }
        s
    }
}

/// Root mean square error.
pub fn rmse(preds: &[f64], truth: &[f64]) -> Result<f64> {
    if preds.is_empty() || preds.len() != truth.len() {
        return Err(Error::invalid(format!(
            "rmse needs equal nonzero lengths, got {} and {}",
            preds.len(),
            truth.len()
        )));
    }
    let se: f64 = preds
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    Ok((se / preds.len() as f64).sqrt())
}

pub fn derive_cell_seed(
    seed: u64,
    model: ModelKind,
    mask: &str,
    fraction_idx: usize,
    fold: usize,
) -> u64 {
    derive(
        seed,
        &[
            hash_tag("cell"),
            hash_tag(model.as_str()),
            hash_tag(mask),
            fraction_idx as u64,
            fold as u64,
        ],
    )
}

pub fn cell_fit_seed(cell_seed: u64) -> u64 {
    derive(cell_seed, &[hash_tag("fit")])
}

pub fn cell_predict_seed(cell_seed: u64) -> u64 {
    derive(cell_seed, &[hash_tag("predict")])
}

#[derive(Debug, Clone, Copy)]
struct CellSpec {
    model: ModelKind,
    mask: FeatureMask,
    fraction: f64,
    fraction_idx: usize,
    fold: usize,
}

fn train_fold_count(fraction: f64, k: usize) -> Result<usize> {
    let count = (fraction * k as f64 - 1e-9).ceil() as usize;
    if !(fraction > 0.0 && fraction < 1.0) || count == 0 || count >= k {
        return Err(Error::invalid(format!(
            "training fraction {fraction} with {k} folds leaves no train or no test fold"
        )));
    }
    Ok(count)
}

fn known_mask_for_cell(assign: &FoldAssignment, spec: &CellSpec, k: usize) -> Result<Vec<bool>> {
    let t = train_fold_count(spec.fraction, k)?;
    let train_folds: Vec<usize> = (0..t).map(|off| (spec.fold + off) % k).collect();
    Ok(assign
        .fold_of
        .iter()
        .map(|f| train_folds.contains(f))
        .collect())
}

/// Train on the known part of `source` and predict its test nodes. `source`
/// carries ground truth for every node; the test labels are hidden before
/// anything is trained or inferred.
fn run_cell(
    source: &AttributedGraph,
    assign: &FoldAssignment,
    spec: &CellSpec,
    params: &HarnessParams,
    cell_seed: u64,
) -> Result<Vec<(usize, f64)>> {
    let known = known_mask_for_cell(assign, spec, assign.k)?;
    let hide: Vec<bool> = known.iter().map(|&b| !b).collect();
    let eval_graph = source.hide_labels(&hide);
    let known_nodes: Vec<usize> = (0..source.n_nodes()).filter(|&i| known[i]).collect();
    let train_graph = induced_subgraph(source, &known_nodes)?;

    match spec.model {
        ModelKind::Gb => {
            let rows: Vec<Vec<f64>> = (0..train_graph.n_nodes())
                .map(|i| train_graph.attr_row(i).to_vec())
                .collect();
            let y: Vec<f64> = (0..train_graph.n_nodes())
                .map(|i| train_graph.label(i).unwrap())
                .collect();
            let x = Matrix::from_rows(&rows)?;
            let model = fit_gb(&x, &y, params.boost_rounds, params.max_leaves)?;
            eval_graph
                .unknown_nodes()
                .into_iter()
                .map(|i| Ok((i, predict_boosted(&model, eval_graph.attr_row(i))?)))
                .collect()
        }
        ModelKind::Rgb => {
            let model = fit_rgb(&train_graph, params.boost_rounds, params.max_leaves)?;
            let out = ica(
                &eval_graph,
                &model,
                params.ci_iters,
                cell_predict_seed(cell_seed),
            )?;
            Ok(out.predictions)
        }
        ModelKind::Mgb => {
            let cfg = params.mgb_config(spec.mask);
            let model = fit_mgb(&train_graph, &cfg, cell_fit_seed(cell_seed))?;
            let out = predict_mgb(
                &eval_graph,
                &model,
                params.ci_iters,
                cell_predict_seed(cell_seed),
            )?;
            Ok(out.predictions)
        }
    }
}

fn run_cells(
    g: &AttributedGraph,
    specs: &[CellSpec],
    k: usize,
    params: &HarnessParams,
    seed: u64,
) -> Result<EvalReport> {
    if g.n_nodes() != g.known_nodes().len() {
        return Err(Error::invalid(
            "experiment graph must carry ground-truth labels for every node",
        ));
    }
    let assign = split_folds(g, k, derive(seed, &[hash_tag("folds")]))?;

    let run_all = || -> Result<Vec<EvalRow>> {
        specs
            .par_iter()
            .map(|spec| {
                let cell_seed = derive_cell_seed(
                    seed,
                    spec.model,
                    &mask_column(spec.model, spec.mask),
                    spec.fraction_idx,
                    spec.fold,
                );
                let started = Instant::now();
                let preds = run_cell(g, &assign, spec, params, cell_seed)?;
                let seconds = started.elapsed().as_secs_f64();

                if params.audit {
                    let known = known_mask_for_cell(&assign, spec, k)?;
                    let hidden: Vec<bool> = known.iter().map(|&b| !b).collect();
                    let poisoned = g.replace_labels(&hidden, POISON_SENTINEL);
                    let audit_preds = run_cell(&poisoned, &assign, spec, params, cell_seed)?;
                    if preds.len() != audit_preds.len()
                        || preds
                            .iter()
                            .zip(&audit_preds)
                            .any(|((na, pa), (nb, pb))| na != nb || pa.to_bits() != pb.to_bits())
                    {
                        return Err(Error::invalid(format!(
                            "leakage audit failed: predictions changed when held-out labels were \
                             poisoned (model {}, fraction {}, fold {})",
                            spec.model, spec.fraction, spec.fold
                        )));
                    }
                }

                let truth: Vec<f64> = preds.iter().map(|(i, _)| g.label(*i).unwrap()).collect();
                let values: Vec<f64> = preds.iter().map(|(_, p)| *p).collect();
                Ok(EvalRow {
                    model: spec.model,
                    mask: mask_column(spec.model, spec.mask),
                    fraction: spec.fraction,
                    fold: spec.fold,
                    seed,
                    rmse: rmse(&values, &truth)?,
                    seconds,
                })
            })
            .collect()
    };

    let mut rows = if params.workers > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.workers)
            .build()
            .map_err(|e| Error::invalid(format!("worker pool: {e}")))?;
        pool.install(run_all)?
    } else {
        run_all()?
    };
    rows.sort_by(|a, b| {
        a.model
            .as_str()
            .cmp(b.model.as_str())
            .then_with(|| a.mask.cmp(&b.mask))
            .then_with(|| a.fraction.total_cmp(&b.fraction))
            .then_with(|| a.fold.cmp(&b.fold))
    });
    Ok(EvalReport { rows })
}

/// Cross-validated comparison of the given models over training fractions.
pub fn run_experiment(
    g: &AttributedGraph,
    models: &[ModelKind],
    fractions: &[f64],
    k: usize,
    params: &HarnessParams,
    seed: u64,
) -> Result<EvalReport> {
    if models.is_empty() || fractions.is_empty() {
        return Err(Error::invalid("need at least one model and one fraction"));
    }
    for &f in fractions {
        train_fold_count(f, k)?;
    }
    let mut specs = Vec::new();
    for &model in models {
        for (fraction_idx, &fraction) in fractions.iter().enumerate() {
            for fold in 0..k {
                specs.push(CellSpec {
                    model,
                    mask: FeatureMask::all(),
                    fraction,
                    fraction_idx,
                    fold,
                });
            }
        }
    }
    run_cells(g, &specs, k, params, seed)
}

/// Cross-validated comparison of `mgb` feature-mask variants.
pub fn run_ablation(
    g: &AttributedGraph,
    masks: &[FeatureMask],
    fractions: &[f64],
    k: usize,
    params: &HarnessParams,
    seed: u64,
) -> Result<EvalReport> {
    if masks.is_empty() || fractions.is_empty() {
        return Err(Error::invalid("need at least one mask and one fraction"));
    }
    for mask in masks {
        if mask.count() == 0 && g.attr_count() == 0 {
            return Err(Error::invalid(
                "empty feature mask combined with zero attributes leaves nothing to split on",
            ));
        }
    }
    for &f in fractions {
        train_fold_count(f, k)?;
    }
    let mut specs = Vec::new();
    for &mask in masks {
        for (fraction_idx, &fraction) in fractions.iter().enumerate() {
            for fold in 0..k {
                specs.push(CellSpec {
                    model: ModelKind::Mgb,
                    mask,
                    fraction,
                    fraction_idx,
                    fold,
                });
            }
        }
    }
    run_cells(g, &specs, k, params, seed)
}

/// Train one model on the known part of a partially labeled graph (the way
/// an experiment cell does) and return it. Shared by the CLI `train`
/// subcommand.
pub fn train_on_known(
    g: &AttributedGraph,
    model: ModelKind,
    mask: FeatureMask,
    params: &HarnessParams,
    fit_seed: u64,
) -> Result<BoostedModel> {
    let known_nodes = g.known_nodes();
    if known_nodes.is_empty() {
        return Err(Error::invalid("no labeled nodes to train on"));
    }
    let train_graph = induced_subgraph(g, &known_nodes)?;
    match model {
        ModelKind::Gb => {
            let rows: Vec<Vec<f64>> = (0..train_graph.n_nodes())
                .map(|i| train_graph.attr_row(i).to_vec())
                .collect();
            let y: Vec<f64> = (0..train_graph.n_nodes())
                .map(|i| train_graph.label(i).unwrap())
                .collect();
            fit_gb(&Matrix::from_rows(&rows)?, &y, params.boost_rounds, params.max_leaves)
        }
        ModelKind::Rgb => fit_rgb(&train_graph, params.boost_rounds, params.max_leaves),
        ModelKind::Mgb => fit_mgb(&train_graph, &params.mgb_config(mask), fit_seed),
    }
}

/// Predict the unlabeled nodes of a partially labeled graph through the
/// model's inference path. Returns (node, prediction) pairs in ascending
/// node order plus the sweep-delta trace when collective inference ran.
pub fn predict_unknown(
    g: &AttributedGraph,
    model: &BoostedModel,
    ci_iters: usize,
    seed: u64,
) -> Result<(Vec<(usize, f64)>, Vec<f64>)> {
    match model.kind {
        ModelKind::Gb => {
            let preds: Result<Vec<(usize, f64)>> = g
                .unknown_nodes()
                .into_iter()
                .map(|i| Ok((i, predict_boosted(model, g.attr_row(i))?)))
                .collect();
            Ok((preds?, Vec::new()))
        }
        ModelKind::Rgb => {
            let out = ica(g, model, ci_iters, seed)?;
            Ok((out.predictions, out.sweep_deltas))
        }
        ModelKind::Mgb => {
            let out = predict_mgb(g, model, ci_iters, seed)?;
            Ok((out.predictions, out.sweep_deltas))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::graph_with_attrs;

    fn experiment_graph(n: usize, constant: Option<f64>) -> AttributedGraph {
        let attrs: Vec<Vec<f64>> = (0..n)
            .map(|i| vec![(i % 2) as f64, (i % 3) as f64, ((i / 3) % 2) as f64])
            .collect();
        let labels: Vec<Option<f64>> = (0..n)
            .map(|i| Some(constant.unwrap_or((i % 7) as f64 * 2.0 + (i % 2) as f64)))
            .collect();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| vec![(i, (i + 1) % n), (i, (i + 2) % n)])
            .collect();
        graph_with_attrs(&attrs, &labels, &edges)
    }

    fn quick_params() -> HarnessParams {
        HarnessParams {
            boost_rounds: 2,
            max_leaves: 3,
            trials: 2,
            ci_iters: 5,
            ..Default::default()
        }
    }

    #[test]
    fn rmse_cases() {
        assert_eq!(rmse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        let r = rmse(&[0.0, 0.0], &[3.0, 4.0]).unwrap();
        assert!((r - 12.5f64.sqrt()).abs() < 1e-12);
        assert!(rmse(&[], &[]).is_err());
        assert!(rmse(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn rmse_is_homogeneous() {
        let preds = [1.0, 5.0, -2.0];
        let truth = [0.0, 4.0, 1.0];
        let base = rmse(&preds, &truth).unwrap();
        let scaled_preds: Vec<f64> = preds.iter().zip(&truth).map(|(p, t)| t + 3.0 * (p - t)).collect();
        let scaled = rmse(&scaled_preds, &truth).unwrap();
        assert!((scaled - 3.0 * base).abs() < 1e-12);
    }

    #[test]
    fn experiment_produces_expected_grid() {
        let g = experiment_graph(40, None);
        let report = run_experiment(
            &g,
            &[ModelKind::Gb, ModelKind::Rgb, ModelKind::Mgb],
            &[0.2, 0.4, 0.6, 0.8],
            5,
            &quick_params(),
            7,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 60);
        // every (fraction, fold) appears exactly once per model
        for model in [ModelKind::Gb, ModelKind::Rgb, ModelKind::Mgb] {
            let count = report.rows.iter().filter(|r| r.model == model).count();
            assert_eq!(count, 20);
        }
        assert!(report.rows.iter().all(|r| r.rmse >= 0.0));
    }

    #[test]
    fn constant_label_graph_scores_zero_everywhere() {
        let g = experiment_graph(30, Some(4.0));
        let report = run_experiment(
            &g,
            &[ModelKind::Gb, ModelKind::Rgb, ModelKind::Mgb],
            &[0.2, 0.8],
            5,
            &quick_params(),
            3,
        )
        .unwrap();
        for row in &report.rows {
            assert_eq!(row.rmse, 0.0, "{row:?}");
        }
    }

    #[test]
    fn gb_rows_ignore_edge_permutations() {
        let n = 30;
        let attrs: Vec<Vec<f64>> = (0..n).map(|i| vec![(i % 4) as f64, (i % 5) as f64]).collect();
        let labels: Vec<Option<f64>> = (0..n).map(|i| Some((i % 4 * 3) as f64)).collect();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let reversed: Vec<(usize, usize)> = edges.iter().rev().map(|&(a, b)| (b, a)).collect();
        let g1 = graph_with_attrs(&attrs, &labels, &edges);
        let g2 = graph_with_attrs(&attrs, &labels, &reversed);
        let r1 = run_experiment(&g1, &[ModelKind::Gb], &[0.4], 5, &quick_params(), 11).unwrap();
        let r2 = run_experiment(&g2, &[ModelKind::Gb], &[0.4], 5, &quick_params(), 11).unwrap();
        let key = |r: &EvalReport| -> Vec<(String, u64)> {
            r.rows
                .iter()
                .map(|row| (format!("{}-{}-{}", row.model, row.fraction, row.fold), row.rmse.to_bits()))
                .collect()
        };
        assert_eq!(key(&r1), key(&r2));
    }

    #[test]
    fn reports_are_reproducible() {
        let g = experiment_graph(35, None);
        let params = quick_params();
        let a = run_experiment(&g, &[ModelKind::Rgb, ModelKind::Mgb], &[0.4], 5, &params, 13).unwrap();
        let b = run_experiment(&g, &[ModelKind::Rgb, ModelKind::Mgb], &[0.4], 5, &params, 13).unwrap();
        assert_eq!(a.report_csv_without_timing(), b.report_csv_without_timing());
        assert_eq!(a.plot_csv(), b.plot_csv());
    }

    #[test]
    fn audit_passes_on_clean_pipeline() {
        let g = experiment_graph(30, None);
        let params = HarnessParams {
            audit: true,
            ..quick_params()
        };
        let report = run_experiment(
            &g,
            &[ModelKind::Gb, ModelKind::Rgb, ModelKind::Mgb],
            &[0.4],
            5,
            &params,
            5,
        )
        .unwrap();
        assert_eq!(report.rows.len(), 15);
    }

    #[test]
    fn ablation_masks_form_groups_and_identity_mask_matches_default() {
        let g = experiment_graph(30, None);
        let params = quick_params();
        let masks = [
            FeatureMask::parse("rf1").unwrap(),
            FeatureMask::all(),
            FeatureMask::parse("all-minus-rf4").unwrap(),
            FeatureMask::parse("rf4").unwrap(),
            FeatureMask::parse("rf2+rf3").unwrap(),
        ];
        let report = run_ablation(&g, &masks, &[0.4], 5, &params, 17).unwrap();
        let groups: std::collections::BTreeSet<String> =
            report.rows.iter().map(|r| r.mask.clone()).collect();
        assert_eq!(groups.len(), 5);

        // mask=all reproduces the default mgb run bit for bit
        let full = run_experiment(&g, &[ModelKind::Mgb], &[0.4], 5, &params, 17).unwrap();
        let ablation_all: Vec<&EvalRow> =
            report.rows.iter().filter(|r| r.mask == "all").collect();
        assert_eq!(ablation_all.len(), full.rows.len());
        for (a, b) in ablation_all.iter().zip(&full.rows) {
            assert_eq!(a.rmse.to_bits(), b.rmse.to_bits());
        }
    }

    #[test]
    fn invalid_fractions_are_rejected() {
        let g = experiment_graph(30, None);
        let params = quick_params();
        assert!(run_experiment(&g, &[ModelKind::Gb], &[0.0], 5, &params, 0).is_err());
        assert!(run_experiment(&g, &[ModelKind::Gb], &[1.0], 5, &params, 0).is_err());
        assert!(run_experiment(&g, &[ModelKind::Gb], &[0.95], 5, &params, 0).is_err());
    }

    #[test]
    fn partially_labeled_experiment_graph_is_rejected() {
        let mut labels: Vec<Option<f64>> = (0..20).map(|i| Some(i as f64)).collect();
        labels[3] = None;
        let attrs: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64]).collect();
        let g = graph_with_attrs(&attrs, &labels, &[(0, 1)]);
        assert!(run_experiment(&g, &[ModelKind::Gb], &[0.4], 5, &quick_params(), 0).is_err());
    }

    #[test]
    fn train_fold_count_rounds_correctly() {
        assert_eq!(train_fold_count(0.2, 5).unwrap(), 1);
        assert_eq!(train_fold_count(0.4, 5).unwrap(), 2);
        assert_eq!(train_fold_count(0.6, 5).unwrap(), 3);
        assert_eq!(train_fold_count(0.8, 5).unwrap(), 4);
        assert!(train_fold_count(0.9, 5).is_err());
    }

    #[test]
    fn workers_setting_does_not_change_results() {
        let g = experiment_graph(30, None);
        let sequential = HarnessParams {
            workers: 1,
            ..quick_params()
        };
        let parallel = HarnessParams {
            workers: 2,
            ..quick_params()
        };
        let a = run_experiment(&g, &[ModelKind::Mgb], &[0.4], 5, &sequential, 23).unwrap();
        let b = run_experiment(&g, &[ModelKind::Mgb], &[0.4], 5, &parallel, 23).unwrap();
        assert_eq!(a.report_csv_without_timing(), b.report_csv_without_timing());
    }
}

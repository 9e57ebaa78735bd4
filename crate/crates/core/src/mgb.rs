//! The collective-inference boosting loop.
//!
//! Training alternates tree fitting with label re-estimation: fit the
//! initial tree on relational features computed from the labels, estimate
//! every node's value by repeatedly hiding a random slice of the training
//! graph and running staged collective inference, then fit each residual
//! tree against targets and features derived from those refreshed estimates.
//!
//! The per-trial hide sets cover every node at least once: after drawing
//! `trials` random hide sets of the configured size, any node that was never
//! hidden is added to the last trial's hide set. A node hidden in several
//! trials receives the average of its trial estimates.

use std::time::Instant;

use crate::boosting::{BoostedModel, FeatureSchema, ModelKind};
use crate::collective::{ica2_masked, CiOptions, CiOutcome};
use crate::error::{Error, Result};
use crate::graph::{random_known_unknown_split, AttributedGraph};
use crate::matrix::Matrix;
use crate::relfeat::{assemble_features, FeatureMask, NeighborMode, StageState};
use crate::seed::{derive, hash_tag};
use crate::stats;
use crate::tree::fit_tree;

/// Training hyperparameters. The defaults are the reference configuration:
/// 10 boosting rounds, trees capped at 5 leaves, 3 estimation trials hiding
/// 20% of the training graph each, and 50 collective-inference sweeps.
#[derive(Debug, Clone, Copy)]
pub struct MgbConfig {
    pub boost_rounds: usize,
    pub max_leaves: usize,
    pub trials: usize,
    pub known_frac: f64,
    pub ci_iters: usize,
    pub mask: FeatureMask,
}

impl Default for MgbConfig {
    fn default() -> Self {
        MgbConfig {
            boost_rounds: 10,
            max_leaves: 5,
            trials: 3,
            known_frac: 0.8,
            ci_iters: 50,
            mask: FeatureMask::all(),
        }
    }
}

/// One row of the training log.
#[derive(Debug, Clone)]
pub struct StageLogRow {
    pub stage: usize,
    pub train_rmse: f64,
    pub mean_abs_residual: f64,
    pub seconds: f64,
}

/// Seed of the estimation pass that follows stage `stage`; exposed so the
/// bookkeeping can be replayed externally.
pub fn stage_ci_seed(seed: u64, stage: usize) -> u64 {
    derive(seed, &[hash_tag("mgb-stage-ci"), stage as u64])
}

fn trial_hidden_sets(
    g: &AttributedGraph,
    trials: usize,
    known_frac: f64,
    seed: u64,
) -> Result<Vec<Vec<bool>>> {
    if trials < 1 {
        return Err(Error::invalid("trial count must be at least 1"));
    }
    let n = g.n_nodes();
    let mut sets = Vec::with_capacity(trials);
    for t in 0..trials {
        let (_, hidden_nodes) =
            random_known_unknown_split(g, known_frac, derive(seed, &[hash_tag("hide"), t as u64]))?;
        let mut hidden = vec![false; n];
        for i in hidden_nodes {
            hidden[i] = true;
        }
        sets.push(hidden);
    }
    let mut covered = vec![false; n];
    for s in &sets {
        for (c, &h) in covered.iter_mut().zip(s) {
            *c |= h;
        }
    }
    let last = sets.last_mut().expect("trials >= 1");
    for (slot, &c) in last.iter_mut().zip(&covered) {
        if !c {
            *slot = true;
        }
    }
    if last.iter().all(|&h| h) {
        let needed = (1.0 / (1.0 - known_frac)).ceil() as usize;
        return Err(Error::invalid(format!(
            "trials={trials} with known_frac={known_frac} cannot hide every node at least once \
             while keeping a nonempty known set (disjoint coverage would need trials >= {needed})"
        )));
    }
    Ok(sets)
}

/// Per-node label estimates obtained by hiding random slices of the fully
/// labeled graph and running staged collective inference with `model`; nodes
/// hidden in several trials get the average of their estimates. Every node
/// is hidden at least once.
pub fn ci_label_estimates(
    g: &AttributedGraph,
    model: &BoostedModel,
    trials: usize,
    known_frac: f64,
    ci_iters: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if !g.unknown_nodes().is_empty() {
        return Err(Error::invalid("estimation graph must be fully labeled"));
    }
    let hidden_sets = trial_hidden_sets(g, trials, known_frac, seed)?;
    let mut per_node: Vec<Vec<f64>> = vec![Vec::new(); g.n_nodes()];
    for (t, hidden) in hidden_sets.iter().enumerate() {
        let visible: Vec<bool> = hidden.iter().map(|&h| !h).collect();
        let opts = CiOptions::new(ci_iters, derive(seed, &[hash_tag("trial-ica2"), t as u64]));
        let outcome = ica2_masked(g, model, Some(&visible), &opts)?;
        for (node, pred) in outcome.predictions {
            per_node[node].push(pred);
        }
    }
    Ok(per_node.iter().map(|vals| stats::mean(vals)).collect())
}

fn assemble_training_matrix(
    g: &AttributedGraph,
    stage: usize,
    state: &StageState,
    mask: FeatureMask,
) -> Result<Matrix> {
    let mut x = Matrix::with_cols(g.attr_count() + mask.count());
    for i in 0..g.n_nodes() {
        let row = assemble_features(g, i, stage, state, NeighborMode::ObservedOnly, mask)?;
        x.push_row(&row);
    }
    Ok(x)
}

fn validate_training_graph(g: &AttributedGraph, cfg: &MgbConfig) -> Result<Vec<f64>> {
    let unknown = g.unknown_nodes();
    if !unknown.is_empty() {
        return Err(Error::invalid(format!(
            "mgb training graph must be fully labeled ({} unlabeled nodes)",
            unknown.len()
        )));
    }
    if !(cfg.known_frac > 0.0 && cfg.known_frac < 1.0) {
        return Err(Error::invalid(format!(
            "known fraction must lie strictly between 0 and 1, got {}",
            cfg.known_frac
        )));
    }
    if cfg.trials < 1 {
        return Err(Error::invalid("trial count must be at least 1"));
    }
    if cfg.ci_iters < 1 {
        return Err(Error::invalid("iteration budget must be at least 1"));
    }
    if cfg.mask.count() == 0 && g.attr_count() == 0 {
        return Err(Error::invalid(
            "empty feature mask combined with zero attributes leaves nothing to split on",
        ));
    }
    Ok((0..g.n_nodes()).map(|i| g.label(i).unwrap()).collect())
}

pub fn fit_mgb(g: &AttributedGraph, cfg: &MgbConfig, seed: u64) -> Result<BoostedModel> {
    fit_mgb_detailed(g, cfg, seed).map(|(model, _)| model)
}

/// Fit and also return the per-stage training log.
pub fn fit_mgb_detailed(
    g: &AttributedGraph,
    cfg: &MgbConfig,
    seed: u64,
) -> Result<(BoostedModel, Vec<StageLogRow>)> {
    let y = validate_training_graph(g, cfg)?;
    let n = g.n_nodes();
    let n_stages = cfg.boost_rounds + 1;
    let schema = FeatureSchema::mgb(g.attr_count(), cfg.mask);
    let mut log = Vec::with_capacity(n_stages);

    // stage 0: features from the labels themselves
    let started = Instant::now();
    let mut state = StageState::new(n, n_stages, y.iter().map(|&v| Some(v)).collect());
    for (i, &yi) in y.iter().enumerate() {
        state.set_residual(i, 0, yi); // the full target plays the stage-0 residual
    }
    let x0 = assemble_training_matrix(g, 0, &state, cfg.mask)?;
    let h0 = fit_tree(&x0, &y, cfg.max_leaves)?;
    let mut model = BoostedModel {
        kind: ModelKind::Mgb,
        max_leaves: cfg.max_leaves,
        stages: vec![h0],
        schemas: vec![schema.clone()],
    };
    let mut estimates = ci_label_estimates(
        g,
        &model,
        cfg.trials,
        cfg.known_frac,
        cfg.ci_iters,
        stage_ci_seed(seed, 0),
    )?;
    log.push(StageLogRow {
        stage: 0,
        train_rmse: rmse_of(&estimates, &y),
        mean_abs_residual: y.iter().map(|v| v.abs()).sum::<f64>() / n as f64,
        seconds: started.elapsed().as_secs_f64(),
    });

    let mut prev_residuals = y.clone(); // stage-0 residuals
    for m in 1..=cfg.boost_rounds {
        let started = Instant::now();
        let current: Vec<f64> = y.iter().zip(&estimates).map(|(t, e)| t - e).collect();

        let mut state = StageState::new(n, n_stages, y.iter().map(|&v| Some(v)).collect());
        for i in 0..n {
            state.set_residual(i, m, current[i]);
            state.set_residual(i, m - 1, prev_residuals[i]);
            state.set_rf4_override(i, estimates[i]);
        }
        let xm = assemble_training_matrix(g, m, &state, cfg.mask)?;
        let hm = fit_tree(&xm, &current, cfg.max_leaves)?;
        model.stages.push(hm);
        model.schemas.push(schema.clone());

        estimates = ci_label_estimates(
            g,
            &model,
            cfg.trials,
            cfg.known_frac,
            cfg.ci_iters,
            stage_ci_seed(seed, m),
        )?;
        log.push(StageLogRow {
            stage: m,
            train_rmse: rmse_of(&estimates, &y),
            mean_abs_residual: current.iter().map(|v| v.abs()).sum::<f64>() / n as f64,
            seconds: started.elapsed().as_secs_f64(),
        });
        prev_residuals = current;
    }

    Ok((model, log))
}

/// Transductive prediction: staged collective inference over the full graph.
pub fn predict_mgb(
    g: &AttributedGraph,
    model: &BoostedModel,
    ci_iters: usize,
    seed: u64,
) -> Result<CiOutcome> {
    crate::collective::ica2(g, model, ci_iters, seed)
}

fn rmse_of(preds: &[f64], truth: &[f64]) -> f64 {
    let se: f64 = preds
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    (se / truth.len() as f64).sqrt()
}

pub fn write_stage_log<W: std::io::Write>(log: &[StageLogRow], mut w: W) -> Result<()> {
    writeln!(w, "stage,train_rmse,mean_abs_residual,seconds")?;
    for row in log {
        writeln!(
            w,
            "{},{},{},{:.3}",
            row.stage, row.train_rmse, row.mean_abs_residual, row.seconds
        )?;
    }
    Ok(())
}

//! Relational feature computation and per-stage feature assembly.
//!
//! Four relational columns extend a node's attribute vector:
//!
//! * `rf1` — median of the neighbors' labels (known nodes) or current
//!   cumulative predictions (unknown nodes, once initialized),
//! * `rf2` — median of the neighbors' stage-`m` residuals, where the
//!   stage-`m` residual is the target a stage-`m` tree predicts: the label
//!   minus the cumulative prediction through stage `m-1`. At stage 0 the
//!   full target plays the role of the residual,
//! * `rf3` — same channel one stage earlier; defined as 0 at stage 0,
//! * `rf4` — the node's own prediction by the model so far.
//!
//! A channel median over an empty available-neighbor set is 0, and `rf4`
//! before any prediction exists falls back to the median of the known
//! neighbors' labels (0 when there are none).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::stats::median_lower;

/// Which relational columns a model uses. Disabled columns are removed from
/// the schema entirely, so ablated models have smaller arity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureMask {
    pub rf1: bool,
    pub rf2: bool,
    pub rf3: bool,
    pub rf4: bool,
}

impl Default for FeatureMask {
    fn default() -> Self {
        FeatureMask::all()
    }
}

impl FeatureMask {
    pub fn all() -> Self {
        FeatureMask {
            rf1: true,
            rf2: true,
            rf3: true,
            rf4: true,
        }
    }

    pub fn none() -> Self {
        FeatureMask {
            rf1: false,
            rf2: false,
            rf3: false,
            rf4: false,
        }
    }

    pub fn count(&self) -> usize {
        usize::from(self.rf1) + usize::from(self.rf2) + usize::from(self.rf3) + usize::from(self.rf4)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.rf1 {
            out.push("rf1");
        }
        if self.rf2 {
            out.push("rf2");
        }
        if self.rf3 {
            out.push("rf3");
        }
        if self.rf4 {
            out.push("rf4");
        }
        out
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Self {
        let mut mask = FeatureMask::none();
        for n in names {
            match n.as_ref() {
                "rf1" => mask.rf1 = true,
                "rf2" => mask.rf2 = true,
                "rf3" => mask.rf3 = true,
                "rf4" => mask.rf4 = true,
                _ => {}
            }
        }
        mask
    }

    /// Parse a mask spec: `all`, `none`, `all-minus-rf4`, or `+`-joined
    /// feature names like `rf1` or `rf2+rf3`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("all") {
            return Ok(FeatureMask::all());
        }
        if spec.eq_ignore_ascii_case("none") {
            return Ok(FeatureMask::none());
        }
        if let Some(rest) = spec.strip_prefix("all-minus-") {
            let mut mask = FeatureMask::all();
            for part in rest.split('+') {
                match part.trim() {
                    "rf1" => mask.rf1 = false,
                    "rf2" => mask.rf2 = false,
                    "rf3" => mask.rf3 = false,
                    "rf4" => mask.rf4 = false,
                    other => return Err(Error::invalid(format!("unknown feature '{other}'"))),
                }
            }
            return Ok(mask);
        }
        let mut mask = FeatureMask::none();
        for part in spec.split('+') {
            match part.trim() {
                "rf1" => mask.rf1 = true,
                "rf2" => mask.rf2 = true,
                "rf3" => mask.rf3 = true,
                "rf4" => mask.rf4 = true,
                other => return Err(Error::invalid(format!("unknown feature '{other}'"))),
            }
        }
        Ok(mask)
    }
}

impl std::fmt::Display for FeatureMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if *self == FeatureMask::all() {
            return f.write_str("all");
        }
        if *self == FeatureMask::none() {
            return f.write_str("none");
        }
        f.write_str(&self.names().join("+"))
    }
}

/// Whether feature computation may read current estimates of unknown
/// neighbors, or only observed (known-labeled) ones. Bootstrap passes use
/// `ObservedOnly`; iterative sweeps use `WithEstimates`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborMode {
    ObservedOnly,
    WithEstimates,
}

/// Per-node inference state for staged models: one output slot per boosting
/// stage (slot 0 holds the class estimate, slots 1..=M residual estimates),
/// plus the true per-stage residuals of known nodes and an optional override
/// for the rf4 channel used during training.
#[derive(Debug, Clone)]
pub struct StageState {
    n_stages: usize,
    known_label: Vec<Option<f64>>,
    slots: Vec<f64>,
    written: Vec<bool>,
    residuals: Vec<f64>,
    residual_set: Vec<bool>,
    rf4_override: Vec<Option<f64>>,
}

impl StageState {
    pub fn new(n_nodes: usize, n_stages: usize, known_label: Vec<Option<f64>>) -> Self {
        assert_eq!(known_label.len(), n_nodes);
        assert!(n_stages >= 1);
        StageState {
            n_stages,
            known_label,
            slots: vec![0.0; n_nodes * n_stages],
            written: vec![false; n_nodes * n_stages],
            residuals: vec![0.0; n_nodes * n_stages],
            residual_set: vec![false; n_nodes * n_stages],
            rf4_override: vec![None; n_nodes],
        }
    }

    pub fn n_stages(&self) -> usize {
        self.n_stages
    }

    pub fn n_nodes(&self) -> usize {
        self.known_label.len()
    }

    pub fn is_known(&self, node: usize) -> bool {
        self.known_label[node].is_some()
    }

    pub fn known_label(&self, node: usize) -> Option<f64> {
        self.known_label[node]
    }

    #[inline]
    fn at(&self, node: usize, stage: usize) -> usize {
        node * self.n_stages + stage
    }

    pub fn write_slot(&mut self, node: usize, stage: usize, value: f64) {
        let i = self.at(node, stage);
        self.slots[i] = value;
        self.written[i] = true;
    }

    pub fn slot(&self, node: usize, stage: usize) -> f64 {
        self.slots[self.at(node, stage)]
    }

    pub fn slot_written(&self, node: usize, stage: usize) -> bool {
        self.written[self.at(node, stage)]
    }

    pub fn any_slot_written(&self, node: usize) -> bool {
        (0..self.n_stages).any(|m| self.written[self.at(node, m)])
    }

    /// Sum of all written stage outputs: the node's current prediction.
    pub fn cumulative(&self, node: usize) -> f64 {
        self.cumulative_upto(node, self.n_stages)
    }

    /// Sum of written stage outputs below `stage`.
    pub fn cumulative_upto(&self, node: usize, stage: usize) -> f64 {
        let mut acc = 0.0;
        for m in 0..stage.min(self.n_stages) {
            let i = self.at(node, m);
            if self.written[i] {
                acc += self.slots[i];
            }
        }
        acc
    }

    pub fn set_residual(&mut self, node: usize, stage: usize, value: f64) {
        let i = self.at(node, stage);
        self.residuals[i] = value;
        self.residual_set[i] = true;
    }

    pub fn residual(&self, node: usize, stage: usize) -> f64 {
        self.residuals[self.at(node, stage)]
    }

    pub fn residual_set(&self, node: usize, stage: usize) -> bool {
        self.residual_set[self.at(node, stage)]
    }

    pub fn set_rf4_override(&mut self, node: usize, value: f64) {
        self.rf4_override[node] = Some(value);
    }

    pub fn rf4_override(&self, node: usize) -> Option<f64> {
        self.rf4_override[node]
    }
}

/// Median of `channel(j)` over the available neighbors of `node`; 0 when no
/// neighbor is available.
pub fn rf_median_over_neighbors(
    g: &AttributedGraph,
    node: usize,
    channel: impl Fn(usize) -> f64,
    available: impl Fn(usize) -> bool,
) -> Result<f64> {
    if node >= g.n_nodes() {
        return Err(Error::invalid(format!(
            "node {node} not in graph of {} nodes",
            g.n_nodes()
        )));
    }
    let mut vals: Vec<f64> = g
        .neighbors(node)
        .iter()
        .map(|&j| j as usize)
        .filter(|&j| available(j))
        .map(channel)
        .collect();
    if vals.is_empty() {
        Ok(0.0)
    } else {
        Ok(median_lower(&mut vals))
    }
}

/// The node's target value as estimated by the model so far: the rf4
/// channel. Before any stage output exists the initialization rule applies:
/// median of the known neighbors' labels, 0 without known neighbors. During
/// training the collective-inference average overrides both.
///
/// A node without neighbors has no relational context at all; its entire
/// relational slice, rf4 included, stays pinned at 0 through every stage.
pub fn rf4_current_prediction(
    g: &AttributedGraph,
    state: &StageState,
    node: usize,
    upto_stage: usize,
) -> Result<f64> {
    if upto_stage > state.n_stages() {
        return Err(Error::invalid(format!(
            "stage {upto_stage} out of range for model with {} stages",
            state.n_stages()
        )));
    }
    if g.degree(node) == 0 {
        return Ok(0.0);
    }
    if let Some(v) = state.rf4_override(node) {
        return Ok(v);
    }
    let initialized = (0..upto_stage).any(|m| state.slot_written(node, m));
    if initialized {
        return Ok(state.cumulative_upto(node, upto_stage));
    }
    rf_median_over_neighbors(
        g,
        node,
        |j| state.known_label(j).unwrap_or(0.0),
        |j| state.is_known(j),
    )
}

fn label_channel(state: &StageState, mode: NeighborMode, j: usize) -> Option<f64> {
    if let Some(y) = state.known_label(j) {
        return Some(y);
    }
    if mode == NeighborMode::WithEstimates && state.any_slot_written(j) {
        return Some(state.cumulative(j));
    }
    None
}

fn residual_channel(state: &StageState, mode: NeighborMode, j: usize, stage: usize) -> Option<f64> {
    if state.is_known(j) {
        if state.residual_set(j, stage) {
            return Some(state.residual(j, stage));
        }
        return None;
    }
    if mode == NeighborMode::WithEstimates && state.slot_written(j, stage) {
        return Some(state.slot(j, stage));
    }
    None
}

/// Assemble the stage-`stage` feature vector for `node`:
/// `[x | rf1, rf2_stage, rf3_stage, rf4]` with disabled columns removed.
pub fn assemble_features(
    g: &AttributedGraph,
    node: usize,
    stage: usize,
    state: &StageState,
    mode: NeighborMode,
    mask: FeatureMask,
) -> Result<Vec<f64>> {
    if stage >= state.n_stages() {
        return Err(Error::invalid(format!(
            "stage {stage} out of range for model with {} stages",
            state.n_stages()
        )));
    }
    let mut out = Vec::with_capacity(g.attr_count() + mask.count());
    out.extend_from_slice(g.attr_row(node));
    if mask.rf1 {
        out.push(rf_median_over_neighbors(
            g,
            node,
            |j| label_channel(state, mode, j).unwrap_or(0.0),
            |j| label_channel(state, mode, j).is_some(),
        )?);
    }
    if mask.rf2 {
        out.push(rf_median_over_neighbors(
            g,
            node,
            |j| residual_channel(state, mode, j, stage).unwrap_or(0.0),
            |j| residual_channel(state, mode, j, stage).is_some(),
        )?);
    }
    if mask.rf3 {
        if stage == 0 {
            out.push(0.0);
        } else {
            out.push(rf_median_over_neighbors(
                g,
                node,
                |j| residual_channel(state, mode, j, stage - 1).unwrap_or(0.0),
                |j| residual_channel(state, mode, j, stage - 1).is_some(),
            )?);
        }
    }
    if mask.rf4 {
        out.push(rf4_current_prediction(g, state, node, stage)?);
    }
    Ok(out)
}

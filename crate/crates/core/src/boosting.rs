//! Squared-loss gradient boosting over feature matrices, plus assembly of
//! the attribute-only (`gb`) and static-relational (`rgb`) models.
//!
//! With loss `L(y, F) = 0.5 * (y - F)^2` the negative gradient equals the
//! residual `y - F` exactly, so every boosting stage fits a regression tree
//! to the residuals of the running sum. There is no shrinkage factor and no
//! global line search: per-region step lengths are absorbed into the median
//! leaf values of each stage tree.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::AttributedGraph;
use crate::matrix::Matrix;
use crate::relfeat::FeatureMask;
use crate::stats::median_lower;
use crate::tree::{fit_tree, RegressionTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Gb,
    Rgb,
    Mgb,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::Gb => "gb",
            ModelKind::Rgb => "rgb",
            ModelKind::Mgb => "mgb",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "gb" => Ok(ModelKind::Gb),
            "rgb" => Ok(ModelKind::Rgb),
            "mgb" => Ok(ModelKind::Mgb),
            other => Err(Error::invalid(format!("unknown model kind '{other}'"))),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Layout of one stage's feature vector: the attribute columns followed by
/// named relational columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureSchema {
    pub attr_count: usize,
    pub relational: Vec<String>,
}

impl FeatureSchema {
    pub fn plain(attr_count: usize) -> Self {
        FeatureSchema {
            attr_count,
            relational: Vec::new(),
        }
    }

    pub fn rgb(attr_count: usize) -> Self {
        FeatureSchema {
            attr_count,
            relational: vec!["rf1".to_string()],
        }
    }

    pub fn mgb(attr_count: usize, mask: FeatureMask) -> Self {
        FeatureSchema {
            attr_count,
            relational: mask.names().iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.attr_count + self.relational.len()
    }
}

/// An additive model: initial tree `h_0` plus residual trees `h_1..h_M`.
/// Prediction is the plain sum of all stage outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoostedModel {
    pub kind: ModelKind,
    pub max_leaves: usize,
    pub stages: Vec<RegressionTree>,
    pub schemas: Vec<FeatureSchema>,
}

impl BoostedModel {
    /// Number of boosting rounds M (stages beyond the initial tree).
    pub fn boost_rounds(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn n_stages(&self) -> usize {
        self.stages.len()
    }

    pub fn schema(&self, stage: usize) -> &FeatureSchema {
        &self.schemas[stage]
    }

    /// Relational feature mask recorded in the schemas (meaningful for mgb).
    pub fn mask(&self) -> FeatureMask {
        FeatureMask::from_names(&self.schemas[0].relational)
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::invalid("model has no stages"));
        }
        if self.stages.len() != self.schemas.len() {
            return Err(Error::invalid("schema count does not match stage count"));
        }
        for (i, (tree, schema)) in self.stages.iter().zip(&self.schemas).enumerate() {
            if tree.arity() != schema.arity() {
                return Err(Error::invalid(format!(
                    "stage {i}: tree arity {} does not match schema arity {}",
                    tree.arity(),
                    schema.arity()
                )));
            }
        }
        Ok(())
    }
}

/// Initialization of `F_0`: a depth-limited fitted tree (the default used by
/// all graph models), or the constant target mean of the classic formulation
/// (exposed for fidelity tests).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitStrategy {
    FittedTree,
    TargetMean,
}

fn fit_stages(
    x: &Matrix,
    y: &[f64],
    rounds: usize,
    max_leaves: usize,
    init: InitStrategy,
) -> Result<Vec<RegressionTree>> {
    if y.is_empty() {
        return Err(Error::invalid("cannot fit a boosted model on empty input"));
    }
    if let Some(bad) = y.iter().find(|v| !v.is_finite()) {
        return Err(Error::invalid(format!("non-finite target {bad}")));
    }
    let h0 = match init {
        InitStrategy::FittedTree => fit_tree(x, y, max_leaves)?,
        InitStrategy::TargetMean => {
            let mean = y.iter().sum::<f64>() / y.len() as f64;
            RegressionTree::constant(x.n_cols(), mean)
        }
    };
    let mut preds: Vec<f64> = (0..y.len()).map(|i| h0.predict(x.row(i))).collect::<Result<_>>()?;
    let mut stages = vec![h0];
    for _ in 0..rounds {
        let resid = residuals(y, &preds)?;
        let h = fit_tree(x, &resid, max_leaves)?;
        for (i, p) in preds.iter_mut().enumerate() {
            *p += h.predict(x.row(i))?;
        }
        stages.push(h);
    }
    Ok(stages)
}

/// Fit a gradient-boosted model with `rounds` residual stages on a plain
/// feature matrix. `F_0` is a fitted tree.
pub fn fit_gb(x: &Matrix, y: &[f64], rounds: usize, max_leaves: usize) -> Result<BoostedModel> {
    fit_gb_with_init(x, y, rounds, max_leaves, InitStrategy::FittedTree)
}

pub fn fit_gb_with_init(
    x: &Matrix,
    y: &[f64],
    rounds: usize,
    max_leaves: usize,
    init: InitStrategy,
) -> Result<BoostedModel> {
    let stages = fit_stages(x, y, rounds, max_leaves, init)?;
    let schemas = vec![FeatureSchema::plain(x.n_cols()); stages.len()];
    Ok(BoostedModel {
        kind: ModelKind::Gb,
        max_leaves,
        stages,
        schemas,
    })
}

/// Elementwise residuals `y - preds`; the negative gradient of
/// `0.5 * (y - F)^2` with respect to the predictions.
pub fn residuals(y: &[f64], preds: &[f64]) -> Result<Vec<f64>> {
    if y.len() != preds.len() {
        return Err(Error::invalid(format!(
            "residuals: {} targets vs {} predictions",
            y.len(),
            preds.len()
        )));
    }
    Ok(y.iter().zip(preds).map(|(t, p)| t - p).collect())
}

/// Sum of all stage outputs.
pub fn predict_boosted(model: &BoostedModel, x: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for tree in &model.stages {
        acc += tree.predict(x)?;
    }
    Ok(acc)
}

/// Median of the known neighbors' labels, per node; 0 for nodes without
/// known neighbors. This is the static relational column used by `rgb`.
pub fn rgb_static_rf1(g: &AttributedGraph) -> Vec<f64> {
    (0..g.n_nodes())
        .map(|i| {
            let mut vals: Vec<f64> = g
                .neighbors(i)
                .iter()
                .filter_map(|&j| g.label(j as usize))
                .collect();
            if vals.is_empty() {
                0.0
            } else {
                median_lower(&mut vals)
            }
        })
        .collect()
}

/// Fit the relational baseline on a fully labeled training graph: gradient
/// boosting over `[x, rf1]` where rf1 is computed once from the neighbors'
/// labels. Prediction on a partially labeled graph goes through ICA.
pub fn fit_rgb(g: &AttributedGraph, rounds: usize, max_leaves: usize) -> Result<BoostedModel> {
    let unknown = g.unknown_nodes();
    if !unknown.is_empty() {
        return Err(Error::invalid(format!(
            "rgb training graph must be fully labeled ({} unlabeled nodes)",
            unknown.len()
        )));
    }
    let rf1 = rgb_static_rf1(g);
    let mut x = Matrix::with_cols(g.attr_count() + 1);
    let mut row = Vec::with_capacity(g.attr_count() + 1);
    for i in 0..g.n_nodes() {
        row.clear();
        row.extend_from_slice(g.attr_row(i));
        row.push(rf1[i]);
        x.push_row(&row);
    }
    let y: Vec<f64> = (0..g.n_nodes()).map(|i| g.label(i).unwrap()).collect();
    let stages = fit_stages(&x, &y, rounds, max_leaves, InitStrategy::FittedTree)?;
    let schemas = vec![FeatureSchema::rgb(g.attr_count()); stages.len()];
    Ok(BoostedModel {
        kind: ModelKind::Rgb,
        max_leaves,
        stages,
        schemas,
    })
}

const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    model: BoostedModel,
}

pub fn model_to_json(model: &BoostedModel) -> Result<String> {
    let file = ModelFile {
        format_version: MODEL_FORMAT_VERSION,
        model: model.clone(),
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn model_from_json(json: &str) -> Result<BoostedModel> {
    let file: ModelFile = serde_json::from_str(json)?;
    if file.format_version != MODEL_FORMAT_VERSION {
        return Err(Error::invalid(format!(
            "unsupported model format version {}",
            file.format_version
        )));
    }
    file.model.validate()?;
    Ok(file.model)
}

pub fn save_model(model: &BoostedModel, path: &Path) -> Result<()> {
    std::fs::write(path, model_to_json(model)?)?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<BoostedModel> {
    let json = std::fs::read_to_string(path)?;
    model_from_json(&json)
}

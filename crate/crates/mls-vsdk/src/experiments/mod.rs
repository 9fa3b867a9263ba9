//! Benchmark targets, error metrics, convergence-rate fitting and the
//! refinement-sweep experiment runner.

mod problems;
mod report;

pub use problems::{
    eval_grid, f1_scale_function, f2_scale_function, f3_scale_function, problem, truth_value,
    ProblemId, TestProblem,
};
pub use report::{format_f64, read_level_rows, ExperimentReport, FailedLevel, LevelResult};

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{fill_distance, halton_nodes, uniform_nodes, NodeSet};
use crate::mls::{MlsConfig, MlsEngine, PolynomialBasis};
use crate::scaling::ScaleFunction;
use crate::weights::WeightSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Uniform,
    Halton,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Vsdk,
    Classic,
}

/// A full refinement sweep: one approximation problem run over increasing
/// node counts with a per-level shape-parameter schedule.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub problem: ProblemId,
    pub node_kind: NodeKind,
    pub sizes: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub weight: WeightSpec,
    pub degree: usize,
    pub stencil_size: usize,
    pub variant: Variant,
    /// Boundary-perturbation scale for the noisy-partition experiment;
    /// zero leaves the partition exact.
    pub noise_sigma: f64,
    pub seed: u64,
    /// Overrides the problem's built-in scale function when present.
    pub scale_fn: Option<ScaleFunction>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::invalid("sizes must be nonempty"));
        }
        if self.sizes.len() != self.epsilons.len() {
            return Err(Error::invalid(format!(
                "sizes ({}) and epsilons ({}) must have equal length",
                self.sizes.len(),
                self.epsilons.len()
            )));
        }
        if !self.sizes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("sizes must be strictly increasing"));
        }
        if self.noise_sigma < 0.0 {
            return Err(Error::invalid("noise_sigma must be nonnegative"));
        }
        self.weight.validate()
    }
}

/// Root-mean-square error over paired predictions and truths.
pub fn rmse(pred: &[f64], truth: &[f64]) -> Result<f64> {
    check_paired(pred, truth)?;
    let sum: f64 = pred
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t) * (p - t))
        .sum();
    Ok((sum / pred.len() as f64).sqrt())
}

/// Maximum absolute error over paired predictions and truths.
pub fn mae(pred: &[f64], truth: &[f64]) -> Result<f64> {
    check_paired(pred, truth)?;
    Ok(pred
        .iter()
        .zip(truth)
        .map(|(p, t)| (p - t).abs())
        .fold(0.0, f64::max))
}

fn check_paired(pred: &[f64], truth: &[f64]) -> Result<()> {
    if pred.is_empty() || pred.len() != truth.len() {
        return Err(Error::invalid(format!(
            "metric inputs must be nonempty and of equal length ({} vs {})",
            pred.len(),
            truth.len()
        )));
    }
    Ok(())
}

/// Generates the data sites of one refinement level.
pub fn level_nodes(p: &TestProblem, kind: NodeKind, size: usize) -> Result<NodeSet> {
    match kind {
        NodeKind::Halton => halton_nodes(size, p.dim, &p.domain),
        NodeKind::Uniform => {
            let per_axis = match p.dim {
                1 => size,
                2 => {
                    let k = (size as f64).sqrt().round() as usize;
                    if k * k != size {
                        return Err(Error::invalid(format!(
                            "uniform 2D level size {size} is not a perfect square"
                        )));
                    }
                    k
                }
                d => {
                    return Err(Error::invalid(format!(
                        "uniform node generation not defined for dim {d}"
                    )))
                }
            };
            let counts = vec![per_axis; p.dim];
            uniform_nodes(&p.domain, &counts)
        }
    }
}

/// Runs the sweep: per level, generate nodes, sample the truth, evaluate
/// the approximant on the problem's grid and record metrics. Levels whose
/// solve fails are excluded from the rate fit and noted in the report.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let prob = problem(spec.problem);
    let base_scale = spec.scale_fn.clone().unwrap_or_else(|| prob.scale_fn.clone());
    let scale_fn = match spec.variant {
        Variant::Classic => None,
        Variant::Vsdk => {
            if spec.noise_sigma > 0.0 {
                Some(base_scale.perturb(spec.noise_sigma, spec.seed)?)
            } else {
                Some(base_scale)
            }
        }
    };

    let grid = eval_grid(&prob);
    let truth: Vec<f64> = grid
        .points()
        .iter()
        .map(|z| truth_value(spec.problem, z))
        .collect::<Result<_>>()?;

    let mut report = ExperimentReport::new(spec);
    for (level, (&size, &eps)) in spec.sizes.iter().zip(&spec.epsilons).enumerate() {
        let start = Instant::now();
        match run_level(spec, &prob, scale_fn.as_ref(), &grid, &truth, size, eps) {
            Ok((h, level_rmse, level_mae)) => {
                report.levels.push(LevelResult {
                    level,
                    n_nodes: size,
                    epsilon: eps,
                    h,
                    rmse: level_rmse,
                    mae: level_mae,
                    wall_time_s: start.elapsed().as_secs_f64(),
                });
            }
            Err(e) => {
                report.failed.push(FailedLevel {
                    level,
                    n_nodes: size,
                    reason: e.to_string(),
                });
            }
        }
    }
    if report.levels.len() >= 2 {
        report.rate_h = fit_rate(&report).ok();
        report.rate_n = fit_rate_n(&report).ok();
    }
    Ok(report)
}

fn run_level(
    spec: &ExperimentSpec,
    prob: &TestProblem,
    scale_fn: Option<&ScaleFunction>,
    grid: &NodeSet,
    truth: &[f64],
    size: usize,
    eps: f64,
) -> Result<(f64, f64, f64)> {
    let nodes = level_nodes(prob, spec.node_kind, size)?;
    let values: Vec<f64> = nodes
        .points()
        .iter()
        .map(|x| truth_value(spec.problem, x))
        .collect::<Result<_>>()?;
    let nodes = nodes.with_values(values)?;

    let mut weight = spec.weight.clone();
    weight.epsilon = eps;
    let basis = PolynomialBasis::new(prob.dim, spec.degree)?;
    let mut cfg = MlsConfig::new(basis, weight).with_stencil_size(spec.stencil_size);
    cfg.scale_fn = scale_fn.cloned();

    let engine = MlsEngine::new(&cfg, &nodes)?;
    let pred = engine.evaluate_many(grid.points())?;
    let h = fill_distance(&nodes, grid)?;
    Ok((h, rmse(&pred, truth)?, mae(&pred, truth)?))
}

/// Least-squares slope of `log rmse` against `log h` over the successful
/// levels; `rmse ∝ h^2` yields 2.0 exactly. Zero-RMSE levels are excluded.
pub fn fit_rate(report: &ExperimentReport) -> Result<f64> {
    fit_rate_levels(&report.levels)
}

/// The alternate fit against `N^{-1/d}` in place of `h`.
pub fn fit_rate_n(report: &ExperimentReport) -> Result<f64> {
    fit_rate_n_levels(&report.levels, report.problem.dim())
}

pub fn fit_rate_levels(levels: &[LevelResult]) -> Result<f64> {
    fit_loglog(levels.iter().map(|l| (l.h, l.rmse)))
}

pub fn fit_rate_n_levels(levels: &[LevelResult], dim: usize) -> Result<f64> {
    let d = dim as f64;
    fit_loglog(levels.iter().map(|l| ((l.n_nodes as f64).powf(-1.0 / d), l.rmse)))
}

/// Estimates the problem dimension from the slope of `log h` against
/// `log N`, which is `-1/d` for quasi-uniform refinements. Used when only
/// a report CSV is available.
pub fn infer_dim(levels: &[LevelResult]) -> Result<usize> {
    let slope = fit_loglog(levels.iter().map(|l| (l.n_nodes as f64, l.h)))?;
    if slope >= 0.0 {
        return Err(Error::invalid("fill distance does not shrink with N"));
    }
    Ok((-1.0 / slope).round().max(1.0) as usize)
}

fn fit_loglog(points: impl Iterator<Item = (f64, f64)>) -> Result<f64> {
    let data: Vec<(f64, f64)> = points
        .filter(|&(h, e)| h > 0.0 && e > 0.0)
        .map(|(h, e)| (h.ln(), e.ln()))
        .collect();
    if data.len() < 2 {
        return Err(Error::invalid("rate fit needs at least two positive levels"));
    }
    let n = data.len() as f64;
    let sx: f64 = data.iter().map(|p| p.0).sum();
    let sy: f64 = data.iter().map(|p| p.1).sum();
    let sxx: f64 = data.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = data.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return Err(Error::invalid("rate fit needs distinct abscissae"));
    }
    let slope = (n * sxy - sx * sy) / denom;
    Ok(slope)
}

//! The moving least squares engine: shifted and scaled polynomial basis,
//! per-evaluation-point weighted solve for the shape functions, and
//! approximant evaluation.
//!
//! The shape functions come from the Backus-Gilbert formulation: minimize
//! `1/2 sum alpha_i^2 / w_i` subject to polynomial reproduction, which gives
//! `alpha = W P^T (P W P^T)^{-1} p(x)` with the basis shifted to the
//! evaluation point so that `p(x) = e_1`.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{KdTree, NodeSet, Point, Stencil};
use crate::scaling::{augment, ScaleFunction};
use crate::weights::{vsdk_weight, WeightFamily, WeightSpec, WeightValue};

/// Multi-index basis of `P^d_l` in graded-lexicographic order, constant
/// term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialBasis {
    dim: usize,
    degree: usize,
    exponents: Vec<Vec<u32>>,
}

impl PolynomialBasis {
    pub fn new(dim: usize, degree: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("basis dimension must be positive"));
        }
        let mut exponents = Vec::new();
        for total in 0..=degree as u32 {
            let mut grade = Vec::new();
            enumerate_exponents(dim, total, &mut vec![0; dim], 0, &mut grade);
            // Within a grade, higher power on earlier axes first:
            // (0,0), (1,0), (0,1), (2,0), (1,1), (0,2), ...
            grade.sort_by(|a, b| b.cmp(a));
            exponents.extend(grade);
        }
        Ok(PolynomialBasis { dim, degree, exponents })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Q = C(degree + dim, dim).
    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Evaluates the basis shifted to `center` and scaled by `scale`:
    /// entry k is `prod_j ((point_j - center_j) / scale)^{e_kj}`.
    pub fn eval(&self, center: &Point, scale: f64, point: &Point) -> Result<Vec<f64>> {
        if center.dim() != self.dim || point.dim() != self.dim {
            return Err(Error::invalid("eval_basis: dimension mismatch"));
        }
        if !(scale > 0.0) {
            return Err(Error::invalid("eval_basis: scale must be positive"));
        }
        let local: Vec<f64> = point
            .coords()
            .iter()
            .zip(center.coords())
            .map(|(p, c)| (p - c) / scale)
            .collect();
        Ok(self
            .exponents
            .iter()
            .map(|e| {
                e.iter()
                    .zip(&local)
                    .map(|(&k, &t)| t.powi(k as i32))
                    .product()
            })
            .collect())
    }
}

fn enumerate_exponents(
    dim: usize,
    remaining: u32,
    current: &mut Vec<u32>,
    axis: usize,
    out: &mut Vec<Vec<u32>>,
) {
    if axis == dim - 1 {
        current[axis] = remaining;
        out.push(current.clone());
        current[axis] = 0;
        return;
    }
    for k in 0..=remaining {
        current[axis] = k;
        enumerate_exponents(dim, remaining - k, current, axis + 1, out);
        current[axis] = 0;
    }
}

/// Which metric drives the nearest-neighbor stencil selection. The paper's
/// experiments scale weights only, so `Euclidean` is the default; the
/// augmented option selects neighbors in `R^{d+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StencilMetric {
    Euclidean,
    Augmented,
}

impl Default for StencilMetric {
    fn default() -> Self {
        StencilMetric::Euclidean
    }
}

/// Configuration of one MLS approximant.
#[derive(Clone, Debug)]
pub struct MlsConfig {
    pub basis: PolynomialBasis,
    pub stencil_size: usize,
    pub weight: WeightSpec,
    /// Absent scale function means classic MLS.
    pub scale_fn: Option<ScaleFunction>,
    pub stencil_metric: StencilMetric,
    /// On a singular local system, retry once with a doubled stencil.
    pub grow_on_singular: bool,
}

impl MlsConfig {
    /// Stencil size defaults to `2 Q`.
    pub fn new(basis: PolynomialBasis, weight: WeightSpec) -> Self {
        let stencil_size = 2 * basis.size();
        MlsConfig {
            basis,
            stencil_size,
            weight,
            scale_fn: None,
            stencil_metric: StencilMetric::default(),
            grow_on_singular: true,
        }
    }

    pub fn with_scale_fn(mut self, sf: ScaleFunction) -> Self {
        self.scale_fn = Some(sf);
        self
    }

    pub fn with_stencil_size(mut self, n: usize) -> Self {
        self.stencil_size = n;
        self
    }
}

/// One local weighted least-squares solve.
#[derive(Clone, Debug)]
pub struct LocalSystem {
    pub eval_point: Point,
    pub stencil: Stencil,
    /// Q x n basis matrix at the stencil nodes.
    pub basis_matrix: DMatrix<f64>,
    /// Diagonal of the weight matrix (regularization included).
    pub weights: Vec<f64>,
    /// Lagrange multipliers lambda(x).
    pub lagrange: DVector<f64>,
    /// Shape functions alpha(x), aligned with `stencil.indices`.
    pub shape: Vec<f64>,
    /// Basis scaling length (the stencil radius).
    pub scale: f64,
}

/// Relative distance below which a singular weight counts as an exact hit
/// on a data site.
pub const EXACT_HIT_RELATIVE_THRESHOLD: f64 = 1e-12;

/// Residual bound on the reproduction constraint above which the fallback
/// least-squares solve is declared singular.
const SINGULAR_RESIDUAL_TOLERANCE: f64 = 1e-8;

/// An MLS approximant over a fixed node set. Construction builds the
/// spatial index once; evaluation is read-only and thread-safe.
pub struct MlsEngine<'a> {
    cfg: &'a MlsConfig,
    nodes: &'a NodeSet,
    tree: KdTree,
}

impl<'a> MlsEngine<'a> {
    pub fn new(cfg: &'a MlsConfig, nodes: &'a NodeSet) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::invalid("MLS over an empty node set"));
        }
        if nodes.dim() != cfg.basis.dim() {
            return Err(Error::invalid("node set and basis dimension mismatch"));
        }
        cfg.weight.validate()?;
        let coords: Vec<Vec<f64>> = match (cfg.stencil_metric, &cfg.scale_fn) {
            (StencilMetric::Augmented, Some(sf)) => {
                nodes.points().iter().map(|p| augment(sf, p)).collect()
            }
            _ => nodes.points().iter().map(|p| p.coords().to_vec()).collect(),
        };
        let tree = KdTree::build(coords);
        Ok(MlsEngine { cfg, nodes, tree })
    }

    fn stencil(&self, x: &Point, n: usize) -> Stencil {
        match (self.cfg.stencil_metric, &self.cfg.scale_fn) {
            (StencilMetric::Augmented, Some(sf)) => self.tree.knn(&augment(sf, x), n),
            _ => self.tree.knn(x.coords(), n),
        }
    }

    /// Solves for the shape functions at `x`. A singular local system is
    /// retried once with a doubled stencil; if that is still singular, the
    /// minimum-norm least-squares solution is accepted as a best effort.
    /// The latter arises when the nodes sharing the evaluation point's
    /// partition region are not unisolvent (e.g. a thin region holding a
    /// single grid column), where no amount of growth can help and exact
    /// polynomial reproduction is unattainable.
    pub fn solve_shape_functions(&self, x: &Point) -> Result<LocalSystem> {
        match self.solve_with_stencil(x, self.cfg.stencil_size, false) {
            Err(Error::SingularSystem { .. })
                if self.cfg.grow_on_singular
                    && self.cfg.stencil_size < self.nodes.len() =>
            {
                let grown = 2 * self.cfg.stencil_size;
                match self.solve_with_stencil(x, grown, false) {
                    Err(Error::SingularSystem { .. }) => {
                        self.solve_with_stencil(x, grown, true)
                    }
                    other => other,
                }
            }
            other => other,
        }
    }

    fn solve_with_stencil(
        &self,
        x: &Point,
        n: usize,
        accept_degenerate: bool,
    ) -> Result<LocalSystem> {
        let cfg = self.cfg;
        let stencil = self.stencil(x, n);
        let n = stencil.indices.len();
        let q = cfg.basis.size();
        let scale = if stencil.radius > 0.0 { stencil.radius } else { 1.0 };

        // Exact-hit rule for the singular weight family: an evaluation point
        // (numerically) on a data site takes that site's value verbatim.
        if cfg.weight.family == WeightFamily::LevinSingular
            && stencil.distances[0] < EXACT_HIT_RELATIVE_THRESHOLD * scale
        {
            return Ok(self.indicator_system(x, stencil, scale));
        }

        let sf = cfg.scale_fn.as_ref();
        let mut weights = Vec::with_capacity(n);
        for &i in &stencil.indices {
            let w = vsdk_weight(&cfg.weight, sf, x, self.nodes.point(i))?;
            match w {
                WeightValue::Finite(v) => weights.push(v),
                // A singular weight overflowed before the distance threshold
                // tripped; treat it as a hit as well.
                WeightValue::ExactHit => {
                    return Ok(self.indicator_system(x, stencil, scale));
                }
            }
        }
        if cfg.weight.regularization > 0.0 {
            for w in &mut weights {
                *w += cfg.weight.regularization;
            }
        }

        let mut basis_matrix = DMatrix::zeros(q, n);
        for (col, &i) in stencil.indices.iter().enumerate() {
            let p = cfg.basis.eval(x, scale, self.nodes.point(i))?;
            for (row, v) in p.into_iter().enumerate() {
                basis_matrix[(row, col)] = v;
            }
        }

        // G = P W P^T, rhs = p(x) = e_1 for the shifted basis.
        let mut gram = DMatrix::zeros(q, q);
        for col in 0..n {
            let w = weights[col];
            if w == 0.0 {
                continue;
            }
            for r in 0..q {
                let wr = w * basis_matrix[(r, col)];
                for s in r..q {
                    gram[(r, s)] += wr * basis_matrix[(s, col)];
                }
            }
        }
        for r in 0..q {
            for s in 0..r {
                gram[(r, s)] = gram[(s, r)];
            }
        }
        let mut rhs = DVector::zeros(q);
        rhs[0] = 1.0;

        let pseudo_solve = |gram: &DMatrix<f64>| -> Option<DVector<f64>> {
            let svd = gram.clone().svd(true, true);
            let sigma_max = svd.singular_values.max();
            svd.solve(&rhs, f64::EPSILON * q as f64 * sigma_max.max(1.0)).ok()
        };
        let lagrange = match gram.clone().cholesky() {
            Some(chol) => chol.solve(&rhs),
            None => match pseudo_solve(&gram) {
                // Rank-revealing fallback for Gram matrices Cholesky rejects.
                Some(sol) => sol,
                None => {
                    return Err(Error::SingularSystem {
                        point: x.coords().to_vec(),
                        stencil: stencil.indices,
                    });
                }
            },
        };

        let compute_shape = |lagrange: &DVector<f64>| {
            let mut shape = vec![0.0; n];
            for (col, s) in shape.iter_mut().enumerate() {
                let mut acc = 0.0;
                for r in 0..q {
                    acc += basis_matrix[(r, col)] * lagrange[r];
                }
                *s = weights[col] * acc;
            }
            shape
        };
        // The reproduction constraint sum alpha_i p(x_i) = e_1 is the
        // ground truth of the solve; a rank-deficient stencil (e.g. the
        // nonzero-weight nodes all collinear in 2D) can slip through
        // Cholesky with a tiny pivot and produce garbage shape functions
        // that only this check catches.
        let residual_of = |shape: &[f64]| {
            let mut residual: f64 = 0.0;
            for r in 0..q {
                let mut acc = 0.0;
                for col in 0..n {
                    acc += basis_matrix[(r, col)] * shape[col];
                }
                residual = residual.max((acc - rhs[r]).abs());
            }
            residual
        };

        let mut shape = compute_shape(&lagrange);
        let mut lagrange = lagrange;
        if residual_of(&shape) > SINGULAR_RESIDUAL_TOLERANCE {
            if !accept_degenerate {
                return Err(Error::SingularSystem {
                    point: x.coords().to_vec(),
                    stencil: stencil.indices,
                });
            }
            // Best effort: project the constraint onto the numerically
            // attainable subspace. The shape functions then reproduce
            // polynomials only within the stencil's rank, which is the
            // most the data supports.
            match pseudo_solve(&gram) {
                Some(sol) => {
                    shape = compute_shape(&sol);
                    lagrange = sol;
                }
                None => {
                    return Err(Error::SingularSystem {
                        point: x.coords().to_vec(),
                        stencil: stencil.indices,
                    });
                }
            }
        }

        Ok(LocalSystem {
            eval_point: x.clone(),
            stencil,
            basis_matrix,
            weights,
            lagrange,
            shape,
            scale,
        })
    }

    fn indicator_system(&self, x: &Point, stencil: Stencil, scale: f64) -> LocalSystem {
        let n = stencil.indices.len();
        let q = self.cfg.basis.size();
        let mut shape = vec![0.0; n];
        shape[0] = 1.0;
        LocalSystem {
            eval_point: x.clone(),
            stencil,
            basis_matrix: DMatrix::zeros(q, n),
            weights: vec![0.0; n],
            lagrange: DVector::zeros(q),
            shape,
            scale,
        }
    }

    /// Evaluates the approximant `s(x) = sum alpha_i f_i` at `x`.
    pub fn evaluate(&self, x: &Point) -> Result<f64> {
        let values = self
            .nodes
            .values()
            .ok_or_else(|| Error::invalid("evaluate needs sampled node values"))?;
        let sys = self.solve_shape_functions(x)?;
        Ok(sys
            .shape
            .iter()
            .zip(&sys.stencil.indices)
            .map(|(a, &i)| a * values[i])
            .sum())
    }

    /// Elementwise `evaluate`, solved in parallel; output order equals
    /// input order. The first failing point aborts the batch.
    pub fn evaluate_many(&self, xs: &[Point]) -> Result<Vec<f64>> {
        xs.par_iter().map(|x| self.evaluate(x)).collect()
    }
}

/// One-shot shape-function solve; builds a throwaway engine. Prefer
/// [`MlsEngine`] when evaluating many points against the same nodes.
pub fn solve_shape_functions(cfg: &MlsConfig, nodes: &NodeSet, x: &Point) -> Result<LocalSystem> {
    MlsEngine::new(cfg, nodes)?.solve_shape_functions(x)
}

/// One-shot approximant evaluation.
pub fn evaluate(cfg: &MlsConfig, nodes: &NodeSet, x: &Point) -> Result<f64> {
    MlsEngine::new(cfg, nodes)?.evaluate(x)
}

/// One-shot batch evaluation.
pub fn evaluate_many(cfg: &MlsConfig, nodes: &NodeSet, xs: &[Point]) -> Result<Vec<f64>> {
    MlsEngine::new(cfg, nodes)?.evaluate_many(xs)
}

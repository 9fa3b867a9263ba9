//! The three discontinuous benchmark functions with their aligned scale
//! functions and evaluation grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{uniform_nodes, DomainBox, NodeSet, Point};
use crate::scaling::{Interval, Region, RegionShape, ScaleFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProblemId {
    F1,
    F2,
    F3,
}

impl ProblemId {
    pub fn dim(self) -> usize {
        match self {
            ProblemId::F1 => 1,
            ProblemId::F2 | ProblemId::F3 => 2,
        }
    }
}

/// A benchmark target with its domain, jump-aligned scale function and
/// evaluation grid step.
#[derive(Clone, Debug)]
pub struct TestProblem {
    pub id: ProblemId,
    pub dim: usize,
    pub domain: DomainBox,
    pub scale_fn: ScaleFunction,
    pub eval_grid_step: f64,
}

pub fn problem(id: ProblemId) -> TestProblem {
    match id {
        ProblemId::F1 => TestProblem {
            id,
            dim: 1,
            domain: DomainBox::new(vec![-1.0], vec![1.0]).unwrap(),
            scale_fn: f1_scale_function(),
            eval_grid_step: 5.0e-4,
        },
        ProblemId::F2 => TestProblem {
            id,
            dim: 2,
            domain: DomainBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap(),
            scale_fn: f2_scale_function(),
            eval_grid_step: 1.0e-2,
        },
        ProblemId::F3 => TestProblem {
            id,
            dim: 2,
            domain: DomainBox::new(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap(),
            scale_fn: f3_scale_function(),
            eval_grid_step: 1.0e-2,
        },
    }
}

/// psi for f1: 2 on [-0.5, 0.5), 1 elsewhere. The half-open upper endpoint
/// keeps the x = 0.5 jump of the target on the region boundary.
pub fn f1_scale_function() -> ScaleFunction {
    ScaleFunction::new(
        vec![Region {
            shape: RegionShape::Intervals(vec![Interval {
                lower: -0.5,
                upper: 0.5,
                lower_closed: true,
                upper_closed: false,
            }]),
            beta: 2.0,
        }],
        1.0,
    )
    .unwrap()
}

/// psi for f2: 1 on the closed disk x^2 + y^2 <= 0.6, 2 outside.
pub fn f2_scale_function() -> ScaleFunction {
    ScaleFunction::new(
        vec![Region {
            shape: RegionShape::Ball { center: vec![0.0, 0.0], radius_sq: 0.6 },
            beta: 1.0,
        }],
        2.0,
    )
    .unwrap()
}

/// psi for f3: 1, 2, 3 on the three boxes, 0 elsewhere.
pub fn f3_scale_function() -> ScaleFunction {
    ScaleFunction::new(
        vec![
            Region {
                shape: RegionShape::Box { lower: vec![-0.5, -0.5], upper: vec![0.5, 0.5] },
                beta: 1.0,
            },
            Region {
                shape: RegionShape::Box { lower: vec![-0.8, -0.8], upper: vec![-0.65, 0.8] },
                beta: 2.0,
            },
            Region {
                shape: RegionShape::Box { lower: vec![0.65, -0.2], upper: vec![0.8, 0.2] },
                beta: 3.0,
            },
        ],
        0.0,
    )
    .unwrap()
}

/// Exact piecewise evaluation of the target, boundary membership following
/// the case inequalities verbatim.
pub fn truth_value(id: ProblemId, x: &Point) -> Result<f64> {
    let p = problem(id);
    if x.dim() != p.dim || !p.domain.contains(x) {
        return Err(Error::invalid(format!("point {:?} outside the {:?} domain", x.coords(), id)));
    }
    Ok(match id {
        ProblemId::F1 => {
            let t = x.coords()[0];
            if t < -0.5 {
                (-t).exp()
            } else if t < 0.5 {
                t * t * t
            } else {
                1.0
            }
        }
        ProblemId::F2 => {
            let (a, b) = (x.coords()[0], x.coords()[1]);
            let r2 = a * a + b * b;
            if r2 <= 0.6 {
                (-r2).exp()
            } else {
                a + b
            }
        }
        ProblemId::F3 => {
            let (a, b) = (x.coords()[0], x.coords()[1]);
            if a.abs() <= 0.5 && b.abs() <= 0.5 {
                2.0 * (1.0 - (-(b + 0.5) * (b + 0.5)).exp())
            } else if (-0.8..=-0.65).contains(&a) && b.abs() <= 0.8 {
                4.0 * (a + 0.8)
            } else if (0.65..=0.8).contains(&a) && b.abs() <= 0.2 {
                0.5
            } else {
                0.0
            }
        }
    })
}

/// The evaluation grid of the problem: equispaced and endpoint-inclusive
/// with the problem's step (4001 points in 1D, 201 x 201 in 2D).
pub fn eval_grid(p: &TestProblem) -> NodeSet {
    let counts: Vec<usize> = (0..p.dim)
        .map(|j| {
            let span = p.domain.upper()[j] - p.domain.lower()[j];
            (span / p.eval_grid_step).round() as usize + 1
        })
        .collect();
    uniform_nodes(&p.domain, &counts).expect("evaluation grid is a valid tensor grid")
}

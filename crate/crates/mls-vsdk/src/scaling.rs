//! Piecewise-constant scale functions over a partition of the domain and the
//! augmented distance they induce.
//!
//! A scale function assigns a constant `beta` to each region of a partition;
//! the augmented map sends `x` to `(x, psi(x))` in `R^{d+1}`. Points on
//! opposite sides of a discontinuity become artificially distant, which is
//! what makes the scaled weights decay faster across jumps.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::{euclidean, Point};

/// A half-open or closed interval for one-dimensional regions.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    #[serde(default = "default_true")]
    pub lower_closed: bool,
    #[serde(default = "default_true")]
    pub upper_closed: bool,
}

fn default_true() -> bool {
    true
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        let lo = if self.lower_closed { x >= self.lower } else { x > self.lower };
        let hi = if self.upper_closed { x <= self.upper } else { x < self.upper };
        lo && hi
    }
}

/// Geometric membership predicate of one partition region.
///
/// Boxes and balls use closed inequalities; interval unions carry explicit
/// closedness per endpoint for half-open one-dimensional regions.
#[derive(Clone, Debug, PartialEq)]
pub enum RegionShape {
    Box { lower: Vec<f64>, upper: Vec<f64> },
    Ball { center: Vec<f64>, radius_sq: f64 },
    Intervals(Vec<Interval>),
}

impl RegionShape {
    pub fn contains(&self, x: &Point) -> bool {
        match self {
            RegionShape::Box { lower, upper } => x
                .coords()
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(c, (l, u))| *c >= *l && *c <= *u),
            RegionShape::Ball { center, radius_sq } => {
                let d = euclidean(x.coords(), center);
                d * d <= *radius_sq
            }
            RegionShape::Intervals(ivs) => ivs.iter().any(|iv| iv.contains(x.coords()[0])),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            RegionShape::Box { lower, upper } => {
                if lower.len() != upper.len() || lower.is_empty() {
                    return Err(Error::invalid("box region bounds mismatch"));
                }
                if lower.iter().zip(upper).any(|(l, u)| l > u) {
                    return Err(Error::invalid("box region needs lower <= upper"));
                }
            }
            RegionShape::Ball { center, radius_sq } => {
                if center.is_empty() {
                    return Err(Error::invalid("ball region needs a center"));
                }
                if !(*radius_sq > 0.0) {
                    return Err(Error::invalid("ball region needs radius_sq > 0"));
                }
            }
            RegionShape::Intervals(ivs) => {
                if ivs.is_empty() {
                    return Err(Error::invalid("interval region needs at least one interval"));
                }
                if ivs.iter().any(|iv| iv.lower > iv.upper) {
                    return Err(Error::invalid("interval needs lower <= upper"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub shape: RegionShape,
    pub beta: f64,
}

/// Piecewise-constant scale function `psi` over an ordered region list.
///
/// Classification is total: the first region containing a point wins, and
/// points in no region take `fallback_beta`. All beta values, fallback
/// included, must be pairwise distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleFunction {
    regions: Vec<Region>,
    fallback_beta: f64,
}

impl ScaleFunction {
    pub fn new(regions: Vec<Region>, fallback_beta: f64) -> Result<Self> {
        for r in &regions {
            r.shape.validate()?;
        }
        let mut betas: Vec<f64> = regions.iter().map(|r| r.beta).collect();
        betas.push(fallback_beta);
        for i in 0..betas.len() {
            for j in i + 1..betas.len() {
                if betas[i] == betas[j] {
                    return Err(Error::invalid(format!(
                        "beta values must be pairwise distinct (found {} twice)",
                        betas[i]
                    )));
                }
            }
        }
        Ok(ScaleFunction { regions, fallback_beta })
    }

    /// Constant scale function with no regions; degenerates the augmented
    /// distance to plain Euclidean.
    pub fn constant(beta: f64) -> Self {
        ScaleFunction { regions: Vec::new(), fallback_beta: beta }
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn fallback_beta(&self) -> f64 {
        self.fallback_beta
    }

    /// Index of the first region containing `x`; `regions().len()` selects
    /// the fallback.
    pub fn classify(&self, x: &Point) -> usize {
        self.regions
            .iter()
            .position(|r| r.shape.contains(x))
            .unwrap_or(self.regions.len())
    }

    /// `psi(x)`: the beta value of the region containing `x`.
    pub fn psi(&self, x: &Point) -> f64 {
        let idx = self.classify(x);
        if idx < self.regions.len() {
            self.regions[idx].beta
        } else {
            self.fallback_beta
        }
    }

    /// Perturbs every boundary parameter once with an independent
    /// `sigma * N(0,1)` draw: box face coordinates and interval endpoints
    /// directly, ball radii via `r <- r + sigma * z`.
    ///
    /// The generator is ChaCha12 seeded with `seed`, with ziggurat
    /// standard-normal variates, drawn in region order (box: lower faces by
    /// axis then upper faces; intervals: lower then upper per interval).
    pub fn perturb(&self, sigma: f64, seed: u64) -> Result<ScaleFunction> {
        if sigma < 0.0 {
            return Err(Error::invalid("perturbation sigma must be nonnegative"));
        }
        if sigma == 0.0 {
            return Ok(self.clone());
        }
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let mut draw = || -> f64 {
            let z: f64 = StandardNormal.sample(&mut rng);
            sigma * z
        };
        let mut regions = self.regions.clone();
        for region in &mut regions {
            match &mut region.shape {
                RegionShape::Box { lower, upper } => {
                    for l in lower.iter_mut() {
                        *l += draw();
                    }
                    for u in upper.iter_mut() {
                        *u += draw();
                    }
                    if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
                        return Err(Error::InvalidResult(
                            "perturbation inverted a box region".into(),
                        ));
                    }
                }
                RegionShape::Ball { radius_sq, .. } => {
                    let r = radius_sq.sqrt() + draw();
                    if !(r > 0.0) {
                        return Err(Error::InvalidResult(
                            "perturbation made a ball radius nonpositive".into(),
                        ));
                    }
                    *radius_sq = r * r;
                }
                RegionShape::Intervals(ivs) => {
                    for iv in ivs.iter_mut() {
                        iv.lower += draw();
                        iv.upper += draw();
                        if iv.lower > iv.upper {
                            return Err(Error::InvalidResult(
                                "perturbation inverted an interval".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(ScaleFunction { regions, fallback_beta: self.fallback_beta })
    }
}

/// Distance between the augmented points `(x, psi(x))` and `(y, psi(y))` in
/// `R^{d+1}`; plain Euclidean when no scale function is given or when both
/// points share a region.
pub fn augmented_distance(sf: Option<&ScaleFunction>, x: &Point, y: &Point) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::invalid("augmented_distance: dimension mismatch"));
    }
    let plain = euclidean(x.coords(), y.coords());
    match sf {
        None => Ok(plain),
        Some(sf) => {
            let dpsi = sf.psi(x) - sf.psi(y);
            if dpsi == 0.0 {
                // Same region: keep the plain-distance bit pattern.
                Ok(plain)
            } else {
                Ok((plain * plain + dpsi * dpsi).sqrt())
            }
        }
    }
}

/// Augmented coordinates `(x, psi(x))` of a point, for stencil search in the
/// augmented metric.
pub fn augment(sf: &ScaleFunction, x: &Point) -> Vec<f64> {
    let mut coords = x.coords().to_vec();
    coords.push(sf.psi(x));
    coords
}

//! TOML experiment and approximation configs with `--set key=value`
//! overrides.
//!
//! Experiment schema (flat keys):
//!
//! ```toml
//! problem = "f1"                # f1 | f2 | f3
//! node_kind = "uniform"         # uniform | halton
//! sizes = [9, 17, 33]
//! epsilons = [0.25, 0.5, 1.0]   # one per size
//! weight_family = "wendland_c2" # wendland_c2 | gaussian | matern_c6 | levin_singular
//! degree = 1
//! stencil_size = 6
//! variant = "vsdk"              # vsdk | classic
//! noise_sigma = 0.0
//! seed = 0
//! # optional: regularization, levin_variant, matern_scaled_polynomial,
//! # fallback_beta plus [[scale_regions]] to override the scale function
//! ```
//!
//! Scale-region entries: `{ shape = "box", lower = [..], upper = [..],
//! beta = 1.0 }`, `{ shape = "ball", center = [..], radius_sq = 0.6,
//! beta = 1.0 }`, or `{ shape = "intervals", intervals = [{lower, upper,
//! lower_closed?, upper_closed?}], beta = 1.0 }`.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::experiments::{ExperimentSpec, NodeKind, ProblemId, Variant};
use crate::scaling::{Interval, Region, RegionShape, ScaleFunction};
use crate::weights::{LevinVariant, WeightFamily, WeightSpec, GAUSSIAN_DEFAULT_REGULARIZATION};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemId,
    pub node_kind: NodeKind,
    pub sizes: Vec<usize>,
    pub epsilons: Vec<f64>,
    pub weight_family: WeightFamily,
    #[serde(default)]
    pub regularization: Option<f64>,
    #[serde(default)]
    pub levin_variant: Option<LevinVariant>,
    #[serde(default)]
    pub matern_scaled_polynomial: Option<bool>,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default)]
    pub stencil_size: Option<usize>,
    pub variant: Variant,
    #[serde(default)]
    pub noise_sigma: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub scale_regions: Option<Vec<RegionConfig>>,
    #[serde(default)]
    pub fallback_beta: Option<f64>,
}

fn default_degree() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum RegionConfig {
    Box { lower: Vec<f64>, upper: Vec<f64>, beta: f64 },
    Ball { center: Vec<f64>, radius_sq: f64, beta: f64 },
    Intervals { intervals: Vec<Interval>, beta: f64 },
}

impl RegionConfig {
    fn into_region(self) -> Region {
        match self {
            RegionConfig::Box { lower, upper, beta } => Region {
                shape: RegionShape::Box { lower, upper },
                beta,
            },
            RegionConfig::Ball { center, radius_sq, beta } => Region {
                shape: RegionShape::Ball { center, radius_sq },
                beta,
            },
            RegionConfig::Intervals { intervals, beta } => Region {
                shape: RegionShape::Intervals(intervals),
                beta,
            },
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Applies a `key=value` override onto the parsed config.
    pub fn apply_override(&mut self, key: &str, value: &str) -> Result<()> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("bad value {value:?} for key {key:?}")))
        }
        fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
            value
                .trim_matches(|c| c == '[' || c == ']')
                .split(',')
                .map(|s| parse(key, s.trim()))
                .collect()
        }
        match key {
            "problem" => {
                self.problem = match value {
                    "f1" => ProblemId::F1,
                    "f2" => ProblemId::F2,
                    "f3" => ProblemId::F3,
                    _ => return Err(Error::Config(format!("unknown problem {value:?}"))),
                }
            }
            "node_kind" => {
                self.node_kind = match value {
                    "uniform" => NodeKind::Uniform,
                    "halton" => NodeKind::Halton,
                    _ => return Err(Error::Config(format!("unknown node_kind {value:?}"))),
                }
            }
            "sizes" => self.sizes = parse_list(key, value)?,
            "epsilons" => self.epsilons = parse_list(key, value)?,
            "weight_family" => {
                self.weight_family = match value {
                    "wendland_c2" => WeightFamily::WendlandC2,
                    "gaussian" => WeightFamily::Gaussian,
                    "matern_c6" => WeightFamily::MaternC6,
                    "levin_singular" => WeightFamily::LevinSingular,
                    _ => return Err(Error::Config(format!("unknown weight_family {value:?}"))),
                }
            }
            "regularization" => self.regularization = Some(parse(key, value)?),
            "degree" => self.degree = parse(key, value)?,
            "stencil_size" => self.stencil_size = Some(parse(key, value)?),
            "variant" => {
                self.variant = match value {
                    "vsdk" => Variant::Vsdk,
                    "classic" => Variant::Classic,
                    _ => return Err(Error::Config(format!("unknown variant {value:?}"))),
                }
            }
            "noise_sigma" => self.noise_sigma = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            _ => return Err(Error::Config(format!("unknown override key {key:?}"))),
        }
        Ok(())
    }

    fn weight_spec(&self) -> Result<WeightSpec> {
        // The per-level epsilon schedule overwrites this placeholder.
        let mut spec = WeightSpec::new(self.weight_family, 1.0)?;
        if let Some(mu) = self.regularization {
            spec = spec.with_regularization(mu)?;
        } else if self.weight_family == WeightFamily::Gaussian {
            spec.regularization = GAUSSIAN_DEFAULT_REGULARIZATION;
        }
        if let Some(v) = self.levin_variant {
            spec.levin_variant = v;
        }
        if let Some(b) = self.matern_scaled_polynomial {
            spec.matern_scaled_polynomial = b;
        }
        Ok(spec)
    }

    fn scale_fn(&self) -> Result<Option<ScaleFunction>> {
        match (&self.scale_regions, self.fallback_beta) {
            (None, None) => Ok(None),
            (Some(regions), fallback) => {
                let fallback = fallback.ok_or_else(|| {
                    Error::Config("scale_regions requires fallback_beta".into())
                })?;
                let regions = regions.iter().cloned().map(RegionConfig::into_region).collect();
                Ok(Some(ScaleFunction::new(regions, fallback)?))
            }
            (None, Some(_)) => Err(Error::Config(
                "fallback_beta requires scale_regions".into(),
            )),
        }
    }

    pub fn to_spec(&self) -> Result<ExperimentSpec> {
        if self.sizes.len() != self.epsilons.len() {
            return Err(Error::Config(format!(
                "sizes ({}) and epsilons ({}) must have equal length",
                self.sizes.len(),
                self.epsilons.len()
            )));
        }
        let weight = self.weight_spec()?;
        let degree = self.degree;
        let dim = self.problem.dim();
        let q = binomial(degree + dim, dim);
        let spec = ExperimentSpec {
            problem: self.problem,
            node_kind: self.node_kind,
            sizes: self.sizes.clone(),
            epsilons: self.epsilons.clone(),
            weight,
            degree,
            stencil_size: self.stencil_size.unwrap_or(2 * q),
            variant: self.variant,
            noise_sigma: self.noise_sigma,
            seed: self.seed,
            scale_fn: self.scale_fn()?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Config of the `approximate` command: one approximant applied to a node
/// CSV. Same weight and scale-function keys as the experiment schema.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproximateConfig {
    pub weight_family: WeightFamily,
    pub epsilon: f64,
    #[serde(default)]
    pub regularization: Option<f64>,
    #[serde(default)]
    pub levin_variant: Option<LevinVariant>,
    #[serde(default)]
    pub matern_scaled_polynomial: Option<bool>,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default)]
    pub stencil_size: Option<usize>,
    #[serde(default)]
    pub scale_regions: Option<Vec<RegionConfig>>,
    #[serde(default)]
    pub fallback_beta: Option<f64>,
}

impl ApproximateConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn weight_spec(&self) -> Result<WeightSpec> {
        let mut spec = WeightSpec::new(self.weight_family, self.epsilon)?;
        if let Some(mu) = self.regularization {
            spec = spec.with_regularization(mu)?;
        }
        if let Some(v) = self.levin_variant {
            spec.levin_variant = v;
        }
        if let Some(b) = self.matern_scaled_polynomial {
            spec.matern_scaled_polynomial = b;
        }
        Ok(spec)
    }

    pub fn scale_fn(&self) -> Result<Option<ScaleFunction>> {
        match (&self.scale_regions, self.fallback_beta) {
            (None, None) => Ok(None),
            (Some(regions), Some(fallback)) => {
                let regions = regions.iter().cloned().map(RegionConfig::into_region).collect();
                Ok(Some(ScaleFunction::new(regions, fallback)?))
            }
            _ => Err(Error::Config(
                "scale_regions and fallback_beta must be given together".into(),
            )),
        }
    }
}

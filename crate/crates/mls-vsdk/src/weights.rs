//! The four univariate weight families with shape parameter `epsilon`,
//! evaluated on either the plain or the augmented distance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::scaling::{augmented_distance, ScaleFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFamily {
    WendlandC2,
    Gaussian,
    MaternC6,
    LevinSingular,
}

/// Algebraic reading of the singular family's exponent; the printed form is
/// ambiguous between `exp((eps r)^2)` and `exp(2 eps r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevinVariant {
    SquaredExponent,
    DoubledExponent,
}

impl Default for LevinVariant {
    fn default() -> Self {
        LevinVariant::SquaredExponent
    }
}

/// Weight family plus shape parameter and diagonal regularization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub family: WeightFamily,
    pub epsilon: f64,
    /// Diagonal lift mu added to every entry of the weight matrix; defaults
    /// to 1e-8 for the Gaussian family and 0 otherwise.
    #[serde(default)]
    pub regularization: f64,
    #[serde(default)]
    pub levin_variant: LevinVariant,
    /// Switches the Matern polynomial argument from plain `r` to `eps r`.
    #[serde(default)]
    pub matern_scaled_polynomial: bool,
}

pub const GAUSSIAN_DEFAULT_REGULARIZATION: f64 = 1e-8;

impl WeightSpec {
    pub fn new(family: WeightFamily, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::invalid("weight shape parameter must be positive"));
        }
        let regularization = if family == WeightFamily::Gaussian {
            GAUSSIAN_DEFAULT_REGULARIZATION
        } else {
            0.0
        };
        Ok(WeightSpec {
            family,
            epsilon,
            regularization,
            levin_variant: LevinVariant::default(),
            matern_scaled_polynomial: false,
        })
    }

    pub fn with_regularization(mut self, mu: f64) -> Result<Self> {
        if mu < 0.0 {
            return Err(Error::invalid("regularization must be nonnegative"));
        }
        self.regularization = mu;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) {
            return Err(Error::invalid("weight shape parameter must be positive"));
        }
        if self.regularization < 0.0 {
            return Err(Error::invalid("regularization must be nonnegative"));
        }
        Ok(())
    }
}

/// Outcome of a weight evaluation. The singular family diverges at the
/// centers; the divergence is a tagged marker so that no floating-point
/// infinity ever enters the linear algebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightValue {
    Finite(f64),
    /// Singular weight evaluated at (numerically) zero distance.
    ExactHit,
}

impl WeightValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            WeightValue::Finite(v) => Some(v),
            WeightValue::ExactHit => None,
        }
    }
}

/// Evaluates the weight family at radial distance `r >= 0`.
pub fn eval_weight(spec: &WeightSpec, r: f64) -> Result<WeightValue> {
    if !(r >= 0.0) {
        return Err(Error::invalid("weight argument must be nonnegative"));
    }
    let er = spec.epsilon * r;
    let v = match spec.family {
        WeightFamily::WendlandC2 => {
            let t = 1.0 - er;
            if t <= 0.0 {
                0.0
            } else {
                t.powi(4) * (4.0 * er + 1.0)
            }
        }
        WeightFamily::Gaussian => (-spec.epsilon * r * r).exp(),
        WeightFamily::MaternC6 => {
            let p = if spec.matern_scaled_polynomial { er } else { r };
            (-er).exp() * (15.0 + 15.0 * p + 6.0 * p * p + p * p * p)
        }
        WeightFamily::LevinSingular => {
            let e = match spec.levin_variant {
                LevinVariant::SquaredExponent => er * er,
                LevinVariant::DoubledExponent => 2.0 * er,
            };
            if e == 0.0 {
                return Ok(WeightValue::ExactHit);
            }
            // exp_m1 keeps the near-center blow-up finite down to the
            // smallest positive exponents.
            let denom = e.exp_m1();
            if denom.is_infinite() {
                0.0
            } else {
                1.0 / denom
            }
        }
    };
    if !v.is_finite() {
        return Ok(WeightValue::ExactHit);
    }
    Ok(WeightValue::Finite(v))
}

/// Weight on the augmented distance; with `sf` absent this is the classic
/// MLS weight on the Euclidean distance.
pub fn vsdk_weight(
    spec: &WeightSpec,
    sf: Option<&ScaleFunction>,
    x: &Point,
    y: &Point,
) -> Result<WeightValue> {
    let r = augmented_distance(sf, x, y)?;
    eval_weight(spec, r)
}

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Marginal distributions used by the simulations.
///
/// `Pareto` is parameterized directly by its EVI: `F(y) = 1 - (y / y_m)^(-1/gamma)`,
/// so the quantile is `y_m (1 - u)^(-gamma)`. `Beta { shape_b }` is
/// `Beta(1, b)` with EVI `-1/b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Marginal {
    Pareto { gamma: f64, y_m: f64 },
    StandardNormal,
    Beta { shape_b: f64 },
}

impl Marginal {
    /// Marginal with the given EVI: Pareto for positive, standard normal for
    /// zero, `Beta(1, -1/gamma)` for negative values.
    pub fn with_evi(gamma: f64, y_m: f64) -> Self {
        if gamma > 0.0 {
            Marginal::Pareto { gamma, y_m }
        } else if gamma == 0.0 {
            Marginal::StandardNormal
        } else {
            Marginal::Beta {
                shape_b: -1.0 / gamma,
            }
        }
    }

    pub fn evi(&self) -> f64 {
        match *self {
            Marginal::Pareto { gamma, .. } => gamma,
            Marginal::StandardNormal => 0.0,
            Marginal::Beta { shape_b } => -1.0 / shape_b,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Marginal::Pareto { gamma, y_m } if !(gamma > 0.0 && y_m > 0.0) => {
                Err(Error::InvalidParameter(format!(
                    "Pareto needs gamma > 0 and y_m > 0, got {gamma}, {y_m}"
                )))
            }
            Marginal::Beta { shape_b } if shape_b.is_nan() || shape_b <= 0.0 => Err(
                Error::InvalidParameter(format!("Beta shape must be positive, got {shape_b}")),
            ),
            _ => Ok(()),
        }
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        marginal_quantile(u, self)
    }

    /// Distribution function.
    pub fn cdf(&self, y: f64) -> f64 {
        match *self {
            Marginal::Pareto { gamma, y_m } => {
                if y < y_m {
                    0.0
                } else {
                    1.0 - (y / y_m).powf(-1.0 / gamma)
                }
            }
            Marginal::StandardNormal => standard_normal().cdf(y),
            Marginal::Beta { shape_b } => {
                if y <= 0.0 {
                    0.0
                } else if y >= 1.0 {
                    1.0
                } else {
                    1.0 - (1.0 - y).powf(shape_b)
                }
            }
        }
    }
}

fn standard_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("unit normal")
}

/// Quantile function of `marginal` at `u` in `(0, 1)`.
pub fn marginal_quantile(u: f64, marginal: &Marginal) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "quantile level must lie in (0, 1), got {u}"
        )));
    }
    Ok(match *marginal {
        Marginal::Pareto { gamma, y_m } => y_m * (1.0 - u).powf(-gamma),
        Marginal::StandardNormal => standard_normal().inverse_cdf(u),
        Marginal::Beta { shape_b } => 1.0 - (1.0 - u).powf(1.0 / shape_b),
    })
}

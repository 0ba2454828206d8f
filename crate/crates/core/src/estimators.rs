//! Baseline EVI estimators: Hill, moment, and Hill-plot series.
//!
//! Both estimators are computed in ratio-of-means form on the log-excess
//! variables of a single sample, so they share the code path used by the
//! transferred estimators in [`crate::transfer`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::{log_excesses, threshold_at};
use crate::stats::mean;

/// Which estimator produced an [`EviEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Hill,
    Moment,
    TransferredHill,
    TransferredMoment,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Hill,
        Method::Moment,
        Method::TransferredHill,
        Method::TransferredMoment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Hill => "hill",
            Method::Moment => "moment",
            Method::TransferredHill => "transferred_hill",
            Method::TransferredMoment => "transferred_moment",
        }
    }

    pub fn is_transferred(self) -> bool {
        matches!(self, Method::TransferredHill | Method::TransferredMoment)
    }

    /// The baseline a transferred estimator is compared against.
    pub fn baseline(self) -> Method {
        match self {
            Method::TransferredHill => Method::Hill,
            Method::TransferredMoment => Method::Moment,
            other => other,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method `{s}`")))
    }
}

/// Control-variate coefficients used by a transferred estimator.
///
/// `alpha`/`beta` correct the first log-moment; `alpha_prime`/`beta_prime`
/// the second one (transferred moment only). A `fallback` flag means the
/// pair was degenerate and zeroed, so that moment is uncorrected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub alpha_prime: Option<f64>,
    pub beta_prime: Option<f64>,
    pub fallback: bool,
    pub fallback_prime: bool,
}

/// An extreme value index estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EviEstimate {
    pub value: f64,
    pub method: Method,
    pub k: usize,
    /// Realized number of target exceedances (differs from `k` under ties).
    pub exceedances: usize,
    pub coefficients: Option<TransferCoefficients>,
    pub variance_estimate: Option<f64>,
}

/// Ratio of the sample means of `num` and `den`.
pub(crate) fn ratio_of_means(num: &[f64], den: &[f64]) -> f64 {
    mean(num) / mean(den)
}

/// Moment estimator from the first and second log-moments.
pub(crate) fn moment_from_log_moments(m1: f64, m2: f64) -> Result<f64> {
    let ratio = m1 * m1 / m2;
    let gap = 1.0 - ratio;
    if !gap.is_finite() || gap.abs() <= 1e-12 {
        return Err(Error::MomentUndefined);
    }
    Ok(m1 + 1.0 - 0.5 / gap)
}

struct SingleSample {
    a: Vec<f64>,
    c: Vec<f64>,
    g: Vec<f64>,
    exceedances: usize,
}

fn single_sample(sample: &[f64], k: usize) -> Result<SingleSample> {
    let threshold = threshold_at(sample, k)?;
    if threshold <= 0.0 {
        return Err(Error::LogUndefined { threshold });
    }
    let (a, c, g) = log_excesses(sample, threshold);
    let exceedances = c.iter().filter(|&&x| x > 0.0).count();
    if exceedances == 0 {
        return Err(Error::NoExceedances);
    }
    Ok(SingleSample {
        a,
        c,
        g,
        exceedances,
    })
}

/// Hill estimator `mean(A) / mean(C)` with threshold `Y_{n-k:n}`.
///
/// The attached variance estimate is the asymptotic `gamma^2 / k` with the
/// estimate plugged in and `k` replaced by the realized exceedance count.
pub fn hill(sample: &[f64], k: usize) -> Result<EviEstimate> {
    let s = single_sample(sample, k)?;
    let value = ratio_of_means(&s.a, &s.c);
    Ok(EviEstimate {
        value,
        method: Method::Hill,
        k,
        exceedances: s.exceedances,
        coefficients: None,
        variance_estimate: Some(value * value / s.exceedances as f64),
    })
}

/// Moment (Dekkers–Einmahl–de Haan) estimator.
pub fn moment(sample: &[f64], k: usize) -> Result<EviEstimate> {
    let s = single_sample(sample, k)?;
    let m1 = ratio_of_means(&s.a, &s.c);
    let m2 = ratio_of_means(&s.g, &s.c);
    Ok(EviEstimate {
        value: moment_from_log_moments(m1, m2)?,
        method: Method::Moment,
        k,
        exceedances: s.exceedances,
        coefficients: None,
        variance_estimate: None,
    })
}

/// Hill estimates over a grid of `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HillPlotSeries {
    pub k_values: Vec<usize>,
    /// `None` where the estimator failed at that `k`.
    pub estimates: Vec<Option<f64>>,
}

/// Hill estimates for `k = k_min, k_min + step, ..., <= k_max`.
pub fn hill_plot(
    sample: &[f64],
    k_min: usize,
    k_max: usize,
    step: usize,
) -> Result<HillPlotSeries> {
    let n = sample.len();
    if step == 0 {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    if k_min == 0 || k_min > k_max {
        return Err(Error::InvalidParameter(format!(
            "empty k range [{k_min}, {k_max}]"
        )));
    }
    if k_max >= n {
        return Err(Error::InvalidK { k: k_max, n });
    }
    let k_values: Vec<usize> = (k_min..=k_max).step_by(step).collect();
    let estimates = k_values
        .iter()
        .map(|&k| hill(sample, k).ok().map(|e| e.value))
        .collect();
    Ok(HillPlotSeries {
        k_values,
        estimates,
    })
}

//! Transferred Hill and moment estimators.
//!
//! Both write the target log-moments as ratios of means and correct
//! numerator and denominator with the matching source-side variables,
//! observed on the `n` coupled points plus the `m` extra source points.

use crate::acv::{acv_ratio, coefficients_from_moments, AcvCoefficients, MomentStatistics};
use crate::error::{Error, Result};
use crate::estimators::{moment_from_log_moments, EviEstimate, Method, TransferCoefficients};
use crate::sample::{build_cv_variables, CvVariables, SemiSupervisedDataset};

/// Coefficients for the first log-moment, from `(A, B, C, D)`.
pub fn first_moment_coefficients(vars: &CvVariables) -> Result<AcvCoefficients> {
    let s = MomentStatistics::from_slices(&vars.a, vars.coupled_b(), &vars.c, vars.coupled_d())?;
    if s.mean_c == 0.0 {
        return Err(Error::NoExceedances);
    }
    Ok(coefficients_from_moments(&s, s.mean_a / s.mean_c))
}

/// Coefficients for the second log-moment, from `(G, H, C, D)`.
pub fn second_moment_coefficients(vars: &CvVariables) -> Result<AcvCoefficients> {
    let s = MomentStatistics::from_slices(&vars.g, vars.coupled_h(), &vars.c, vars.coupled_d())?;
    if s.mean_c == 0.0 {
        return Err(Error::NoExceedances);
    }
    // here mean_a is the mean of G: plug-in for E[G]/E[C]
    Ok(coefficients_from_moments(&s, s.mean_a / s.mean_c))
}

/// Transferred Hill estimate on prebuilt variables with given coefficients.
pub fn transferred_hill_with(vars: &CvVariables, coeffs: &AcvCoefficients) -> Result<EviEstimate> {
    let exceedances = vars.target_exceedances();
    if exceedances == 0 {
        return Err(Error::NoExceedances);
    }
    let value = acv_ratio(&vars.a, &vars.b, &vars.c, &vars.d, coeffs)?;
    Ok(EviEstimate {
        value,
        method: Method::TransferredHill,
        k: vars.k_target,
        exceedances,
        coefficients: Some(TransferCoefficients {
            alpha: coeffs.alpha,
            beta: coeffs.beta,
            alpha_prime: None,
            beta_prime: None,
            fallback: coeffs.degenerate,
            fallback_prime: false,
        }),
        variance_estimate: None,
    })
}

/// Transferred moment estimate on prebuilt variables with given coefficient pairs.
pub fn transferred_moment_with(
    vars: &CvVariables,
    first: &AcvCoefficients,
    second: &AcvCoefficients,
) -> Result<EviEstimate> {
    let exceedances = vars.target_exceedances();
    if exceedances == 0 {
        return Err(Error::NoExceedances);
    }
    let m1 = acv_ratio(&vars.a, &vars.b, &vars.c, &vars.d, first)?;
    let m2 = acv_ratio(&vars.g, &vars.h, &vars.c, &vars.d, second)?;
    Ok(EviEstimate {
        value: moment_from_log_moments(m1, m2)?,
        method: Method::TransferredMoment,
        k: vars.k_target,
        exceedances,
        coefficients: Some(TransferCoefficients {
            alpha: first.alpha,
            beta: first.beta,
            alpha_prime: Some(second.alpha),
            beta_prime: Some(second.beta),
            fallback: first.degenerate,
            fallback_prime: second.degenerate,
        }),
        variance_estimate: None,
    })
}

/// Transferred Hill estimator with in-sample optimal coefficients.
///
/// With degenerate controls, or `m = 0`, the result equals
/// [`hill`](crate::estimators::hill) on the coupled target sample exactly.
pub fn transferred_hill(
    dataset: &SemiSupervisedDataset,
    k: usize,
    k_source: usize,
) -> Result<EviEstimate> {
    let vars = build_cv_variables(dataset, k, k_source)?;
    transferred_hill_from_vars(&vars)
}

pub fn transferred_hill_from_vars(vars: &CvVariables) -> Result<EviEstimate> {
    let coeffs = first_moment_coefficients(vars)?;
    transferred_hill_with(vars, &coeffs)
}

/// Transferred moment estimator. Each log-moment gets its own coefficient
/// pair minimizing that moment's variance; the pairs are not jointly optimal
/// for the final estimate, which can occasionally increase its variance.
pub fn transferred_moment(
    dataset: &SemiSupervisedDataset,
    k: usize,
    k_source: usize,
) -> Result<EviEstimate> {
    let vars = build_cv_variables(dataset, k, k_source)?;
    transferred_moment_from_vars(&vars)
}

pub fn transferred_moment_from_vars(vars: &CvVariables) -> Result<EviEstimate> {
    let first = first_moment_coefficients(vars)?;
    let second = second_moment_coefficients(vars)?;
    transferred_moment_with(vars, &first, &second)
}

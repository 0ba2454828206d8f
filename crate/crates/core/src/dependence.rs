//! Dependence diagnostics between target and source: empirical tail
//! dependence, correlations of the control-variate variables, and the
//! closed-form asymptotic relative variance reduction of the transferred
//! Hill estimator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::{build_cv_variables, threshold_at, CvVariables, SemiSupervisedDataset};
use crate::stats::correlation;

/// Joint-exceedance diagnostics for one dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DependenceReport {
    /// Empirical tail dependence, unclipped (can exceed 1 under ties).
    pub lambda_hat: f64,
    pub lambda_clipped: bool,
    pub corr_ab: f64,
    pub corr_cd: f64,
    pub c_ad_hat: f64,
    pub c_ab_hat: f64,
    /// Nominal exceedance probability `k / n`.
    pub p_hat: f64,
    pub target_exceedances: usize,
    pub joint_exceedances: usize,
}

/// `(1/k) #{i : Y^T_i > Y^T_{n-k:n} and Y^S_i > Y^S_{n-k:n}}`.
pub fn tail_dependence(target: &[f64], source: &[f64], k: usize) -> Result<f64> {
    if target.len() != source.len() {
        return Err(Error::InvalidParameter(
            "target and source must have equal length".into(),
        ));
    }
    let ut = threshold_at(target, k)?;
    let us = threshold_at(source, k)?;
    let joint = target
        .iter()
        .zip(source)
        .filter(|(&t, &s)| t > ut && s > us)
        .count();
    Ok(joint as f64 / k as f64)
}

/// Pearson correlations `(Corr(A, B), Corr(C, D))` on the coupled observations.
pub fn cv_correlations(vars: &CvVariables) -> Result<(f64, f64)> {
    let ab = correlation(&vars.a, vars.coupled_b()).ok_or(Error::DegenerateControlVariate)?;
    let cd = correlation(&vars.c, vars.coupled_d()).ok_or(Error::DegenerateControlVariate)?;
    Ok((ab, cd))
}

/// Closed-form asymptotic RVR for a heavy-tailed source:
///
/// ```text
/// RVR ~ lambda^2 * m / (n (n + m)) * (c_AB^2 + c_AD^2 (2 - p) / (1 - p) - c_AB c_AD) / p * k
/// ```
///
/// with `p = k / n`. The trailing `k` turns the variance difference into a
/// relative one, since `Var(Hill) ~ gamma^2 / k`. `lambda` is clipped to 1.
pub fn asymptotic_rvr_closed_form(
    lambda: f64,
    n: usize,
    m: usize,
    k: usize,
    c_ab: f64,
    c_ad: f64,
) -> f64 {
    let lambda = lambda.min(1.0);
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let p = kf / nf;
    let shape = c_ab * c_ab + c_ad * c_ad * (2.0 - p) / (1.0 - p) - c_ab * c_ad;
    lambda * lambda * mf / (nf * (nf + mf)) * shape / p * kf
}

/// Full dependence report, with target and source log-excesses scaled by the
/// supplied EVI estimates inside `c_AD = E[Z_T - 1 | joint]` and
/// `c_AB = E[(Z_T - 1) Z_S | joint]`.
pub fn dependence_report(
    dataset: &SemiSupervisedDataset,
    k: usize,
    k_source: usize,
    gamma_t_hat: f64,
    gamma_s_hat: f64,
) -> Result<DependenceReport> {
    let vars = build_cv_variables(dataset, k, k_source)?;
    dependence_report_from_vars(dataset, &vars, gamma_t_hat, gamma_s_hat)
}

pub(crate) fn dependence_report_from_vars(
    dataset: &SemiSupervisedDataset,
    vars: &CvVariables,
    gamma_t_hat: f64,
    gamma_s_hat: f64,
) -> Result<DependenceReport> {
    if gamma_s_hat.is_nan() || gamma_s_hat <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "source EVI estimate must be positive, got {gamma_s_hat}"
        )));
    }
    if gamma_t_hat == 0.0 || !gamma_t_hat.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "target EVI estimate must be finite and non-zero, got {gamma_t_hat}"
        )));
    }
    let k = vars.k_target;
    let lambda_hat = tail_dependence(dataset.paired_target(), dataset.paired_source(), k)?;
    let (corr_ab, corr_cd) = cv_correlations(vars)?;

    let d = vars.coupled_d();
    let b = vars.coupled_b();
    let (mut sum_ad, mut sum_ab, mut joint) = (0.0, 0.0, 0usize);
    for i in 0..vars.n() {
        if vars.c[i] > 0.0 && d[i] > 0.0 {
            let zt = vars.a[i] / gamma_t_hat;
            let zs = b[i] / gamma_s_hat;
            sum_ad += zt - 1.0;
            sum_ab += (zt - 1.0) * zs;
            joint += 1;
        }
    }
    if joint < 2 {
        return Err(Error::WeakTailDependence { joint });
    }
    Ok(DependenceReport {
        lambda_hat,
        lambda_clipped: lambda_hat > 1.0,
        corr_ab,
        corr_cd,
        c_ad_hat: sum_ad / joint as f64,
        c_ab_hat: sum_ab / joint as f64,
        p_hat: k as f64 / dataset.n() as f64,
        target_exceedances: vars.target_exceedances(),
        joint_exceedances: joint,
    })
}

/// Plug-in asymptotic RVR of the transferred Hill estimator.
pub fn asymptotic_rvr(
    dataset: &SemiSupervisedDataset,
    k: usize,
    k_source: usize,
    gamma_t_hat: f64,
    gamma_s_hat: f64,
) -> Result<f64> {
    let report = dependence_report(dataset, k, k_source, gamma_t_hat, gamma_s_hat)?;
    Ok(rvr_from_report(&report, dataset.n(), dataset.m(), k))
}

pub(crate) fn rvr_from_report(report: &DependenceReport, n: usize, m: usize, k: usize) -> f64 {
    asymptotic_rvr_closed_form(report.lambda_hat, n, m, k, report.c_ab_hat, report.c_ad_hat)
}

/// Kendall's tau for tie-free paired samples, in `O(n log n)` (Knight's
/// merge-sort inversion count).
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len();
    if n != y.len() || n < 2 {
        return Err(Error::InvalidParameter(
            "need two equal-length samples of size >= 2".into(),
        ));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| x[i].total_cmp(&x[j]));
    let mut ys: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
    let mut buf = vec![0.0; n];
    let discordant = count_inversions(&mut ys, &mut buf);
    let pairs = (n * (n - 1) / 2) as f64;
    Ok(1.0 - 2.0 * discordant as f64 / pairs)
}

fn count_inversions(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = {
        let (left, right) = v.split_at_mut(mid);
        count_inversions(left, &mut buf[..mid]) + count_inversions(right, &mut buf[mid..])
    };
    let (mut i, mut j, mut out) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[out] = v[j];
            inv += (mid - i) as u64;
            j += 1;
        } else {
            buf[out] = v[i];
            i += 1;
        }
        out += 1;
    }
    buf[out..out + mid - i].copy_from_slice(&v[i..mid]);
    out += mid - i;
    buf[out..out + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    inv
}

//! Control-variate machinery for ratios of means.
//!
//! The approximate control variates (ACV) estimator of `R = E[A] / E[C]` is
//!
//! ```text
//!          mean_n(A) + alpha (mean_{n+m}(B) - mean_n(B))
//! R_acv = -----------------------------------------------
//!          mean_n(C) + beta  (mean_{n+m}(D) - mean_n(D))
//! ```
//!
//! where `B` and `D` are observed on `n + m` points and `A`, `C` only on the
//! first `n`. The coefficients jointly minimize the delta-method variance of
//! the ratio; they are estimated in-sample on the `n` coupled observations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::CvVariables;
use crate::stats::{covariance, mean, variance};

/// Relative tolerance on the Gram determinant `Var(B)Var(D) - Cov(B,D)^2`.
pub const DETERMINANT_RTOL: f64 = 1e-12;

/// Correlations this close to +-1 make the control pair collinear.
pub const COLLINEAR_CORR: f64 = 1.0 - 1e-10;

/// Optimal ACV/ACV coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcvCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub determinant: f64,
    pub degenerate: bool,
}

impl AcvCoefficients {
    /// Zero coefficients: the estimator reduces to the plain ratio of means.
    pub fn zero() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            determinant: 0.0,
            degenerate: true,
        }
    }

    fn degenerate(determinant: f64) -> Self {
        Self {
            determinant,
            ..Self::zero()
        }
    }
}

/// Sample moments of a quadruple `(A, B, C, D)` on the coupled observations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentStatistics {
    pub n: usize,
    pub mean_a: f64,
    pub mean_b: f64,
    pub mean_c: f64,
    pub mean_d: f64,
    pub var_a: f64,
    pub var_b: f64,
    pub var_c: f64,
    pub var_d: f64,
    pub cov_ab: f64,
    pub cov_ac: f64,
    pub cov_ad: f64,
    pub cov_bc: f64,
    pub cov_bd: f64,
    pub cov_cd: f64,
}

impl MomentStatistics {
    pub fn from_slices(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Result<Self> {
        let n = a.len();
        if b.len() != n || c.len() != n || d.len() != n {
            return Err(Error::InvalidParameter(
                "control-variate sequences must have equal length".into(),
            ));
        }
        if n < 2 {
            return Err(Error::InvalidParameter(
                "at least 2 observations are needed for sample moments".into(),
            ));
        }
        Ok(Self {
            n,
            mean_a: mean(a),
            mean_b: mean(b),
            mean_c: mean(c),
            mean_d: mean(d),
            var_a: variance(a),
            var_b: variance(b),
            var_c: variance(c),
            var_d: variance(d),
            cov_ab: covariance(a, b),
            cov_ac: covariance(a, c),
            cov_ad: covariance(a, d),
            cov_bc: covariance(b, c),
            cov_bd: covariance(b, d),
            cov_cd: covariance(c, d),
        })
    }

    /// `Var(B)Var(D) - Cov(B,D)^2`.
    pub fn determinant(&self) -> f64 {
        self.var_b * self.var_d - self.cov_bd * self.cov_bd
    }

    /// True when `(B, D)` cannot serve as a control pair.
    pub fn controls_degenerate(&self) -> bool {
        if !(self.var_b > 0.0 && self.var_d > 0.0) {
            return true;
        }
        let scale = self.var_b * self.var_d;
        let corr = self.cov_bd / scale.sqrt();
        self.determinant() <= DETERMINANT_RTOL * scale || corr.abs() >= COLLINEAR_CORR
    }
}

/// Exact control-variate coefficient `Cov(A, B) / Var(B)`.
pub fn cv_coefficient(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::InvalidParameter(
            "sequences must have equal length >= 2".into(),
        ));
    }
    let vb = variance(b);
    if vb <= 0.0 {
        return Err(Error::DegenerateControlVariate);
    }
    Ok(covariance(a, b) / vb)
}

/// Optimal `(alpha, beta)` for the ACV/ACV ratio estimator.
///
/// All slices hold the `n` coupled observations. `r_plugin` stands in for
/// the unknown ratio `E[A] / E[C]`. Degenerate control pairs, and a zero
/// `r_plugin` (which `beta` divides by), yield zero coefficients.
pub fn acv_ratio_coefficients(
    a: &[f64],
    b: &[f64],
    c: &[f64],
    d: &[f64],
    r_plugin: f64,
) -> Result<AcvCoefficients> {
    if a.len() < 3 {
        return Err(Error::InvalidParameter(
            "at least 3 coupled observations are needed".into(),
        ));
    }
    if !r_plugin.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "ratio plug-in must be finite, got {r_plugin}"
        )));
    }
    let s = MomentStatistics::from_slices(a, b, c, d)?;
    if s.mean_c == 0.0 {
        return Err(Error::NoExceedances);
    }
    Ok(coefficients_from_moments(&s, r_plugin))
}

pub(crate) fn coefficients_from_moments(s: &MomentStatistics, r: f64) -> AcvCoefficients {
    let det = s.determinant();
    if s.controls_degenerate() || r == 0.0 {
        return AcvCoefficients::degenerate(det);
    }
    let alpha = (s.var_d * s.cov_ab - r * s.var_d * s.cov_bc + r * s.cov_bd * s.cov_cd
        - s.cov_bd * s.cov_ad)
        / det;
    let beta = (s.cov_bd * s.cov_ab - r * s.cov_bd * s.cov_bc + r * s.var_b * s.cov_cd
        - s.var_b * s.cov_ad)
        / (r * det);
    if !(alpha.is_finite() && beta.is_finite()) {
        return AcvCoefficients::degenerate(det);
    }
    AcvCoefficients {
        alpha,
        beta,
        determinant: det,
        degenerate: false,
    }
}

/// `mean_{n+m}(x) - mean_n(x)` where the first `n` entries are the coupled ones.
pub(crate) fn mean_shift(all: &[f64], n: usize) -> f64 {
    mean(all) - mean(&all[..n])
}

/// ACV/ACV ratio on raw slices: `num`, `den` have length `n`, the controls
/// `n + m` with the coupled observations first.
pub fn acv_ratio(
    num: &[f64],
    num_control: &[f64],
    den: &[f64],
    den_control: &[f64],
    coeffs: &AcvCoefficients,
) -> Result<f64> {
    let n = num.len();
    if den.len() != n || num_control.len() < n || den_control.len() != num_control.len() {
        return Err(Error::InvalidParameter(
            "inconsistent control-variate lengths".into(),
        ));
    }
    let numerator = mean(num) + coeffs.alpha * mean_shift(num_control, n);
    let denominator = mean(den) + coeffs.beta * mean_shift(den_control, n);
    if denominator == 0.0 || !denominator.is_finite() {
        return Err(Error::DegenerateDenominator);
    }
    Ok(numerator / denominator)
}

/// ACV/ACV estimate of `E[A] / E[C]` with controls `B`, `D`.
pub fn acv_ratio_estimate(vars: &CvVariables, coeffs: &AcvCoefficients) -> Result<f64> {
    acv_ratio(&vars.a, &vars.b, &vars.c, &vars.d, coeffs)
}

/// Plug-in estimate of `Var(Hill) - Var(transferred Hill)`:
///
/// ```text
///   m / (n (n + m)) / E[C]^2
///     * Var((g Cov(B,C) - Cov(A,B)) D - (g Cov(C,D) - Cov(A,D)) B)
///     / (Var(B) Var(D) - Cov(B,D)^2)
/// ```
///
/// with `g = gamma_hat` and sample moments on the coupled observations.
/// Small exceedance counts can make the estimate negative.
pub fn variance_difference_plugin(vars: &CvVariables, gamma_hat: f64) -> Result<f64> {
    variance_difference_from_parts(
        &vars.a,
        vars.coupled_b(),
        &vars.c,
        vars.coupled_d(),
        vars.m(),
        gamma_hat,
    )
}

/// [`variance_difference_plugin`] on the coupled slices, with `m` extra
/// source observations.
pub fn variance_difference_from_parts(
    a: &[f64],
    b: &[f64],
    c: &[f64],
    d: &[f64],
    m: usize,
    gamma_hat: f64,
) -> Result<f64> {
    let s = MomentStatistics::from_slices(a, b, c, d)?;
    if s.controls_degenerate() {
        return Err(Error::DegenerateCovariance);
    }
    if s.mean_c == 0.0 {
        return Err(Error::NoExceedances);
    }
    if m == 0 {
        return Ok(0.0);
    }
    let weight_d = gamma_hat * s.cov_bc - s.cov_ab;
    let weight_b = gamma_hat * s.cov_cd - s.cov_ad;
    let combo: Vec<f64> = d
        .iter()
        .zip(b)
        .map(|(&dj, &bj)| weight_d * dj - weight_b * bj)
        .collect();
    let (n, m) = (a.len() as f64, m as f64);
    let prefactor = m / (n * (n + m)) / (s.mean_c * s.mean_c);
    Ok(prefactor * variance(&combo) / s.determinant())
}

/// Delta-method variance of the plain ratio `mean(A) / mean(C)`:
/// `Var(A - R C) / (n mean(C)^2)`.
pub fn ratio_variance_plugin(a: &[f64], c: &[f64]) -> Result<f64> {
    let n = a.len();
    if c.len() != n || n < 2 {
        return Err(Error::InvalidParameter(
            "sequences must have equal length >= 2".into(),
        ));
    }
    let mc = mean(c);
    if mc == 0.0 {
        return Err(Error::NoExceedances);
    }
    let r = mean(a) / mc;
    let resid: Vec<f64> = a.iter().zip(c).map(|(x, y)| x - r * y).collect();
    Ok(variance(&resid) / (n as f64 * mc * mc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{build_cv_variables, SemiSupervisedDataset};

    /// Covariance via the pairwise form `sum_{i<j} (x_i-x_j)(y_i-y_j) / (n(n-1))`,
    /// independent of the mean-centred implementation.
    fn pairwise_cov(x: &[f64], y: &[f64]) -> f64 {
        let n = x.len();
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += (x[i] - x[j]) * (y[i] - y[j]);
            }
        }
        s / (n * (n - 1)) as f64
    }

    #[test]
    fn cv_coefficient_examples() {
        let a = [1.0, 2.0, 3.0, 4.0];
        assert!((cv_coefficient(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        let o1 = [1.0, -1.0, 1.0, -1.0];
        let o2 = [1.0, 1.0, -1.0, -1.0];
        assert_eq!(cv_coefficient(&o1, &o2).unwrap(), 0.0);
        assert!((cv_coefficient(&a, &[2.0, 4.0, 6.0, 8.0]).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(
            cv_coefficient(&a, &[3.0; 4]),
            Err(Error::DegenerateControlVariate)
        );
    }

    #[test]
    fn coefficients_match_pairwise_oracle() {
        let a = [0.0, 0.0, 1.0, 2.0];
        let c = [0.0, 0.0, 1.0, 1.0];
        let b = [0.0, 1.0, 1.0, 2.0];
        let d = [0.0, 1.0, 1.0, 1.0];
        let r = 1.5;
        let cov = pairwise_cov;
        let det = cov(&b, &b) * cov(&d, &d) - cov(&b, &d).powi(2);
        let alpha = (cov(&d, &d) * cov(&a, &b) - r * cov(&d, &d) * cov(&b, &c)
            + r * cov(&b, &d) * cov(&c, &d)
            - cov(&b, &d) * cov(&a, &d))
            / det;
        let beta = (cov(&b, &d) * cov(&a, &b) - r * cov(&b, &d) * cov(&b, &c)
            + r * cov(&b, &b) * cov(&c, &d)
            - cov(&b, &b) * cov(&a, &d))
            / (r * det);

        let got = acv_ratio_coefficients(&a, &b, &c, &d, r).unwrap();
        assert!(!got.degenerate);
        assert!(
            (got.alpha - alpha).abs() < 1e-12,
            "{} vs {alpha}",
            got.alpha
        );
        assert!((got.beta - beta).abs() < 1e-12, "{} vs {beta}", got.beta);
        assert!((got.determinant - det).abs() < 1e-12);
    }

    #[test]
    fn identical_controls_give_unit_coefficients() {
        let a = [0.0, 0.3, 0.0, 1.2, 0.7, 0.0, 2.0];
        let c = [0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let r = mean(&a) / mean(&c);
        let got = acv_ratio_coefficients(&a, &a, &c, &c, r).unwrap();
        assert!((got.alpha - 1.0).abs() < 1e-10);
        assert!((got.beta - 1.0).abs() < 1e-10);
    }

    #[test]
    fn uncorrelated_controls_give_zero_coefficients() {
        // every cross-covariance between (a, c) and (b, d) vanishes
        let a = [1.0, -1.0, 1.0, -1.0];
        let c = [2.0, 0.0, 2.0, 0.0];
        let b = [1.0, 1.0, -1.0, -1.0];
        let d = [1.0, 2.0, 2.0, 1.0];
        let got = acv_ratio_coefficients(&a, &b, &c, &d, 0.7).unwrap();
        assert!(!got.degenerate);
        assert_eq!(got.alpha, 0.0);
        assert_eq!(got.beta, 0.0);
    }

    #[test]
    fn degenerate_inputs_fall_back_to_zero() {
        let a = [0.0, 0.0, 1.0, 2.0];
        let c = [0.0, 0.0, 1.0, 1.0];
        // collinear controls
        let got = acv_ratio_coefficients(&a, &c, &c, &c, 1.5).unwrap();
        assert!(got.degenerate);
        assert_eq!((got.alpha, got.beta), (0.0, 0.0));
        // constant control
        let got = acv_ratio_coefficients(&a, &[0.0; 4], &c, &c, 1.5).unwrap();
        assert!(got.degenerate);
        // zero ratio plug-in
        let b = [0.0, 1.0, 1.0, 2.0];
        let d = [0.0, 1.0, 1.0, 1.0];
        let got = acv_ratio_coefficients(&a, &b, &c, &d, 0.0).unwrap();
        assert!(got.degenerate);
        assert_eq!((got.alpha, got.beta), (0.0, 0.0));
        // no target exceedances
        assert_eq!(
            acv_ratio_coefficients(&[0.0; 4], &b, &[0.0; 4], &d, 1.0),
            Err(Error::NoExceedances)
        );
    }

    fn five_point_vars(extra: Vec<f64>) -> CvVariables {
        let y = vec![1.0, 2.0, 4.0, 8.0, 16.0];
        let ds = SemiSupervisedDataset::new(y.clone(), y, extra).unwrap();
        build_cv_variables(&ds, 2, 2).unwrap()
    }

    #[test]
    fn ratio_estimate_without_extra_is_plain_ratio() {
        let vars = five_point_vars(vec![]);
        let coeffs = AcvCoefficients {
            alpha: 0.8,
            beta: 1.3,
            determinant: 1.0,
            degenerate: false,
        };
        let plain = mean(&vars.a) / mean(&vars.c);
        assert_eq!(acv_ratio_estimate(&vars, &coeffs).unwrap(), plain);
        let with_extra = five_point_vars(vec![16.0; 5]);
        assert_eq!(
            acv_ratio_estimate(&with_extra, &AcvCoefficients::zero()).unwrap(),
            plain
        );
    }

    #[test]
    fn ratio_estimate_hand_value() {
        // b over 10 points: mean 1.3 ln2, coupled mean 0.6 ln2;
        // d: 0.7 vs 0.4. Numerator 1.3 ln2, denominator 0.7.
        let vars = five_point_vars(vec![16.0; 5]);
        let coeffs = AcvCoefficients {
            alpha: 1.0,
            beta: 1.0,
            determinant: 1.0,
            degenerate: false,
        };
        let got = acv_ratio_estimate(&vars, &coeffs).unwrap();
        assert!((got - 13.0 / 7.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn ratio_estimate_zero_denominator() {
        let coeffs = AcvCoefficients {
            alpha: 0.0,
            beta: -1.0,
            determinant: 1.0,
            degenerate: false,
        };
        let got = acv_ratio(
            &[1.0, 1.0],
            &[0.0; 4],
            &[1.0, 1.0],
            &[0.0, 0.0, 2.0, 2.0],
            &coeffs,
        );
        assert_eq!(got, Err(Error::DegenerateDenominator));
    }

    #[test]
    fn variance_difference_vanishes_without_extra() {
        let y = vec![1.0, 3.0, 2.0, 9.0, 5.0, 4.0, 12.0, 7.0];
        let s = vec![2.0, 1.0, 3.0, 5.0, 8.0, 4.0, 6.0, 11.0];
        let ds = SemiSupervisedDataset::new(y, s, vec![]).unwrap();
        let vars = build_cv_variables(&ds, 3, 3).unwrap();
        assert_eq!(variance_difference_plugin(&vars, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn ratio_variance_by_hand() {
        // R = 1.5 ln2 ... residual a - R c = [0,0,0,-0.5ln2,0.5ln2]
        let a = [
            0.0,
            0.0,
            0.0,
            std::f64::consts::LN_2,
            2.0 * std::f64::consts::LN_2,
        ];
        let c = [0.0, 0.0, 0.0, 1.0, 1.0];
        let ln2sq = std::f64::consts::LN_2.powi(2);
        let want = (0.5 * ln2sq / 4.0) / (5.0 * 0.16);
        assert!((ratio_variance_plugin(&a, &c).unwrap() - want).abs() < 1e-14);
    }
}

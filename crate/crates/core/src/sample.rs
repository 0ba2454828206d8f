//! Semi-supervised samples, order statistics and the control-variate
//! variables built on top of them.
//!
//! A [`SemiSupervisedDataset`] holds `n` coupled `(target, source)` pairs and
//! `m` extra source observations. [`build_cv_variables`] turns it into the six
//! variables used by the transferred estimators:
//!
//! ```text
//! A = ln(Y_T / u_T) 1{Y_T > u_T}     B = ln(Y_S / u_S) 1{Y_S > u_S}
//! C = 1{Y_T > u_T}                   D = 1{Y_S > u_S}
//! G = A^2                            H = B^2
//! ```
//!
//! where `u_T` and `u_S` are the `(n - k)`-th order statistics of the coupled
//! target and source observations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `n` coupled target/source observations plus `m` unpaired source observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiSupervisedDataset {
    paired_target: Vec<f64>,
    paired_source: Vec<f64>,
    extra_source: Vec<f64>,
}

impl SemiSupervisedDataset {
    pub fn new(
        paired_target: Vec<f64>,
        paired_source: Vec<f64>,
        extra_source: Vec<f64>,
    ) -> Result<Self> {
        if paired_target.len() != paired_source.len() {
            return Err(Error::InvalidDataset(format!(
                "{} target values but {} paired source values",
                paired_target.len(),
                paired_source.len()
            )));
        }
        if paired_target.len() < 2 {
            return Err(Error::InvalidDataset(
                "at least 2 coupled observations are required".into(),
            ));
        }
        let all = paired_target
            .iter()
            .chain(&paired_source)
            .chain(&extra_source);
        if all.clone().any(|x| !x.is_finite()) {
            return Err(Error::InvalidDataset("non-finite value".into()));
        }
        Ok(Self {
            paired_target,
            paired_source,
            extra_source,
        })
    }

    pub fn paired_target(&self) -> &[f64] {
        &self.paired_target
    }

    pub fn paired_source(&self) -> &[f64] {
        &self.paired_source
    }

    pub fn extra_source(&self) -> &[f64] {
        &self.extra_source
    }

    /// Number of coupled pairs.
    pub fn n(&self) -> usize {
        self.paired_target.len()
    }

    /// Number of extra source observations.
    pub fn m(&self) -> usize {
        self.extra_source.len()
    }

    /// Same coupled pairs, without the extra source observations.
    pub fn without_extra(&self) -> Self {
        Self {
            paired_target: self.paired_target.clone(),
            paired_source: self.paired_source.clone(),
            extra_source: Vec::new(),
        }
    }
}

/// Ascending copy of `sample`. Ties are kept.
pub fn order_statistics(sample: &[f64]) -> Result<Vec<f64>> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(sorted)
}

/// The `(n - k)`-th ascending order statistic `Y_{n-k:n}`.
pub fn threshold_at(sample: &[f64], k: usize) -> Result<f64> {
    let n = sample.len();
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidK { k, n });
    }
    let mut work = sample.to_vec();
    let (_, nth, _) = work.select_nth_unstable_by(n - k - 1, f64::total_cmp);
    Ok(*nth)
}

/// Realized control-variate variables for one dataset.
///
/// Target-side vectors (`a`, `c`, `g`) have length `n`; source-side vectors
/// (`b`, `d`, `h`) have length `n + m` with the coupled observations first.
#[derive(Debug, Clone, PartialEq)]
pub struct CvVariables {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub g: Vec<f64>,
    pub h: Vec<f64>,
    pub target_threshold: f64,
    pub source_threshold: f64,
    pub k_target: usize,
    pub k_source: usize,
}

impl CvVariables {
    /// Number of coupled observations.
    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Number of extra source observations.
    pub fn m(&self) -> usize {
        self.b.len() - self.a.len()
    }

    /// Source-side variables restricted to the coupled observations.
    pub fn coupled_b(&self) -> &[f64] {
        &self.b[..self.n()]
    }

    pub fn coupled_d(&self) -> &[f64] {
        &self.d[..self.n()]
    }

    pub fn coupled_h(&self) -> &[f64] {
        &self.h[..self.n()]
    }

    /// Number of target exceedances.
    pub fn target_exceedances(&self) -> usize {
        self.c.iter().filter(|&&c| c > 0.0).count()
    }
}

/// Log-excess, indicator and squared log-excess of `values` over `threshold`.
pub(crate) fn log_excesses(values: &[f64], threshold: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let ln_u = threshold.ln();
    let mut excess = Vec::with_capacity(values.len());
    let mut indicator = Vec::with_capacity(values.len());
    let mut squared = Vec::with_capacity(values.len());
    for &y in values {
        if y > threshold {
            let e = y.ln() - ln_u;
            excess.push(e);
            indicator.push(1.0);
            squared.push(e * e);
        } else {
            excess.push(0.0);
            indicator.push(0.0);
            squared.push(0.0);
        }
    }
    (excess, indicator, squared)
}

/// Builds `A, B, C, D, G, H` with target threshold `Y^T_{n-k:n}` and source
/// threshold `Y^S_{n-k_source:n}`, both taken from the coupled observations.
/// Exceedance is strict, so ties at the threshold are not counted.
pub fn build_cv_variables(
    dataset: &SemiSupervisedDataset,
    k: usize,
    k_source: usize,
) -> Result<CvVariables> {
    let target_threshold = threshold_at(dataset.paired_target(), k)?;
    let source_threshold = threshold_at(dataset.paired_source(), k_source)?;
    if target_threshold <= 0.0 {
        return Err(Error::LogUndefined {
            threshold: target_threshold,
        });
    }
    if source_threshold <= 0.0 {
        return Err(Error::LogUndefined {
            threshold: source_threshold,
        });
    }

    let (a, c, g) = log_excesses(dataset.paired_target(), target_threshold);
    let source: Vec<f64> = dataset
        .paired_source()
        .iter()
        .chain(dataset.extra_source())
        .copied()
        .collect();
    let (b, d, h) = log_excesses(&source, source_threshold);

    Ok(CvVariables {
        a,
        b,
        c,
        d,
        g,
        h,
        target_threshold,
        source_threshold,
        k_target: k,
        k_source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ln(x: f64) -> f64 {
        x.ln()
    }

    #[test]
    fn order_statistics_sorts_and_keeps_ties() {
        assert_eq!(
            order_statistics(&[3.0, 1.0, 2.0]).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
        assert_eq!(order_statistics(&[5.0]).unwrap(), vec![5.0]);
        assert_eq!(
            order_statistics(&[2.0, 2.0, 1.0]).unwrap(),
            vec![1.0, 2.0, 2.0]
        );
        assert_eq!(order_statistics(&[]), Err(Error::EmptySample));
    }

    #[test]
    fn threshold_examples() {
        let s = [1.0, 2.0, 4.0, 8.0, 16.0];
        assert_eq!(threshold_at(&s, 2).unwrap(), 4.0);
        assert_eq!(threshold_at(&s, 4).unwrap(), 1.0);
        assert_eq!(threshold_at(&[7.0; 4], 1).unwrap(), 7.0);
        assert_eq!(threshold_at(&s, 0), Err(Error::InvalidK { k: 0, n: 5 }));
        assert_eq!(threshold_at(&s, 5), Err(Error::InvalidK { k: 5, n: 5 }));
    }

    #[test]
    fn cv_variables_identical_source() {
        let y = vec![1.0, 2.0, 4.0, 8.0, 16.0];
        let ds = SemiSupervisedDataset::new(y.clone(), y, vec![]).unwrap();
        let v = build_cv_variables(&ds, 2, 2).unwrap();
        let expected_a = [0.0, 0.0, 0.0, ln(2.0), ln(4.0)];
        for (got, want) in v.a.iter().zip(expected_a) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(v.c, vec![0.0, 0.0, 0.0, 1.0, 1.0]);
        assert_eq!(v.b, v.a);
        assert_eq!(v.d, v.c);
        assert_eq!(v.g, v.a.iter().map(|a| a * a).collect::<Vec<_>>());
        assert_eq!(v.m(), 0);
    }

    #[test]
    fn tied_source_has_no_exceedances() {
        let ds = SemiSupervisedDataset::new(vec![1.0, 2.0, 4.0, 8.0, 16.0], vec![1.0; 5], vec![])
            .unwrap();
        let v = build_cv_variables(&ds, 2, 2).unwrap();
        assert!(v.d.iter().all(|&d| d == 0.0));
        assert!(v.b.iter().all(|&b| b == 0.0));
    }

    #[test]
    fn tied_target_empties_exceedance_set() {
        let t = vec![1.0, 2.0, 3.0, 3.0, 3.0];
        let ds = SemiSupervisedDataset::new(t.clone(), t, vec![]).unwrap();
        let v = build_cv_variables(&ds, 2, 2).unwrap();
        assert_eq!(v.target_threshold, 3.0);
        assert_eq!(v.a, vec![0.0; 5]);
        assert_eq!(v.c, vec![0.0; 5]);
    }

    #[test]
    fn extra_source_uses_coupled_threshold() {
        let t = vec![1.0, 2.0, 4.0, 8.0, 16.0];
        let ds = SemiSupervisedDataset::new(t.clone(), t, vec![3.0, 32.0]).unwrap();
        let v = build_cv_variables(&ds, 2, 2).unwrap();
        assert_eq!(v.source_threshold, 4.0);
        assert_eq!(v.d, vec![0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0]);
        assert!((v.b[6] - ln(8.0)).abs() < 1e-15);
        assert_eq!(v.h[6], v.b[6] * v.b[6]);
    }

    #[test]
    fn non_positive_threshold_rejected() {
        let t = vec![-3.0, -2.0, -1.0, 0.0, 1.0];
        let ds = SemiSupervisedDataset::new(t.clone(), t, vec![]).unwrap();
        assert!(matches!(
            build_cv_variables(&ds, 2, 2),
            Err(Error::LogUndefined { .. })
        ));
    }

    #[test]
    fn dataset_validation() {
        assert!(SemiSupervisedDataset::new(vec![1.0, 2.0], vec![1.0], vec![]).is_err());
        assert!(SemiSupervisedDataset::new(vec![1.0], vec![1.0], vec![]).is_err());
        assert!(SemiSupervisedDataset::new(vec![1.0, f64::NAN], vec![1.0, 2.0], vec![]).is_err());
        assert!(
            SemiSupervisedDataset::new(vec![1.0, 2.0], vec![1.0, 2.0], vec![f64::INFINITY])
                .is_err()
        );
    }
}

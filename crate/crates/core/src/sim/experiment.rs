//! Replicated relative-variance-reduction experiments.
//!
//! Each replication draws `n` coupled pairs from a Gumbel copula with Pareto
//! target and configurable source marginals, plus `m` independent extra
//! source draws, then evaluates the requested estimators. Replications own
//! their random streams and are reduced in index order, so results do not
//! depend on the number of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::copula::sample_gumbel_copula;
use super::marginal::Marginal;
use super::rng::{open_unit, stream_rng, StreamRole};
use crate::dependence::{dependence_report_from_vars, rvr_from_report, DependenceReport};
use crate::error::{Error, Result};
use crate::estimators::{hill, moment, EviEstimate, Method};
use crate::sample::{build_cv_variables, CvVariables, SemiSupervisedDataset};
use crate::transfer::{transferred_hill_from_vars, transferred_moment_from_vars};

/// Full description of one simulation study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub gamma_t: f64,
    /// Pareto scale shared by the target and a Pareto source.
    pub y_m: f64,
    pub source: Marginal,
    pub theta: f64,
    pub n: usize,
    pub k: usize,
    pub k_source: usize,
    pub m: usize,
    pub replications: usize,
    pub seed: u64,
    pub estimators: Vec<Method>,
}

impl ExperimentConfig {
    /// Pareto/Pareto setup with `y_m = 1e-3`, `k = k_source = round(0.1 n)`,
    /// all four estimators and 10,000 replications.
    pub fn new(theta: f64, gamma_t: f64, gamma_s: f64, n: usize, m: usize) -> Self {
        let y_m = 1e-3;
        let k = Self::default_k(n);
        Self {
            gamma_t,
            y_m,
            source: Marginal::with_evi(gamma_s, y_m),
            theta,
            n,
            k,
            k_source: k,
            m,
            replications: 10_000,
            seed: 0,
            estimators: Method::ALL.to_vec(),
        }
    }

    pub fn default_k(n: usize) -> usize {
        ((0.1 * n as f64).round() as usize).max(1)
    }

    pub fn with_replications(mut self, replications: usize) -> Self {
        self.replications = replications;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_estimators(mut self, estimators: Vec<Method>) -> Self {
        self.estimators = estimators;
        self
    }

    /// Sets `n` and resets `k = k_source = round(0.1 n)`.
    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self.k = Self::default_k(n);
        self.k_source = self.k;
        self
    }

    pub fn target(&self) -> Marginal {
        Marginal::Pareto {
            gamma: self.gamma_t,
            y_m: self.y_m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.theta.is_nan() || self.theta < 1.0 {
            return bad(format!("theta must be >= 1, got {}", self.theta));
        }
        if !(self.gamma_t > 0.0 && self.y_m > 0.0) {
            return bad(format!(
                "need gamma_t > 0 and y_m > 0, got {} and {}",
                self.gamma_t, self.y_m
            ));
        }
        self.source.validate()?;
        if self.n < 3 {
            return bad(format!("n must be >= 3, got {}", self.n));
        }
        if self.k == 0 || self.k >= self.n {
            return Err(Error::InvalidK {
                k: self.k,
                n: self.n,
            });
        }
        if self.k_source == 0 || self.k_source >= self.n {
            return Err(Error::InvalidK {
                k: self.k_source,
                n: self.n,
            });
        }
        if self.replications < 2 {
            return bad("at least 2 replications are required".into());
        }
        if self.estimators.is_empty() {
            return bad("no estimators requested".into());
        }
        Ok(())
    }
}

/// Deterministic dataset for replication `replication` of `config`.
pub fn generate_dataset(
    config: &ExperimentConfig,
    replication: u64,
) -> Result<SemiSupervisedDataset> {
    let target = config.target();
    let mut coupled_rng = stream_rng(config.seed, replication, StreamRole::Coupled);
    let pairs = sample_gumbel_copula(config.theta, config.n, &mut coupled_rng)?;
    let mut paired_target = Vec::with_capacity(config.n);
    let mut paired_source = Vec::with_capacity(config.n);
    for (u1, u2) in pairs {
        paired_target.push(target.quantile(u1)?);
        paired_source.push(config.source.quantile(u2)?);
    }
    let mut extra_rng = stream_rng(config.seed, replication, StreamRole::Extra);
    let extra_source = (0..config.m)
        .map(|_| config.source.quantile(open_unit(&mut extra_rng)))
        .collect::<Result<Vec<_>>>()?;
    SemiSupervisedDataset::new(paired_target, paired_source, extra_source)
}

/// Outcome of one replication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationRecord {
    pub index: u64,
    /// One entry per configured estimator, `None` on failure.
    pub estimates: Vec<Option<f64>>,
    pub dependence: Option<DependenceReport>,
    pub asymptotic_rvr: Option<f64>,
}

impl ReplicationRecord {
    pub fn is_complete(&self) -> bool {
        self.estimates.iter().all(Option::is_some)
    }
}

/// Empirical moments of one estimator across completed replications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorSummary {
    pub method: Method,
    pub mean: f64,
    pub variance: f64,
    pub bias: f64,
}

/// Baseline versus transferred estimator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RvrPair {
    pub baseline: Method,
    pub transferred: Method,
    pub var_base: f64,
    pub var_new: f64,
    pub rvr: f64,
    pub bias_base: f64,
    pub bias_new: f64,
}

/// Dependence diagnostics averaged over the replications where they exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DependenceSummary {
    pub lambda_hat: f64,
    pub corr_ab: f64,
    pub corr_cd: f64,
    pub c_ad_hat: f64,
    pub c_ab_hat: f64,
    pub p_hat: f64,
    pub replications: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RvrReport {
    pub config: ExperimentConfig,
    pub completed: usize,
    pub failed: usize,
    pub estimators: Vec<EstimatorSummary>,
    pub pairs: Vec<RvrPair>,
    pub dependence: Option<DependenceSummary>,
    /// Mean plug-in asymptotic RVR of the transferred Hill estimator.
    pub asymptotic_rvr: Option<f64>,
}

impl RvrReport {
    pub fn pair(&self, transferred: Method) -> Option<&RvrPair> {
        self.pairs.iter().find(|p| p.transferred == transferred)
    }

    pub fn summary(&self, method: Method) -> Option<&EstimatorSummary> {
        self.estimators.iter().find(|s| s.method == method)
    }
}

fn evaluate(
    method: Method,
    dataset: &SemiSupervisedDataset,
    vars: &CvVariables,
    k: usize,
) -> Result<EviEstimate> {
    match method {
        Method::Hill => hill(dataset.paired_target(), k),
        Method::Moment => moment(dataset.paired_target(), k),
        Method::TransferredHill => transferred_hill_from_vars(vars),
        Method::TransferredMoment => transferred_moment_from_vars(vars),
    }
}

fn run_replication(config: &ExperimentConfig, index: u64) -> ReplicationRecord {
    let failed = || ReplicationRecord {
        index,
        estimates: vec![None; config.estimators.len()],
        dependence: None,
        asymptotic_rvr: None,
    };
    let Ok(dataset) = generate_dataset(config, index) else {
        return failed();
    };
    let Ok(vars) = build_cv_variables(&dataset, config.k, config.k_source) else {
        return failed();
    };
    let estimates = config
        .estimators
        .iter()
        .map(|&m| evaluate(m, &dataset, &vars, config.k).ok().map(|e| e.value))
        .collect();

    let gamma_t = hill(dataset.paired_target(), config.k).map(|e| e.value);
    let gamma_s = hill(dataset.paired_source(), config.k_source).map(|e| e.value);
    let dependence = match (gamma_t, gamma_s) {
        (Ok(gt), Ok(gs)) => dependence_report_from_vars(&dataset, &vars, gt, gs).ok(),
        _ => None,
    };
    let asymptotic_rvr = dependence.map(|d| rvr_from_report(&d, config.n, config.m, config.k));
    ReplicationRecord {
        index,
        estimates,
        dependence,
        asymptotic_rvr,
    }
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

fn average(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    sum / count as f64
}

/// Runs the experiment and returns the aggregated report.
pub fn run_rvr_experiment(config: &ExperimentConfig) -> Result<RvrReport> {
    run_rvr_experiment_with_records(config).map(|(report, _)| report)
}

/// Like [`run_rvr_experiment`], also returning every replication record.
///
/// A replication where any requested estimator fails is excluded from the
/// aggregates. More than 10% failures is an error.
pub fn run_rvr_experiment_with_records(
    config: &ExperimentConfig,
) -> Result<(RvrReport, Vec<ReplicationRecord>)> {
    config.validate()?;
    let records: Vec<ReplicationRecord> = (0..config.replications as u64)
        .into_par_iter()
        .map(|i| run_replication(config, i))
        .collect();

    let complete: Vec<&ReplicationRecord> = records.iter().filter(|r| r.is_complete()).collect();
    let failed = records.len() - complete.len();
    if failed * 10 > config.replications || complete.len() < 2 {
        return Err(Error::UnstableConfiguration {
            failed,
            total: config.replications,
        });
    }

    let estimators: Vec<EstimatorSummary> = config
        .estimators
        .iter()
        .enumerate()
        .map(|(j, &method)| {
            let values: Vec<f64> = complete.iter().map(|r| r.estimates[j].unwrap()).collect();
            let (mean, variance) = mean_var(&values);
            EstimatorSummary {
                method,
                mean,
                variance,
                bias: mean - config.gamma_t,
            }
        })
        .collect();

    let find = |m: Method| estimators.iter().find(|s| s.method == m);
    let pairs = [Method::TransferredHill, Method::TransferredMoment]
        .into_iter()
        .filter_map(|t| {
            let new = find(t)?;
            let base = find(t.baseline())?;
            Some(RvrPair {
                baseline: base.method,
                transferred: t,
                var_base: base.variance,
                var_new: new.variance,
                rvr: (base.variance - new.variance) / base.variance,
                bias_base: base.bias,
                bias_new: new.bias,
            })
        })
        .collect();

    let deps: Vec<&DependenceReport> = complete
        .iter()
        .filter_map(|r| r.dependence.as_ref())
        .collect();
    let dependence = (!deps.is_empty()).then(|| DependenceSummary {
        lambda_hat: average(deps.iter().map(|d| d.lambda_hat)),
        corr_ab: average(deps.iter().map(|d| d.corr_ab)),
        corr_cd: average(deps.iter().map(|d| d.corr_cd)),
        c_ad_hat: average(deps.iter().map(|d| d.c_ad_hat)),
        c_ab_hat: average(deps.iter().map(|d| d.c_ab_hat)),
        p_hat: average(deps.iter().map(|d| d.p_hat)),
        replications: deps.len(),
    });
    let asymptotic: Vec<f64> = complete.iter().filter_map(|r| r.asymptotic_rvr).collect();
    let asymptotic_rvr = (!asymptotic.is_empty()).then(|| average(asymptotic.iter().copied()));

    let report = RvrReport {
        config: config.clone(),
        completed: complete.len(),
        failed,
        estimators,
        pairs,
        dependence,
        asymptotic_rvr,
    };
    Ok((report, records))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig::new(5.0, 0.25, 0.5, 200, 500).with_replications(50)
    }

    #[test]
    fn defaults() {
        let c = ExperimentConfig::new(10.0, 0.25, 0.5, 1000, 5000);
        assert_eq!((c.k, c.k_source), (100, 100));
        assert_eq!(
            c.source,
            Marginal::Pareto {
                gamma: 0.5,
                y_m: 1e-3
            }
        );
        c.validate().unwrap();
        assert_eq!(c.clone().with_n(250).k, 25);
    }

    #[test]
    fn validation_errors() {
        let mut c = small();
        c.theta = 0.5;
        assert!(c.validate().is_err());
        let mut c = small();
        c.k = 200;
        assert!(c.validate().is_err());
        let c = small().with_replications(1);
        assert!(c.validate().is_err());
    }

    #[test]
    fn dataset_determinism_and_shape() {
        let c = small();
        let a = generate_dataset(&c, 3).unwrap();
        let b = generate_dataset(&c, 3).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_dataset(&c, 4).unwrap());
        assert_eq!((a.n(), a.m()), (200, 500));
        let mut no_extra = small();
        no_extra.m = 0;
        let d = generate_dataset(&no_extra, 3).unwrap();
        assert!(d.extra_source().is_empty());
        // coupled draws do not depend on m
        assert_eq!(d.paired_target(), a.paired_target());
    }

    #[test]
    fn hill_only_report_has_no_pairs() {
        let c = small().with_estimators(vec![Method::Hill]);
        let r = run_rvr_experiment(&c).unwrap();
        assert!(r.pairs.is_empty());
        assert_eq!(r.estimators.len(), 1);
        assert!(r.estimators[0].variance > 0.0);
    }

    #[test]
    fn rvr_matches_reported_variances() {
        let r = run_rvr_experiment(&small()).unwrap();
        for p in &r.pairs {
            assert_eq!(p.rvr, (p.var_base - p.var_new) / p.var_base);
        }
        assert_eq!(r.completed + r.failed, 50);
    }
}

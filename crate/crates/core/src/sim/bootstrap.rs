//! Subsampling study: repeatedly draw `n_sub` coupled pairs from a pool of
//! jointly observed data, treat the remaining source values as extra source
//! observations, and record every estimator.

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{stream_rng, StreamRole};
use crate::error::{Error, Result};
use crate::estimators::{hill, moment, Method};
use crate::sample::SemiSupervisedDataset;
use crate::transfer::{transferred_hill, transferred_moment};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapConfig {
    pub n_sub: usize,
    pub resamples: usize,
    pub k: usize,
    pub k_source: usize,
    pub methods: Vec<Method>,
    pub seed: u64,
    /// Draw the coupled indices with replacement instead of as a subsample.
    pub with_replacement: bool,
}

/// Values of one estimator across resamples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapSeries {
    pub method: Method,
    pub values: Vec<f64>,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    pub series: Vec<BootstrapSeries>,
}

impl BootstrapResult {
    pub fn values(&self, method: Method) -> Option<&[f64]> {
        self.series
            .iter()
            .find(|s| s.method == method)
            .map(|s| s.values.as_slice())
    }
}

fn resample(
    pool: &SemiSupervisedDataset,
    cfg: &BootstrapConfig,
    resample_index: u64,
) -> Result<SemiSupervisedDataset> {
    let size = pool.n();
    let mut rng = stream_rng(cfg.seed, resample_index, StreamRole::Bootstrap);
    let mut chosen: Vec<usize> = if cfg.with_replacement {
        (0..cfg.n_sub).map(|_| rng.random_range(0..size)).collect()
    } else {
        index::sample(&mut rng, size, cfg.n_sub).into_vec()
    };
    chosen.sort_unstable();

    let mut selected = vec![false; size];
    for &i in &chosen {
        selected[i] = true;
    }
    let target = chosen.iter().map(|&i| pool.paired_target()[i]).collect();
    let source = chosen.iter().map(|&i| pool.paired_source()[i]).collect();
    let extra = (0..size)
        .filter(|&i| !selected[i])
        .map(|i| pool.paired_source()[i])
        .chain(pool.extra_source().iter().copied())
        .collect();
    SemiSupervisedDataset::new(target, source, extra)
}

/// Runs `resamples` subsamples of the joint pool (the pool's coupled pairs)
/// and evaluates each requested estimator. Per-estimator failures are
/// dropped from that estimator's series and counted.
pub fn bootstrap_study(
    pool: &SemiSupervisedDataset,
    cfg: &BootstrapConfig,
) -> Result<BootstrapResult> {
    if cfg.n_sub > pool.n() {
        return Err(Error::InvalidParameter(format!(
            "subsample size {} exceeds the pool of {} joint observations",
            cfg.n_sub,
            pool.n()
        )));
    }
    if cfg.n_sub < 3 || cfg.resamples == 0 || cfg.methods.is_empty() {
        return Err(Error::InvalidParameter(
            "need n_sub >= 3, at least one resample and one method".into(),
        ));
    }
    if cfg.k == 0 || cfg.k >= cfg.n_sub || cfg.k_source == 0 || cfg.k_source >= cfg.n_sub {
        return Err(Error::InvalidK {
            k: cfg.k.max(cfg.k_source),
            n: cfg.n_sub,
        });
    }

    let rows: Vec<Vec<Option<f64>>> = (0..cfg.resamples as u64)
        .into_par_iter()
        .map(|i| {
            let Ok(ds) = resample(pool, cfg, i) else {
                return vec![None; cfg.methods.len()];
            };
            cfg.methods
                .iter()
                .map(|&m| {
                    let est = match m {
                        Method::Hill => hill(ds.paired_target(), cfg.k),
                        Method::Moment => moment(ds.paired_target(), cfg.k),
                        Method::TransferredHill => transferred_hill(&ds, cfg.k, cfg.k_source),
                        Method::TransferredMoment => transferred_moment(&ds, cfg.k, cfg.k_source),
                    };
                    est.ok().map(|e| e.value)
                })
                .collect()
        })
        .collect();

    let series = cfg
        .methods
        .iter()
        .enumerate()
        .map(|(j, &method)| {
            let values: Vec<f64> = rows.iter().filter_map(|r| r[j]).collect();
            BootstrapSeries {
                method,
                failures: rows.len() - values.len(),
                values,
            }
        })
        .collect();
    Ok(BootstrapResult { series })
}

//! Scan over the number of source extremes `l` used to set the source
//! threshold, scoring each `l` by the plug-in variance of the transferred
//! Hill estimator.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::experiment::{generate_dataset, ExperimentConfig};
use crate::acv::{ratio_variance_plugin, variance_difference_from_parts};
use crate::error::{Error, Result};
use crate::sample::{build_cv_variables, log_excesses, order_statistics};
use crate::stats::{mean, quantile_sorted};

/// Distribution over replications of the analytical variance at one `l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub l: usize,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub mean: f64,
    /// Replications whose analytical variance came out negative.
    pub negatives: usize,
    pub evaluated: usize,
    pub failed: usize,
}

/// Analytical variance `Var_plugin(Hill) - variance_difference_plugin` of the
/// transferred Hill estimator for every `l` in `l_values`, over
/// `config.replications` datasets. Negative values are kept and counted.
pub fn source_threshold_scan(
    config: &ExperimentConfig,
    l_values: &[usize],
) -> Result<Vec<ScanRow>> {
    config.validate()?;
    if l_values.is_empty() {
        return Err(Error::InvalidParameter("no l values to scan".into()));
    }
    if let Some(&l) = l_values.iter().find(|&&l| l == 0 || l >= config.n) {
        return Err(Error::InvalidK { k: l, n: config.n });
    }

    // per replication, one analytical variance per l (None on failure)
    let per_rep: Vec<Vec<Option<f64>>> = (0..config.replications as u64)
        .into_par_iter()
        .map(|rep| {
            let Ok(dataset) = generate_dataset(config, rep) else {
                return vec![None; l_values.len()];
            };
            // target side and baseline do not depend on l
            let Ok(target) = build_cv_variables(&dataset.without_extra(), config.k, config.k)
            else {
                return vec![None; l_values.len()];
            };
            let base = ratio_variance_plugin(&target.a, &target.c).ok();
            let gamma = mean(&target.a) / mean(&target.c);
            let sorted_source = order_statistics(dataset.paired_source()).ok();
            l_values
                .iter()
                .map(|&l| {
                    let sorted = sorted_source.as_ref()?;
                    let threshold = sorted[config.n - l - 1];
                    if threshold <= 0.0 {
                        return None;
                    }
                    let (b, d, _) = log_excesses(dataset.paired_source(), threshold);
                    let diff = variance_difference_from_parts(
                        &target.a, &b, &target.c, &d, config.m, gamma,
                    )
                    .ok()?;
                    Some(base? - diff)
                })
                .collect()
        })
        .collect();

    Ok(l_values
        .iter()
        .enumerate()
        .map(|(j, &l)| {
            let mut values: Vec<f64> = per_rep.iter().filter_map(|r| r[j]).collect();
            values.sort_by(f64::total_cmp);
            let evaluated = values.len();
            ScanRow {
                l,
                median: quantile_sorted(&values, 0.5),
                q1: quantile_sorted(&values, 0.25),
                q3: quantile_sorted(&values, 0.75),
                mean: values.iter().sum::<f64>() / evaluated as f64,
                negatives: values.iter().filter(|&&v| v < 0.0).count(),
                evaluated,
                failed: config.replications - evaluated,
            }
        })
        .collect())
}

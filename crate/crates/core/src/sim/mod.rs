//! Synthetic data generation and the replicated experiment harness.

mod bootstrap;
mod copula;
mod experiment;
mod marginal;
mod rng;
mod scan;

pub use bootstrap::{bootstrap_study, BootstrapConfig, BootstrapResult, BootstrapSeries};
pub use copula::{positive_stable, sample_gumbel_copula};
pub use experiment::{
    generate_dataset, run_rvr_experiment, run_rvr_experiment_with_records, DependenceSummary,
    EstimatorSummary, ExperimentConfig, ReplicationRecord, RvrPair, RvrReport,
};
pub use marginal::{marginal_quantile, Marginal};
pub use rng::{open_unit, stream_rng, StreamRole};
pub use scan::{source_threshold_scan, ScanRow};

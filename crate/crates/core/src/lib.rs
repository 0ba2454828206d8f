//! Variance-reduced extreme value index estimation by transfer from a
//! correlated source sample.
//!
//! The setting is semi-supervised: `n` coupled `(target, source)`
//! observations and `m` extra source-only observations. The Hill and moment
//! estimators of the target EVI are written as ratios of means, and both
//! numerator and denominator are corrected with approximate control variates
//! built from the source sample.
//!
//! ```
//! use transfer_evi::{hill, transferred_hill, SemiSupervisedDataset};
//!
//! let target = vec![1.2, 3.4, 2.2, 9.8, 1.1, 4.5, 17.0, 2.9, 6.1, 1.6];
//! let source = vec![1.0, 2.9, 2.5, 8.1, 1.3, 3.9, 21.0, 3.3, 5.0, 1.4];
//! let extra = vec![2.0, 14.0, 1.7, 6.6, 3.1, 1.2, 9.9, 2.4];
//! let data = SemiSupervisedDataset::new(target, source, extra).unwrap();
//!
//! let baseline = hill(data.paired_target(), 3).unwrap();
//! let transferred = transferred_hill(&data, 3, 3).unwrap();
//! assert!(baseline.value > 0.0 && transferred.value.is_finite());
//! ```

pub mod acv;
pub mod cli;
pub mod dependence;
pub mod error;
pub mod estimators;
pub mod io;
pub mod sample;
pub mod sim;
pub mod stats;
pub mod transfer;

pub use acv::{
    acv_ratio_coefficients, acv_ratio_estimate, cv_coefficient, variance_difference_plugin,
    AcvCoefficients,
};
pub use dependence::{
    asymptotic_rvr, cv_correlations, dependence_report, tail_dependence, DependenceReport,
};
pub use error::{Error, Result};
pub use estimators::{
    hill, hill_plot, moment, EviEstimate, HillPlotSeries, Method, TransferCoefficients,
};
pub use io::{load_semi_supervised_csv, parse_config, read_config, write_semi_supervised_csv};
pub use sample::{
    build_cv_variables, order_statistics, threshold_at, CvVariables, SemiSupervisedDataset,
};
pub use transfer::{transferred_hill, transferred_moment};

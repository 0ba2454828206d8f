//! File formats: semi-supervised CSV data, flat `key = value` experiment
//! configs, and the tidy CSV/JSON reports written by the command line tool.

mod config;
mod data;
mod report;

pub use config::{parse_config, parse_methods, read_config, write_config};
pub use data::{load_semi_supervised_csv, write_semi_supervised_csv, DataFile};
pub use report::{
    format_number, write_bootstrap_csv, write_estimates_csv, write_hill_plot_csv, write_json,
    write_scan_csv, write_sweep_csv, SweepRow,
};

//! Command-line surface: subcommands that read data or config files and emit
//! JSON/CSV reports. Diagnostics go to stderr; data go only to output files.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::dependence::{dependence_report, DependenceReport};
use crate::error::{Error, Result};
use crate::estimators::{hill, hill_plot, moment, EviEstimate, Method};
use crate::io::{
    load_semi_supervised_csv, parse_methods, read_config, write_bootstrap_csv, write_estimates_csv,
    write_hill_plot_csv, write_json, write_scan_csv, write_sweep_csv, SweepRow,
};
use crate::sim::{
    bootstrap_study, run_rvr_experiment, run_rvr_experiment_with_records, source_threshold_scan,
    BootstrapConfig, ExperimentConfig, Marginal, RvrReport,
};
use crate::transfer::{transferred_hill, transferred_moment};

/// Environment variable holding the default worker-thread count.
pub const THREADS_ENV: &str = "TRANSFER_EVI_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "transfer-evi",
    version,
    about = "Variance-reduced extreme value index estimation"
)]
pub struct Cli {
    /// Worker threads for the simulation runner (default: $TRANSFER_EVI_THREADS, else all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate the target EVI from a `target,source` CSV file.
    Estimate {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        k: usize,
        /// Source exceedance count (default: k).
        #[arg(long)]
        k_source: Option<usize>,
        /// Comma-separated estimator names.
        #[arg(
            long,
            default_value = "hill,moment,transferred_hill,transferred_moment"
        )]
        methods: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a seeded simulation study; writes rvr_report.json and estimates.csv.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Repeat the simulation study over values of one parameter; writes sweep.csv and rvr_reports.json.
    RvrSweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        vary: SweepParameter,
        /// Comma-separated parameter values.
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Hill estimates of the target column over a grid of k.
    HillPlot {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        k_min: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Analytical transferred-Hill variance across source exceedance counts l.
    ThresholdScan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        l_min: usize,
        #[arg(long)]
        l_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Estimator values over random subsamples of a data file (long-format CSV).
    Bootstrap {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        n_sub: usize,
        #[arg(long)]
        resamples: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        k_source: Option<usize>,
        #[arg(long, default_value = "hill,transferred_hill")]
        methods: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resample coupled rows with replacement instead of subsampling.
        #[arg(long)]
        with_replacement: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParameter {
    Theta,
    M,
    N,
    #[value(name = "gamma_t", alias = "gamma-t")]
    GammaT,
    #[value(name = "gamma_s", alias = "gamma-s")]
    GammaS,
}

impl SweepParameter {
    pub fn column(self) -> &'static str {
        match self {
            SweepParameter::Theta => "theta",
            SweepParameter::M => "m",
            SweepParameter::N => "n",
            SweepParameter::GammaT => "gamma_t",
            SweepParameter::GammaS => "gamma_s",
        }
    }

    /// Copy of `base` with this parameter set to `value`. Setting `n` also
    /// resets both exceedance counts to their default `round(0.1 n)`.
    pub fn apply(self, base: &ExperimentConfig, value: f64) -> Result<ExperimentConfig> {
        let count = || {
            if value >= 0.0 && value.fract() == 0.0 {
                Ok(value as usize)
            } else {
                Err(Error::InvalidParameter(format!(
                    "{} must be a non-negative integer, got {value}",
                    self.column()
                )))
            }
        };
        let mut config = base.clone();
        match self {
            SweepParameter::Theta => config.theta = value,
            SweepParameter::M => config.m = count()?,
            SweepParameter::N => config = config.with_n(count()?),
            SweepParameter::GammaT => config.gamma_t = value,
            SweepParameter::GammaS => config.source = Marginal::with_evi(value, config.y_m),
        }
        config.validate()?;
        Ok(config)
    }
}

/// Output of the `estimate` subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub k_source: usize,
    pub estimates: Vec<EviEstimate>,
    /// Present when both Hill estimates are available and the tails overlap.
    pub dependence: Option<DependenceReport>,
    pub dependence_error: Option<String>,
}

/// One entry of `rvr_reports.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub value: f64,
    pub report: RvrReport,
}

/// Estimates every requested method on a data file.
pub fn estimate_file(
    data: &Path,
    k: usize,
    k_source: Option<usize>,
    methods: &[Method],
) -> Result<EstimateReport> {
    let dataset = load_semi_supervised_csv(data)?;
    let k_source = k_source.unwrap_or(k);
    let estimates = methods
        .iter()
        .map(|method| match method {
            Method::Hill => hill(dataset.paired_target(), k),
            Method::Moment => moment(dataset.paired_target(), k),
            Method::TransferredHill => transferred_hill(&dataset, k, k_source),
            Method::TransferredMoment => transferred_moment(&dataset, k, k_source),
        })
        .collect::<Result<Vec<_>>>()?;
    let dependence = hill(dataset.paired_target(), k).and_then(|gt| {
        let gs = hill(dataset.paired_source(), k_source)?;
        dependence_report(&dataset, k, k_source, gt.value, gs.value)
    });
    let (dependence, dependence_error) = match dependence {
        Ok(report) => (Some(report), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(EstimateReport {
        n: dataset.n(),
        m: dataset.m(),
        k,
        k_source,
        estimates,
        dependence,
        dependence_error,
    })
}

fn load_config(path: &Path, seed: Option<u64>) -> Result<ExperimentConfig> {
    let config = read_config(path)?;
    Ok(match seed {
        Some(seed) => config.with_seed(seed),
        None => config,
    })
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

/// Runs one subcommand on the current rayon pool.
pub fn execute(command: &Command) -> Result<()> {
    match command {
        Command::Estimate {
            data,
            k,
            k_source,
            methods,
            out,
        } => {
            let report = estimate_file(data, *k, *k_source, &parse_methods(methods)?)?;
            write_json(&report, out)
        }
        Command::Simulate { config, out, seed } => {
            let config = load_config(config, *seed)?;
            let (report, records) = run_rvr_experiment_with_records(&config)?;
            create_dir(out)?;
            write_json(&report, out.join("rvr_report.json"))?;
            write_estimates_csv(&config.estimators, &records, out.join("estimates.csv"))?;
            for pair in &report.pairs {
                eprintln!(
                    "{} vs {}: rvr = {:.4}",
                    pair.transferred, pair.baseline, pair.rvr
                );
            }
            Ok(())
        }
        Command::RvrSweep {
            config,
            vary,
            values,
            out,
            seed,
        } => {
            let base = load_config(config, *seed)?;
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            for &value in values {
                let report = run_rvr_experiment(&vary.apply(&base, value)?)?;
                eprintln!(
                    "{} = {value}: {} replications",
                    vary.column(),
                    report.completed
                );
                rows.extend(SweepRow::from_report(value, &report));
                entries.push(SweepEntry { value, report });
            }
            create_dir(out)?;
            write_sweep_csv(vary.column(), &rows, out.join("sweep.csv"))?;
            write_json(&entries, out.join("rvr_reports.json"))
        }
        Command::HillPlot {
            data,
            k_min,
            k_max,
            step,
            out,
        } => {
            let dataset = load_semi_supervised_csv(data)?;
            write_hill_plot_csv(
                &hill_plot(dataset.paired_target(), *k_min, *k_max, *step)?,
                out,
            )
        }
        Command::ThresholdScan {
            config,
            l_min,
            l_max,
            step,
            out,
            seed,
        } => {
            if *step == 0 || l_min > l_max {
                return Err(Error::InvalidParameter(
                    "need l_min <= l_max and step >= 1".into(),
                ));
            }
            let config = load_config(config, *seed)?;
            let ls: Vec<usize> = (*l_min..=*l_max).step_by(*step).collect();
            write_scan_csv(&source_threshold_scan(&config, &ls)?, out)
        }
        Command::Bootstrap {
            data,
            n_sub,
            resamples,
            k,
            k_source,
            methods,
            out,
            seed,
            with_replacement,
        } => {
            let pool = load_semi_supervised_csv(data)?;
            let cfg = BootstrapConfig {
                n_sub: *n_sub,
                resamples: *resamples,
                k: *k,
                k_source: k_source.unwrap_or(*k),
                methods: parse_methods(methods)?,
                seed: *seed,
                with_replacement: *with_replacement,
            };
            let result = bootstrap_study(&pool, &cfg)?;
            for s in &result.series {
                if s.failures > 0 {
                    eprintln!(
                        "{}: {} of {} resamples failed",
                        s.method, s.failures, cfg.resamples
                    );
                }
            }
            write_bootstrap_csv(&result, out)
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(raw) => raw.trim().parse().map(Some).map_err(|_| {
            Error::InvalidParameter(format!("{THREADS_ENV} must be a thread count, got `{raw}`"))
        }),
        Err(_) => Ok(None),
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = thread_count(cli.threads).and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| execute(&cli.command))
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parameters_apply() {
        let base = ExperimentConfig::new(5.0, 0.25, 0.5, 1000, 5000);
        assert_eq!(SweepParameter::Theta.apply(&base, 2.0).unwrap().theta, 2.0);
        assert_eq!(SweepParameter::M.apply(&base, 20000.0).unwrap().m, 20000);
        let c = SweepParameter::N.apply(&base, 500.0).unwrap();
        assert_eq!((c.n, c.k, c.k_source), (500, 50, 50));
        assert_eq!(
            SweepParameter::GammaS.apply(&base, -0.5).unwrap().source,
            Marginal::Beta { shape_b: 2.0 }
        );
        assert!(SweepParameter::M.apply(&base, 1.5).is_err());
        assert!(SweepParameter::Theta.apply(&base, 0.5).is_err());
    }

    #[test]
    fn usage_errors_exit_nonzero() {
        assert_eq!(run(["transfer-evi", "estimate", "--k", "3"]), 2);
        assert_eq!(run(["transfer-evi", "frobnicate"]), 2);
        assert_eq!(run(["transfer-evi", "--help"]), 0);
        let parsed = Cli::try_parse_from([
            "transfer-evi",
            "rvr-sweep",
            "--config",
            "c",
            "--vary",
            "gamma_t",
            "--values",
            "1,2",
            "--out",
            "o",
        ]);
        assert!(matches!(
            parsed.unwrap().command,
            Command::RvrSweep {
                vary: SweepParameter::GammaT,
                ..
            }
        ));
    }
}

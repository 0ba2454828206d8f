//! Relative variance reduction as a function of the copula parameter and of
//! the extra source sample size.
//!
//! cargo run --release --example parameter_sweep

use transfer_evi::sim::{run_rvr_experiment, ExperimentConfig};
use transfer_evi::Method;

fn hill_rvr(config: &ExperimentConfig) -> transfer_evi::Result<f64> {
    let report = run_rvr_experiment(config)?;
    Ok(report.pair(Method::TransferredHill).expect("requested").rvr)
}

fn main() -> transfer_evi::Result<()> {
    let base = ExperimentConfig::new(5.0, 0.25, 0.5, 1000, 5000)
        .with_replications(1000)
        .with_estimators(vec![Method::Hill, Method::TransferredHill]);

    println!("theta  RVR");
    for theta in [1.0, 1.4, 2.0, 5.0, 10.0, 20.0] {
        let config = ExperimentConfig {
            theta,
            ..base.clone()
        };
        println!("{theta:<6} {:.1}%", 100.0 * hill_rvr(&config)?);
    }
    println!("\nm      RVR (theta = 5)");
    for m in [500, 1000, 5000, 20_000] {
        let config = ExperimentConfig { m, ..base.clone() };
        println!("{m:<6} {:.1}%", 100.0 * hill_rvr(&config)?);
    }
    Ok(())
}

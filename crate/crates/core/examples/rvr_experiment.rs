//! Replicated simulation study: empirical relative variance reduction of the
//! transferred estimators over their baselines.
//!
//! cargo run --release --example rvr_experiment -- [theta] [replications]

use transfer_evi::sim::{run_rvr_experiment, ExperimentConfig};

fn main() -> transfer_evi::Result<()> {
    let mut args = std::env::args().skip(1);
    let theta: f64 = args.next().map_or(10.0, |s| s.parse().expect("theta"));
    let reps: usize = args
        .next()
        .map_or(2000, |s| s.parse().expect("replications"));

    let config = ExperimentConfig::new(theta, 0.25, 0.5, 1000, 5000).with_replications(reps);
    let report = run_rvr_experiment(&config)?;
    println!(
        "theta = {theta}, {} replications ({} failed)",
        report.completed, report.failed
    );
    for s in &report.estimators {
        println!(
            "{:<20} mean {:.4}  variance {:.3e}  bias {:+.4}",
            s.method.to_string(),
            s.mean,
            s.variance,
            s.bias
        );
    }
    for p in &report.pairs {
        println!(
            "RVR {} vs {}: {:.1}%",
            p.transferred,
            p.baseline,
            100.0 * p.rvr
        );
    }
    if let (Some(d), Some(a)) = (report.dependence, report.asymptotic_rvr) {
        println!(
            "mean lambda {:.3}, corr(A,B) {:.3}, corr(C,D) {:.3}",
            d.lambda_hat, d.corr_ab, d.corr_cd
        );
        println!("mean asymptotic RVR prediction: {:.1}%", 100.0 * a);
    }
    Ok(())
}

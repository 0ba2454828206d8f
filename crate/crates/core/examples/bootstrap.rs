//! Subsampling study on a joint pool: the spread of each estimator across
//! random subsamples, with unselected source values used as extra source data.
//!
//! cargo run --release --example bootstrap

use transfer_evi::sim::{bootstrap_study, generate_dataset, BootstrapConfig, ExperimentConfig};
use transfer_evi::Method;

fn main() -> transfer_evi::Result<()> {
    let pool = generate_dataset(&ExperimentConfig::new(5.0, 0.25, 0.5, 6000, 0), 0)?;
    let cfg = BootstrapConfig {
        n_sub: 1000,
        resamples: 500,
        k: 100,
        k_source: 100,
        methods: Method::ALL.to_vec(),
        seed: 3,
        with_replacement: false,
    };
    let result = bootstrap_study(&pool, &cfg)?;
    println!("method               mean     sd       failures");
    for s in &result.series {
        let n = s.values.len() as f64;
        let mean = s.values.iter().sum::<f64>() / n;
        let var = s.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        println!(
            "{:<20} {mean:.4}   {:.4}   {}",
            s.method.to_string(),
            var.sqrt(),
            s.failures
        );
    }
    Ok(())
}

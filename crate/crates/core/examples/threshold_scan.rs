//! Choosing the source exceedance count l: analytical variance of the
//! transferred Hill estimator across l, summarized over replications.
//!
//! cargo run --release --example threshold_scan

use transfer_evi::sim::{source_threshold_scan, ExperimentConfig};

fn main() -> transfer_evi::Result<()> {
    let config = ExperimentConfig::new(5.0, 0.25, 0.5, 1000, 5000).with_replications(500);
    let ls: Vec<usize> = (40..=160).step_by(10).collect();
    let rows = source_threshold_scan(&config, &ls)?;
    println!("l     median var   [q1, q3]                negatives");
    for r in &rows {
        println!(
            "{:<5} {:.4e}   [{:.4e}, {:.4e}]  {}",
            r.l, r.median, r.q1, r.q3, r.negatives
        );
    }
    let best = rows
        .iter()
        .min_by(|a, b| a.median.total_cmp(&b.median))
        .unwrap();
    println!(
        "\nsmallest median analytical variance at l = {} (target k = {})",
        best.l, config.k
    );
    Ok(())
}

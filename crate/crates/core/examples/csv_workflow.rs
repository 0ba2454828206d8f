//! File-based workflow: write a dataset as `target,source` CSV (empty target
//! cells mark source-only rows), read it back, and parse an experiment config.
//!
//! cargo run --release --example csv_workflow

use transfer_evi::io::{parse_config, write_config};
use transfer_evi::sim::generate_dataset;
use transfer_evi::{load_semi_supervised_csv, transferred_hill, write_semi_supervised_csv};

fn main() -> transfer_evi::Result<()> {
    let config = parse_config(
        "# strong dependence, small extra sample\n\
         theta = 5\ngamma_t = 0.25\ngamma_s = 0.5\nn = 500\nm = 1500\nseed = 11\n",
    )?;
    println!(
        "parsed config (defaults filled in):\n{}",
        write_config(&config)
    );

    let dataset = generate_dataset(&config, 0)?;
    let dir = std::env::temp_dir().join("transfer-evi-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("dataset.csv");
    write_semi_supervised_csv(&dataset, &path)?;

    let loaded = load_semi_supervised_csv(&path)?;
    println!(
        "wrote and reloaded {} (n = {}, m = {})",
        path.display(),
        loaded.n(),
        loaded.m()
    );
    let a = transferred_hill(&dataset, config.k, config.k_source)?.value;
    let b = transferred_hill(&loaded, config.k, config.k_source)?.value;
    println!(
        "transferred Hill in memory {a:.17} / from file {b:.17} / identical: {}",
        a == b
    );
    Ok(())
}

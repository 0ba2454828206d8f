//! Transferred Hill and moment estimators on one semi-supervised dataset:
//! 1000 coupled target/source pairs plus 5000 extra source observations.
//!
//! cargo run --release --example transferred_estimators

use transfer_evi::sim::{generate_dataset, ExperimentConfig};
use transfer_evi::{hill, moment, transferred_hill, transferred_moment};

fn main() -> transfer_evi::Result<()> {
    let config = ExperimentConfig::new(10.0, 0.25, 0.5, 1000, 5000);
    let dataset = generate_dataset(&config, 0)?;
    println!(
        "n = {}, m = {}, target EVI = 0.25",
        dataset.n(),
        dataset.m()
    );

    let (k, k_source) = (config.k, config.k_source);
    let th = transferred_hill(&dataset, k, k_source)?;
    let tm = transferred_moment(&dataset, k, k_source)?;
    println!(
        "hill               {:.4}",
        hill(dataset.paired_target(), k)?.value
    );
    println!("transferred hill   {:.4}", th.value);
    println!(
        "moment             {:.4}",
        moment(dataset.paired_target(), k)?.value
    );
    println!("transferred moment {:.4}", tm.value);

    let c = th
        .coefficients
        .expect("transferred estimates carry coefficients");
    println!(
        "\nhill coefficients: alpha = {:.4}, beta = {:.4}, fallback = {}",
        c.alpha, c.beta, c.fallback
    );
    let c = tm.coefficients.unwrap();
    println!(
        "second-moment coefficients: alpha' = {:.4}, beta' = {:.4}",
        c.alpha_prime.unwrap(),
        c.beta_prime.unwrap()
    );

    // without the extra source sample the correction vanishes
    let plain = transferred_hill(&dataset.without_extra(), k, k_source)?;
    println!(
        "\nwith m = 0 the transferred Hill equals Hill: {:.4}",
        plain.value
    );
    Ok(())
}

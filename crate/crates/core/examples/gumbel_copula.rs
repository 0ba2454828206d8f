//! Sampling the Gumbel copula and checking its rank dependence and upper-tail
//! dependence against closed forms.
//!
//! cargo run --release --example gumbel_copula

use transfer_evi::dependence::{kendall_tau, tail_dependence};
use transfer_evi::sim::{sample_gumbel_copula, stream_rng, StreamRole};

fn main() -> transfer_evi::Result<()> {
    let count = 100_000;
    println!("theta   tau    (1-1/theta)   tail dep. at 0.99   (2-2^(1/theta))");
    for (i, theta) in [1.0, 1.4, 2.0, 5.0, 10.0].into_iter().enumerate() {
        let mut rng = stream_rng(7, i as u64, StreamRole::Coupled);
        let (u, v): (Vec<f64>, Vec<f64>) = sample_gumbel_copula(theta, count, &mut rng)?
            .into_iter()
            .unzip();
        println!(
            "{theta:<7} {:.4} {:<13.4} {:<19.4} {:.4}",
            kendall_tau(&u, &v)?,
            1.0 - 1.0 / theta,
            tail_dependence(&u, &v, count / 100)?,
            2.0 - 2f64.powf(1.0 / theta)
        );
    }
    Ok(())
}

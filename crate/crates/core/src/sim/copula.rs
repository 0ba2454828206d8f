//! Gumbel copula sampling via the Marshall–Olkin frailty construction.
//!
//! With `V` positive stable of index `1/theta` (Laplace transform
//! `exp(-t^(1/theta))`) and `E1, E2` standard exponentials,
//! `U_i = exp(-(E_i / V)^(1/theta))` has the Gumbel copula
//! `C(u1, u2) = exp(-((-ln u1)^theta + (-ln u2)^theta)^(1/theta))`.

use std::f64::consts::PI;

use rand::RngCore;

use super::rng::{exponential, open_unit};
use crate::error::{Error, Result};

/// Positive stable variate with Laplace transform `exp(-t^alpha)`, `0 < alpha <= 1`,
/// by the Chambers–Mallows–Stuck (Kanter) representation.
pub fn positive_stable<R: RngCore + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    if alpha >= 1.0 {
        return 1.0;
    }
    let angle = PI * open_unit(rng);
    let w = exponential(rng);
    let left = (alpha * angle).sin() / angle.sin().powf(1.0 / alpha);
    let right = (((1.0 - alpha) * angle).sin() / w).powf((1.0 - alpha) / alpha);
    left * right
}

/// Largest double below 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

fn clamp_open(u: f64) -> f64 {
    u.clamp(f64::MIN_POSITIVE, BELOW_ONE)
}

/// `count` pairs from the Gumbel copula with parameter `theta >= 1`.
pub fn sample_gumbel_copula<R: RngCore + ?Sized>(
    theta: f64,
    count: usize,
    rng: &mut R,
) -> Result<Vec<(f64, f64)>> {
    if !theta.is_finite() || theta < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "Gumbel copula needs theta >= 1, got {theta}"
        )));
    }
    let alpha = 1.0 / theta;
    let pairs = (0..count)
        .map(|_| {
            if theta == 1.0 {
                return (open_unit(rng), open_unit(rng));
            }
            let v = positive_stable(alpha, rng);
            let e1 = exponential(rng);
            let e2 = exponential(rng);
            let u1 = (-(e1 / v).powf(alpha)).exp();
            let u2 = (-(e2 / v).powf(alpha)).exp();
            (clamp_open(u1), clamp_open(u2))
        })
        .collect();
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::rng::{stream_rng, StreamRole};

    #[test]
    fn rejects_theta_below_one() {
        let mut rng = stream_rng(0, 0, StreamRole::Coupled);
        assert!(sample_gumbel_copula(0.9, 10, &mut rng).is_err());
        assert!(sample_gumbel_copula(f64::NAN, 10, &mut rng).is_err());
    }

    #[test]
    fn stable_laplace_transform() {
        // E[exp(-V)] = exp(-1) for every alpha
        let mut rng = stream_rng(11, 0, StreamRole::Coupled);
        for alpha in [0.2, 0.5, 0.8] {
            let draws = 200_000;
            let lt: f64 = (0..draws)
                .map(|_| (-positive_stable(alpha, &mut rng)).exp())
                .sum::<f64>()
                / draws as f64;
            assert!((lt - (-1.0f64).exp()).abs() < 0.005, "alpha {alpha}: {lt}");
        }
    }

    #[test]
    fn copula_cdf_matches_at_a_point() {
        let theta = 3.0;
        let mut rng = stream_rng(5, 0, StreamRole::Coupled);
        let pairs = sample_gumbel_copula(theta, 200_000, &mut rng).unwrap();
        let (u1, u2) = (0.6f64, 0.8f64);
        let emp =
            pairs.iter().filter(|(a, b)| *a <= u1 && *b <= u2).count() as f64 / pairs.len() as f64;
        let exact = (-((-u1.ln()).powf(theta) + (-u2.ln()).powf(theta)).powf(1.0 / theta)).exp();
        assert!((emp - exact).abs() < 0.005, "{emp} vs {exact}");
    }
}

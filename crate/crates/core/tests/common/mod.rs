//! Independent reference implementations used as test oracles. They are
//! written from the textbook definitions, not from the library code paths.

#![allow(dead_code)]

/// Hill estimator in its top-k form:
/// `(1/k) * sum_{i=1..k} ln(Y_{n-i+1:n} / Y_{n-k:n})`.
pub fn hill_top_k(sample: &[f64], k: usize) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    let threshold = s[n - k - 1];
    (1..=k).map(|i| (s[n - i] / threshold).ln()).sum::<f64>() / k as f64
}

/// Moment estimator from the first two top-k log-moments.
pub fn moment_top_k(sample: &[f64], k: usize) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    let threshold = s[n - k - 1];
    let logs: Vec<f64> = (1..=k).map(|i| (s[n - i] / threshold).ln()).collect();
    let m1 = logs.iter().sum::<f64>() / k as f64;
    let m2 = logs.iter().map(|x| x * x).sum::<f64>() / k as f64;
    m1 + 1.0 - 0.5 / (1.0 - m1 * m1 / m2)
}

/// Unbiased covariance through the pairwise-difference identity
/// `Cov = 1/(n(n-1)) * sum_{i<j} (x_i - x_j)(y_i - y_j)`.
pub fn pairwise_cov(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += (x[i] - x[j]) * (y[i] - y[j]);
        }
    }
    total / (n * (n - 1)) as f64
}

/// Optimal ACV/ACV ratio coefficients obtained by minimizing the linearized
/// variance `Var(A - R C - x B - y D)`: solve the 2x2 normal equations by
/// Cramer's rule, then `alpha = x` and `beta = -y / R`.
pub fn acv_coefficients_oracle(a: &[f64], b: &[f64], c: &[f64], d: &[f64], r: f64) -> (f64, f64) {
    let x: Vec<f64> = a.iter().zip(c).map(|(ai, ci)| ai - r * ci).collect();
    let (vb, vd, bd) = (pairwise_cov(b, b), pairwise_cov(d, d), pairwise_cov(b, d));
    let (xb, xd) = (pairwise_cov(&x, b), pairwise_cov(&x, d));
    let det = vb * vd - bd * bd;
    let alpha = (xb * vd - bd * xd) / det;
    let y = (vb * xd - bd * xb) / det;
    (alpha, -y / r)
}

/// Plain-loop evaluation of the ACV/ACV ratio estimator.
pub fn acv_ratio_oracle(
    a: &[f64],
    b_all: &[f64],
    c: &[f64],
    d_all: &[f64],
    alpha: f64,
    beta: f64,
) -> f64 {
    let n = a.len();
    let avg = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let num = avg(a) + alpha * (avg(b_all) - avg(&b_all[..n]));
    let den = avg(c) + beta * (avg(d_all) - avg(&d_all[..n]));
    num / den
}

/// Sample variance with the `n - 1` divisor.
pub fn sample_variance(x: &[f64]) -> f64 {
    pairwise_cov(x, x)
}

/// Kolmogorov-Smirnov statistic of a sample against Uniform(0, 1).
pub fn ks_uniform_statistic(sample: &[f64]) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &u)| ((i as f64 + 1.0) / n - u).max(u - i as f64 / n))
        .fold(0.0, f64::max)
}

/// Asymptotic Kolmogorov p-value `Q(sqrt(n) D)`.
pub fn ks_p_value(statistic: f64, n: usize) -> f64 {
    let lambda = (n as f64).sqrt() * statistic;
    if lambda < 0.2 {
        return 1.0;
    }
    let q: f64 = (1..=100)
        .map(|j| {
            let jf = j as f64;
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            sign * (-2.0 * jf * jf * lambda * lambda).exp()
        })
        .sum();
    (2.0 * q).clamp(0.0, 1.0)
}

/// Kendall's tau-a by direct O(n^2) pair counting.
pub fn kendall_tau_naive(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    let mut score = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            score += ((x[i] - x[j]) * (y[i] - y[j])).signum();
        }
    }
    score / (n * (n - 1) / 2) as f64
}

/// Gumbel copula upper-tail exceedance probability at level `1 - p`:
/// `P(U2 > 1-p | U1 > 1-p) = (1 - 2u + C(u, u)) / p` with `C(u, u) = u^(2^(1/theta))`.
pub fn gumbel_tail_probability(theta: f64, p: f64) -> f64 {
    let u = 1.0 - p;
    (1.0 - 2.0 * u + u.powf(2f64.powf(1.0 / theta))) / p
}

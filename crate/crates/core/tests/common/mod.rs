//! Shared helpers for the integration suites.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Chi-square goodness-of-fit statistic against the uniform distribution.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum()
}

/// Critical value of the chi-square distribution at the given significance.
pub fn chi_square_critical(df: usize, significance: f64) -> f64 {
    ChiSquared::new(df as f64)
        .unwrap()
        .inverse_cdf(1.0 - significance)
}

/// Asserts uniformity of `counts` at the given significance level.
pub fn assert_uniform(counts: &[u64], significance: f64, context: &str) {
    assert!(counts.len() > 1, "{context}: need at least two categories");
    let stat = chi_square_uniform(counts);
    let crit = chi_square_critical(counts.len() - 1, significance);
    assert!(
        stat < crit,
        "{context}: chi-square {stat:.2} exceeds critical {crit:.2} (df={})",
        counts.len() - 1
    );
}

/// Least-squares slope of `ln(y)` against `ln(x)`.
#[allow(dead_code)] // not every suite fits curves
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx
        .iter()
        .zip(ly.iter())
        .map(|(a, b)| (a - mx) * (b - my))
        .sum();
    let den: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    num / den
}

//! Small statistics kit for the experiment harness.
//!
//! Covers exactly what the experiments consume: sample means with normal
//! 95% confidence intervals, Pearson's chi-square statistic with a
//! Wilson–Hilferty quantile for the threshold, and total-variation
//! distance from the uniform distribution.

/// Arithmetic mean; `0.0` on an empty slice.
pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (denominator `n - 1`); `0.0` below two points.
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// `(mean, half-width)` of the normal 95% confidence interval
/// `mean ± 1.96 · s / sqrt(n)`.
pub fn mean_ci95(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let half = 1.96 * sample_std(xs) / (xs.len() as f64).sqrt();
    (mean(xs), half)
}

/// Pearson's statistic `sum (observed - expected)^2 / expected` over the
/// cells with positive expectation.
pub fn chi_square_stat(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len(), "cell count mismatch");
    observed
        .iter()
        .zip(expected)
        .filter(|&(_, &e)| e > 0.0)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum()
}

/// Inverse of the standard normal CDF (Acklam's rational approximation,
/// relative error below `1.2e-9` on `(0, 1)`).
#[allow(clippy::excessive_precision)] // published coefficients kept verbatim
pub fn inverse_normal_cdf(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "quantile needs p in (0, 1), got {p}");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let tail = |p: f64| {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if p < P_LOW {
        tail(p)
    } else if p > 1.0 - P_LOW {
        -tail(1.0 - p)
    } else {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    }
}

/// Chi-square quantile via the Wilson–Hilferty cube-root normal
/// approximation; within about 1% of the exact quantile for the degrees of
/// freedom the experiments use (10 and up).
pub fn chi_square_quantile(df: usize, p: f64) -> f64 {
    assert!(df > 0, "quantile needs positive degrees of freedom");
    let df = df as f64;
    let z = inverse_normal_cdf(p);
    let t = 2.0 / (9.0 * df);
    df * (1.0 - t + z * t.sqrt()).powi(3)
}

/// Total-variation distance between the empirical distribution of `counts`
/// and the uniform distribution on the same cells:
/// `(1/2) sum |counts_i / total - 1 / cells|`.
pub fn total_variation_from_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if counts.is_empty() || total == 0 {
        return 0.0;
    }
    let uniform = 1.0 / counts.len() as f64;
    0.5 * counts
        .iter()
        .map(|&c| (c as f64 / total as f64 - uniform).abs())
        .sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_interval_on_known_data() {
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert!((mean(&xs) - 5.0).abs() < 1e-12);
        assert!((sample_std(&xs) - 2.13809).abs() < 1e-4);
        let (m, h) = mean_ci95(&xs);
        assert!((m - 5.0).abs() < 1e-12);
        assert!((h - 1.96 * 2.13809 / 8f64.sqrt()).abs() < 1e-4);
        assert_eq!(mean_ci95(&[]), (0.0, 0.0));
        assert_eq!(mean_ci95(&[3.0]), (3.0, 0.0));
    }

    #[test]
    fn normal_quantiles_match_tables() {
        assert!((inverse_normal_cdf(0.5)).abs() < 1e-9);
        assert!((inverse_normal_cdf(0.975) - 1.959964).abs() < 1e-5);
        assert!((inverse_normal_cdf(0.999) - 3.090232).abs() < 1e-5);
        assert!((inverse_normal_cdf(0.001) + 3.090232).abs() < 1e-5);
        assert!((inverse_normal_cdf(0.0001) + 3.719016).abs() < 1e-5);
    }

    #[test]
    fn chi_square_quantiles_match_tables_within_a_percent() {
        // Exact values: 29.588 (df 10), 1143.92 (df 999), both at p = 0.999.
        let q10 = chi_square_quantile(10, 0.999);
        assert!((q10 - 29.588).abs() / 29.588 < 0.01, "df 10: {q10}");
        let q999 = chi_square_quantile(999, 0.999);
        assert!((q999 - 1143.92).abs() / 1143.92 < 0.01, "df 999: {q999}");
        // Exact 18.307 at df 10, p = 0.95.
        let q95 = chi_square_quantile(10, 0.95);
        assert!((q95 - 18.307).abs() / 18.307 < 0.01, "df 10 p .95: {q95}");
    }

    #[test]
    fn chi_square_stat_on_known_cells() {
        let observed = [8u64, 12, 10, 10];
        let expected = [10.0; 4];
        assert!((chi_square_stat(&observed, &expected) - 0.8).abs() < 1e-12);
        assert_eq!(chi_square_stat(&[5, 5], &[5.0, 5.0]), 0.0);
    }

    #[test]
    fn total_variation_extremes() {
        assert_eq!(total_variation_from_uniform(&[10, 10, 10, 10]), 0.0);
        let tv = total_variation_from_uniform(&[40, 0, 0, 0]);
        assert!((tv - 0.75).abs() < 1e-12);
        assert_eq!(total_variation_from_uniform(&[]), 0.0);
    }
}

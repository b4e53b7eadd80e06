//! Small statistics helpers: Wilson intervals, weighted least squares, and
//! moment utilities used by the Monte Carlo harness.

/// Wilson 95% score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959963984540054_f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Weighted least-squares line fit y ~ a + b x.
/// Returns `(slope, intercept, slope_stderr)` with the stderr scaled by the
/// weighted residual chi-square (so an exact fit reports zero).
pub fn weighted_line_fit(x: &[f64], y: &[f64], w: &[f64]) -> (f64, f64, f64) {
    assert!(x.len() == y.len() && y.len() == w.len());
    assert!(x.len() >= 2, "line fit needs at least two points");
    let sw: f64 = w.iter().sum();
    let sx: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
    let sy: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
    let sxx: f64 = x.iter().zip(w).map(|(a, b)| a * a * b).sum();
    let sxy: f64 = x.iter().zip(y).zip(w).map(|((a, c), b)| a * c * b).sum();
    let delta = sw * sxx - sx * sx;
    let slope = (sw * sxy - sx * sy) / delta;
    let intercept = (sxx * sy - sx * sxy) / delta;
    let chi2: f64 = x
        .iter()
        .zip(y)
        .zip(w)
        .map(|((&xi, &yi), &wi)| {
            let r = yi - intercept - slope * xi;
            wi * r * r
        })
        .sum();
    let dof = (x.len() as f64 - 2.0).max(1.0);
    let stderr = (sw / delta * chi2 / dof).sqrt();
    (slope, intercept, stderr)
}

/// Sample mean and unbiased variance.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Effective sample size of an importance-weighted sample.
pub fn effective_sample_size(weights: &[f64]) -> f64 {
    let s: f64 = weights.iter().sum();
    let s2: f64 = weights.iter().map(|w| w * w).sum();
    if s2 == 0.0 {
        0.0
    } else {
        s * s / s2
    }
}

/// Kolmogorov distance between an empirical sample and a CDF given on a grid
/// `(points, cdf_values)`; the sample is sorted internally.
pub fn sup_cdf_distance(sample: &mut [f64], grid: &[f64], cdf: &[f64]) -> f64 {
    sample.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sample.len() as f64;
    let mut worst = 0.0_f64;
    for (g, c) in grid.iter().zip(cdf) {
        let k = sample.partition_point(|&s| s <= *g) as f64;
        worst = worst.max((k / n - c).abs());
    }
    worst
}

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Wigner semicircle CDF on `[-R, R]`, clamped to 0 and 1 outside.
pub fn semicircle_cdf(x: f64, radius: f64) -> f64 {
    if x <= -radius {
        return 0.0;
    }
    if x >= radius {
        return 1.0;
    }
    let r2 = radius * radius;
    (0.5 + x * (r2 - x * x).sqrt() / (PI * r2) + (x / radius).asin() / PI).clamp(0.0, 1.0)
}

/// Semicircle density `2√(R² - x²)/(πR²)`.
pub fn semicircle_density(x: f64, radius: f64) -> f64 {
    if x.abs() >= radius {
        return 0.0;
    }
    2.0 * (radius * radius - x * x).sqrt() / (PI * radius * radius)
}

fn check_sorted(points: &[f64]) -> Result<()> {
    if points.is_empty() {
        return invalid("empty sample");
    }
    if points.windows(2).any(|w| !(w[0] <= w[1])) {
        return invalid("sample must be sorted");
    }
    Ok(())
}

/// `sup |F_n - F|` over the sample, checking both sides of every step of the
/// empirical CDF.
pub fn ks_distance(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> Result<f64> {
    check_sorted(sorted)?;
    let n = sorted.len() as f64;
    Ok(sorted.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max((i as f64 / n - f).abs()).max(((i + 1) as f64 / n - f).abs())
    }))
}

/// Two-sample Kolmogorov–Smirnov statistic of sorted samples.
pub fn two_sample_ks(a: &[f64], b: &[f64]) -> Result<f64> {
    check_sorted(a)?;
    check_sorted(b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Fraction of `sorted` at or below `x`.
pub fn empirical_cdf(sorted: &[f64], x: f64) -> f64 {
    sorted.partition_point(|&v| v <= x) as f64 / sorted.len().max(1) as f64
}

/// Equal-width bins over `[lo, hi]` as `(left edge, right edge, density)`;
/// points outside are dropped but still count in the normalization.
pub fn histogram(points: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Vec<(f64, f64, f64)>> {
    if bins == 0 || !(lo < hi) {
        return invalid(format!("need bins > 0 and lo < hi, got {bins} bins on [{lo}, {hi}]"));
    }
    if points.is_empty() {
        return invalid("empty sample");
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &x in points {
        if x >= lo && x <= hi {
            let k = (((x - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    let norm = points.len() as f64 * width;
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| (lo + k as f64 * width, lo + (k + 1) as f64 * width, c as f64 / norm))
        .collect())
}

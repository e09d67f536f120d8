use std::ops::Deref;

use crate::error::{domain, invalid, Result};

/// Strictly increasing list of distinct real points: polynomial zeros, QMF pole
/// locations or ensemble eigenvalues.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointConfiguration(Vec<f64>);

impl PointConfiguration {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.iter().any(|x| !x.is_finite()) {
            return invalid("non-finite point");
        }
        if let Some(i) = points.windows(2).position(|w| !(w[0] < w[1])) {
            if points[i] == points[i + 1] {
                return domain(format!("coincident points at index {i}"));
            }
            return invalid(format!("points not increasing at index {i}"));
        }
        Ok(PointConfiguration(points))
    }

    /// Sorts first; coincident points are still rejected.
    pub fn from_unsorted(mut points: Vec<f64>) -> Result<Self> {
        points.sort_by(f64::total_cmp);
        Self::new(points)
    }

    pub fn empty() -> Self {
        PointConfiguration(Vec::new())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Smallest gap between neighbours; infinite for fewer than two points.
    pub fn min_gap(&self) -> f64 {
        self.0
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest pointwise distance to another configuration of the same size.
    pub fn max_distance(&self, other: &PointConfiguration) -> Option<f64> {
        (self.len() == other.len()).then(|| {
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }
}

impl Deref for PointConfiguration {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for PointConfiguration {
    type Error = crate::Error;

    fn try_from(points: Vec<f64>) -> Result<Self> {
        Self::new(points)
    }
}

/// `∏_{i<j} |x_j - x_i|`, in any input order. Coincident points are a domain
/// error because the logarithmic variant diverges there.
pub fn vandermonde_abs(points: &[f64]) -> Result<f64> {
    let mut prod = 1.0;
    for (i, &xi) in points.iter().enumerate() {
        for &xj in &points[i + 1..] {
            let d = (xj - xi).abs();
            if d == 0.0 {
                return domain(format!("coincident points at {xi}"));
            }
            prod *= d;
        }
    }
    Ok(prod)
}

/// `Σ_{i<j} ln |x_j - x_i|`; the form to use beyond a few dozen points.
pub fn log_vandermonde_abs(points: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for (i, &xi) in points.iter().enumerate() {
        for &xj in &points[i + 1..] {
            let d = (xj - xi).abs();
            if d == 0.0 {
                return domain(format!("coincident points at {xi}"));
            }
            sum += d.ln();
        }
    }
    Ok(sum)
}

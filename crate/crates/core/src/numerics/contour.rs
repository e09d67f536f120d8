//! Trapezoidal contour integrals over ellipses.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Axis-aligned ellipse `z(θ) = center + a cos θ + i b sin θ`, traversed
/// counter-clockwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Complex64,
    pub semi_axes: (f64, f64),
}

impl Ellipse {
    pub fn new(center: Complex64, semi_axes: (f64, f64)) -> Result<Self> {
        let (a, b) = semi_axes;
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return invalid(format!("semi-axes must be positive, got ({a}, {b})"));
        }
        Ok(Ellipse { center, semi_axes })
    }

    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        Self::new(center, (radius, radius))
    }

    /// Whether `z` lies strictly inside.
    pub fn contains(&self, z: Complex64) -> bool {
        self.level(z) < 1.0
    }

    /// `((x - cx)/a)^2 + ((y - cy)/b)^2`: below one inside, above one outside.
    pub fn level(&self, z: Complex64) -> f64 {
        let d = z - self.center;
        let (a, b) = self.semi_axes;
        (d.re / a).powi(2) + (d.im / b).powi(2)
    }

    /// A real-axis ellipse enclosing every point of `inside` while keeping
    /// every point of `outside` strictly out. The horizontal margin is a third
    /// of the smallest gap between the enclosed hull and an excluded point.
    pub fn enclosing_real(inside: &[f64], outside: &[f64]) -> Result<Self> {
        let Some(lo) = inside.iter().copied().reduce(f64::min) else {
            return invalid("nothing to enclose");
        };
        let hi = inside.iter().copied().fold(lo, f64::max);
        let mut margin = 0.5 * (hi - lo).max(1.0);
        for &p in outside {
            if p >= lo && p <= hi {
                return invalid(format!("excluded point {p} lies inside the hull [{lo}, {hi}]"));
            }
            let gap = if p < lo { lo - p } else { p - hi };
            margin = margin.min(gap / 3.0);
        }
        let a = 0.5 * (hi - lo) + margin;
        let b = a.min(1.0).max(margin);
        Self::new(Complex64::new(0.5 * (lo + hi), 0.0), (a, b))
    }

    pub fn point(&self, theta: f64) -> (Complex64, Complex64) {
        let (a, b) = self.semi_axes;
        let (s, c) = theta.sin_cos();
        (
            self.center + Complex64::new(a * c, b * s),
            Complex64::new(-a * s, b * c),
        )
    }
}

/// `∮ f dz` over `ellipse` by the `m`-point trapezoidal rule in the angle,
/// exponentially convergent for integrands analytic near the path.
pub fn contour_integral(
    mut f: impl FnMut(Complex64) -> Complex64,
    ellipse: &Ellipse,
    m: usize,
) -> Result<Complex64> {
    if m < 16 {
        return invalid(format!("contour needs at least 16 nodes, got {m}"));
    }
    let h = 2.0 * PI / m as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let (z, dz) = ellipse.point(j as f64 * h);
        let v = f(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Evaluation {
                index: j,
                re: z.re,
                im: z.im,
            });
        }
        sum += v * dz;
    }
    Ok(sum * h)
}

/// Residue of `f` at `pole` from a small circle of the given radius.
pub fn numeric_residue(
    f: impl FnMut(Complex64) -> Complex64,
    pole: Complex64,
    radius: f64,
    m: usize,
) -> Result<Complex64> {
    let circle = Ellipse::circle(pole, radius)?;
    Ok(contour_integral(f, &circle, m)? / Complex64::new(0.0, 2.0 * PI))
}

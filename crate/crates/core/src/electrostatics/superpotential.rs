use num_complex::Complex64;

use crate::error::{domain, invalid, Result};
use crate::numerics::Interval;
use crate::orthopoly::OrthogonalFamily;

/// Simple-pole term `strength / (x - location)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub location: f64,
    pub strength: f64,
}

/// Rational superpotential `W(x) = c x + d + Σ s_i / (x - p_i)`.
///
/// `W` is the external force field of the log-gas and, through `Q = iW`, the
/// fixed part of the quantum momentum function. Its antiderivative
/// `U(x) = c x²/2 + d x + Σ s_i ln|x - p_i|` is the one-body potential.
#[derive(Debug, Clone, PartialEq)]
pub struct Superpotential {
    linear: f64,
    constant: f64,
    poles: Vec<Pole>,
}

impl Superpotential {
    pub fn new(linear: f64, constant: f64, poles: Vec<Pole>) -> Result<Self> {
        if !linear.is_finite() || !constant.is_finite() {
            return invalid("superpotential coefficients must be finite");
        }
        for (i, p) in poles.iter().enumerate() {
            if !p.location.is_finite() || !p.strength.is_finite() {
                return invalid("pole data must be finite");
            }
            if poles[..i].iter().any(|q| q.location == p.location) {
                return invalid(format!("repeated pole location {}", p.location));
            }
        }
        Ok(Superpotential {
            linear,
            constant,
            poles,
        })
    }

    /// `W(x) = c x`.
    pub fn oscillator(c: f64) -> Self {
        Superpotential {
            linear: c,
            constant: 0.0,
            poles: Vec::new(),
        }
    }

    pub fn linear_coefficient(&self) -> f64 {
        self.linear
    }

    pub fn constant_term(&self) -> f64 {
        self.constant
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn pole_locations(&self) -> Vec<f64> {
        self.poles.iter().map(|p| p.location).collect()
    }

    pub fn is_polynomial(&self) -> bool {
        self.poles.is_empty()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.linear * x
            + self.constant
            + self
                .poles
                .iter()
                .map(|p| p.strength / (x - p.location))
                .sum::<f64>()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.linear
            - self
                .poles
                .iter()
                .map(|p| p.strength / (x - p.location).powi(2))
                .sum::<f64>()
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        self.poles
            .iter()
            .map(|p| 2.0 * p.strength / (x - p.location).powi(3))
            .sum()
    }

    /// `U(x)`, the antiderivative with `U(0) = 0` when no pole sits at zero.
    pub fn antiderivative(&self, x: f64) -> f64 {
        0.5 * self.linear * x * x
            + self.constant * x
            + self
                .poles
                .iter()
                .map(|p| p.strength * (x - p.location).abs().ln())
                .sum::<f64>()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        z * self.linear
            + self.constant
            + self
                .poles
                .iter()
                .map(|p| p.strength / (z - p.location))
                .sum::<Complex64>()
    }

    pub fn derivative_complex(&self, z: Complex64) -> Complex64 {
        Complex64::new(self.linear, 0.0)
            - self
                .poles
                .iter()
                .map(|p| p.strength / (z - p.location).powu(2))
                .sum::<Complex64>()
    }

    /// Errors when `x` coincides with a pole.
    pub fn check_regular(&self, x: f64) -> Result<()> {
        match self.poles.iter().find(|p| p.location == x) {
            Some(p) => domain(format!("x = {x} sits on a pole of W (strength {})", p.strength)),
            None => Ok(()),
        }
    }

    /// The interval between consecutive poles (or infinity) on which `U`
    /// diverges to `+∞` at both ends, i.e. where a log-gas stays confined.
    /// Poles with negative strength repel; at infinity the quadratic or linear
    /// part must grow.
    pub fn confining_interval(&self) -> Option<Interval> {
        let mut locs = self.pole_locations();
        locs.sort_by(f64::total_cmp);
        let strength_at = |x: f64| {
            self.poles
                .iter()
                .find(|p| p.location == x)
                .map(|p| p.strength)
                .unwrap_or(0.0)
        };
        let mut ends = vec![f64::NEG_INFINITY];
        ends.extend(&locs);
        ends.push(f64::INFINITY);
        ends.windows(2).map(|w| Interval::new(w[0], w[1])).find(|iv| {
            let lo_ok = if iv.lo.is_finite() {
                strength_at(iv.lo) < 0.0
            } else {
                self.linear > 0.0 || (self.linear == 0.0 && self.constant < 0.0)
            };
            let hi_ok = if iv.hi.is_finite() {
                strength_at(iv.hi) < 0.0
            } else {
                self.linear > 0.0 || (self.linear == 0.0 && self.constant > 0.0)
            };
            lo_ok && hi_ok
        })
    }
}

/// The `W` whose log-gas equilibrium of `n` charges is the zero set of the
/// family's `P_n`, for every `n`:
///
/// * Hermite: `W(x) = x`
/// * Laguerre(α): `W(x) = 1/2 - (α + 1)/(2x)`
/// * Jacobi(a, b): `W(x) = -(a + 1)/(2(x - 1)) - (b + 1)/(2(x + 1))`
///
/// Equivalently `W = -½ (ln ŵ)'` where `ŵ` is the weight with its hard-edge
/// exponents raised by one.
pub fn equilibrium_superpotential(family: &OrthogonalFamily) -> Superpotential {
    match *family {
        OrthogonalFamily::Hermite => Superpotential::oscillator(1.0),
        OrthogonalFamily::Laguerre { alpha } => Superpotential {
            linear: 0.0,
            constant: 0.5,
            poles: vec![Pole {
                location: 0.0,
                strength: -0.5 * (alpha + 1.0),
            }],
        },
        OrthogonalFamily::Jacobi { a, b } => Superpotential {
            linear: 0.0,
            constant: 0.0,
            poles: vec![
                Pole {
                    location: -1.0,
                    strength: -0.5 * (b + 1.0),
                },
                Pole {
                    location: 1.0,
                    strength: -0.5 * (a + 1.0),
                },
            ],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn family_fields() {
        let h = equilibrium_superpotential(&OrthogonalFamily::hermite());
        assert_eq!(h.eval(1.0), 1.0);
        let l = equilibrium_superpotential(&OrthogonalFamily::laguerre(0.0).unwrap());
        assert_abs_diff_eq!(l.eval(1.0), 0.0, epsilon = 1e-16);
        let j = equilibrium_superpotential(&OrthogonalFamily::jacobi(0.0, 0.0).unwrap());
        assert_abs_diff_eq!(j.eval(0.0), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn confining_intervals() {
        let h = equilibrium_superpotential(&OrthogonalFamily::hermite());
        assert_eq!(h.confining_interval(), Some(Interval::REAL_LINE));
        let l = equilibrium_superpotential(&OrthogonalFamily::laguerre(1.5).unwrap());
        assert_eq!(l.confining_interval(), Some(Interval::half_line(0.0)));
        let j = equilibrium_superpotential(&OrthogonalFamily::jacobi(1.0, 2.0).unwrap());
        assert_eq!(j.confining_interval(), Some(Interval::new(-1.0, 1.0)));
        assert_eq!(Superpotential::oscillator(-1.0).confining_interval(), None);
    }

    #[test]
    fn rejects_repeated_poles() {
        let p = Pole {
            location: 1.0,
            strength: 1.0,
        };
        assert!(Superpotential::new(0.0, 0.0, vec![p, p]).is_err());
        let w = Superpotential::new(1.0, 0.0, vec![p]).unwrap();
        assert!(w.check_regular(1.0).is_err());
        assert!(w.check_regular(0.5).is_ok());
    }

    proptest! {
        #[test]
        fn antiderivative_and_derivative_consistent(
            c in 0.1f64..3.0, d in -2.0f64..2.0,
            s1 in -2.0f64..2.0, s2 in -2.0f64..2.0,
            x in 0.1f64..0.9,
        ) {
            let w = Superpotential::new(c, d, vec![
                Pole { location: 0.0, strength: s1 },
                Pole { location: 1.0, strength: s2 },
            ]).unwrap();
            let h = 1e-5;
            let fd_u = (w.antiderivative(x + h) - w.antiderivative(x - h)) / (2.0 * h);
            prop_assert!((fd_u - w.eval(x)).abs() < 1e-6 * (1.0 + w.eval(x).abs()));
            let fd_w = (w.eval(x + h) - w.eval(x - h)) / (2.0 * h);
            prop_assert!((fd_w - w.derivative(x)).abs() < 1e-6 * (1.0 + w.derivative(x).abs()));
            let z = Complex64::new(x, 0.0);
            prop_assert!((w.eval_complex(z).re - w.eval(x)).abs() < 1e-12 * (1.0 + w.eval(x).abs()));
        }
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::electrostatics::Superpotential;
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::{contour_integral, numeric_residue, Ellipse};
use crate::orthopoly::{PointConfiguration, Polynomial};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A pole of the momentum function off the real moving set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPole {
    pub location: Complex64,
    pub residue: Complex64,
}

/// `p(z) = Σ_k -i/(z - x_k) + Σ_j r_j/(z - z_j) + i W(z)`.
///
/// The real points `x_k` are the zeros of the state (residue `-i` each, with
/// ħ = 1); `z_j` holds any complex zeros or extra rational factors, and `iW`
/// is the fixed part that does not move with the quantum number.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumMomentumFunction {
    moving: PointConfiguration,
    extra: Vec<ComplexPole>,
    fixed: Superpotential,
}

impl QuantumMomentumFunction {
    pub fn new(moving: PointConfiguration, extra: Vec<ComplexPole>, fixed: Superpotential) -> Self {
        QuantumMomentumFunction {
            moving,
            extra,
            fixed,
        }
    }

    pub fn moving_poles(&self) -> &PointConfiguration {
        &self.moving
    }

    pub fn extra_poles(&self) -> &[ComplexPole] {
        &self.extra
    }

    pub fn fixed_part(&self) -> &Superpotential {
        &self.fixed
    }

    /// Every pole with its residue: moving, extra, then those of `iW`.
    pub fn poles(&self) -> Vec<ComplexPole> {
        let moving = self.moving.iter().map(|&x| ComplexPole {
            location: Complex64::new(x, 0.0),
            residue: -I,
        });
        let fixed = self.fixed.poles().iter().map(|p| ComplexPole {
            location: Complex64::new(p.location, 0.0),
            residue: I * p.strength,
        });
        moving.chain(self.extra.iter().copied()).chain(fixed).collect()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let moving: Complex64 = self.moving.iter().map(|&x| -I / (z - x)).sum();
        let extra: Complex64 = self.extra.iter().map(|p| p.residue / (z - p.location)).sum();
        moving + extra + I * self.fixed.eval_complex(z)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let moving: Complex64 = self.moving.iter().map(|&x| I / (z - x).powu(2)).sum();
        let extra: Complex64 = self
            .extra
            .iter()
            .map(|p| -p.residue / (z - p.location).powu(2))
            .sum();
        moving + extra + I * self.fixed.derivative_complex(z)
    }

    /// Residue at `pole` from a small-circle contour integral.
    pub fn numeric_residue_at(&self, pole: Complex64) -> Result<Complex64> {
        let nearest = self
            .poles()
            .iter()
            .map(|p| (p.location - pole).norm())
            .filter(|&d| d > 0.0)
            .fold(1.0, f64::min);
        numeric_residue(|z| self.eval(z), pole, 0.25 * nearest, 256)
    }

    /// `(1/2π) Re ∮ p dz` over `contour`: the number of moving poles inside
    /// (plus any extra residues there). Fixed poles of `W` must stay outside.
    pub fn quantized_action(&self, contour: &Ellipse) -> Result<f64> {
        for p in self.poles() {
            let level = contour.level(p.location);
            if (level - 1.0).abs() < 1e-9 {
                return domain(format!("contour passes through the pole at {}", p.location));
            }
        }
        if let Some(p) = self.fixed.poles().iter().find(|p| contour.contains(Complex64::new(p.location, 0.0))) {
            return domain(format!("contour encloses the fixed pole of W at {}", p.location));
        }
        let mut m = 128;
        let mut prev = contour_integral(|z| self.eval(z), contour, m)?;
        loop {
            m *= 2;
            let next = contour_integral(|z| self.eval(z), contour, m)?;
            let done = (next - prev).norm() <= 1e-13 * (1.0 + next.norm());
            prev = next;
            if done || m >= 1 << 17 {
                break;
            }
        }
        Ok(prev.re / (2.0 * PI))
    }
}

/// The momentum function `-i f'/f + iW` of the state `f e^{-∫W}`.
pub fn qmf_from_state(f: &Polynomial, w: &Superpotential) -> Result<QuantumMomentumFunction> {
    if f.is_zero() {
        return invalid("the zero polynomial is not a state");
    }
    let roots = f.complex_roots()?;
    let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    for (i, a) in roots.iter().enumerate() {
        if roots[i + 1..].iter().any(|b| (a - b).norm() <= 1e-7 * scale) {
            return Err(Error::Degenerate(format!("repeated zero of the state near {a}")));
        }
    }
    let (real, complex): (Vec<Complex64>, Vec<Complex64>) =
        roots.into_iter().partition(|z| z.im.abs() <= 1e-9 * scale);
    let moving = if complex.is_empty() {
        f.real_roots()?
    } else {
        PointConfiguration::from_unsorted(real.iter().map(|z| z.re).collect())?
    };
    let extra = complex
        .into_iter()
        .map(|z| ComplexPole {
            location: z,
            residue: -I,
        })
        .collect();
    Ok(QuantumMomentumFunction::new(moving, extra, w.clone()))
}

/// `max_grid |p² - i p' - (E - V)|`, the Riccati form of the Schrödinger
/// equation `-ψ'' + Vψ = Eψ` for `p = -i ψ'/ψ`.
pub fn riccati_residual(
    p: &QuantumMomentumFunction,
    energy: f64,
    v: impl Fn(f64) -> f64,
    grid: &[f64],
) -> Result<f64> {
    let poles = p.poles();
    let mut worst = 0.0f64;
    for (k, &x) in grid.iter().enumerate() {
        let z = Complex64::new(x, 0.0);
        if poles
            .iter()
            .any(|q| (q.location - z).norm() <= 1e-12 * q.location.norm().max(1.0))
        {
            return domain(format!("grid point {k} (x = {x}) sits on a pole"));
        }
        let pz = p.eval(z);
        let r = pz * pz - I * p.derivative(z) - (energy - v(x));
        if !(r.re.is_finite() && r.im.is_finite()) {
            return domain(format!("Riccati residual not finite at grid point {k} (x = {x})"));
        }
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// `(1/2π) Re ∮ p dz` for the state `f` in the field `W`; counts the zeros of
/// `f` inside the contour.
pub fn contour_quantization(f: &Polynomial, w: &Superpotential, contour: &Ellipse) -> Result<f64> {
    qmf_from_state(f, w)?.quantized_action(contour)
}

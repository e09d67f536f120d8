//! Exceptional X1 Laguerre polynomials and the rationally deformed radial
//! oscillator they diagonalize.
//!
//! With `δ = g + l - 3/2` and `η(t) = L_l^{(δ)}(-t)`, the states are
//! `ψ_n(x) = x^{g+l} e^{-x²/2} L̂_n(x²) / η(x²)` on `x > 0`. For `l = 1` the
//! polynomials come from a state-deleting Darboux step on `L_{n-1}^{(δ)}`:
//! `L̂_n = η (L' - L) - L`, degree `n ≥ 1`, orthogonal under
//! `t^{δ+1} e^{-t} / η(t)²`. `l = 0` is a passthrough to the classical
//! `L_n^{(g - 1/2)}` so the same code reproduces the undeformed case.

mod state;

pub use state::{
    exceptional_log_jpdf, exceptional_qmf, exceptional_wavefunction, isospectral_check,
    CatalogPole, ExceptionalState, ExceptionalTarget, PoleKind,
};

use crate::electrostatics::{Pole, Superpotential};
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::{Interval, QuadratureRule};
use crate::orthopoly::{OrthogonalFamily, Polynomial};

/// `η(t) = L_l^{(δ)}(-t)` with `δ = g + l - 3/2`; all coefficients are
/// positive when `δ > -1`, so `η` has no zeros on `t ≥ 0`.
pub fn denominator_poly(g: f64, l: u32) -> Result<Polynomial> {
    let delta = g + l as f64 - 1.5;
    if !(delta > -1.0) || !g.is_finite() {
        return invalid(format!("need g + l - 3/2 > -1, got δ = {delta}"));
    }
    Ok(OrthogonalFamily::laguerre(delta)?.polynomial(l as usize).reflect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalLaguerreFamily {
    pub g: f64,
    pub l: u32,
    pub delta: f64,
    pub eta: Polynomial,
}

impl ExceptionalLaguerreFamily {
    pub fn new(g: f64, l: u32) -> Result<Self> {
        if !(g > 0.0) || !g.is_finite() {
            return invalid(format!("g must be positive, got {g}"));
        }
        Ok(ExceptionalLaguerreFamily {
            g,
            l,
            delta: g + l as f64 - 1.5,
            eta: denominator_poly(g, l)?,
        })
    }

    /// Power of `x` at the origin, `g + l`.
    pub fn origin_exponent(&self) -> f64 {
        self.g + self.l as f64
    }

    fn check_member(&self, n: usize) -> Result<()> {
        match self.l {
            0 => Ok(()),
            1 if n == 0 => domain("the X1 family has no degree-0 member; labels start at n = 1"),
            1 => Ok(()),
            l => Err(Error::Unsupported(format!(
                "deformation index l = {l}; only l = 1 (and the l = 0 passthrough) are implemented"
            ))),
        }
    }

    /// Energy of `ψ_n` for `-ψ'' + V ψ = E ψ` with [`Self::effective_potential`].
    pub fn energy(&self, n: usize) -> Result<f64> {
        self.check_member(n)?;
        let levels = if self.l == 1 { n - 1 } else { n };
        Ok(4.0 * levels as f64 + 2.0 * self.g + 1.0)
    }

    /// `x² + g(g-1)/x²` for `l = 0`; for `l = 1`, with `k = δ + 1`,
    /// `x² + g(g+1)/x² - 2 - 4/(x²+k) + 8x²/(x²+k)²`.
    pub fn effective_potential(&self, x: f64) -> Result<f64> {
        self.check_member(1)?;
        let g = self.g;
        let x2 = x * x;
        Ok(match self.l {
            0 => x2 + g * (g - 1.0) / x2,
            _ => {
                let s = x2 + self.delta + 1.0;
                x2 + g * (g + 1.0) / x2 - 2.0 - 4.0 / s + 8.0 * x2 / (s * s)
            }
        })
    }

    /// The fixed part of the momentum function, `W(x) = x - (g + l)/x`.
    pub fn superpotential(&self) -> Superpotential {
        Superpotential::new(
            1.0,
            0.0,
            vec![Pole {
                location: 0.0,
                strength: -self.origin_exponent(),
            }],
        )
        .expect("finite coefficients")
    }

    /// `t^{δ+1} e^{-t} / η(t)²` on `t ≥ 0`.
    pub fn t_weight(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let e = self.eta.eval(t);
        t.powf(self.delta + 1.0) * (-t).exp() / (e * e)
    }

    /// Gram matrix `∫ L̂_i L̂_j t^{δ+1} e^{-t} / η² dt` over the listed degrees.
    pub fn gram_matrix(&self, degrees: &[usize]) -> Result<Vec<Vec<f64>>> {
        let polys = degrees
            .iter()
            .map(|&n| exceptional_laguerre(n, self))
            .collect::<Result<Vec<_>>>()?;
        let rule = QuadratureRule::composite(Interval::half_line(0.0))?;
        let wts: Vec<f64> = rule.nodes().iter().map(|&t| self.t_weight(t)).collect();
        let vals: Vec<Vec<f64>> = polys
            .iter()
            .map(|p| rule.nodes().iter().map(|&t| p.eval(t)).collect())
            .collect();
        let dot = |a: &[f64], b: &[f64]| -> f64 {
            rule.weights()
                .iter()
                .zip(&wts)
                .zip(a.iter().zip(b))
                .map(|((q, w), (x, y))| q * w * x * y)
                .sum()
        };
        Ok(vals
            .iter()
            .map(|a| vals.iter().map(|b| dot(a, b)).collect())
            .collect())
    }
}

/// `L̂_n(t)`: for `l = 1`, `η (L' - L) - L` with `L = L_{n-1}^{(δ)}` (no
/// rescaling); for `l = 0`, the classical `L_n^{(g - 1/2)}`.
pub fn exceptional_laguerre(n: usize, fam: &ExceptionalLaguerreFamily) -> Result<Polynomial> {
    fam.check_member(n)?;
    Ok(match fam.l {
        0 => OrthogonalFamily::laguerre(fam.delta + 1.0)?.polynomial(n),
        _ => {
            let base = OrthogonalFamily::laguerre(fam.delta)?.polynomial(n - 1);
            let slope = &base.derivative() - &base;
            &(&fam.eta * &slope) - &base
        }
    })
}

/// `ŵ(x) = x^{2(g+l)} e^{-x²} / η(x²)²` on `x ≥ 0`, zero for `x < 0`.
pub fn deformed_weight(x: f64, fam: &ExceptionalLaguerreFamily) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    let e = fam.eta.eval(x * x);
    x.powf(2.0 * fam.origin_exponent()) * (-x * x).exp() / (e * e)
}

/// `ln ŵ(x)` for `x > 0`.
pub fn log_deformed_weight(x: f64, fam: &ExceptionalLaguerreFamily) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("the deformed weight lives on x > 0, got {x}"));
    }
    let e = fam.eta.eval(x * x);
    Ok(2.0 * fam.origin_exponent() * x.ln() - x * x - 2.0 * e.ln())
}

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::orthopoly::{log_vandermonde_abs, PointConfiguration, Polynomial};
use crate::qhj::{ComplexPole, QuantumMomentumFunction};
use crate::rmt::LogGasTarget;

use super::{exceptional_laguerre, log_deformed_weight, ExceptionalLaguerreFamily};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `ψ_n(x) = x^{g+l} e^{-x²/2} L̂_n(x²) / η(x²)` on `x > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalState {
    pub family: ExceptionalLaguerreFamily,
    pub n: usize,
    pub poly: Polynomial,
    pub energy: f64,
}

pub fn exceptional_wavefunction(n: usize, fam: &ExceptionalLaguerreFamily) -> Result<ExceptionalState> {
    Ok(ExceptionalState {
        family: fam.clone(),
        n,
        poly: exceptional_laguerre(n, fam)?,
        energy: fam.energy(n)?,
    })
}

/// `f(x²)` and the first two `x`-derivatives of `ln f(x²)`.
fn log_square_derivs(f: &Polynomial, x: f64) -> (f64, f64, f64) {
    let (v, d1, d2) = f.eval_derivs(x * x);
    let r1 = d1 / v;
    let r2 = d2 / v;
    (v, 2.0 * x * r1, 2.0 * r1 + 4.0 * x * x * (r2 - r1 * r1))
}

impl ExceptionalState {
    /// Zero for `x ≤ 0`.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let t = x * x;
        x.powf(self.family.origin_exponent()) * (-0.5 * t).exp() * self.poly.eval(t) / self.family.eta.eval(t)
    }

    fn log_derivs(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) {
            return domain(format!("the state lives on x > 0, got {x}"));
        }
        let a = self.family.origin_exponent();
        let (v, p1, p2) = log_square_derivs(&self.poly, x);
        if v == 0.0 {
            return domain(format!("x = {x} is a node of ψ_{}", self.n));
        }
        let (_, e1, e2) = log_square_derivs(&self.family.eta, x);
        Ok((a / x - x + p1 - e1, -a / (x * x) - 1.0 + p2 - e2))
    }

    /// `ψ'/ψ`.
    pub fn log_derivative(&self, x: f64) -> Result<f64> {
        Ok(self.log_derivs(x)?.0)
    }

    /// `ψ''/ψ = (ln ψ)'' + ((ln ψ)')²`, equal to `V - E` for the effective potential.
    pub fn curvature_ratio(&self, x: f64) -> Result<f64> {
        let (l1, l2) = self.log_derivs(x)?;
        Ok(l2 + l1 * l1)
    }

    /// Positive zeros of `ψ_n`: the square roots of the positive zeros of `L̂_n`.
    pub fn nodes(&self) -> Result<Vec<f64>> {
        let mut out: Vec<f64> = self
            .poly
            .complex_roots()?
            .into_iter()
            .filter(|z| z.im.abs() <= 1e-9 * z.norm().max(1.0) && z.re > 0.0)
            .map(|z| z.re.sqrt())
            .collect();
        out.sort_by(f64::total_cmp);
        Ok(out)
    }

    pub fn effective_potential(&self, x: f64) -> Result<f64> {
        self.family.effective_potential(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    /// A zero of `L̂_n(x²)`, residue `-i`.
    Moving,
    /// A zero of `η(x²)`, residue `+i`.
    Deformation,
    /// The origin, residue `-i(g + l)`.
    Origin,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogPole {
    pub location: Complex64,
    pub residue: Complex64,
    pub kind: PoleKind,
}

/// Zeros of `f(x²)` in the `x`-plane.
fn square_roots_of_zeros(f: &Polynomial) -> Result<Vec<Complex64>> {
    if f.degree() == 0 {
        return Ok(Vec::new());
    }
    Ok(f.complex_roots()?
        .into_iter()
        .flat_map(|t| {
            let r = t.sqrt();
            [r, -r]
        })
        .collect())
}

/// `p = -i (ln ψ_n)'` as a momentum function with `W = x - (g + l)/x`, plus
/// the catalog of every pole and its expected residue.
pub fn exceptional_qmf(
    n: usize,
    fam: &ExceptionalLaguerreFamily,
) -> Result<(QuantumMomentumFunction, Vec<CatalogPole>)> {
    let poly = exceptional_laguerre(n, fam)?;
    let scale = |z: &Complex64| 1e-9 * z.norm().max(1.0);
    let mut catalog = Vec::new();
    let mut real = Vec::new();
    let mut extra = Vec::new();
    for z in square_roots_of_zeros(&poly)? {
        if z.im.abs() <= scale(&z) {
            real.push(z.re);
            catalog.push(CatalogPole { location: Complex64::new(z.re, 0.0), residue: -I, kind: PoleKind::Moving });
        } else {
            let z = if z.re.abs() <= scale(&z) { Complex64::new(0.0, z.im) } else { z };
            extra.push(ComplexPole { location: z, residue: -I });
            catalog.push(CatalogPole { location: z, residue: -I, kind: PoleKind::Moving });
        }
    }
    for z in square_roots_of_zeros(&fam.eta)? {
        extra.push(ComplexPole { location: z, residue: I });
        catalog.push(CatalogPole { location: z, residue: I, kind: PoleKind::Deformation });
    }
    catalog.push(CatalogPole {
        location: Complex64::new(0.0, 0.0),
        residue: -I * fam.origin_exponent(),
        kind: PoleKind::Origin,
    });
    let moving = PointConfiguration::from_unsorted(real)?;
    Ok((QuantumMomentumFunction::new(moving, extra, fam.superpotential()), catalog))
}

/// Compares `ψ''/ψ` of two states on `grid`. Both solve the same equation
/// exactly when `d = ψ_{n1}''/ψ_{n1} - ψ_{n2}''/ψ_{n2}` is constant; returns
/// its population standard deviation and its mean, `E_{n2} - E_{n1}`.
pub fn isospectral_check(
    n1: usize,
    n2: usize,
    fam: &ExceptionalLaguerreFamily,
    grid: &[f64],
) -> Result<(f64, f64)> {
    if grid.is_empty() {
        return crate::error::invalid("empty grid");
    }
    let a = exceptional_wavefunction(n1, fam)?;
    let b = exceptional_wavefunction(n2, fam)?;
    let d = grid
        .iter()
        .map(|&x| Ok(a.curvature_ratio(x)? - b.curvature_ratio(x)?))
        .collect::<Result<Vec<f64>>>()?;
    let m = d.len() as f64;
    let mean = d.iter().sum::<f64>() / m;
    let var = d.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / m;
    Ok((var.sqrt(), mean))
}

/// `Σ ln ŵ(λ_i) + 2 Σ_{i<j} ln|λ_i - λ_j|`, summed in sorted order.
pub fn exceptional_log_jpdf(points: &[f64], fam: &ExceptionalLaguerreFamily) -> Result<f64> {
    let mut sorted = points.to_vec();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return domain("coincident points");
    }
    let mut one_body = 0.0;
    for &x in &sorted {
        one_body += log_deformed_weight(x, fam)?;
    }
    Ok(one_body + 2.0 * log_vandermonde_abs(&sorted)?)
}

/// The `β = 2` deformed gas `Π ŵ(λ_i) |Δ|²` as a Metropolis target.
#[derive(Debug, Clone)]
pub struct ExceptionalTarget {
    pub family: ExceptionalLaguerreFamily,
}

impl LogGasTarget for ExceptionalTarget {
    fn beta(&self) -> f64 {
        2.0
    }

    fn site_log_weight(&self, x: f64) -> Option<f64> {
        log_deformed_weight(x, &self.family).ok()
    }
}

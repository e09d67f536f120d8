use num_complex::Complex64;
use rayon::prelude::*;

use crate::electrostatics::Superpotential;
use crate::error::{invalid, Error, Result};
use crate::numerics::{hermitian_eigenvalues, symtri_eigenvalues, HermitianMatrix, RandomStream};
use crate::orthopoly::PointConfiguration;

/// Inverse temperature, size and confining field of a log-gas / ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub beta: f64,
    pub n: usize,
    pub w: Superpotential,
}

impl EnsembleSpec {
    pub fn new(beta: f64, n: usize, w: Superpotential) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return invalid(format!("beta must be positive, got {beta}"));
        }
        if n == 0 {
            return invalid("ensemble dimension must be positive");
        }
        Ok(EnsembleSpec { beta, n, w })
    }

    /// `W(x) = x`.
    pub fn hermite(beta: f64, n: usize) -> Result<Self> {
        Self::new(beta, n, Superpotential::oscillator(1.0))
    }
}

/// Which Gaussian matrix ensemble a Dyson index names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Goe,
    Gue,
    Gse,
}

impl Ensemble {
    pub fn from_beta(beta: f64) -> Result<Self> {
        match beta {
            b if b == 1.0 => Ok(Ensemble::Goe),
            b if b == 2.0 => Ok(Ensemble::Gue),
            b if b == 4.0 => Ok(Ensemble::Gse),
            b => invalid(format!("matrix ensembles need beta in {{1, 2, 4}}, got {b}")),
        }
    }

    pub fn beta(self) -> f64 {
        match self {
            Ensemble::Goe => 1.0,
            Ensemble::Gue => 2.0,
            Ensemble::Gse => 4.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMethod {
    Dense,
    Tridiagonal,
    Mcmc,
    Dyson,
}

impl SampleMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SampleMethod::Dense => "dense",
            SampleMethod::Tridiagonal => "tridiagonal",
            SampleMethod::Mcmc => "mcmc",
            SampleMethod::Dyson => "dyson",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSample {
    pub eigenvalues: PointConfiguration,
    pub seed: u64,
    pub replica: u64,
    pub spec: EnsembleSpec,
    pub method: SampleMethod,
}

fn dense_matrix(ensemble: Ensemble, n: usize, stream: &mut RandomStream) -> HermitianMatrix {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match ensemble {
        // Diagonal variance 2, off-diagonal variance 1.
        Ensemble::Goe => HermitianMatrix::from_upper(n, |i, j| {
            let z = stream.next_normal();
            c(if i == j { std::f64::consts::SQRT_2 * z } else { z }, 0.0)
        }),
        // Diagonal variance 1, off-diagonal E|z|² = 1.
        Ensemble::Gue => HermitianMatrix::from_upper(n, |i, j| {
            if i == j {
                c(stream.next_normal(), 0.0)
            } else {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                c(s * stream.next_normal(), s * stream.next_normal())
            }
        }),
        // [[A, B], [-B̄, Ā]] with A Hermitian and B antisymmetric; the scales
        // give density exp(-tr H²/2) on the 2N×2N embedding, i.e.
        // exp(-Σλ²) over the N distinct eigenvalues.
        Ensemble::Gse => {
            let mut a = vec![c(0.0, 0.0); n * n];
            let mut b = vec![c(0.0, 0.0); n * n];
            for i in 0..n {
                a[i * n + i] = c(std::f64::consts::FRAC_1_SQRT_2 * stream.next_normal(), 0.0);
                for j in i + 1..n {
                    a[i * n + j] = c(0.5 * stream.next_normal(), 0.5 * stream.next_normal());
                    b[i * n + j] = c(0.5 * stream.next_normal(), 0.5 * stream.next_normal());
                    b[j * n + i] = -b[i * n + j];
                }
            }
            HermitianMatrix::from_upper(2 * n, |i, j| match (i < n, j < n) {
                (true, true) => a[i * n + j],
                (true, false) => b[i * n + (j - n)],
                (false, false) => a[(i - n) * n + (j - n)].conj(),
                (false, true) => unreachable!("upper triangle only"),
            })
        }
    }
}

/// Kramers pairs of the quaternion embedding collapse to one eigenvalue each.
fn collapse_pairs(ev: &[f64]) -> Result<Vec<f64>> {
    let scale = ev.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    ev.chunks(2)
        .map(|p| {
            if (p[1] - p[0]).abs() > 1e-8 * scale {
                return Err(Error::Numeric(format!(
                    "quaternion eigenvalues {} and {} failed to pair",
                    p[0], p[1]
                )));
            }
            Ok(0.5 * (p[0] + p[1]))
        })
        .collect()
}

/// Eigenvalues of one dense GOE/GUE/GSE matrix (`spec.beta` picks which).
/// All three share the eigenvalue density `∝ exp(-β Σλ²/4) |Δ|^β`, so the
/// semicircle radius is `2√N` for each.
pub fn sample_gaussian_ensemble(spec: &EnsembleSpec, stream: &mut RandomStream) -> Result<SpectralSample> {
    let ensemble = Ensemble::from_beta(spec.beta)?;
    let m = dense_matrix(ensemble, spec.n, stream);
    let ev = hermitian_eigenvalues(&m)?;
    let ev = match ensemble {
        Ensemble::Gse => collapse_pairs(&ev)?,
        _ => ev,
    };
    Ok(SpectralSample {
        eigenvalues: PointConfiguration::from_unsorted(ev)?,
        seed: stream.seed(),
        replica: stream.index(),
        spec: spec.clone(),
        method: SampleMethod::Dense,
    })
}

/// Dumitriu–Edelman β-Hermite model: diagonal `N(0, 2/β)`, off-diagonals
/// `χ_{β(N-k)}/√β`, with the same density as the dense ensembles.
pub fn sample_tridiagonal_beta(n: usize, beta: f64, stream: &mut RandomStream) -> Result<SpectralSample> {
    let spec = EnsembleSpec::new(beta, n, Superpotential::oscillator(0.5))?;
    let sd = (2.0 / beta).sqrt();
    let diag: Vec<f64> = (0..n).map(|_| sd * stream.next_normal()).collect();
    let off = (1..n)
        .map(|k| Ok(stream.next_chi(beta * (n - k) as f64)? / beta.sqrt()))
        .collect::<Result<Vec<f64>>>()?;
    let ev = symtri_eigenvalues(&diag, &off)?;
    Ok(SpectralSample {
        eigenvalues: PointConfiguration::from_unsorted(ev)?,
        seed: stream.seed(),
        replica: stream.index(),
        spec,
        method: SampleMethod::Tridiagonal,
    })
}

/// Runs `draw` on `replicas` independent substreams of `seed` in parallel;
/// the output is ordered by replica index regardless of scheduling.
pub fn replicate<T: Send>(
    seed: u64,
    replicas: usize,
    draw: impl Fn(&mut RandomStream) -> Result<T> + Sync,
) -> Result<Vec<T>> {
    (0..replicas as u64)
        .into_par_iter()
        .map(|i| draw(&mut RandomStream::substream(seed, i)))
        .collect()
}

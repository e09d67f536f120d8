//! Seeded, portable random streams.
//!
//! A [`RandomStream`] is a ChaCha8 keystream keyed by a 64-bit seed. Substreams
//! select a different ChaCha stream id under the same key, so replica `i` of a
//! run is reproducible on its own and independent of scheduling.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rand_distr::{Distribution, Gamma};

use crate::error::{invalid, Result};

#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    index: u64,
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    /// Stream number `index` under `seed`. Distinct indices never overlap.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        RandomStream {
            seed,
            index,
            rng,
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal variate by the Box–Muller transform; the second value of
    /// each pair is kept for the next call.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        // 1 - u lies in (0, 1], so the logarithm is finite.
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Draws a single χ variate with `dof` degrees of freedom.
    pub fn next_chi(&mut self, dof: f64) -> Result<f64> {
        let gamma = chi_squared_law(dof)?;
        Ok(gamma.sample(&mut self.rng).sqrt())
    }
}

fn chi_squared_law(dof: f64) -> Result<Gamma<f64>> {
    if !(dof > 0.0) || !dof.is_finite() {
        return invalid(format!("chi degrees of freedom must be positive, got {dof}"));
    }
    Gamma::new(dof / 2.0, 2.0).map_err(|e| crate::Error::InvalidInput(e.to_string()))
}

/// `count` i.i.d. standard normal variates.
pub fn gaussian_sample(stream: &mut RandomStream, count: usize) -> Vec<f64> {
    (0..count).map(|_| stream.next_normal()).collect()
}

/// `count` χ-distributed variates: square roots of Gamma(dof/2, scale 2) draws.
pub fn chi_sample(stream: &mut RandomStream, dof: f64, count: usize) -> Result<Vec<f64>> {
    let gamma = chi_squared_law(dof)?;
    Ok((0..count)
        .map(|_| gamma.sample(&mut stream.rng).sqrt())
        .collect())
}

//! Gaussian ensembles and log-gas sampling.
//!
//! Every sampler here targets the joint eigenvalue law
//! `∝ exp(-β Σ U(λ_i)) Π_{i<j} |λ_i - λ_j|^β`. The dense GOE/GUE/GSE
//! matrices and the tridiagonal β-model use `U = x²/4`, so after dividing
//! eigenvalues by `√N` the spectrum fills the semicircle of radius 2.
//! Metropolis chains and Dyson flows take any confining `W`. Densities stay
//! unnormalized in the log domain throughout.

mod dyson;
mod ensembles;
mod jpdf;
mod stats;

pub use dyson::{dyson_flow, dyson_flow_with};
pub use ensembles::{
    replicate, sample_gaussian_ensemble, sample_tridiagonal_beta, Ensemble, EnsembleSpec,
    SampleMethod, SpectralSample,
};
pub use jpdf::{
    default_chain_start, log_jpdf, metropolis_run, metropolis_sample, weight_of, JpdfForm,
    LogGasTarget, MetropolisConfig, MetropolisDiagnostics, PotentialTarget,
};
pub use stats::{
    empirical_cdf, histogram, ks_distance, semicircle_cdf, semicircle_density, two_sample_ks,
};

/// Pooled eigenvalues of `samples`, divided by `√N` and sorted.
pub fn pooled_scaled(samples: &[SpectralSample]) -> Vec<f64> {
    let mut out: Vec<f64> = samples
        .iter()
        .flat_map(|s| {
            let scale = (s.spec.n as f64).sqrt();
            s.eigenvalues.iter().map(move |x| x / scale)
        })
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gue_semicircle_sharpens_with_size() {
        let ks: Vec<f64> = [50, 100, 200]
            .iter()
            .map(|&n| {
                let spec = EnsembleSpec::hermite(2.0, n).unwrap();
                let samples = replicate(2024, 50, |s| sample_gaussian_ensemble(&spec, s)).unwrap();
                ks_distance(&pooled_scaled(&samples), |x| semicircle_cdf(x, 2.0)).unwrap()
            })
            .collect();
        assert!(ks[2] < 0.03, "{ks:?}");
        assert!(ks[0] > ks[1] && ks[1] > ks[2], "{ks:?}");
    }
}

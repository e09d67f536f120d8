use crate::electrostatics::{residual, Superpotential};
use crate::error::{invalid, Error, Result};
use crate::numerics::RandomStream;
use crate::orthopoly::PointConfiguration;

/// Substep halvings allowed inside one step before giving up.
const MAX_HALVINGS: u32 = 40;

/// Euler–Maruyama for `dx_k = R_k(x) dt + √(2/β) dB_k`, where `R` is the
/// log-gas force. Its stationary law is `exp(-β E)`; `β = 0` means the
/// deterministic gradient flow. A substep that breaks ordering or leaves the
/// confining interval is retried at half the size with fresh noise.
/// `observe` sees the state after every full step.
pub fn dyson_flow_with(
    init: &PointConfiguration,
    w: &Superpotential,
    beta: f64,
    dt: f64,
    steps: usize,
    stream: &mut RandomStream,
    mut observe: impl FnMut(usize, &[f64]),
) -> Result<PointConfiguration> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return invalid(format!("beta must be nonnegative, got {beta}"));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return invalid(format!("dt must be positive, got {dt}"));
    }
    if init.is_empty() {
        return invalid("empty initial configuration");
    }
    let support = w
        .confining_interval()
        .ok_or_else(|| Error::Domain("W does not confine the gas".into()))?;
    if !init.iter().all(|&x| support.contains_open(x)) {
        return Err(Error::Domain(format!("initial configuration leaves the support {support}")));
    }
    let noise = if beta > 0.0 { (2.0 / beta).sqrt() } else { 0.0 };
    let admissible = |y: &[f64]| {
        y.windows(2).all(|p| p[0] < p[1]) && y.iter().all(|&v| support.contains_open(v))
    };
    let mut x = init.to_vec();
    let mut y = vec![0.0; x.len()];
    for step in 0..steps {
        let mut remaining = dt;
        let mut h = dt;
        let mut halvings = 0;
        while remaining > 0.0 {
            h = h.min(remaining);
            let r = residual(&x, w).map_err(|e| Error::IntegrationFailure {
                step,
                reason: e.to_string(),
            })?;
            let amp = noise * h.sqrt();
            for ((yk, xk), rk) in y.iter_mut().zip(&x).zip(&r) {
                *yk = xk + rk * h + if noise > 0.0 { amp * stream.next_normal() } else { 0.0 };
            }
            if admissible(&y) {
                std::mem::swap(&mut x, &mut y);
                remaining -= h;
            } else {
                halvings += 1;
                if halvings > MAX_HALVINGS {
                    return Err(Error::IntegrationFailure {
                        step,
                        reason: format!("ordering lost even at dt = {h:e}"),
                    });
                }
                h *= 0.5;
            }
        }
        observe(step, &x);
    }
    PointConfiguration::new(x)
}

/// Full trajectory, `steps + 1` configurations starting with `init`.
pub fn dyson_flow(
    init: &PointConfiguration,
    w: &Superpotential,
    beta: f64,
    dt: f64,
    steps: usize,
    stream: &mut RandomStream,
) -> Result<Vec<PointConfiguration>> {
    let mut traj = Vec::with_capacity(steps + 1);
    traj.push(init.clone());
    dyson_flow_with(init, w, beta, dt, steps, stream, |_, x| {
        traj.push(PointConfiguration::new(x.to_vec()).expect("flow keeps points ordered"));
    })?;
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrostatics::equilibrium_superpotential;
    use crate::orthopoly::OrthogonalFamily;
    use crate::rmt::{metropolis_sample, EnsembleSpec, MetropolisConfig};

    fn pc(v: &[f64]) -> PointConfiguration {
        PointConfiguration::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_particle_relaxes_exponentially() {
        let w = Superpotential::oscillator(1.0);
        let traj = dyson_flow(&pc(&[3.0]), &w, 0.0, 1e-3, 2000, &mut RandomStream::new(0)).unwrap();
        assert_eq!(traj.len(), 2001);
        let end = traj.last().unwrap()[0];
        let want = 3.0 * (-2.0f64).exp();
        assert!((end - want).abs() < 0.05 * want, "{end}");
    }

    #[test]
    fn deterministic_flow_reaches_equilibrium() {
        for fam in [
            OrthogonalFamily::hermite(),
            OrthogonalFamily::laguerre(1.0).unwrap(),
            OrthogonalFamily::jacobi(1.0, 2.0).unwrap(),
        ] {
            let w = equilibrium_superpotential(&fam);
            for n in [2, 5, 10] {
                let zeros = fam.zeros(n).unwrap();
                // Perturb the zeros but keep them ordered inside the support.
                let init: Vec<f64> = zeros
                    .iter()
                    .enumerate()
                    .map(|(k, &z)| z + 0.2 * zeros.min_gap().min(1.0) * if k % 2 == 0 { 1.0 } else { -1.0 })
                    .collect();
                // Explicit Euler: dt below the stiffest mode, horizon past the slowest.
                let ev = crate::electrostatics::hessian(&zeros, &w).unwrap().eigenvalues().unwrap();
                let dt = 0.5 / ev[n - 1];
                let steps = (40.0 / ev[0] / dt).ceil() as usize;
                let end = dyson_flow_with(&pc(&init), &w, 0.0, dt, steps, &mut RandomStream::new(0), |_, _| {})
                    .unwrap();
                let r = residual(&end, &w).unwrap();
                let rn = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                assert!(rn < 1e-8, "{} n={n}: {rn}", fam.name());
            }
        }
        let w = Superpotential::oscillator(1.0);
        let end = dyson_flow_with(&pc(&[-2.0, 0.1]), &w, 0.0, 1e-2, 5000, &mut RandomStream::new(0), |_, _| {}).unwrap();
        assert!((end[1] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-8);
    }

    #[test]
    fn stochastic_time_average_matches_mcmc() {
        let w = Superpotential::oscillator(1.0);
        let mut sum = 0.0;
        let mut count = 0usize;
        let burn = 5000;
        dyson_flow_with(&pc(&[-0.7, 0.7]), &w, 2.0, 2e-3, 500_000, &mut RandomStream::new(17), |step, x| {
            if step >= burn {
                sum += x.iter().map(|v| v * v).sum::<f64>();
                count += 1;
            }
        })
        .unwrap();
        let flow = sum / count as f64;
        let spec = EnsembleSpec::hermite(2.0, 2).unwrap();
        let cfg = MetropolisConfig { steps: 200_000, burn_in: 1000, step_scale: 0.5, thin: 1 };
        let (samples, _) = metropolis_sample(&spec, &cfg, &mut RandomStream::new(18)).unwrap();
        let mc = samples.iter().map(|p| p.iter().map(|v| v * v).sum::<f64>()).sum::<f64>() / samples.len() as f64;
        assert!((flow - mc).abs() < 0.05 * mc, "flow {flow} vs mcmc {mc}");
    }

    #[test]
    fn errors() {
        let w = Superpotential::oscillator(1.0);
        let mut s = RandomStream::new(0);
        assert!(dyson_flow(&pc(&[0.0]), &w, -1.0, 0.1, 1, &mut s).is_err());
        assert!(dyson_flow(&pc(&[0.0]), &w, 1.0, 0.0, 1, &mut s).is_err());
        let lag = equilibrium_superpotential(&OrthogonalFamily::laguerre(0.0).unwrap());
        assert!(matches!(dyson_flow(&pc(&[-1.0]), &lag, 1.0, 0.1, 1, &mut s), Err(Error::Domain(_))));
        let traj = dyson_flow(&pc(&[-0.5, 0.5]), &w, 1.0, 0.01, 10, &mut RandomStream::new(3)).unwrap();
        let again = dyson_flow(&pc(&[-0.5, 0.5]), &w, 1.0, 0.01, 10, &mut RandomStream::new(3)).unwrap();
        assert_eq!(traj, again);
    }
}

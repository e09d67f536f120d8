use crate::electrostatics::Superpotential;
use crate::error::{domain, invalid, Result};
use crate::numerics::{Interval, RandomStream};
use crate::orthopoly::{log_vandermonde_abs, PointConfiguration};

use super::EnsembleSpec;

/// How the one-body factor of the joint density is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JpdfForm {
    /// `exp(-β Σ U(λ_i))`, with `U` the antiderivative of `W`.
    Potential,
    /// `Π w(λ_i)` with the weight `w = exp(-2U)`, independent of β.
    Weight,
}

/// `w(x) = exp(-2U(x)) = exp(-c x² - 2 d x) Π |x - p|^{-2s}`, evaluated in
/// product form.
pub fn weight_of(w: &Superpotential, x: f64) -> f64 {
    let gauss = (-w.linear_coefficient() * x * x - 2.0 * w.constant_term() * x).exp();
    w.poles()
        .iter()
        .fold(gauss, |acc, p| acc * (x - p.location).abs().powf(-2.0 * p.strength))
}

/// Unnormalized log joint density of `points` (any order):
/// `one-body + β Σ_{i<j} ln|λ_i - λ_j|`. At `β = 2` both forms coincide.
/// Points are summed in sorted order, so permuting the input gives a
/// bit-identical value.
pub fn log_jpdf(points: &[f64], beta: f64, w: &Superpotential, form: JpdfForm) -> Result<f64> {
    if !(beta > 0.0) {
        return invalid(format!("beta must be positive, got {beta}"));
    }
    let mut sorted = points.to_vec();
    sorted.sort_by(f64::total_cmp);
    let points = &sorted[..];
    let mut one_body = 0.0;
    for (k, &x) in points.iter().enumerate() {
        if w.check_regular(x).is_err() {
            return domain(format!("point {k} (x = {x}) sits on a pole of W"));
        }
        one_body += match form {
            JpdfForm::Potential => -beta * w.antiderivative(x),
            JpdfForm::Weight => weight_of(w, x).ln(),
        };
    }
    Ok(one_body + beta * log_vandermonde_abs(points)?)
}

/// A target `Π_i exp(site(x_i)) · |Δ|^β` for single-site Metropolis moves.
pub trait LogGasTarget {
    fn beta(&self) -> f64;
    /// Log one-body factor; `None` outside the support.
    fn site_log_weight(&self, x: f64) -> Option<f64>;
}

/// `exp(-β U)` restricted to the confining interval of `W`.
#[derive(Debug, Clone)]
pub struct PotentialTarget {
    beta: f64,
    w: Superpotential,
    support: Interval,
}

impl PotentialTarget {
    pub fn new(beta: f64, w: &Superpotential) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return invalid(format!("beta must be positive, got {beta}"));
        }
        let Some(support) = w.confining_interval() else {
            return domain("W does not confine the gas; the density is not normalizable");
        };
        Ok(PotentialTarget {
            beta,
            w: w.clone(),
            support,
        })
    }
}

impl LogGasTarget for PotentialTarget {
    fn beta(&self) -> f64 {
        self.beta
    }

    fn site_log_weight(&self, x: f64) -> Option<f64> {
        self.support
            .contains_open(x)
            .then(|| -self.beta * self.w.antiderivative(x))
            .filter(|v| v.is_finite())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetropolisConfig {
    /// Sweeps kept after burn-in; each sweep proposes a move for every site.
    pub steps: usize,
    pub burn_in: usize,
    pub step_scale: f64,
    /// Record every `thin`-th kept sweep.
    pub thin: usize,
}

impl MetropolisConfig {
    /// Proposal width `0.5/√N`.
    pub fn default_step_scale(n: usize) -> f64 {
        0.5 / (n as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetropolisDiagnostics {
    pub proposals: u64,
    pub accepted: u64,
}

impl MetropolisDiagnostics {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.proposals.max(1) as f64
    }
}

fn validate(config: &MetropolisConfig) -> Result<()> {
    if !(config.step_scale > 0.0) || !config.step_scale.is_finite() {
        return invalid(format!("step scale must be positive, got {}", config.step_scale));
    }
    if config.steps == 0 {
        return invalid("need at least one recorded sweep");
    }
    if config.thin == 0 {
        return invalid("thinning must be at least 1");
    }
    Ok(())
}

/// Random-walk Metropolis over single-site normal proposals, calling
/// `observe` with the current (unsorted) state after each kept sweep.
/// The chain is a pure function of the stream.
pub fn metropolis_run<T: LogGasTarget + ?Sized>(
    target: &T,
    init: &[f64],
    config: &MetropolisConfig,
    stream: &mut RandomStream,
    mut observe: impl FnMut(&[f64]),
) -> Result<MetropolisDiagnostics> {
    validate(config)?;
    let beta = target.beta();
    let mut x = init.to_vec();
    let mut site: Vec<f64> = x
        .iter()
        .map(|&v| target.site_log_weight(v))
        .collect::<Option<_>>()
        .map_or_else(|| domain("initial state outside the support"), Ok)?;
    log_vandermonde_abs(&x)?;
    let n = x.len();
    let mut diag = MetropolisDiagnostics {
        proposals: 0,
        accepted: 0,
    };
    for sweep in 0..config.burn_in + config.steps {
        for k in 0..n {
            let old = x[k];
            let new = old + config.step_scale * stream.next_normal();
            let u = stream.next_f64();
            diag.proposals += 1;
            let Some(new_site) = target.site_log_weight(new) else {
                continue;
            };
            let mut delta = new_site - site[k];
            let mut collided = false;
            for (j, &xj) in x.iter().enumerate() {
                if j != k {
                    let dn = (new - xj).abs();
                    if dn == 0.0 {
                        collided = true;
                        break;
                    }
                    delta += beta * (dn.ln() - (old - xj).abs().ln());
                }
            }
            if collided {
                continue;
            }
            if delta >= 0.0 || u < delta.exp() {
                x[k] = new;
                site[k] = new_site;
                diag.accepted += 1;
            }
        }
        if sweep >= config.burn_in && (sweep - config.burn_in) % config.thin == 0 {
            observe(&x);
        }
    }
    Ok(diag)
}

/// Starting state for a chain: the (approximate) equilibrium of the field.
pub fn default_chain_start(w: &Superpotential, n: usize) -> Result<Vec<f64>> {
    use crate::electrostatics::{solve_equilibrium, EquilibriumOptions};
    let res = solve_equilibrium(n, w, None, EquilibriumOptions { tol: 1e-8, max_iter: 200 })?;
    Ok(res.points.into_vec())
}

/// Samples of the `exp(-β Σ U) |Δ|^β` log-gas, sorted, one per kept sweep
/// (after thinning), plus acceptance diagnostics.
pub fn metropolis_sample(
    spec: &EnsembleSpec,
    config: &MetropolisConfig,
    stream: &mut RandomStream,
) -> Result<(Vec<PointConfiguration>, MetropolisDiagnostics)> {
    validate(config)?;
    let target = PotentialTarget::new(spec.beta, &spec.w)?;
    let init = default_chain_start(&spec.w, spec.n)?;
    let mut out = Vec::with_capacity(config.steps / config.thin + 1);
    let mut failure = None;
    let diag = metropolis_run(&target, &init, config, stream, |x| {
        match PointConfiguration::from_unsorted(x.to_vec()) {
            Ok(p) => out.push(p),
            Err(e) => failure = Some(e),
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok((out, diag)),
    }
}

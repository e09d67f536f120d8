use super::{energy, hessian, residual, Superpotential};
use crate::error::{domain, invalid, Result};
use crate::numerics::Interval;
use crate::orthopoly::PointConfiguration;

/// Distance kept from a hard edge while iterating.
const EDGE_MARGIN: f64 = 1e-12;
const MAX_HALVINGS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumOptions {
    /// Stop once `max |R_k| <= tol`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for EquilibriumOptions {
    fn default() -> Self {
        EquilibriumOptions {
            tol: 1e-10,
            max_iter: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult {
    pub points: PointConfiguration,
    /// `max |R_k|` at `points`.
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

struct Gas<'a> {
    w: &'a Superpotential,
    lo: f64,
    hi: f64,
}

impl Gas<'_> {
    fn admissible(&self, x: &[f64]) -> bool {
        x.windows(2).all(|p| p[0] < p[1])
            && x.first().is_some_and(|&a| a > self.lo)
            && x.last().is_some_and(|&b| b < self.hi)
            && x.iter().all(|v| v.is_finite())
    }

    fn clamp(&self, x: &mut [f64]) {
        for v in x.iter_mut() {
            if self.lo.is_finite() {
                *v = v.max(self.lo + EDGE_MARGIN * self.lo.abs().max(1.0));
            }
            if self.hi.is_finite() {
                *v = v.min(self.hi - EDGE_MARGIN * self.hi.abs().max(1.0));
            }
        }
    }

    fn energy_or_inf(&self, x: &[f64]) -> f64 {
        energy(x, self.w).unwrap_or(f64::INFINITY)
    }

    fn step(&self, x: &[f64], dir: &[f64], t: f64) -> Vec<f64> {
        x.iter().zip(dir).map(|(a, d)| a + t * d).collect()
    }
}

/// Chebyshev-like points spread over the confining interval and shrunk toward
/// its centre, with the spread on unbounded sides set by the field strength.
fn auto_init(n: usize, w: &Superpotential, support: Interval) -> Vec<f64> {
    let c = w.linear_coefficient();
    let pole_mass: f64 = w.poles().iter().map(|p| p.strength.abs()).sum();
    let nf = n as f64;
    let reach = if c > 0.0 {
        (2.0 * nf / c).sqrt() + pole_mass.sqrt() + w.constant_term().abs() / c
    } else {
        2.0 * (nf + pole_mass) / w.constant_term().abs().max(f64::MIN_POSITIVE)
    };
    let (a, b) = match (support.lo.is_finite(), support.hi.is_finite()) {
        (true, true) => (support.lo, support.hi),
        (true, false) => (support.lo, support.lo + 2.0 * reach),
        (false, true) => (support.hi - 2.0 * reach, support.hi),
        (false, false) => {
            let centre = -w.constant_term() / c;
            (centre - reach, centre + reach)
        }
    };
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a) * 0.9;
    (0..n)
        .map(|k| {
            let theta = std::f64::consts::PI * (2 * (n - k) - 1) as f64 / (2 * n) as f64;
            mid + half * theta.cos()
        })
        .collect()
}

/// Minimizes the log-gas energy of `n` charges in the field `W`.
///
/// Newton steps `H δ = R` are halved until the configuration stays ordered,
/// inside the confining interval and does not gain energy. If the Hessian is
/// not positive definite or no halving works, a gradient step along `R` with
/// energy backtracking is taken instead. Once converged, up to two extra
/// Newton steps polish the positions. Running out of iterations yields
/// `converged = false` rather than an error.
pub fn solve_equilibrium(
    n: usize,
    w: &Superpotential,
    init: Option<&PointConfiguration>,
    options: EquilibriumOptions,
) -> Result<EquilibriumResult> {
    if n == 0 {
        return invalid("need at least one charge");
    }
    if !(options.tol > 0.0) {
        return invalid(format!("tolerance must be positive, got {}", options.tol));
    }
    let Some(support) = w.confining_interval() else {
        return domain("W does not confine charges on any interval");
    };
    let gas = Gas {
        w,
        lo: support.lo,
        hi: support.hi,
    };
    let mut x = match init {
        Some(p) => {
            if p.len() != n {
                return invalid(format!("initial configuration has {} points, need {n}", p.len()));
            }
            if !p.iter().all(|&v| support.contains_open(v)) {
                return domain(format!("initial configuration leaves the support {support}"));
            }
            p.to_vec()
        }
        None => auto_init(n, w, support),
    };
    gas.clamp(&mut x);
    if !gas.admissible(&x) {
        return domain("initial configuration is not strictly ordered inside the support");
    }

    let mut r = residual(&x, w)?;
    let mut rn = max_abs(&r);
    let mut iterations = 0;
    let mut stalls = 0;
    while rn > options.tol && iterations < options.max_iter {
        iterations += 1;
        let e0 = gas.energy_or_inf(&x);
        let slack = 1e-13 * (1.0 + e0.abs());
        let mut next = None;

        if let Some(chol) = hessian(&x, w)?.cholesky() {
            let dir = chol.solve(&r);
            let mut t = 1.0;
            for _ in 0..=MAX_HALVINGS {
                let y = gas.step(&x, &dir, t);
                if gas.admissible(&y) {
                    let ry = residual(&y, w)?;
                    if gas.energy_or_inf(&y) <= e0 + slack || max_abs(&ry) < rn {
                        next = Some((y, ry));
                        break;
                    }
                }
                t *= 0.5;
            }
        }

        if next.is_none() {
            // Gradient flow: -R is the energy gradient.
            let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let mut t = scale / rn.max(f64::MIN_POSITIVE);
            for _ in 0..4 * MAX_HALVINGS {
                let y = gas.step(&x, &r, t);
                if gas.admissible(&y) && gas.energy_or_inf(&y) < e0 {
                    let ry = residual(&y, w)?;
                    next = Some((y, ry));
                    break;
                }
                t *= 0.5;
            }
        }

        let Some((y, ry)) = next else { break };
        let moved = max_abs(&gas.step(&y, &x, -1.0));
        let scale = max_abs(&y).max(1.0);
        x = y;
        r = ry;
        rn = max_abs(&r);
        if moved <= 4.0 * f64::EPSILON * scale {
            stalls += 1;
            if stalls >= 3 {
                break;
            }
        } else {
            stalls = 0;
        }
    }

    // The residual tolerance bounds the force, not the position: along soft
    // Hessian directions (outer Laguerre charges) the position error can be
    // far larger. Two more full Newton steps are almost free at this point.
    if rn <= options.tol {
        for _ in 0..2 {
            let Some(chol) = hessian(&x, w)?.cholesky() else { break };
            let y = gas.step(&x, &chol.solve(&r), 1.0);
            if !gas.admissible(&y) {
                break;
            }
            let ry = residual(&y, w)?;
            if max_abs(&ry) > rn {
                break;
            }
            x = y;
            r = ry;
            rn = max_abs(&r);
        }
    }

    Ok(EquilibriumResult {
        points: PointConfiguration::new(x)?,
        residual_norm: rn,
        iterations,
        converged: rn <= options.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrostatics::{equilibrium_superpotential, Pole};
    use crate::orthopoly::OrthogonalFamily;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::SQRT_2;

    fn opts(tol: f64) -> EquilibriumOptions {
        EquilibriumOptions { tol, max_iter: 200 }
    }

    #[test]
    fn small_examples() {
        let h = Superpotential::oscillator(1.0);
        let res = solve_equilibrium(2, &h, None, opts(1e-13)).unwrap();
        assert!(res.converged);
        assert_abs_diff_eq!(res.points[0], -1.0 / SQRT_2, epsilon = 1e-10);
        assert_abs_diff_eq!(res.points[1], 1.0 / SQRT_2, epsilon = 1e-10);

        let res = solve_equilibrium(1, &h, None, opts(1e-14)).unwrap();
        assert_abs_diff_eq!(res.points[0], 0.0, epsilon = 1e-14);

        let l = equilibrium_superpotential(&OrthogonalFamily::laguerre(0.0).unwrap());
        let res = solve_equilibrium(2, &l, None, opts(1e-13)).unwrap();
        assert!(res.converged);
        assert_abs_diff_eq!(res.points[0], 2.0 - SQRT_2, epsilon = 1e-10);
        assert_abs_diff_eq!(res.points[1], 2.0 + SQRT_2, epsilon = 1e-10);
    }

    #[test]
    fn equilibrium_is_the_zero_set() {
        let families = [
            OrthogonalFamily::hermite(),
            OrthogonalFamily::laguerre(0.0).unwrap(),
            OrthogonalFamily::laguerre(3.0).unwrap(),
            OrthogonalFamily::jacobi(0.0, 0.0).unwrap(),
            OrthogonalFamily::jacobi(1.0, 2.0).unwrap(),
            OrthogonalFamily::jacobi(-0.5, 0.5).unwrap(),
        ];
        for fam in families {
            let w = equilibrium_superpotential(&fam);
            for n in [1, 2, 3, 5, 8, 13, 21, 30, 40] {
                let res = solve_equilibrium(n, &w, None, opts(1e-9)).unwrap();
                assert!(res.converged, "{} n={n}: {}", fam.name(), res.residual_norm);
                let zeros = fam.zeros(n).unwrap();
                let err = res.points.max_distance(&zeros).unwrap();
                assert!(err < 1e-8, "{} n={n}: {err}", fam.name());
                assert!(hessian(&res.points, &w).unwrap().is_positive_definite());
            }
        }
    }

    #[test]
    fn respects_explicit_init() {
        let h = Superpotential::oscillator(2.0);
        let init = PointConfiguration::new(vec![-5.0, 4.0, 9.0]).unwrap();
        let res = solve_equilibrium(3, &h, Some(&init), opts(1e-12)).unwrap();
        assert!(res.converged);
        // W = 2x puts Hermite zeros scaled by 1/√2.
        let zeros = OrthogonalFamily::hermite().zeros(3).unwrap();
        for (a, b) in res.points.iter().zip(zeros.iter()) {
            assert_abs_diff_eq!(*a, b / SQRT_2, epsilon = 1e-10);
        }
    }

    #[test]
    fn non_convergence_is_reported() {
        let h = Superpotential::oscillator(1.0);
        let res = solve_equilibrium(20, &h, None, EquilibriumOptions { tol: 1e-12, max_iter: 1 }).unwrap();
        assert!(!res.converged);
        assert_eq!(res.iterations, 1);
        assert!(res.residual_norm > 1e-12);
    }

    #[test]
    fn bad_inputs() {
        let h = Superpotential::oscillator(1.0);
        assert!(solve_equilibrium(0, &h, None, opts(1e-9)).is_err());
        assert!(solve_equilibrium(2, &h, None, opts(0.0)).is_err());
        let init = PointConfiguration::new(vec![0.0]).unwrap();
        assert!(solve_equilibrium(2, &h, Some(&init), opts(1e-9)).is_err());
        assert!(solve_equilibrium(2, &Superpotential::oscillator(-1.0), None, opts(1e-9)).is_err());
        let l = equilibrium_superpotential(&OrthogonalFamily::laguerre(0.0).unwrap());
        let outside = PointConfiguration::new(vec![-1.0, 1.0]).unwrap();
        assert!(solve_equilibrium(2, &l, Some(&outside), opts(1e-9)).is_err());
    }

    #[test]
    fn gradient_fallback_decreases_energy() {
        // W' < 0 near the repelling pole makes the Hessian indefinite far
        // from equilibrium, so the solver must rely on gradient steps.
        let w = Superpotential::new(
            0.0,
            0.0,
            vec![
                Pole { location: -1.0, strength: -3.0 },
                Pole { location: 1.0, strength: -0.2 },
            ],
        )
        .unwrap();
        let init = PointConfiguration::new(vec![0.9, 0.95, 0.99]).unwrap();
        let mut last = energy(&init, &w).unwrap();
        for iters in 1..=10 {
            let res = solve_equilibrium(
                3,
                &w,
                Some(&init),
                EquilibriumOptions { tol: 1e-12, max_iter: iters },
            )
            .unwrap();
            let e = energy(&res.points, &w).unwrap();
            assert!(e <= last + 1e-12, "iteration {iters}: {e} > {last}");
            last = e;
        }
        let res = solve_equilibrium(3, &w, Some(&init), opts(1e-11)).unwrap();
        assert!(res.converged);
    }
}

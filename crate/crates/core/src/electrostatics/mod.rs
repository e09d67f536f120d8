//! The Stieltjes log-gas: unit charges on a line repelling logarithmically in
//! an external field `W`. Its energy, force residual and Hessian, plus a
//! damped Newton solver for the equilibrium.

mod solve;
mod superpotential;

pub use solve::{solve_equilibrium, EquilibriumOptions, EquilibriumResult};
pub use superpotential::{equilibrium_superpotential, Pole, Superpotential};

use crate::error::{domain, invalid, Error, Result};
use crate::numerics::SymMatrix;
use crate::orthopoly::{log_vandermonde_abs, RealRootedPolynomial};

fn check_points(points: &[f64], w: &Superpotential) -> Result<()> {
    for (k, &x) in points.iter().enumerate() {
        if !x.is_finite() {
            return invalid(format!("point {k} is not finite"));
        }
        if w.check_regular(x).is_err() {
            return domain(format!("point {k} (x = {x}) sits on a pole of W"));
        }
    }
    Ok(())
}

/// `Σ_{j≠k} 1/(x_k - x_j)` for every `k`.
fn interaction(points: &[f64]) -> Result<Vec<f64>> {
    let n = points.len();
    let mut out = vec![0.0; n];
    for k in 0..n {
        for j in k + 1..n {
            let d = points[k] - points[j];
            if d == 0.0 {
                return domain(format!("points {j} and {k} coincide"));
            }
            out[k] += 1.0 / d;
            out[j] -= 1.0 / d;
        }
    }
    Ok(out)
}

/// Net force on each charge, `R_k = Σ_{j≠k} 1/(x_k - x_j) - W(x_k)`.
/// Vanishes exactly at an equilibrium; `-R` is the gradient of [`energy`].
pub fn residual(points: &[f64], w: &Superpotential) -> Result<Vec<f64>> {
    check_points(points, w)?;
    let mut r = interaction(points)?;
    for (rk, &x) in r.iter_mut().zip(points) {
        *rk -= w.eval(x);
    }
    Ok(r)
}

/// Both sides of the l'Hôpital identity at the `j`-th real zero of `f`:
/// `(Σ_{k≠j} 1/(x_j - x_k), f''(x_j) / (2 f'(x_j)))`.
pub fn lhopital_identity_check<P: RealRootedPolynomial + ?Sized>(
    f: &P,
    j: usize,
) -> Result<(f64, f64)> {
    let zeros = f.real_zeros()?;
    if j >= zeros.len() {
        return invalid(format!("zero index {j} out of range ({} zeros)", zeros.len()));
    }
    let xj = zeros[j];
    let sum = zeros
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, &xk)| 1.0 / (xj - xk))
        .sum();
    let (_, d1, d2) = f.derivatives(xj);
    if d1 == 0.0 {
        return Err(Error::Degenerate(format!("f'(x_{j}) vanishes at x = {xj}")));
    }
    Ok((sum, d2 / (2.0 * d1)))
}

/// `E = Σ_k U(x_k) - Σ_{i<j} ln|x_i - x_j|`, so that `exp(-β E)` is the
/// ensemble density.
pub fn energy(points: &[f64], w: &Superpotential) -> Result<f64> {
    check_points(points, w)?;
    let external: f64 = points.iter().map(|&x| w.antiderivative(x)).sum();
    Ok(external - log_vandermonde_abs(points)?)
}

/// Hessian of [`energy`]: `W'(x_k) + Σ_{j≠k} (x_k - x_j)^{-2}` on the
/// diagonal and `-(x_k - x_l)^{-2}` off it.
pub fn hessian(points: &[f64], w: &Superpotential) -> Result<SymMatrix> {
    check_points(points, w)?;
    let n = points.len();
    let mut h = SymMatrix::zeros(n);
    let mut diag: Vec<f64> = points.iter().map(|&x| w.derivative(x)).collect();
    for k in 0..n {
        for l in k + 1..n {
            let d = points[k] - points[l];
            if d == 0.0 {
                return domain(format!("points {k} and {l} coincide"));
            }
            let c = 1.0 / (d * d);
            h.set(k, l, -c);
            diag[k] += c;
            diag[l] += c;
        }
    }
    for (k, v) in diag.into_iter().enumerate() {
        h.set(k, k, v);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::{OrthogonalFamily, Polynomial};
    use crate::Error;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::SQRT_2;

    fn families() -> Vec<OrthogonalFamily> {
        vec![
            OrthogonalFamily::hermite(),
            OrthogonalFamily::laguerre(0.0).unwrap(),
            OrthogonalFamily::laguerre(2.5).unwrap(),
            OrthogonalFamily::jacobi(0.0, 0.0).unwrap(),
            OrthogonalFamily::jacobi(1.0, 2.0).unwrap(),
            OrthogonalFamily::jacobi(-0.5, 0.5).unwrap(),
        ]
    }

    #[test]
    fn residual_examples() {
        let h = Superpotential::oscillator(1.0);
        let a = 1.0 / SQRT_2;
        for r in residual(&[-a, a], &h).unwrap() {
            assert_abs_diff_eq!(r, 0.0, epsilon = 1e-12);
        }
        assert_eq!(residual(&[0.0], &h).unwrap(), vec![0.0]);
        let l = equilibrium_superpotential(&OrthogonalFamily::laguerre(0.0).unwrap());
        for r in residual(&[2.0 - SQRT_2, 2.0 + SQRT_2], &l).unwrap() {
            assert_abs_diff_eq!(r, 0.0, epsilon = 1e-12);
        }
        assert!(matches!(residual(&[0.0, 1.0], &l), Err(Error::Domain(_))));
    }

    #[test]
    fn residual_sign_is_interaction_minus_field() {
        // One charge right of the origin in W = x is pushed back: R < 0.
        let r = residual(&[0.5], &Superpotential::oscillator(1.0)).unwrap();
        assert_eq!(r, vec![-0.5]);
        // At Hermite zeros the interaction sum equals +x_k.
        let zeros = OrthogonalFamily::hermite().zeros(5).unwrap();
        let s = interaction(&zeros).unwrap();
        for (sk, xk) in s.iter().zip(zeros.iter()) {
            assert_abs_diff_eq!(sk, xk, epsilon = 1e-12);
        }
    }

    #[test]
    fn residual_vanishes_at_family_zeros() {
        for fam in families() {
            let w = equilibrium_superpotential(&fam);
            for n in 1..=30 {
                let zeros = fam.zeros(n).unwrap();
                let r = residual(&zeros, &w).unwrap();
                for (rk, &x) in r.iter().zip(zeros.iter()) {
                    assert!(
                        rk.abs() <= 1e-8 * (1.0 + w.eval(x).abs()),
                        "{} n={n}: R={rk}",
                        fam.name()
                    );
                }
            }
        }
    }

    #[test]
    fn lhopital_examples() {
        let f = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        let (s, q) = lhopital_identity_check(&f, 1).unwrap();
        assert_abs_diff_eq!(s, 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(q, 0.5, epsilon = 1e-14);

        let h3 = OrthogonalFamily::hermite().member(3);
        let (s, q) = lhopital_identity_check(&h3, 1).unwrap();
        assert_abs_diff_eq!(s, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(q, 0.0, epsilon = 1e-14);

        // L_2 scaled by 2: x² - 4x + 2.
        let l2 = Polynomial::new(vec![2.0, -4.0, 1.0]);
        let (s, q) = lhopital_identity_check(&l2, 1).unwrap();
        let expect = 1.0 / (2.0 * SQRT_2);
        assert_abs_diff_eq!(s, expect, epsilon = 1e-12);
        assert_abs_diff_eq!(q, expect, epsilon = 1e-12);

        assert!(lhopital_identity_check(&f, 2).is_err());
    }

    #[test]
    fn lhopital_holds_for_every_family_zero() {
        for fam in families() {
            for n in 1..=30 {
                let m = fam.member(n);
                for j in 0..n {
                    let (s, q) = lhopital_identity_check(&m, j).unwrap();
                    assert!(
                        (s - q).abs() <= 1e-9 * s.abs().max(q.abs()).max(1.0),
                        "{} n={n} j={j}: {s} vs {q}",
                        fam.name()
                    );
                }
            }
        }
    }

    #[test]
    fn energy_examples() {
        let h = Superpotential::oscillator(1.0);
        assert_eq!(energy(&[0.0], &h).unwrap(), 0.0);
        let a = 1.0 / SQRT_2;
        assert_abs_diff_eq!(
            energy(&[-a, a], &h).unwrap(),
            0.5 - SQRT_2.ln(),
            epsilon = 1e-15
        );
        for a in [0.3, 0.9, 2.0] {
            assert_abs_diff_eq!(
                energy(&[-a, a], &h).unwrap(),
                a * a - (2.0 * a).ln(),
                epsilon = 1e-14
            );
        }
        assert!(energy(&[1.0, 1.0], &h).is_err());
    }

    #[test]
    fn boltzmann_factor_follows_confining_sign() {
        // exp(-E) must equal exp(-Σ x²/2) |Δ| for W = x.
        let h = Superpotential::oscillator(1.0);
        let pts = [-1.3, 0.2, 0.7];
        let direct = (-pts.iter().map(|x| x * x / 2.0).sum::<f64>()).exp()
            * crate::orthopoly::vandermonde_abs(&pts).unwrap();
        assert_abs_diff_eq!((-energy(&pts, &h).unwrap()).exp(), direct, epsilon = 1e-14);
    }

    #[test]
    fn residual_is_minus_energy_gradient() {
        let w = equilibrium_superpotential(&OrthogonalFamily::jacobi(1.0, 2.0).unwrap());
        let pts = [-0.6, -0.1, 0.35, 0.8];
        let r = residual(&pts, &w).unwrap();
        let h = 1e-6;
        for k in 0..pts.len() {
            let mut p = pts;
            let mut m = pts;
            p[k] += h;
            m[k] -= h;
            let g = (energy(&p, &w).unwrap() - energy(&m, &w).unwrap()) / (2.0 * h);
            assert_abs_diff_eq!(g, -r[k], epsilon = 1e-7);
        }
    }

    #[test]
    fn hessian_examples() {
        let h = Superpotential::oscillator(1.0);
        let m = hessian(&[0.0], &h).unwrap();
        assert_eq!(m.to_rows(), vec![vec![1.0]]);
        let a = 1.0 / SQRT_2;
        // Pair distance 2a gives (2a)^-2 = 1/2: [[3/2, -1/2], [-1/2, 3/2]].
        let m = hessian(&[-a, a], &h).unwrap();
        assert_abs_diff_eq!(m.get(0, 0), 1.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m.get(0, 1), -0.5, epsilon = 1e-15);
        let ev = m.eigenvalues().unwrap();
        assert_abs_diff_eq!(ev[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev[1], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn hessian_matches_residual_jacobian() {
        let w = equilibrium_superpotential(&OrthogonalFamily::laguerre(1.0).unwrap());
        let pts = [0.4, 1.5, 3.0, 6.2];
        let m = hessian(&pts, &w).unwrap();
        let h = 1e-6;
        for l in 0..pts.len() {
            let mut p = pts;
            let mut q = pts;
            p[l] += h;
            q[l] -= h;
            let rp = residual(&p, &w).unwrap();
            let rq = residual(&q, &w).unwrap();
            for k in 0..pts.len() {
                let fd = -(rp[k] - rq[k]) / (2.0 * h);
                assert_abs_diff_eq!(fd, m.get(k, l), epsilon = 1e-6);
            }
        }
    }

    #[test]
    fn hessian_positive_definite_at_family_equilibria() {
        for fam in families() {
            let w = equilibrium_superpotential(&fam);
            for n in 1..=20 {
                let zeros = fam.zeros(n).unwrap();
                assert!(hessian(&zeros, &w).unwrap().is_positive_definite());
            }
        }
    }
}

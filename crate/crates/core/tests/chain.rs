//! End-to-end checks that tie the modules together through the public API.

use loggas::electrostatics::{
    equilibrium_superpotential, lhopital_identity_check, residual, solve_equilibrium,
    EquilibriumOptions, Superpotential,
};
use loggas::numerics::{Ellipse, RandomStream};
use loggas::orthopoly::OrthogonalFamily;
use loggas::qhj::{contour_quantization, polynomial_spectrum, schrodinger_spectrum, susy_partners};
use loggas::rmt::{
    log_jpdf, pooled_scaled, replicate, sample_gaussian_ensemble, sample_tridiagonal_beta,
    two_sample_ks, EnsembleSpec, JpdfForm,
};
use loggas::xpoly::{exceptional_qmf, isospectral_check, ExceptionalLaguerreFamily};

fn families() -> Vec<OrthogonalFamily> {
    vec![
        OrthogonalFamily::hermite(),
        OrthogonalFamily::laguerre(0.0).unwrap(),
        OrthogonalFamily::laguerre(1.5).unwrap(),
        OrthogonalFamily::jacobi(0.0, 0.0).unwrap(),
        OrthogonalFamily::jacobi(1.0, 2.0).unwrap(),
    ]
}

#[test]
fn zeros_equilibria_and_quantization_agree() {
    for fam in families() {
        let w = equilibrium_superpotential(&fam);
        for n in [1, 7, 25] {
            let eig = fam.zeros_eig(n).unwrap();
            let polished = fam.zeros(n).unwrap();
            let eq = solve_equilibrium(n, &w, None, EquilibriumOptions::default()).unwrap();
            assert!(eq.converged);
            assert!(eig.max_distance(&polished).unwrap() < 1e-8);
            assert!(eq.points.max_distance(&polished).unwrap() < 1e-8, "{} n={n}", fam.name());
            let r = residual(&polished, &w).unwrap();
            // Each residual is a difference of terms of size |W(x_k)| + n/gap.
            let pair = n as f64 / polished.min_gap().min(1.0);
            for (rk, &x) in r.iter().zip(polished.iter()) {
                assert!(rk.abs() < 1e-9 * (w.eval(x).abs() + pair), "{} n={n}: {rk}", fam.name());
            }
            for j in 0..n {
                let (sum, ratio) = lhopital_identity_check(&fam.member(n), j).unwrap();
                assert!((sum - ratio).abs() <= 1e-9 * ratio.abs().max(1.0));
            }
        }
    }
    for fam in [OrthogonalFamily::hermite(), OrthogonalFamily::laguerre(1.0).unwrap()] {
        let w = equilibrium_superpotential(&fam);
        for n in 1..=10 {
            let zeros = fam.zeros(n).unwrap();
            let outside = w.pole_locations();
            let contour = Ellipse::enclosing_real(&zeros, &outside).unwrap();
            let count = contour_quantization(&fam.polynomial(n), &w, &contour).unwrap();
            assert!((count - n as f64).abs() < 1e-6);
        }
    }
}

#[test]
fn oscillator_spectrum_three_ways() {
    let states = polynomial_spectrum(&Superpotential::oscillator(1.0), 4).unwrap();
    let partners = susy_partners(&Superpotential::oscillator(1.0), 0.0);
    let plus = schrodinger_spectrum(|x| partners.plus(x), (-8.0, 8.0), 4000, 4).unwrap();
    let minus = schrodinger_spectrum(|x| partners.minus(x), (-8.0, 8.0), 4000, 3).unwrap();
    for n in 0..4 {
        assert!((states[n].lambda - plus[n]).abs() < 2e-3);
    }
    for n in 0..3 {
        assert!((minus[n] - plus[n + 1]).abs() < 5e-3);
    }
}

#[test]
fn weight_and_potential_forms_coincide_at_beta_two() {
    let mut s = RandomStream::new(11);
    for fam in families() {
        let w = equilibrium_superpotential(&fam);
        let support = w.confining_interval().unwrap();
        for _ in 0..50 {
            let pts: Vec<f64> = (0..6)
                .map(|_| {
                    let u = s.next_f64();
                    if support.is_finite() {
                        support.lo + (support.hi - support.lo) * (0.01 + 0.98 * u)
                    } else {
                        support.lo.max(-4.0) + 0.01 + 8.0 * u
                    }
                })
                .collect();
            let a = log_jpdf(&pts, 2.0, &w, JpdfForm::Potential).unwrap();
            let b = log_jpdf(&pts, 2.0, &w, JpdfForm::Weight).unwrap();
            assert!((a - b).abs() < 1e-12 * a.abs().max(1.0), "{}: {a} vs {b}", fam.name());
        }
    }
}

#[test]
fn tridiagonal_and_dense_gue_agree() {
    let spec = EnsembleSpec::hermite(2.0, 60).unwrap();
    let dense = replicate(3, 60, |s| sample_gaussian_ensemble(&spec, s)).unwrap();
    let tri = replicate(4, 60, |s| sample_tridiagonal_beta(60, 2.0, s)).unwrap();
    let d = two_sample_ks(&pooled_scaled(&dense), &pooled_scaled(&tri)).unwrap();
    assert!(d < 0.05, "{d}");
}

#[test]
fn exceptional_sector_is_consistent() {
    for g in [1.0, 2.5] {
        let fam = ExceptionalLaguerreFamily::new(g, 1).unwrap();
        let grid: Vec<f64> = (0..80).map(|i| 0.15 + 0.04 * i as f64).collect();
        let (spread, gap) = isospectral_check(1, 4, &fam, &grid).unwrap();
        assert!(spread < 1e-6 * gap.abs());
        assert!((gap - 12.0).abs() < 1e-6);
        let (p, catalog) = exceptional_qmf(4, &fam).unwrap();
        for c in catalog {
            assert!((p.numeric_residue_at(c.location).unwrap() - c.residue).norm() < 1e-8);
        }
    }
}

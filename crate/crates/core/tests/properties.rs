//! Invariants checked over random inputs.

use loggas::electrostatics::{energy, hessian, residual, Superpotential};
use loggas::numerics::RandomStream;
use loggas::orthopoly::{OrthogonalFamily, PointConfiguration};
use loggas::rmt::{log_jpdf, replicate, sample_gaussian_ensemble, EnsembleSpec, JpdfForm};
use loggas::xpoly::{deformed_weight, exceptional_log_jpdf, ExceptionalLaguerreFamily};
use proptest::prelude::*;

fn distinct(v: Vec<f64>) -> Option<Vec<f64>> {
    let mut s = v.clone();
    s.sort_by(f64::total_cmp);
    s.windows(2).all(|w| w[1] - w[0] > 1e-3).then_some(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jpdf_is_permutation_invariant(raw in prop::collection::vec(-3.0f64..3.0, 2..8), beta in 0.5f64..4.0) {
        prop_assume!(distinct(raw.clone()).is_some());
        let w = Superpotential::oscillator(1.0);
        let mut rev = raw.clone();
        rev.reverse();
        for form in [JpdfForm::Potential, JpdfForm::Weight] {
            prop_assert_eq!(log_jpdf(&raw, beta, &w, form).unwrap(), log_jpdf(&rev, beta, &w, form).unwrap());
        }
    }

    #[test]
    fn equilibria_are_energy_minima(n in 2usize..12, k in 0usize..12, eps in -1e-3f64..1e-3) {
        prop_assume!(eps.abs() > 1e-6);
        let fam = OrthogonalFamily::hermite();
        let w = Superpotential::oscillator(1.0);
        let zeros = fam.zeros(n).unwrap();
        let mut moved = zeros.to_vec();
        moved[k % n] += eps;
        let moved = PointConfiguration::from_unsorted(moved).unwrap();
        prop_assert!(energy(&moved, &w).unwrap() > energy(&zeros, &w).unwrap());
        let r = residual(&zeros, &w).unwrap();
        prop_assert!(r.iter().all(|v| v.abs() < 1e-9 * n as f64));
        prop_assert!(hessian(&zeros, &w).unwrap().is_positive_definite());
    }

    #[test]
    fn deformed_weight_is_nonnegative(x in 0.0f64..20.0, g in 0.6f64..5.0) {
        let fam = ExceptionalLaguerreFamily::new(g, 1).unwrap();
        prop_assert!(deformed_weight(x, &fam) >= 0.0);
        prop_assert!(fam.eta.eval(x * x) > 0.0);
    }

    #[test]
    fn exceptional_jpdf_is_symmetric(raw in prop::collection::vec(0.01f64..5.0, 2..6)) {
        prop_assume!(distinct(raw.clone()).is_some());
        let fam = ExceptionalLaguerreFamily::new(1.0, 1).unwrap();
        let mut rev = raw.clone();
        rev.reverse();
        prop_assert_eq!(exceptional_log_jpdf(&raw, &fam).unwrap(), exceptional_log_jpdf(&rev, &fam).unwrap());
    }

    #[test]
    fn replicas_are_schedule_independent(seed in any::<u64>()) {
        let spec = EnsembleSpec::hermite(1.0, 5).unwrap();
        let all = replicate(seed, 6, |s| sample_gaussian_ensemble(&spec, s)).unwrap();
        let third = sample_gaussian_ensemble(&spec, &mut RandomStream::substream(seed, 3)).unwrap();
        prop_assert_eq!(&all[3].eigenvalues, &third.eigenvalues);
    }
}

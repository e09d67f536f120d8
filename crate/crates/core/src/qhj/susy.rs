use crate::electrostatics::Superpotential;
use crate::error::Result;
use crate::numerics::QuadratureRule;
use crate::orthopoly::{OrthogonalFamily, PointConfiguration};

/// Partner potentials `V±(x) = W(x)² ∓ W'(x) + E` of a factorized Hamiltonian.
/// `V+` carries the zero-energy ground state `e^{-∫W}` when `E = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SusyPartners {
    w: Superpotential,
    shift: f64,
}

impl SusyPartners {
    pub fn plus(&self, x: f64) -> f64 {
        let w = self.w.eval(x);
        w * w - self.w.derivative(x) + self.shift
    }

    pub fn minus(&self, x: f64) -> f64 {
        let w = self.w.eval(x);
        w * w + self.w.derivative(x) + self.shift
    }

    pub fn superpotential(&self) -> &Superpotential {
        &self.w
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }
}

pub fn susy_partners(w: &Superpotential, shift: f64) -> SusyPartners {
    SusyPartners {
        w: w.clone(),
        shift,
    }
}

/// `ψ(x) = w(x)^{1/2} P_n(x)` on the family's support, zero outside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavefunction {
    pub family: OrthogonalFamily,
    pub n: usize,
}

impl Wavefunction {
    pub fn eval(&self, x: f64) -> f64 {
        match self.family.weight(x) {
            Ok(w) => w.sqrt() * self.family.evaluate(self.n, x).0,
            Err(_) => 0.0,
        }
    }

    /// `∫ ψ² = ∫ w P_n²` by composite quadrature.
    pub fn squared_norm(&self) -> Result<f64> {
        let rule = QuadratureRule::composite(self.family.support())?;
        Ok(rule.integrate(|x| {
            let p = self.family.evaluate(self.n, x).0;
            self.family.weight(x).unwrap_or(0.0) * p * p
        }))
    }

    pub fn zeros(&self) -> Result<PointConfiguration> {
        self.family.zeros(self.n)
    }
}

pub fn build_wavefunction(family: &OrthogonalFamily, n: usize) -> Wavefunction {
    Wavefunction {
        family: *family,
        n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::electrostatics::Pole;
    use crate::qhj::schrodinger_spectrum;
    use approx::assert_abs_diff_eq;

    #[test]
    fn partner_examples() {
        let sp = susy_partners(&Superpotential::oscillator(1.0), 0.0);
        for x in [-1.5, 0.0, 0.7] {
            assert_abs_diff_eq!(sp.plus(x), x * x - 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(sp.minus(x), x * x + 1.0, epsilon = 1e-15);
        }
        let flat = Superpotential::new(0.0, 1.5, vec![]).unwrap();
        let sp = susy_partners(&flat, 0.25);
        assert_eq!(sp.plus(3.0), 2.5);
        assert_eq!(sp.minus(-3.0), 2.5);
        let w = Superpotential::new(1.0, 0.0, vec![Pole { location: 0.0, strength: -1.0 }]).unwrap();
        assert_abs_diff_eq!(susy_partners(&w, 0.0).plus(1.0), -2.0, epsilon = 1e-15);
    }

    #[test]
    fn partner_spectra_interlace_as_a_ladder() {
        let sp = susy_partners(&Superpotential::oscillator(1.0), 0.0);
        let plus = schrodinger_spectrum(|x| sp.plus(x), (-8.0, 8.0), 3000, 5).unwrap();
        let minus = schrodinger_spectrum(|x| sp.minus(x), (-8.0, 8.0), 3000, 4).unwrap();
        assert!(plus[0].abs() < 5e-3);
        for k in 1..5 {
            assert!((plus[k] - minus[k - 1]).abs() < 5e-3, "level {k}");
        }
    }

    #[test]
    fn wavefunction_examples() {
        let h = OrthogonalFamily::hermite();
        assert_eq!(build_wavefunction(&h, 0).eval(0.0), 1.0);
        let norm = build_wavefunction(&h, 2).squared_norm().unwrap();
        assert!((norm - 8.0 * std::f64::consts::PI.sqrt()).abs() < 1e-10);
        let lag = OrthogonalFamily::laguerre(1.0).unwrap();
        let psi = build_wavefunction(&lag, 3);
        assert_eq!(psi.eval(-1.0), 0.0);
        // ∫ x e^{-x} L_3^{(1)}² = Γ(5)/3! = 4.
        assert!((psi.squared_norm().unwrap() - 4.0).abs() < 1e-10);
        for &x in psi.zeros().unwrap().iter() {
            assert!(psi.eval(x).abs() < 1e-10);
            assert!(psi.eval(x - 1e-3) * psi.eval(x + 1e-3) < 0.0);
        }
    }
}

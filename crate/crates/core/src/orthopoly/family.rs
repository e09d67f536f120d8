use super::points::PointConfiguration;
use super::polynomial::Polynomial;
use crate::error::{domain, invalid, Result};
use crate::numerics::{symtri_eigenvalues, Interval};

const NEWTON_POLISH_STEPS: usize = 10;

/// Classical orthogonal polynomial family in its conventional normalization.
///
/// * `Hermite`: weight `e^{-x^2}` on the real line, `H_n` with leading `2^n`.
/// * `Laguerre { alpha }`: weight `x^α e^{-x}` on `[0, ∞)`, `L_n^{(α)}(0) = C(n+α, n)`.
/// * `Jacobi { a, b }`: weight `(1-x)^a (1+x)^b` on `[-1, 1]`, `P_n^{(a,b)}(1) = C(n+a, n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrthogonalFamily {
    Hermite,
    Laguerre { alpha: f64 },
    Jacobi { a: f64, b: f64 },
}

/// Coefficients of `P_{k+1}(x) = (A x + B) P_k(x) - C P_{k-1}(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recurrence {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl OrthogonalFamily {
    pub fn hermite() -> Self {
        OrthogonalFamily::Hermite
    }

    pub fn laguerre(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return invalid(format!("Laguerre parameter must exceed -1, got {alpha}"));
        }
        Ok(OrthogonalFamily::Laguerre { alpha })
    }

    pub fn jacobi(a: f64, b: f64) -> Result<Self> {
        if !(a > -1.0 && b > -1.0) || !a.is_finite() || !b.is_finite() {
            return invalid(format!("Jacobi parameters must exceed -1, got ({a}, {b})"));
        }
        Ok(OrthogonalFamily::Jacobi { a, b })
    }

    pub fn support(&self) -> Interval {
        match self {
            OrthogonalFamily::Hermite => Interval::REAL_LINE,
            OrthogonalFamily::Laguerre { .. } => Interval::half_line(0.0),
            OrthogonalFamily::Jacobi { .. } => Interval::new(-1.0, 1.0),
        }
    }

    pub fn name(&self) -> String {
        match self {
            OrthogonalFamily::Hermite => "hermite".into(),
            OrthogonalFamily::Laguerre { alpha } => format!("laguerre(alpha={alpha})"),
            OrthogonalFamily::Jacobi { a, b } => format!("jacobi(a={a}, b={b})"),
        }
    }

    pub fn recurrence_coefficients(&self, k: usize) -> Recurrence {
        let kf = k as f64;
        match *self {
            OrthogonalFamily::Hermite => Recurrence {
                a: 2.0,
                b: 0.0,
                c: 2.0 * kf,
            },
            OrthogonalFamily::Laguerre { alpha } => Recurrence {
                a: -1.0 / (kf + 1.0),
                b: (2.0 * kf + 1.0 + alpha) / (kf + 1.0),
                c: (kf + alpha) / (kf + 1.0),
            },
            OrthogonalFamily::Jacobi { a, b } => {
                if k == 0 {
                    return Recurrence {
                        a: 0.5 * (a + b + 2.0),
                        b: 0.5 * (a - b),
                        c: 0.0,
                    };
                }
                let s = 2.0 * kf + a + b;
                let denom = 2.0 * (kf + 1.0) * (kf + a + b + 1.0) * s;
                Recurrence {
                    a: (s + 1.0) * (s + 2.0) * s / denom,
                    b: (s + 1.0) * (a * a - b * b) / denom,
                    c: 2.0 * (kf + a) * (kf + b) * (s + 2.0) / denom,
                }
            }
        }
    }

    /// `(P_n(x), P_n'(x))` by the forward recurrence and its derivative.
    pub fn evaluate(&self, n: usize, x: f64) -> (f64, f64) {
        let (p, d, _) = self.evaluate_with_second(n, x);
        (p, d)
    }

    /// `(P_n, P_n', P_n'')` at `x`, differentiating the recurrence twice.
    pub fn evaluate_with_second(&self, n: usize, x: f64) -> (f64, f64, f64) {
        let (mut p0, mut d0, mut s0) = (0.0, 0.0, 0.0);
        let (mut p1, mut d1, mut s1) = (1.0, 0.0, 0.0);
        for k in 0..n {
            let r = self.recurrence_coefficients(k);
            let lin = r.a * x + r.b;
            let p2 = lin * p1 - r.c * p0;
            let d2 = r.a * p1 + lin * d1 - r.c * d0;
            let s2 = 2.0 * r.a * d1 + lin * s1 - r.c * s0;
            (p0, d0, s0) = (p1, d1, s1);
            (p1, d1, s1) = (p2, d2, s2);
        }
        (p1, d1, s1)
    }

    /// Coefficient form of `P_n`, built from the same recurrence.
    pub fn polynomial(&self, n: usize) -> Polynomial {
        let mut prev = Polynomial::zero();
        let mut cur = Polynomial::constant(1.0);
        for k in 0..n {
            let r = self.recurrence_coefficients(k);
            let next = &(&Polynomial::linear(r.b, r.a) * &cur) - &prev.scale(r.c);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Diagonal and off-diagonal of the symmetric Jacobi matrix of the monic
    /// recurrence `x p_k = p_{k+1} + α_k p_k + β_k p_{k-1}`.
    pub fn jacobi_matrix(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        let recs: Vec<Recurrence> = (0..n).map(|k| self.recurrence_coefficients(k)).collect();
        let diag = recs.iter().map(|r| -r.b / r.a).collect();
        let off = (1..n)
            .map(|k| (recs[k].c / (recs[k].a * recs[k - 1].a)).sqrt())
            .collect();
        (diag, off)
    }

    /// Zeros of `P_n` as raw Jacobi-matrix eigenvalues (Golub–Welsch).
    pub fn zeros_eig(&self, n: usize) -> Result<PointConfiguration> {
        if n == 0 {
            return invalid("P_0 has no zeros");
        }
        let (d, e) = self.jacobi_matrix(n);
        PointConfiguration::from_unsorted(symtri_eigenvalues(&d, &e)?)
    }

    /// Zeros of `P_n`: Jacobi-matrix eigenvalues, then Newton on the recurrence
    /// with steps capped at half the distance to the neighbouring zeros.
    pub fn zeros(&self, n: usize) -> Result<PointConfiguration> {
        let raw = self.zeros_eig(n)?.into_vec();
        let mut polished = raw.clone();
        for (i, x) in polished.iter_mut().enumerate() {
            let left = if i > 0 { raw[i] - raw[i - 1] } else { f64::INFINITY };
            let right = if i + 1 < n { raw[i + 1] - raw[i] } else { f64::INFINITY };
            let cap = 0.5 * left.min(right);
            for _ in 0..NEWTON_POLISH_STEPS {
                let (p, dp) = self.evaluate(n, *x);
                if p == 0.0 || dp == 0.0 {
                    break;
                }
                let step = (p / dp).clamp(-cap, cap);
                *x -= step;
                if step.abs() <= 2.0 * f64::EPSILON * x.abs().max(1e-300) {
                    break;
                }
            }
        }
        PointConfiguration::from_unsorted(polished)
    }

    pub fn weight(&self, x: f64) -> Result<f64> {
        if !self.support().contains_closed(x) {
            return domain(format!("x = {x} outside the {} support", self.name()));
        }
        Ok(match *self {
            OrthogonalFamily::Hermite => (-x * x).exp(),
            OrthogonalFamily::Laguerre { alpha } => x.powf(alpha) * (-x).exp(),
            OrthogonalFamily::Jacobi { a, b } => (1.0 - x).powf(a) * (1.0 + x).powf(b),
        })
    }

    /// `(σ, τ)` of the classical equation `σ y'' + τ y' + λ_n y = 0`.
    pub fn sturm_liouville_form(&self) -> (Polynomial, Polynomial) {
        match *self {
            OrthogonalFamily::Hermite => (Polynomial::constant(1.0), Polynomial::linear(0.0, -2.0)),
            OrthogonalFamily::Laguerre { alpha } => (
                Polynomial::linear(0.0, 1.0),
                Polynomial::linear(alpha + 1.0, -1.0),
            ),
            OrthogonalFamily::Jacobi { a, b } => (
                Polynomial::new(vec![1.0, 0.0, -1.0]),
                Polynomial::linear(b - a, -(a + b + 2.0)),
            ),
        }
    }

    pub fn member(self, n: usize) -> FamilyMember {
        FamilyMember { family: self, n }
    }
}

/// `P_n` of a family, evaluated through the recurrence rather than through
/// coefficients (which lose accuracy quickly with degree).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyMember {
    pub family: OrthogonalFamily,
    pub n: usize,
}

/// A real polynomial with simple real zeros and exact second derivatives.
pub trait RealRootedPolynomial {
    fn derivatives(&self, x: f64) -> (f64, f64, f64);
    fn real_zeros(&self) -> Result<PointConfiguration>;
}

impl RealRootedPolynomial for FamilyMember {
    fn derivatives(&self, x: f64) -> (f64, f64, f64) {
        self.family.evaluate_with_second(self.n, x)
    }

    fn real_zeros(&self) -> Result<PointConfiguration> {
        self.family.zeros(self.n)
    }
}

impl RealRootedPolynomial for Polynomial {
    fn derivatives(&self, x: f64) -> (f64, f64, f64) {
        self.eval_derivs(x)
    }

    fn real_zeros(&self) -> Result<PointConfiguration> {
        self.real_roots()
    }
}

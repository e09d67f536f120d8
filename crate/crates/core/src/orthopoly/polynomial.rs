use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::points::PointConfiguration;
use crate::error::{invalid, Error, Result};

const ABERTH_MAX_ITER: usize = 500;

/// Dense real polynomial, coefficients in ascending degree. Trailing zeros are
/// trimmed so the last stored coefficient is the leading one.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: f64, c1: f64) -> Self {
        Self::new(vec![c0, c1])
    }

    /// `∏ (x - r)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Self::constant(1.0), |acc, &r| {
            &acc * &Self::linear(-r, 1.0)
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `Σ c_k x^k` summed term by term; a cross-check for Horner.
    pub fn eval_termwise(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| c * x.powi(k as i32))
            .sum()
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(p, p', p'')` at `x` by a single Horner sweep.
    pub fn eval_derivs(&self, x: f64) -> (f64, f64, f64) {
        let (mut p, mut d1, mut d2) = (0.0, 0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * x + 2.0 * d1;
            d1 = d1 * x + p;
            p = p * x + c;
        }
        (p, d1, d2)
    }

    pub fn eval_complex_derivs(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        for &c in self.coeffs.iter().rev() {
            d2 = d2 * z + d1 * 2.0;
            d1 = d1 * z + p;
            p = p * z + c;
        }
        (p, d1, d2)
    }

    pub fn derivative(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `p(x^2)`.
    pub fn compose_square(&self) -> Polynomial {
        let mut out = vec![0.0; 2 * self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c;
        }
        Self::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Polynomial {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return invalid("division by the zero polynomial");
        }
        let dd = divisor.degree();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![0.0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= q * d;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// All complex roots by the Aberth–Ehrlich iteration, Newton-polished.
    pub fn complex_roots(&self) -> Result<Vec<Complex64>> {
        if self.is_zero() {
            return invalid("the zero polynomial has no isolated roots");
        }
        let n = self.degree();
        if n == 0 {
            return Ok(Vec::new());
        }
        let lead = self.leading();
        let monic: Vec<f64> = self.coeffs.iter().map(|c| c / lead).collect();
        let monic = Polynomial { coeffs: monic };
        // Initial circle radius: geometric mean of root moduli, bounded away
        // from zero when the constant term vanishes.
        let mean_mod = monic.coeffs[0].abs().powf(1.0 / n as f64);
        let cauchy = 1.0 + monic.coeffs[..n].iter().map(|c| c.abs()).fold(0.0, f64::max);
        let radius = if mean_mod > 0.0 { mean_mod } else { 0.5 * cauchy.min(1.0) };
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
                Complex64::from_polar(radius, theta)
            })
            .collect();
        // A root is settled once |p(z)| is within rounding of the evaluation,
        // i.e. its backward error is at machine precision.
        let abs_coeffs: Vec<f64> = monic.coeffs.iter().map(|c| c.abs()).collect();
        let rounding = |z: Complex64| {
            let r = z.norm();
            4.0 * (n + 1) as f64 * f64::EPSILON * abs_coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
        };
        let mut settled = vec![false; n];
        let mut converged = false;
        for _ in 0..ABERTH_MAX_ITER {
            for k in 0..n {
                if settled[k] {
                    continue;
                }
                let (p, dp, _) = monic.eval_complex_derivs(z[k]);
                if p.norm() <= rounding(z[k]) {
                    settled[k] = true;
                    continue;
                }
                let ratio = p / dp;
                let repulsion: Complex64 = (0..n)
                    .filter(|&j| j != k)
                    .map(|j| 1.0 / (z[k] - z[j]))
                    .sum();
                let step = ratio / (1.0 - ratio * repulsion);
                if !(step.re.is_finite() && step.im.is_finite()) {
                    continue;
                }
                z[k] -= step;
                if step.norm() <= 1e-15 * z[k].norm().max(f64::MIN_POSITIVE) {
                    settled[k] = true;
                }
            }
            if settled.iter().all(|&s| s) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "Aberth iteration did not converge for degree {n}"
            )));
        }
        for zk in z.iter_mut() {
            for _ in 0..3 {
                let (p, dp, _) = monic.eval_complex_derivs(*zk);
                if dp.norm() == 0.0 || p.norm() == 0.0 {
                    break;
                }
                *zk -= p / dp;
            }
        }
        z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(z)
    }

    /// Real simple roots in increasing order. Complex or repeated roots are a
    /// degenerate-state error.
    pub fn real_roots(&self) -> Result<PointConfiguration> {
        let roots = self.complex_roots()?;
        let scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let mut real = Vec::with_capacity(roots.len());
        for z in roots {
            if z.im.abs() > 1e-9 * scale {
                return Err(Error::Degenerate(format!("non-real root {z}")));
            }
            real.push(self.newton_real(z.re));
        }
        real.sort_by(f64::total_cmp);
        if real.windows(2).any(|w| w[1] - w[0] <= 1e-7 * scale) {
            return Err(Error::Degenerate("repeated root".into()));
        }
        PointConfiguration::new(real)
    }

    fn newton_real(&self, mut x: f64) -> f64 {
        for _ in 0..4 {
            let (p, dp, _) = self.eval_derivs(x);
            if dp == 0.0 || p == 0.0 {
                break;
            }
            let step = p / dp;
            x -= step;
            if step.abs() <= f64::EPSILON * x.abs() {
                break;
            }
        }
        x
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0.0)
                        + rhs.coeffs.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

//! Gauss–Legendre rules and composite rules for finite, half-infinite and
//! infinite intervals.
//!
//! Finite endpoints get geometrically graded panels so that integrable
//! algebraic endpoint singularities (Laguerre and Jacobi weights) still
//! converge fast. A semi-infinite interval `[lo, inf)` is handled by the
//! change of variables `x = lo + t/(1 - t)`, `dx = dt/(1 - t)^2`, with the
//! mapped rule truncated at `x - lo = HALF_LINE_CUTOFF`; integrands are
//! expected to decay at least like `e^{-x}`. The whole line is split at zero
//! into two half-lines.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Truncation point of the mapped half-line rule.
pub const HALF_LINE_CUTOFF: f64 = 1.0e3;

const PANEL_ORDER: usize = 20;
const UNIFORM_PANELS: usize = 16;
const GRADE_LEVELS: usize = 24;
const GRADE_RATIO: f64 = 0.15;

/// Interval with possibly infinite endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn half_line(lo: f64) -> Self {
        Interval {
            lo,
            hi: f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Open-interval membership.
    pub fn contains_open(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn contains_closed(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let open = if self.lo.is_finite() { '[' } else { '(' };
        let close = if self.hi.is_finite() { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    support: Interval,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn support(&self) -> Interval {
        self.support
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Affine image of a rule on `[-1, 1]` onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> QuadratureRule {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        QuadratureRule {
            nodes: self.nodes.iter().map(|t| mid + half * t).collect(),
            weights: self.weights.iter().map(|w| half * w).collect(),
            support: Interval::new(a, b),
        }
    }

    /// Composite rule for `interval`: graded panels at finite ends, the
    /// `t/(1 - t)` map at infinite ends.
    pub fn composite(interval: Interval) -> Result<QuadratureRule> {
        let Interval { lo, hi } = interval;
        if !(lo < hi) {
            return invalid(format!("empty interval {interval}"));
        }
        let base = gauss_legendre(PANEL_ORDER)?;
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => Ok(graded_finite(&base, lo, hi)),
            (true, false) => Ok(half_line(&base, lo, 1.0)),
            (false, true) => Ok(half_line(&base, hi, -1.0)),
            (false, false) => {
                let right = half_line(&base, 0.0, 1.0);
                let left = half_line(&base, 0.0, -1.0);
                let mut pairs: Vec<(f64, f64)> = left
                    .nodes
                    .into_iter()
                    .zip(left.weights)
                    .chain(right.nodes.into_iter().zip(right.weights))
                    .collect();
                pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
                let (nodes, weights) = pairs.into_iter().unzip();
                Ok(QuadratureRule {
                    nodes,
                    weights,
                    support: interval,
                })
            }
        }
    }
}

/// Composite rule on `[lo, hi]` graded toward both ends. Grading stops once
/// the nodes of the end panel would no longer be distinguishable from the
/// endpoint itself.
fn graded_finite(base: &QuadratureRule, lo: f64, hi: f64) -> QuadratureRule {
    let len = hi - lo;
    let h = len / UNIFORM_PANELS as f64;
    let levels = |end: f64| {
        (1..=GRADE_LEVELS)
            .take_while(|&k| h * GRADE_RATIO.powi(k as i32) >= 4096.0 * f64::EPSILON * end.abs())
            .count()
    };
    let mut breaks = vec![lo];
    for level in (1..=levels(lo)).rev() {
        breaks.push(lo + h * GRADE_RATIO.powi(level as i32));
    }
    for k in 1..UNIFORM_PANELS {
        breaks.push(lo + k as f64 * h);
    }
    for level in 1..=levels(hi) {
        breaks.push(hi - h * GRADE_RATIO.powi(level as i32));
    }
    breaks.push(hi);
    panels(base, &breaks)
}

fn panels(base: &QuadratureRule, breaks: &[f64]) -> QuadratureRule {
    let mut nodes = Vec::with_capacity(base.len() * breaks.len());
    let mut weights = Vec::with_capacity(base.len() * breaks.len());
    for w in breaks.windows(2) {
        let panel = base.mapped(w[0], w[1]);
        nodes.extend_from_slice(&panel.nodes);
        weights.extend_from_slice(&panel.weights);
    }
    QuadratureRule {
        nodes,
        weights,
        support: Interval::new(breaks[0], breaks[breaks.len() - 1]),
    }
}

/// `[origin, inf)` for `direction = 1`, `(-inf, origin]` for `direction = -1`.
fn half_line(base: &QuadratureRule, origin: f64, direction: f64) -> QuadratureRule {
    let t_max = HALF_LINE_CUTOFF / (1.0 + HALF_LINE_CUTOFF);
    let h = t_max / UNIFORM_PANELS as f64;
    let mut breaks = vec![0.0];
    for level in (1..=GRADE_LEVELS).rev() {
        breaks.push(h * GRADE_RATIO.powi(level as i32));
    }
    for k in 1..=UNIFORM_PANELS {
        breaks.push(k as f64 * h);
    }
    // Panels in t are equal width; refine the last few where 1/(1-t)^2 grows.
    let mut refined = Vec::with_capacity(breaks.len() * 2);
    for w in breaks.windows(2) {
        refined.push(w[0]);
        if w[0] >= 0.5 {
            for k in 1..4 {
                refined.push(w[0] + (w[1] - w[0]) * k as f64 / 4.0);
            }
        }
    }
    refined.push(t_max);
    let unit = panels(base, &refined);
    let mut pairs: Vec<(f64, f64)> = unit
        .nodes
        .iter()
        .zip(&unit.weights)
        .map(|(&t, &w)| {
            let s = 1.0 - t;
            (origin + direction * t / s, w / (s * s))
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    let support = if direction > 0.0 {
        Interval::half_line(origin)
    } else {
        Interval::new(f64::NEG_INFINITY, origin)
    };
    QuadratureRule {
        nodes,
        weights,
        support,
    }
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]`, exact for degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> Result<QuadratureRule> {
    if n == 0 {
        return invalid("Gauss-Legendre rule needs at least one node");
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        // Tricomi's initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        support: Interval::new(-1.0, 1.0),
    })
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let k = k as f64;
        let p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let pm1 = if n == 0 { 0.0 } else { p0 };
    let d = n as f64 * (x * p - pm1) / (x * x - 1.0);
    (p, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn small_rules() {
        let r = gauss_legendre(1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert_abs_diff_eq!(r.weights()[0], 2.0, epsilon = 1e-15);
        let r = gauss_legendre(2).unwrap();
        assert_abs_diff_eq!(r.nodes()[1], 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.nodes()[0], -1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.integrate(|x| x * x), 2.0 / 3.0, epsilon = 1e-15);
        assert!(gauss_legendre(0).is_err());
    }

    #[test]
    fn exact_to_degree_2n_minus_1() {
        for n in 1..=20 {
            let r = gauss_legendre(n).unwrap();
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(r.weights().iter().all(|&w| w > 0.0));
            for deg in 0..2 * n {
                let got = r.integrate(|x| x.powi(deg as i32));
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!(
                    (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                    "n={n} deg={deg} got={got}"
                );
            }
        }
    }

    #[test]
    fn mapped_interval() {
        let r = gauss_legendre(5).unwrap().mapped(1.0, 3.0);
        assert_abs_diff_eq!(r.integrate(|x| x.powi(3)), (81.0 - 1.0) / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn composite_handles_endpoint_singularities() {
        let r = QuadratureRule::composite(Interval::new(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(r.integrate(|x| x.powf(-0.5)), 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(r.integrate(|x| x.powf(1.5)), 0.4, epsilon = 1e-13);
        let r = QuadratureRule::composite(Interval::new(-1.0, 1.0)).unwrap();
        // Beta(1/2, 1/2) integral
        // grading near ±1 is limited by the resolution of the endpoints
        assert_abs_diff_eq!(r.integrate(|x| 1.0 / (1.0 - x * x).sqrt()), PI, epsilon = 1e-7);
        // 2^{4.5} B(5/2, 3)
        assert_abs_diff_eq!(r.integrate(|x| (1.0 - x).powf(1.5) * (1.0 + x).powi(2)), 1.149329117357182, epsilon = 1e-13);
    }

    #[test]
    fn composite_infinite_intervals() {
        let r = QuadratureRule::composite(Interval::half_line(0.0)).unwrap();
        assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        assert_abs_diff_eq!(r.integrate(|x| (-x).exp()), 1.0, epsilon = 1e-13);
        // Gamma(2.5)
        let g = 0.75 * PI.sqrt();
        assert_abs_diff_eq!(r.integrate(|x| x.powf(1.5) * (-x).exp()), g, epsilon = 1e-12);
        let r = QuadratureRule::composite(Interval::REAL_LINE).unwrap();
        assert_abs_diff_eq!(r.integrate(|x| (-x * x).exp()), PI.sqrt(), epsilon = 1e-13);
        let r = QuadratureRule::composite(Interval::new(f64::NEG_INFINITY, 1.0)).unwrap();
        assert_abs_diff_eq!(r.integrate(|x| (x - 1.0).exp()), 1.0, epsilon = 1e-13);
    }
}

use crate::electrostatics::Superpotential;
use crate::error::{domain, invalid, Error, Result};
use crate::numerics::symtri_eigenvalues;
use crate::orthopoly::Polynomial;

/// Polynomial eigenstate `f` of `L[f] = -f'' + 2W f'` with `L[f] = λ f`.
/// The full state is `ψ = f e^{-∫W}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub n: usize,
    pub lambda: f64,
    pub f: Polynomial,
}

impl BoundState {
    /// `max_grid |-f'' + 2W f' - λ f|`.
    pub fn operator_residual(&self, w: &Superpotential, grid: &[f64]) -> f64 {
        grid.iter()
            .map(|&x| {
                let (f, df, d2f) = self.f.eval_derivs(x);
                (-d2f + 2.0 * w.eval(x) * df - self.lambda * f).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Upper-triangular `t` (row = output power, column = input power): the
/// eigenvector for the `n`-th diagonal entry, with `a_n = 1`.
fn triangular_eigenvector(t: &[Vec<f64>], n: usize) -> Result<Vec<f64>> {
    let mut a = vec![0.0; n + 1];
    a[n] = 1.0;
    let target = t[n][n];
    for k in (0..n).rev() {
        let gap = target - t[k][k];
        if gap.abs() <= 1e-13 * target.abs().max(t[k][k].abs()).max(1.0) {
            return Err(Error::Unsupported(format!(
                "eigenvalues {k} and {n} coincide; the operator is degenerate"
            )));
        }
        let s: f64 = (k + 1..=n).map(|j| t[k][j] * a[j]).sum();
        a[k] = s / gap;
    }
    Ok(a)
}

/// Matrix of `L = -D² + 2W D` on monomials `1, x, …, x^N` for linear
/// `W = c x + d`: `L x^j = 2cj x^j + 2dj x^{j-1} - j(j-1) x^{j-2}`.
pub fn monomial_operator(w: &Superpotential, big_n: usize) -> Result<Vec<Vec<f64>>> {
    if !w.is_polynomial() {
        return Err(Error::Unsupported(
            "rational W has no constant-coefficient reduction; use sturm_liouville_spectrum".into(),
        ));
    }
    let c = w.linear_coefficient();
    let d = w.constant_term();
    if c == 0.0 {
        return Err(Error::Unsupported(
            "constant W has no bound states; use sturm_liouville_spectrum for other forms".into(),
        ));
    }
    if c < 0.0 {
        return domain(format!("W = cx + d needs c > 0 for bound states, got c = {c}"));
    }
    let mut t = vec![vec![0.0; big_n + 1]; big_n + 1];
    for (j, col) in (0..=big_n).map(|j| (j, j as f64)) {
        t[j][j] = 2.0 * c * col;
        if j >= 1 {
            t[j - 1][j] = 2.0 * d * col;
        }
        if j >= 2 {
            t[j - 2][j] = -col * (col - 1.0);
        }
    }
    Ok(t)
}

/// Bound states `n = 0..=N` of `W = c x + d` with `λ_n = 2cn`. The
/// polynomials are scaled so that `f_n(x) = H_n(√c (x + d/c))` exactly.
pub fn polynomial_spectrum(w: &Superpotential, big_n: usize) -> Result<Vec<BoundState>> {
    if big_n == 0 {
        return invalid("N must be at least 1");
    }
    let t = monomial_operator(w, big_n)?;
    let lead = 2.0 * w.linear_coefficient().sqrt();
    (0..=big_n)
        .map(|n| {
            let a = triangular_eigenvector(&t, n)?;
            Ok(BoundState {
                n,
                lambda: t[n][n],
                f: Polynomial::new(a).scale(lead.powi(n as i32)),
            })
        })
        .collect()
}

/// Eigenpairs `n = 0..=N` of `σ f'' + τ f' + λ f = 0` with `deg σ ≤ 2`,
/// `deg τ ≤ 1`: `λ_n = -n τ' - n(n-1) σ''/2`, polynomials monic.
pub fn sturm_liouville_spectrum(
    sigma: &Polynomial,
    tau: &Polynomial,
    big_n: usize,
) -> Result<Vec<(f64, Polynomial)>> {
    if big_n == 0 {
        return invalid("N must be at least 1");
    }
    if sigma.degree() > 2 || tau.degree() > 1 || sigma.is_zero() {
        return Err(Error::Unsupported(format!(
            "need deg σ ≤ 2 (nonzero) and deg τ ≤ 1, got {} and {}",
            sigma.degree(),
            tau.degree()
        )));
    }
    let coef = |p: &Polynomial, k: usize| p.coeffs().get(k).copied().unwrap_or(0.0);
    let (s0, s1, s2) = (coef(sigma, 0), coef(sigma, 1), coef(sigma, 2));
    let (t0, t1) = (coef(tau, 0), coef(tau, 1));
    // A = σD² + τD on monomials; A f_n = -λ_n f_n.
    let mut a = vec![vec![0.0; big_n + 1]; big_n + 1];
    for j in 0..=big_n {
        let jf = j as f64;
        a[j][j] = jf * (jf - 1.0) * s2 + jf * t1;
        if j >= 1 {
            a[j - 1][j] = jf * (jf - 1.0) * s1 + jf * t0;
        }
        if j >= 2 {
            a[j - 2][j] = jf * (jf - 1.0) * s0;
        }
    }
    (0..=big_n)
        .map(|n| {
            let v = triangular_eigenvector(&a, n)?;
            // `+ 0.0` turns the ground state's -0 into 0.
            Ok((-a[n][n] + 0.0, Polynomial::new(v)))
        })
        .collect()
}

/// Lowest `count` Dirichlet eigenvalues of `-d²/dx² + V` on `(lo, hi)` from
/// the three-point finite-difference Laplacian on `grid_points` interior nodes.
pub fn schrodinger_spectrum(
    v: impl Fn(f64) -> f64,
    interval: (f64, f64),
    grid_points: usize,
    count: usize,
) -> Result<Vec<f64>> {
    let (lo, hi) = interval;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return invalid(format!("need a finite interval lo < hi, got ({lo}, {hi})"));
    }
    if count == 0 || count > grid_points {
        return invalid(format!("cannot take {count} levels from {grid_points} grid points"));
    }
    let h = (hi - lo) / (grid_points + 1) as f64;
    let inv_h2 = 1.0 / (h * h);
    let mut diag = Vec::with_capacity(grid_points);
    for k in 1..=grid_points {
        let x = lo + k as f64 * h;
        let vx = v(x);
        if !vx.is_finite() {
            return domain(format!("V is not finite at x = {x}"));
        }
        diag.push(2.0 * inv_h2 + vx);
    }
    let off = vec![-inv_h2; grid_points - 1];
    let mut ev = symtri_eigenvalues(&diag, &off)?;
    ev.truncate(count);
    Ok(ev)
}

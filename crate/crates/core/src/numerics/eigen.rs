//! Eigenvalues of symmetric tridiagonal and dense Hermitian matrices.
//!
//! Dense Hermitian input is reduced to real symmetric tridiagonal form with
//! complex Householder reflections, then diagonalised by the implicit-shift QL
//! iteration (eigenvalues only).

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

const MAX_QL_SWEEPS: usize = 60;

/// Dense `n × n` complex Hermitian matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates `data` against its conjugate transpose to `1e-12` (scaled by
    /// the largest entry when that exceeds one).
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return invalid("empty matrix");
        }
        if data.len() != n * n {
            return invalid(format!("expected {} entries, got {}", n * n, data.len()));
        }
        let scale = data.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..n {
            for j in i..n {
                let a = data[i * n + j];
                let b = data[j * n + i].conj();
                if !(a - b).norm().is_finite() || (a - b).norm() > 1e-12 * scale {
                    return invalid(format!("matrix is not Hermitian at ({i}, {j})"));
                }
            }
        }
        Ok(HermitianMatrix { n, data })
    }

    /// Builds from the upper triangle; the lower triangle is filled by conjugation
    /// and diagonal imaginary parts are discarded.
    pub fn from_upper(n: usize, mut entry: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(entry(i, i).re, 0.0);
            for j in i + 1..n {
                let z = entry(i, j);
                data[i * n + j] = z;
                data[j * n + i] = z.conj();
            }
        }
        HermitianMatrix { n, data }
    }

    pub fn from_real_symmetric(n: usize, entries: &[f64]) -> Result<Self> {
        Self::new(n, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i].re).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Unitary reduction to a real symmetric tridiagonal matrix with the same
    /// spectrum: returns `(diag, offdiag)`.
    pub fn tridiagonalize(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut a = self.data.clone();
        let mut diag = Vec::with_capacity(n);
        let mut off = Vec::with_capacity(n.saturating_sub(1));
        let zero = Complex64::new(0.0, 0.0);
        let mut v = vec![zero; n];
        let mut p = vec![zero; n];
        for k in 0..n.saturating_sub(1) {
            diag.push(a[k * n + k].re);
            let m = n - k - 1;
            let x0 = a[(k + 1) * n + k];
            let alpha = (k + 1..n)
                .map(|i| a[i * n + k].norm_sqr())
                .sum::<f64>()
                .sqrt();
            // The subdiagonal becomes -phase * alpha; its modulus is all the
            // real tridiagonal form needs (a diagonal unitary removes phases).
            off.push(alpha);
            let tail: f64 = (k + 2..n).map(|i| a[i * n + k].norm_sqr()).sum();
            if tail == 0.0 {
                continue;
            }
            let phase = if x0.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                x0 / x0.norm()
            };
            for (t, i) in (k + 1..n).enumerate() {
                v[t] = a[i * n + k];
            }
            v[0] += phase * alpha;
            let vnorm2: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
            let tau = 2.0 / vnorm2;
            // p = tau * S v on the trailing block
            for (r, i) in (k + 1..n).enumerate() {
                let row = &a[i * n + k + 1..i * n + n];
                p[r] = row.iter().zip(&v[..m]).map(|(s, vj)| s * vj).sum::<Complex64>() * tau;
            }
            let kk = 0.5 * tau * v[..m].iter().zip(&p[..m]).map(|(vi, pi)| vi.conj() * pi).sum::<Complex64>().re;
            for r in 0..m {
                p[r] -= v[r] * kk;
            }
            for (r, i) in (k + 1..n).enumerate() {
                let (vr, wr) = (v[r], p[r]);
                for (c, j) in (k + 1..n).enumerate() {
                    a[i * n + j] -= vr * p[c].conj() + wr * v[c].conj();
                }
            }
        }
        diag.push(a[n * n - 1].re);
        (diag, off)
    }
}

/// Ascending eigenvalues of the symmetric tridiagonal matrix with main
/// diagonal `diag` and first off-diagonal `offdiag`.
pub fn symtri_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return invalid("empty diagonal");
    }
    if offdiag.len() + 1 != n {
        return invalid(format!(
            "off-diagonal has length {}, expected {}",
            offdiag.len(),
            n - 1
        ));
    }
    if diag.iter().chain(offdiag).any(|x| !x.is_finite()) {
        return invalid("non-finite matrix entry");
    }
    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    ql_implicit(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Ascending eigenvalues of a dense Hermitian matrix.
pub fn hermitian_eigenvalues(matrix: &HermitianMatrix) -> Result<Vec<f64>> {
    let (d, e) = matrix.tridiagonalize();
    symtri_eigenvalues(&d, &e)
}

// EISPACK tql1: `e[i]` couples rows i and i+1, `e[n-1]` must be zero.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_QL_SWEEPS {
                    return Err(Error::Numeric(format!(
                        "QL iteration did not converge for eigenvalue {l}"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Real symmetric matrix, row-major, used for Hessians and small solves.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&HermitianMatrix::from_real_symmetric(self.n, &self.data)?)
    }

    /// Lower Cholesky factor, or `None` when the matrix is not positive definite.
    pub fn cholesky(&self) -> Option<Cholesky> {
        let n = self.n;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut diag = self.get(j, j);
            for k in 0..j {
                diag -= l[j * n + k] * l[j * n + k];
            }
            if !(diag > 0.0) {
                return None;
            }
            let ljj = diag.sqrt();
            l[j * n + j] = ljj;
            for i in j + 1..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / ljj;
            }
        }
        Some(Cholesky { n, l })
    }

    pub fn is_positive_definite(&self) -> bool {
        self.cholesky().is_some()
    }
}

#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = rhs.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RandomStream;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tridiagonal_small_cases() {
        assert_eq!(symtri_eigenvalues(&[2.0], &[]).unwrap(), vec![2.0]);
        let ev = symtri_eigenvalues(&[0.0, 0.0], &[1.0]).unwrap();
        assert_abs_diff_eq!(ev[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-12);
        let ev = symtri_eigenvalues(&[0.0; 3], &[1.0, 1.0]).unwrap();
        let s2 = 2f64.sqrt();
        for (got, want) in ev.iter().zip([-s2, 0.0, s2]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn tridiagonal_rejects_bad_shapes() {
        assert!(matches!(symtri_eigenvalues(&[], &[]), Err(Error::InvalidInput(_))));
        assert!(symtri_eigenvalues(&[1.0, 2.0], &[]).is_err());
        assert!(symtri_eigenvalues(&[1.0, f64::NAN], &[0.5]).is_err());
    }

    #[test]
    fn free_chain_eigenvalues() {
        // -1, 2, -1 stencil: 2 - 2cos(k pi/(n+1))
        let n = 50;
        let ev = symtri_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]).unwrap();
        for (k, got) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn hermitian_examples() {
        let id = HermitianMatrix::from_real_symmetric(
            3,
            &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        for v in hermitian_eigenvalues(&id).unwrap() {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-12);
        }
        let pauli_y =
            HermitianMatrix::new(2, vec![c(0., 0.), c(0., 1.), c(0., -1.), c(0., 0.)]).unwrap();
        let ev = hermitian_eigenvalues(&pauli_y).unwrap();
        assert_abs_diff_eq!(ev[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-12);
        let diag = HermitianMatrix::from_real_symmetric(
            3,
            &[3.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 2.0],
        )
        .unwrap();
        assert_eq!(hermitian_eigenvalues(&diag).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = HermitianMatrix::new(2, vec![c(0., 0.), c(1., 0.), c(2., 0.), c(0., 0.)]);
        assert!(matches!(m, Err(Error::InvalidInput(_))));
        let m = HermitianMatrix::new(2, vec![c(0., 1e-3), c(0., 0.), c(0., 0.), c(0., 0.)]);
        assert!(m.is_err());
    }

    fn random_hermitian(n: usize, seed: u64) -> HermitianMatrix {
        let mut s = RandomStream::new(seed);
        HermitianMatrix::from_upper(n, |_, _| c(s.next_normal(), s.next_normal()))
    }

    #[test]
    fn trace_and_residuals() {
        for (n, seed) in [(5, 1), (17, 2), (40, 3)] {
            let m = random_hermitian(n, seed);
            let ev = hermitian_eigenvalues(&m).unwrap();
            assert!(ev.windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = ev.iter().sum();
            assert!((sum - m.trace()).abs() <= 1e-9 * m.norm());
            // each eigenvalue makes M - lambda I singular: the smallest
            // |eigenvalue| of the shifted matrix vanishes.
            for &lam in ev.iter().take(3) {
                let shifted = HermitianMatrix::from_upper(n, |i, j| {
                    if i == j {
                        m.get(i, j) - lam
                    } else {
                        m.get(i, j)
                    }
                });
                let sev = hermitian_eigenvalues(&shifted).unwrap();
                let min = sev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
                assert!(min <= 1e-10 * m.norm(), "min {min}");
            }
        }
    }

    #[test]
    fn residual_via_inverse_iteration() {
        // Recover an eigenvector by solving (M - mu I) x = b with a real
        // symmetric matrix and check ||Mv - lambda v||.
        let n = 12;
        let mut s = RandomStream::new(11);
        let mut a = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                a.set(i, j, s.next_normal());
            }
        }
        let ev = a.eigenvalues().unwrap();
        let lam = ev[n - 1];
        // shift above the spectrum so that mu I - A is positive definite
        let mu = lam + 1e-6;
        let mut shifted = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = if i == j { mu - a.get(i, j) } else { -a.get(i, j) };
                shifted.set(i, j, v);
            }
        }
        let chol = shifted.cholesky().expect("positive definite");
        let mut x = vec![1.0; n];
        for _ in 0..3 {
            x = chol.solve(&x);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        let frob = a.as_slice().iter().map(|v| v * v).sum::<f64>().sqrt();
        let res: f64 = (0..n)
            .map(|i| {
                let ax: f64 = (0..n).map(|j| a.get(i, j) * x[j]).sum();
                (ax - lam * x[i]).powi(2)
            })
            .sum::<f64>()
            .sqrt();
        assert!(res <= 1e-10 * frob, "residual {res}");
    }

    #[test]
    fn tridiagonal_matches_dense_embedding() {
        let mut s = RandomStream::new(5);
        let n = 30;
        let d: Vec<f64> = (0..n).map(|_| s.next_normal()).collect();
        let e: Vec<f64> = (0..n - 1).map(|_| s.next_normal()).collect();
        let m = HermitianMatrix::from_upper(n, |i, j| {
            if i == j {
                c(d[i], 0.0)
            } else if j == i + 1 {
                c(e[i], 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let a = symtri_eigenvalues(&d, &e).unwrap();
        let b = hermitian_eigenvalues(&m).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
    }

    #[test]
    fn cholesky_detects_indefinite() {
        let mut m = SymMatrix::zeros(2);
        m.set(0, 0, 2.0);
        m.set(1, 1, 2.0);
        m.set(0, 1, -1.0);
        assert!(m.is_positive_definite());
        let x = m.cholesky().unwrap().solve(&[1.0, 1.0]);
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-14);
        m.set(0, 1, -3.0);
        assert!(!m.is_positive_definite());
    }
}

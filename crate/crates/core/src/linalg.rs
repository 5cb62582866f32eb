//! Dense matrices and the handful of linear-algebra kernels the rest of the
//! crate needs: Kronecker products, traces, bipartite partial traces, a
//! density-matrix sanity report and a cyclic Jacobi eigensolver.
//!
//! Storage is row-major and 0-based. Formulas elsewhere in the crate are
//! written with 1-based kets `|k>`, so `|k>` lives at storage index `k - 1`
//! and the bipartite ket `|n p>` lives at `(n - 1) * db + (p - 1)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![C_ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C_ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries cannot fill a {rows}x{cols} matrix", data.len())));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    /// Builds a matrix from `f(row, col)` with 0-based indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Projector `|psi><psi|` onto a (not necessarily normalized) vector.
    pub fn projector(psi: &[Complex64]) -> Self {
        let n = psi.len();
        Self::from_fn(n, n, |r, c| psi[r] * psi[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let data = self.data.iter().zip(&other.data).map(|(&x, &y)| f(x, y)).collect();
        Ok(ComplexMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == C_ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise modulus of `self - other`; `inf` on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    /// Largest modulus of `self - self^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0_f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// Sum of squared moduli of all entries.
    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Dense row-major real matrix, used for correlation matrices and the
/// symmetric matrices fed to [`eig_sym`].
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RealMatrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries cannot fill a {rows}x{cols} matrix", data.len())));
        }
        Ok(RealMatrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RealMatrix { rows, cols, data }
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// `u v^t`.
    pub fn outer(u: &[f64], v: &[f64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        RealMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect();
        Ok(RealMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        Ok(out)
    }

    /// `self * self^t`.
    pub fn gram_rows(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let s: f64 = self.row(i).iter().zip(self.row(j)).map(|(x, y)| x * y).sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Kronecker product `a ⊗ b`. Block `(r, s)` of the result is `a[r, s] * b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(a.rows * br, a.cols * bc);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a[(ar, ac)];
            if x == C_ZERO {
                continue;
            }
            for i in 0..br {
                for j in 0..bc {
                    out[(ar * br + i, ac * bc + j)] = x * b[(i, j)];
                }
            }
        }
    }
    out
}

pub fn trace(a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::Shape(format!("trace of a non-square {}x{} matrix", a.rows, a.cols)));
    }
    Ok((0..a.rows).map(|i| a[(i, i)]).sum())
}

/// `Tr(a b)` without forming the product.
pub fn trace_of_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Complex64> {
    if a.cols != b.rows || a.rows != b.cols {
        return Err(Error::Shape(format!(
            "Tr(AB) needs compatible shapes, got {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut acc = C_ZERO;
    for r in 0..a.rows {
        for c in 0..a.cols {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    Ok(acc)
}

fn check_bipartite(rho: &ComplexMatrix, da: usize, db: usize) -> Result<()> {
    let n = da * db;
    if da == 0 || db == 0 || rho.rows != n || rho.cols != n {
        return Err(Error::Shape(format!(
            "expected a {n}x{n} matrix for dims {da}x{db}, got {}x{}",
            rho.rows, rho.cols
        )));
    }
    Ok(())
}

/// Traces out subsystem `b`: `rho_a[m, n] = sum_p rho[(m, p), (n, p)]`.
pub fn ptrace_b(rho: &ComplexMatrix, da: usize, db: usize) -> Result<ComplexMatrix> {
    check_bipartite(rho, da, db)?;
    let mut out = ComplexMatrix::zeros(da, da);
    for m in 0..da {
        for n in 0..da {
            out[(m, n)] = (0..db).map(|p| rho[(m * db + p, n * db + p)]).sum();
        }
    }
    Ok(out)
}

/// Traces out subsystem `a`: `rho_b[p, q] = sum_m rho[(m, p), (m, q)]`.
pub fn ptrace_a(rho: &ComplexMatrix, da: usize, db: usize) -> Result<ComplexMatrix> {
    check_bipartite(rho, da, db)?;
    let mut out = ComplexMatrix::zeros(db, db);
    for p in 0..db {
        for q in 0..db {
            out[(p, q)] = (0..da).map(|m| rho[(m * db + p, m * db + q)]).sum();
        }
    }
    Ok(out)
}

/// How far a matrix is from being a density operator. Reporting only; callers
/// pick their own thresholds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrixCheck {
    /// max |rho - rho^dagger|
    pub hermiticity_defect: f64,
    /// |Tr rho - 1|
    pub trace_defect: f64,
    /// smallest eigenvalue of (rho + rho^dagger) / 2
    pub min_eigenvalue: f64,
}

impl DensityMatrixCheck {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.hermiticity_defect <= tol && self.trace_defect <= tol && self.min_eigenvalue >= -tol
    }
}

pub fn check_density(rho: &ComplexMatrix) -> Result<DensityMatrixCheck> {
    let tr = trace(rho)?;
    let hermiticity_defect = rho.hermiticity_defect();
    let spectrum = hermitian_eigenvalues(rho)?;
    Ok(DensityMatrixCheck {
        hermiticity_defect,
        trace_defect: (tr - C_ONE).norm(),
        min_eigenvalue: spectrum.last().copied().unwrap_or(0.0),
    })
}

/// Eigenvalues (non-increasing) of the Hermitian part of `h`.
///
/// `A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`, whose
/// spectrum is that of `A + iB` with every eigenvalue doubled.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    if !h.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", h.rows, h.cols)));
    }
    let n = h.rows;
    let herm = |r: usize, c: usize| (h[(r, c)] + h[(c, r)].conj()) * 0.5;
    let embed = RealMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = herm(r % n, c % n);
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let doubled = eig_sym(&embed)?;
    Ok(doubled.into_iter().step_by(2).collect())
}

const JACOBI_REL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix, sorted non-increasing.
///
/// Cyclic Jacobi on `(m + m^t) / 2`. Converged once the off-diagonal
/// Frobenius norm drops to `1e-13` times the Frobenius norm of the input.
pub fn eig_sym(m: &RealMatrix) -> Result<Vec<f64>> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = RealMatrix::from_fn(n, n, |r, c| 0.5 * (m[(r, c)] + m[(c, r)]));
    let threshold = JACOBI_REL_TOL * a.frobenius_norm();

    let off_norm = |a: &RealMatrix| {
        let mut s = 0.0;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += a[(r, c)] * a[(r, c)];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                // theta.signum() is 1 for +0.0, which is the rotation we want
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, p, q, c, s);
            }
        }
        sweeps += 1;
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// Applies `J^t A J` for the Givens rotation in the (p, q) plane.
fn rotate(a: &mut RealMatrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
}

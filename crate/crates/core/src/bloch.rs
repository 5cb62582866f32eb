//! Coherence (Bloch) vectors and correlation matrices in the generalized
//! Gell-Mann basis.
//!
//! A bipartite state expands as
//!
//! ```text
//! rho = (I⊗I + sum_j a_j G_j⊗I + sum_k b_k I⊗G_k + sum_jk c_jk G_j⊗G_k) / (da db)
//! a_j  = (da/2)    Tr((G_j ⊗ I) rho)
//! b_k  = (db/2)    Tr((I ⊗ G_k) rho)
//! c_jk = (da db/4) Tr((G_j ⊗ G_k) rho)
//! ```
//!
//! Two routes are provided for each quantity. The `*_naive` functions
//! materialize the generators (and their Kronecker products) and take traces,
//! which is what the definitions say. The optimized functions read the few
//! matrix elements of `rho` each component actually depends on and never form
//! a Kronecker product; they cost O(da^2 db^2) for the correlation matrix
//! against O(da^4 db^4) for the naive route.

use num_complex::Complex64;
use std::cell::Cell;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::gellmann::{self, basis_len, diagonal_norm, pair_count, pairs, Group};
use crate::linalg::{kron, ptrace_a, ptrace_b, trace_of_product, ComplexMatrix, RealMatrix};
use crate::Side;

/// Which route to evaluate a quantity by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Method {
    /// Materialized generators and Kronecker products.
    Naive,
    /// Direct matrix-element formulas.
    #[default]
    Optimized,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Optimized => "optimized",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "opt" | "optimized" => Ok(Method::Optimized),
            _ => Err(Error::Argument(format!("unknown method '{s}'"))),
        }
    }
}

/// Imaginary residue above which a trace that should be real is an error.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Coherence vector of a `dim`-level system, length `dim^2 - 1`, laid out by
/// [`gellmann::gm_index`] (stored 0-based: component `j` sits at `j - 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct BlochVector {
    dim: usize,
    comps: Vec<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, comps: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        if comps.len() != basis_len(dim) {
            return Err(Error::Shape(format!(
                "Bloch vector for d={dim} needs {} components, got {}",
                basis_len(dim),
                comps.len()
            )));
        }
        Ok(BlochVector { dim, comps })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(BlochVector { dim, comps: vec![0.0; basis_len(dim)] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn comps(&self) -> &[f64] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<f64> {
        self.comps
    }

    pub fn norm(&self) -> f64 {
        self.comps.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.comps.iter().zip(&other.comps).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }
}

/// Correlation matrix, `(da^2 - 1) x (db^2 - 1)`. Rows follow the side-a
/// generator index, columns the side-b one, so the matrix splits into 3x3
/// blocks by generator group.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrMatrix {
    da: usize,
    db: usize,
    entries: RealMatrix,
}

impl CorrMatrix {
    pub fn new(da: usize, db: usize, entries: RealMatrix) -> Result<Self> {
        check_dim(da)?;
        check_dim(db)?;
        if entries.rows() != basis_len(da) || entries.cols() != basis_len(db) {
            return Err(Error::Shape(format!(
                "correlation matrix for {da}x{db} must be {}x{}, got {}x{}",
                basis_len(da),
                basis_len(db),
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(CorrMatrix { da, db, entries })
    }

    pub fn zeros(da: usize, db: usize) -> Result<Self> {
        check_dim(da)?;
        check_dim(db)?;
        Ok(CorrMatrix { da, db, entries: RealMatrix::zeros(basis_len(da), basis_len(db)) })
    }

    pub fn da(&self) -> usize {
        self.da
    }

    pub fn db(&self) -> usize {
        self.db
    }

    pub fn entries(&self) -> &RealMatrix {
        &self.entries
    }

    /// Swaps the roles of the two subsystems.
    pub fn transpose(&self) -> CorrMatrix {
        CorrMatrix { da: self.db, db: self.da, entries: self.entries.transpose() }
    }

    /// Copy of the sub-block pairing group `ga` on side a with `gb` on side b.
    pub fn block(&self, ga: Group, gb: Group) -> RealMatrix {
        let (r0, nr) = group_range(self.da, ga);
        let (c0, nc) = group_range(self.db, gb);
        RealMatrix::from_fn(nr, nc, |r, c| self.entries[(r0 + r, c0 + c)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.da != other.da || self.db != other.db {
            return f64::INFINITY;
        }
        self.entries.max_abs_diff(&other.entries)
    }
}

/// (0-based offset, length) of a generator group inside the flat layout.
fn group_range(dim: usize, g: Group) -> (usize, usize) {
    match g {
        Group::Diagonal => (0, dim - 1),
        Group::Symmetric => (dim - 1, pair_count(dim)),
        Group::Antisymmetric => (dim - 1 + pair_count(dim), pair_count(dim)),
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(Error::Argument(format!("subsystem dimension must be at least 2, got {dim}")));
    }
    Ok(())
}

fn square_dim(rho: &ComplexMatrix) -> Result<usize> {
    if !rho.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", rho.rows(), rho.cols())));
    }
    check_dim(rho.rows())?;
    Ok(rho.rows())
}

fn check_bipartite(rho: &ComplexMatrix, da: usize, db: usize) -> Result<()> {
    check_dim(da)?;
    check_dim(db)?;
    let n = da * db;
    if rho.rows() != n || rho.cols() != n {
        return Err(Error::Shape(format!(
            "expected a {n}x{n} matrix for dims {da}x{db}, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(())
}

fn real_part_checked(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::NonHermitian { residue: z.im.abs(), tolerance: IMAG_RESIDUE_TOL });
    }
    Ok(z.re)
}

/// Read access to density-matrix elements; lets the optimized routines be
/// instrumented without touching their arithmetic.
trait Elements {
    fn at(&self, r: usize, c: usize) -> Complex64;
}

impl Elements for ComplexMatrix {
    #[inline]
    fn at(&self, r: usize, c: usize) -> Complex64 {
        self[(r, c)]
    }
}

struct CountingReads<'a> {
    inner: &'a ComplexMatrix,
    reads: Cell<u64>,
}

impl Elements for CountingReads<'_> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> Complex64 {
        self.reads.set(self.reads.get() + 1);
        self.inner[(r, c)]
    }
}

/// `out[j-1] = sum_{m=1}^{j+1} w_j(m) x[m-1]` for j = 1..len-1, where w_j is
/// the unnormalized diagonal-generator weight (1 up to j, then -j).
fn diagonal_sums(x: &[f64], out: &mut Vec<f64>) {
    out.clear();
    let mut prefix = 0.0;
    for j in 1..x.len() {
        prefix += x[j - 1];
        out.push(prefix - j as f64 * x[j]);
    }
}

/// Bloch vector from the definition, `s_j = (d/2) Re Tr(G_j rho)`.
pub fn bloch_naive(rho_s: &ComplexMatrix) -> Result<BlochVector> {
    let d = square_dim(rho_s)?;
    let half_d = d as f64 / 2.0;
    let comps = gellmann::basis(d)
        .map(|spec| {
            let g = gellmann::gellmann(&spec)?;
            Ok(half_d * real_part_checked(trace_of_product(&g, rho_s)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    BlochVector::new(d, comps)
}

/// Bloch vector straight from the matrix elements of `rho_s`:
///
/// ```text
/// diagonal j:         s_j     = d / sqrt(2j(j+1)) * (sum_{k<=j} rho_kk - j rho_{j+1,j+1})
/// symmetric (k,l):    s_(k,l) = d Re <l|rho|k>
/// antisymmetric (k,l) s_(k,l) = d Im <l|rho|k>
/// ```
pub fn bloch_opt(rho_s: &ComplexMatrix) -> Result<BlochVector> {
    let d = square_dim(rho_s)?;
    Ok(bloch_opt_impl(rho_s, d))
}

fn bloch_opt_impl<E: Elements>(rho: &E, d: usize) -> BlochVector {
    let df = d as f64;
    let mut comps = vec![0.0; basis_len(d)];

    let diag: Vec<f64> = (0..d).map(|m| rho.at(m, m).re).collect();
    let mut sums = Vec::with_capacity(d - 1);
    diagonal_sums(&diag, &mut sums);
    for (j0, s) in sums.iter().enumerate() {
        comps[j0] = 0.5 * df * diagonal_norm(j0 + 1) * s;
    }

    let pc = pair_count(d);
    for (i, (k, l)) in pairs(d).enumerate() {
        let z = rho.at(l - 1, k - 1);
        comps[d - 1 + i] = df * z.re;
        comps[d - 1 + pc + i] = df * z.im;
    }
    BlochVector { dim: d, comps }
}

/// Coherence vector of one side of a bipartite state: partial trace, then
/// [`bloch_opt`].
pub fn bloch_of_subsystem(rho: &ComplexMatrix, da: usize, db: usize, side: Side) -> Result<BlochVector> {
    check_bipartite(rho, da, db)?;
    match side {
        Side::A => bloch_opt(&ptrace_b(rho, da, db)?),
        Side::B => bloch_opt(&ptrace_a(rho, da, db)?),
    }
}

/// Coherence vector of one side from the bipartite definition,
/// `a_j = (da/2) Tr((G_j ⊗ I) rho)` or `b_k = (db/2) Tr((I ⊗ G_k) rho)`.
pub fn bloch_of_subsystem_naive(rho: &ComplexMatrix, da: usize, db: usize, side: Side) -> Result<BlochVector> {
    check_bipartite(rho, da, db)?;
    let ds = side.dim(da, db);
    let half_d = ds as f64 / 2.0;
    let comps = gellmann::basis(ds)
        .map(|spec| {
            let g = gellmann::gellmann(&spec)?;
            let op = match side {
                Side::A => kron(&g, &ComplexMatrix::identity(db)),
                Side::B => kron(&ComplexMatrix::identity(da), &g),
            };
            Ok(half_d * real_part_checked(trace_of_product(&op, rho)?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    BlochVector::new(ds, comps)
}

/// Correlation matrix from the definition: every entry materializes
/// `G_j ⊗ G_k` and takes `Tr((G_j ⊗ G_k) rho)`.
pub fn corrmat_naive(rho: &ComplexMatrix, da: usize, db: usize) -> Result<CorrMatrix> {
    corrmat_naive_until(rho, da, db, None).map(|c| c.expect("no deadline set"))
}

/// [`corrmat_naive`] that gives up (returning `None`) once `deadline` passes.
/// The deadline is checked between entries.
pub fn corrmat_naive_until(
    rho: &ComplexMatrix,
    da: usize,
    db: usize,
    deadline: Option<Instant>,
) -> Result<Option<CorrMatrix>> {
    check_bipartite(rho, da, db)?;
    let scale = (da * db) as f64 / 4.0;
    let gens_a = gellmann::generators(da)?;
    let gens_b = gellmann::generators(db)?;
    let mut entries = RealMatrix::zeros(gens_a.len(), gens_b.len());
    for (j, ga) in gens_a.iter().enumerate() {
        for (k, gb) in gens_b.iter().enumerate() {
            if deadline.is_some_and(|t| Instant::now() >= t) {
                return Ok(None);
            }
            let op = kron(ga, gb);
            entries[(j, k)] = scale * real_part_checked(trace_of_product(&op, rho)?)?;
        }
    }
    CorrMatrix::new(da, db, entries).map(Some)
}

/// Single-system coherence vector by the chosen route.
pub fn bloch_with(rho_s: &ComplexMatrix, method: Method) -> Result<BlochVector> {
    match method {
        Method::Naive => bloch_naive(rho_s),
        Method::Optimized => bloch_opt(rho_s),
    }
}

/// Subsystem coherence vector by the chosen route.
pub fn bloch_of_subsystem_with(
    rho: &ComplexMatrix,
    da: usize,
    db: usize,
    side: Side,
    method: Method,
) -> Result<BlochVector> {
    match method {
        Method::Naive => bloch_of_subsystem_naive(rho, da, db, side),
        Method::Optimized => bloch_of_subsystem(rho, da, db, side),
    }
}

/// Correlation matrix by the chosen route.
pub fn corrmat_with(rho: &ComplexMatrix, da: usize, db: usize, method: Method) -> Result<CorrMatrix> {
    match method {
        Method::Naive => corrmat_naive(rho, da, db),
        Method::Optimized => corrmat_opt(rho, da, db),
    }
}

/// Correlation matrix from matrix elements of `rho` only.
///
/// With `s = da db / 4`, `iota_j = sqrt(2/(j(j+1)))`, `kappa_k` likewise,
/// diagonal weights `w_j(m)` (1 up to j, -j at j+1) and 1-based kets
/// `|n p> = |(n-1) db + p>`, the nine blocks are
///
/// ```text
/// (1,1)  s iota kappa sum_m sum_p w_j(m) w_k(p) <mp|rho|mp>
/// (1,2)  2 s iota  sum_m w_j(m) Re <mq|rho|mp>      (1,3)  same with Im
/// (2,1)  2 s kappa sum_p w_k(p) Re <np|rho|mp>      (3,1)  same with Im
/// (2,2)  2 s (Re <nq|rho|mp> + Re <np|rho|mq>)      (2,3)  2 s (Im <nq|rho|mp> - Im <np|rho|mq>)
/// (3,2)  2 s (Im <nq|rho|mp> + Im <np|rho|mq>)      (3,3)  2 s (Re <np|rho|mq> - Re <nq|rho|mp>)
/// ```
///
/// for side-a labels j or (m,n) and side-b labels k or (p,q). The diagonal
/// sums are evaluated as running prefix sums, and blocks that share matrix
/// elements read them once.
pub fn corrmat_opt(rho: &ComplexMatrix, da: usize, db: usize) -> Result<CorrMatrix> {
    check_bipartite(rho, da, db)?;
    Ok(corrmat_opt_impl(rho, da, db))
}

/// [`corrmat_opt`] plus the number of density-matrix elements it read.
pub fn corrmat_opt_counted(rho: &ComplexMatrix, da: usize, db: usize) -> Result<(CorrMatrix, u64)> {
    check_bipartite(rho, da, db)?;
    let counter = CountingReads { inner: rho, reads: Cell::new(0) };
    let c = corrmat_opt_impl(&counter, da, db);
    Ok((c, counter.reads.get()))
}

fn corrmat_opt_impl<E: Elements>(rho: &E, da: usize, db: usize) -> CorrMatrix {
    let s = (da * db) as f64 / 4.0;
    let (pa, pb) = (pair_count(da), pair_count(db));
    let (sym_a, anti_a) = (da - 1, da - 1 + pa);
    let (sym_b, anti_b) = (db - 1, db - 1 + pb);
    let idx = |m: usize, p: usize| (m - 1) * db + (p - 1);
    let mut c = RealMatrix::zeros(basis_len(da), basis_len(db));

    let mut col = Vec::with_capacity(da.max(db));
    let mut sums = Vec::with_capacity(da.max(db));

    // (1,1): first contract side a for every p, then side b.
    let mut partial = RealMatrix::zeros(da - 1, db);
    for p in 1..=db {
        col.clear();
        col.extend((1..=da).map(|m| rho.at(idx(m, p), idx(m, p)).re));
        diagonal_sums(&col, &mut sums);
        for (j0, v) in sums.iter().enumerate() {
            partial[(j0, p - 1)] = *v;
        }
    }
    for j in 1..da {
        diagonal_sums(partial.row(j - 1), &mut sums);
        let iota = diagonal_norm(j);
        for (k0, v) in sums.iter().enumerate() {
            c[(j - 1, k0)] = s * iota * diagonal_norm(k0 + 1) * v;
        }
    }

    // (1,2) and (1,3) share <mq|rho|mp>.
    let mut im_col = Vec::with_capacity(da);
    let mut im_sums = Vec::with_capacity(da);
    for (i, (p, q)) in pairs(db).enumerate() {
        col.clear();
        im_col.clear();
        for m in 1..=da {
            let z = rho.at(idx(m, q), idx(m, p));
            col.push(z.re);
            im_col.push(z.im);
        }
        diagonal_sums(&col, &mut sums);
        diagonal_sums(&im_col, &mut im_sums);
        for j in 1..da {
            let f = 2.0 * s * diagonal_norm(j);
            c[(j - 1, sym_b + i)] = f * sums[j - 1];
            c[(j - 1, anti_b + i)] = f * im_sums[j - 1];
        }
    }

    // (2,1) and (3,1) share <np|rho|mp>.
    for (i, (m, n)) in pairs(da).enumerate() {
        col.clear();
        im_col.clear();
        for p in 1..=db {
            let z = rho.at(idx(n, p), idx(m, p));
            col.push(z.re);
            im_col.push(z.im);
        }
        diagonal_sums(&col, &mut sums);
        diagonal_sums(&im_col, &mut im_sums);
        for k in 1..db {
            let f = 2.0 * s * diagonal_norm(k);
            c[(sym_a + i, k - 1)] = f * sums[k - 1];
            c[(anti_a + i, k - 1)] = f * im_sums[k - 1];
        }
    }

    // (2,2), (2,3), (3,2), (3,3) all come from <nq|rho|mp> and <np|rho|mq>.
    for (i, (m, n)) in pairs(da).enumerate() {
        for (k, (p, q)) in pairs(db).enumerate() {
            let x = rho.at(idx(n, q), idx(m, p));
            let y = rho.at(idx(n, p), idx(m, q));
            c[(sym_a + i, sym_b + k)] = 2.0 * s * (x.re + y.re);
            c[(sym_a + i, anti_b + k)] = 2.0 * s * (x.im - y.im);
            c[(anti_a + i, sym_b + k)] = 2.0 * s * (x.im + y.im);
            c[(anti_a + i, anti_b + k)] = 2.0 * s * (y.re - x.re);
        }
    }

    CorrMatrix { da, db, entries: c }
}

/// Rebuilds the bipartite density matrix from its local-basis expansion.
pub fn reconstruct(a: &BlochVector, b: &BlochVector, c: &CorrMatrix) -> Result<ComplexMatrix> {
    let (da, db) = (a.dim, b.dim);
    if c.da != da || c.db != db {
        return Err(Error::Shape(format!(
            "Bloch vectors are for {da}x{db} but the correlation matrix is for {}x{}",
            c.da, c.db
        )));
    }
    let gens_a = gellmann::generators(da)?;
    let gens_b = gellmann::generators(db)?;
    let (id_a, id_b) = (ComplexMatrix::identity(da), ComplexMatrix::identity(db));

    let mut rho = ComplexMatrix::identity(da * db);
    let mut acc = |op: ComplexMatrix, w: f64| -> Result<()> {
        if w != 0.0 {
            rho = rho.add(&op.scale(Complex64::new(w, 0.0)))?;
        }
        Ok(())
    };
    for (g, &w) in gens_a.iter().zip(&a.comps) {
        acc(kron(g, &id_b), w)?;
    }
    for (g, &w) in gens_b.iter().zip(&b.comps) {
        acc(kron(&id_a, g), w)?;
    }
    for (j, ga) in gens_a.iter().enumerate() {
        // sum_k c_jk G_k first, then one Kronecker product per row
        let mut row_op = ComplexMatrix::zeros(db, db);
        for (k, gb) in gens_b.iter().enumerate() {
            let w = c.entries[(j, k)];
            if w != 0.0 {
                row_op = row_op.add(&gb.scale(Complex64::new(w, 0.0)))?;
            }
        }
        acc(kron(ga, &row_op), 1.0)?;
    }
    Ok(rho.scale(Complex64::new(1.0 / (da * db) as f64, 0.0)))
}

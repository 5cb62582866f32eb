//! Hilbert-Schmidt discord quantifiers from coherence vectors and
//! correlation matrices.
//!
//! For side a, with `a` the side-a coherence vector and `C` the correlation
//! matrix,
//!
//! ```text
//! Xi_a  = 2 / (da^2 db) * (a a^t + (2/db) C C^t)
//! D_hs  = sum of the da^2 - da smallest eigenvalues of Xi_a
//! D_hsa = D_hs / Tr(rho_b^2)
//! ```
//!
//! Side b swaps the roles of the subsystems and uses `C^t C`.
//!
//! `D_hsa` is the closed form of the ameliorated discord, i.e. the minimum
//! over rank-(da-1) projectors `Pi` of `||Y - Pi Y||^2` for
//! `Y = sqrt(2/(da^2 db)) (f a, g sqrt(2/db) C)` with `f = g = Tr(rho_b^2)`.
//! Only that closed form is computed; no projector search is performed.

use crate::bloch::{bloch_of_subsystem_with, corrmat_with, BlochVector, CorrMatrix, Method};
use crate::error::{Error, Result};
use crate::linalg::{eig_sym, ptrace_a, ptrace_b, ComplexMatrix, RealMatrix};
use crate::Side;

#[derive(Clone, Debug, PartialEq)]
pub struct DiscordReport {
    pub side: Side,
    /// Eigenvalues of Xi, non-increasing.
    pub xi_eigenvalues: Vec<f64>,
    /// Hilbert-Schmidt discord, clamped at zero.
    pub hs_value: f64,
    /// Purity of the reduced state of the other subsystem.
    pub purity_other: f64,
    /// Ameliorated Hilbert-Schmidt discord, `hs_value / purity_other`.
    pub hsa_value: f64,
}

/// `Xi = 2/(d^2 d_other) (v v^t + (2/d_other) C C^t)` where `d = v.dim()`.
///
/// `c` must have its rows on the side of `v`; pass `c.transpose()` to get the
/// side-b matrix.
pub fn xi_matrix(v: &BlochVector, c: &CorrMatrix, d_other: usize) -> Result<RealMatrix> {
    let d = v.dim();
    if c.da() != d || c.db() != d_other {
        return Err(Error::Shape(format!(
            "coherence vector is for d={d} (other side {d_other}) but the correlation matrix is {}x{}",
            c.da(),
            c.db()
        )));
    }
    let pre = 2.0 / ((d * d * d_other) as f64);
    let corr_weight = 2.0 / d_other as f64;
    let vv = RealMatrix::outer(v.comps(), v.comps());
    let cc = c.entries().gram_rows();
    Ok(RealMatrix::from_fn(vv.rows(), vv.cols(), |r, col| pre * (vv[(r, col)] + corr_weight * cc[(r, col)])))
}

/// [`xi_matrix`] for one side of a bipartite state.
pub fn xi_matrix_for(rho: &ComplexMatrix, da: usize, db: usize, side: Side) -> Result<RealMatrix> {
    xi_matrix_with(rho, da, db, side, Method::Optimized)
}

fn xi_matrix_with(rho: &ComplexMatrix, da: usize, db: usize, side: Side, method: Method) -> Result<RealMatrix> {
    let v = bloch_of_subsystem_with(rho, da, db, side, method)?;
    let c = corrmat_with(rho, da, db, method)?;
    match side {
        Side::A => xi_matrix(&v, &c, db),
        Side::B => xi_matrix(&v, &c.transpose(), da),
    }
}

/// `Tr(rho^2)`, computed as the sum of squared moduli of the entries.
pub fn purity(rho_s: &ComplexMatrix) -> f64 {
    rho_s.frobenius_norm_sqr()
}

/// Hilbert-Schmidt discord of `rho` with respect to `side`. The report also
/// carries the ameliorated value.
pub fn discord_hs(rho: &ComplexMatrix, da: usize, db: usize, side: Side) -> Result<DiscordReport> {
    discord_report(rho, da, db, side, Method::Optimized)
}

/// Ameliorated Hilbert-Schmidt discord. Identical report to [`discord_hs`];
/// the quantity of interest is `hsa_value`.
pub fn discord_hsa(rho: &ComplexMatrix, da: usize, db: usize, side: Side) -> Result<DiscordReport> {
    discord_hs(rho, da, db, side)
}

/// Full report with the coherence vector and correlation matrix computed by
/// `method`.
pub fn discord_report(rho: &ComplexMatrix, da: usize, db: usize, side: Side, method: Method) -> Result<DiscordReport> {
    let xi = xi_matrix_with(rho, da, db, side, method)?;
    let xi_eigenvalues = eig_sym(&xi)?;
    let d = side.dim(da, db);
    let hs_value = xi_eigenvalues[d - 1..].iter().sum::<f64>().max(0.0);

    let other = match side {
        Side::A => ptrace_a(rho, da, db)?,
        Side::B => ptrace_b(rho, da, db)?,
    };
    let purity_other = purity(&other);
    if purity_other.is_nan() || purity_other <= 0.0 {
        return Err(Error::Argument(format!("reduced state has purity {purity_other}")));
    }
    Ok(DiscordReport { side, xi_eigenvalues, hs_value, purity_other, hsa_value: hs_value / purity_other })
}

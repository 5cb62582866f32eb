//! Generalized Gell-Mann generators of SU(d) and the flat index convention
//! used for Bloch vectors and correlation matrices.
//!
//! Generators come in three groups, with 1-based kets:
//!
//! ```text
//! diagonal       G_j     = sqrt(2/(j(j+1))) (|1><1| + ... + |j><j| - j |j+1><j+1|),  j = 1..d-1
//! symmetric      G_(k,l) = |k><l| + |l><k|,                                            1 <= k < l <= d
//! antisymmetric  G_(k,l) = -i (|k><l| - |l><k|),                                       1 <= k < l <= d
//! ```
//!
//! Flat (1-based) index layout: the d-1 diagonal generators first, then the
//! symmetric ones, then the antisymmetric ones, each pair group ordered
//! lexicographically as (1,2), (1,3), ..., (1,d), (2,3), ...

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    Diagonal,
    Symmetric,
    Antisymmetric,
}

impl Group {
    /// 1, 2 or 3.
    pub fn number(self) -> u8 {
        match self {
            Group::Diagonal => 1,
            Group::Symmetric => 2,
            Group::Antisymmetric => 3,
        }
    }

    pub fn from_number(g: u8) -> Result<Self> {
        match g {
            1 => Ok(Group::Diagonal),
            2 => Ok(Group::Symmetric),
            3 => Ok(Group::Antisymmetric),
            _ => Err(Error::Argument(format!("generator group must be 1, 2 or 3, got {g}"))),
        }
    }
}

/// Labels one generator. `k` and `l` are 1-based; for the diagonal group `k`
/// is the generator number `j` and `l` is ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GellMannSpec {
    pub dim: usize,
    pub group: Group,
    pub k: usize,
    pub l: usize,
}

impl GellMannSpec {
    pub fn new(dim: usize, group: Group, k: usize, l: usize) -> Result<Self> {
        let spec = GellMannSpec { dim, group, k, l };
        spec.validate()?;
        Ok(spec)
    }

    pub fn diagonal(dim: usize, j: usize) -> Result<Self> {
        Self::new(dim, Group::Diagonal, j, 0)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        if d < 2 {
            return Err(Error::Argument(format!("dimension must be at least 2, got {d}")));
        }
        let ok = match self.group {
            Group::Diagonal => (1..d).contains(&self.k),
            Group::Symmetric | Group::Antisymmetric => 1 <= self.k && self.k < self.l && self.l <= d,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Argument(format!(
                "labels (g={}, k={}, l={}) out of range for d={d}",
                self.group.number(),
                self.k,
                self.l
            )))
        }
    }
}

/// Number of generators, `d^2 - 1`.
pub fn basis_len(dim: usize) -> usize {
    dim * dim - 1
}

/// Number of (k, l) pairs with k < l, i.e. the size of each off-diagonal group.
pub fn pair_count(dim: usize) -> usize {
    dim * (dim - 1) / 2
}

/// Position (1-based) of the pair (k, l) in lexicographic order.
fn pair_rank(dim: usize, k: usize, l: usize) -> usize {
    (k - 1) * dim + l - k * (k + 1) / 2
}

/// Pairs `(k, l)` with `1 <= k < l <= dim` in flat-index order.
pub fn pairs(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=dim).flat_map(move |k| (k + 1..=dim).map(move |l| (k, l)))
}

/// Flat 1-based index of a generator.
pub fn gm_index(spec: &GellMannSpec) -> Result<usize> {
    spec.validate()?;
    let d = spec.dim;
    Ok(match spec.group {
        Group::Diagonal => spec.k,
        Group::Symmetric => d - 1 + pair_rank(d, spec.k, spec.l),
        Group::Antisymmetric => d - 1 + pair_count(d) + pair_rank(d, spec.k, spec.l),
    })
}

/// Inverse of [`gm_index`].
pub fn gm_unindex(dim: usize, j: usize) -> Result<GellMannSpec> {
    if dim < 2 {
        return Err(Error::Argument(format!("dimension must be at least 2, got {dim}")));
    }
    if j == 0 || j > basis_len(dim) {
        return Err(Error::Argument(format!("index {j} outside 1..={} for d={dim}", basis_len(dim))));
    }
    if j < dim {
        return GellMannSpec::diagonal(dim, j);
    }
    let (group, mut rank) = if j < dim + pair_count(dim) {
        (Group::Symmetric, j - (dim - 1))
    } else {
        (Group::Antisymmetric, j - (dim - 1) - pair_count(dim))
    };
    // walk the rows k of the strict upper triangle
    let mut k = 1;
    while rank > dim - k {
        rank -= dim - k;
        k += 1;
    }
    GellMannSpec::new(dim, group, k, k + rank)
}

/// All generator labels of SU(dim), in flat-index order.
pub fn basis(dim: usize) -> impl Iterator<Item = GellMannSpec> {
    let diag = (1..dim).map(move |j| GellMannSpec { dim, group: Group::Diagonal, k: j, l: 0 });
    let sym = pairs(dim).map(move |(k, l)| GellMannSpec { dim, group: Group::Symmetric, k, l });
    let anti = pairs(dim).map(move |(k, l)| GellMannSpec { dim, group: Group::Antisymmetric, k, l });
    diag.chain(sym).chain(anti)
}

/// `sqrt(2 / (j (j + 1)))`, the normalization of the j-th diagonal generator.
pub fn diagonal_norm(j: usize) -> f64 {
    (2.0 / (j * (j + 1)) as f64).sqrt()
}

/// Unnormalized weight of ket `|m>` (1-based) in the j-th diagonal generator:
/// 1 for m <= j, -j for m = j + 1, 0 beyond.
pub fn diagonal_weight(j: usize, m: usize) -> f64 {
    use std::cmp::Ordering::*;
    match m.cmp(&(j + 1)) {
        Less => 1.0,
        Equal => -(j as f64),
        Greater => 0.0,
    }
}

/// Materializes a generator as a dense `dim x dim` matrix.
pub fn gellmann(spec: &GellMannSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let d = spec.dim;
    let mut g = ComplexMatrix::zeros(d, d);
    match spec.group {
        Group::Diagonal => {
            let j = spec.k;
            let norm = diagonal_norm(j);
            for m in 1..=j + 1 {
                g[(m - 1, m - 1)] = Complex64::new(norm * diagonal_weight(j, m), 0.0);
            }
        }
        Group::Symmetric => {
            g[(spec.k - 1, spec.l - 1)] = Complex64::new(1.0, 0.0);
            g[(spec.l - 1, spec.k - 1)] = Complex64::new(1.0, 0.0);
        }
        Group::Antisymmetric => {
            g[(spec.k - 1, spec.l - 1)] = Complex64::new(0.0, -1.0);
            g[(spec.l - 1, spec.k - 1)] = Complex64::new(0.0, 1.0);
        }
    }
    Ok(g)
}

/// Every generator of SU(dim), in flat-index order.
pub fn generators(dim: usize) -> Result<Vec<ComplexMatrix>> {
    if dim < 2 {
        return Err(Error::Argument(format!("dimension must be at least 2, got {dim}")));
    }
    basis(dim).map(|s| gellmann(&s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{trace, trace_of_product};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_generators_are_pauli_matrices() {
        let z = gellmann(&GellMannSpec::diagonal(2, 1).unwrap()).unwrap();
        assert_eq!(z, ComplexMatrix::from_real_diag(&[1.0, -1.0]));
        let x = gellmann(&GellMannSpec::new(2, Group::Symmetric, 1, 2).unwrap()).unwrap();
        assert_eq!(x.as_slice(), &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let y = gellmann(&GellMannSpec::new(2, Group::Antisymmetric, 1, 2).unwrap()).unwrap();
        assert_eq!(y.as_slice(), &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]);
    }

    #[test]
    fn qutrit_second_diagonal_generator() {
        let g = gellmann(&GellMannSpec::diagonal(3, 2).unwrap()).unwrap();
        let s = 1.0 / 3f64.sqrt();
        let want = ComplexMatrix::from_real_diag(&[s, s, -2.0 * s]);
        assert!(g.max_abs_diff(&want) < 1e-15);
        let norm = trace_of_product(&g, &g).unwrap();
        assert!((norm - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bad_labels_are_rejected() {
        assert!(matches!(GellMannSpec::diagonal(3, 3), Err(Error::Argument(_))));
        assert!(matches!(GellMannSpec::diagonal(3, 0), Err(Error::Argument(_))));
        assert!(matches!(GellMannSpec::new(3, Group::Symmetric, 2, 2), Err(Error::Argument(_))));
        assert!(matches!(GellMannSpec::new(3, Group::Antisymmetric, 1, 4), Err(Error::Argument(_))));
        assert!(matches!(GellMannSpec::new(1, Group::Diagonal, 1, 0), Err(Error::Argument(_))));
        assert!(Group::from_number(4).is_err());
        let raw = GellMannSpec { dim: 3, group: Group::Symmetric, k: 3, l: 1 };
        assert!(gellmann(&raw).is_err());
        assert!(gm_index(&raw).is_err());
    }

    #[test]
    fn index_convention_anchor_points() {
        for d in 2..=8 {
            let first_sym = GellMannSpec::new(d, Group::Symmetric, 1, 2).unwrap();
            assert_eq!(gm_index(&first_sym).unwrap(), d);
            let first_anti = GellMannSpec::new(d, Group::Antisymmetric, 1, 2).unwrap();
            assert_eq!(gm_index(&first_anti).unwrap(), d + d * (d - 1) / 2);
            let last_sym = GellMannSpec::new(d, Group::Symmetric, 1, d).unwrap();
            assert_eq!(gm_index(&last_sym).unwrap(), 2 * (d - 1));
        }
        let s = GellMannSpec::new(3, Group::Symmetric, 2, 3).unwrap();
        assert_eq!(gm_index(&s).unwrap(), 5);
        let s = GellMannSpec::new(4, Group::Symmetric, 2, 3).unwrap();
        assert_eq!(gm_index(&s).unwrap(), 2 * (4 - 1) + 1);
    }

    #[test]
    fn unindex_examples() {
        assert_eq!(gm_unindex(2, 3).unwrap(), GellMannSpec::new(2, Group::Antisymmetric, 1, 2).unwrap());
        assert_eq!(gm_unindex(3, 1).unwrap(), GellMannSpec::diagonal(3, 1).unwrap());
        assert_eq!(gm_unindex(4, 15).unwrap(), GellMannSpec::new(4, Group::Antisymmetric, 3, 4).unwrap());
        assert!(gm_unindex(4, 0).is_err());
        assert!(gm_unindex(4, 16).is_err());
    }

    #[test]
    fn index_map_is_a_bijection() {
        for d in 2..=8 {
            let specs: Vec<_> = basis(d).collect();
            assert_eq!(specs.len(), basis_len(d));
            for (pos, s) in specs.iter().enumerate() {
                assert_eq!(gm_index(s).unwrap(), pos + 1);
                assert_eq!(gm_unindex(d, pos + 1).unwrap(), *s);
            }
        }
    }

    #[test]
    fn group_sizes() {
        for d in 2..=8 {
            let count = |g| basis(d).filter(|s| s.group == g).count();
            assert_eq!(count(Group::Diagonal), d - 1);
            assert_eq!(count(Group::Symmetric), d * (d - 1) / 2);
            assert_eq!(count(Group::Antisymmetric), d * (d - 1) / 2);
        }
    }

    #[test]
    fn generators_are_traceless_hermitian_and_orthonormal() {
        for d in 2..=8 {
            let gens = generators(d).unwrap();
            for (j, gj) in gens.iter().enumerate() {
                assert!(trace(gj).unwrap().norm() <= 1e-15);
                assert!(gj.hermiticity_defect() <= 1e-15);
                for (k, gk) in gens.iter().enumerate() {
                    let want = if j == k { 2.0 } else { 0.0 };
                    let got = trace_of_product(gj, gk).unwrap();
                    assert!((got - c(want, 0.0)).norm() <= 1e-13, "d={d} j={j} k={k}");
                }
            }
        }
    }
}

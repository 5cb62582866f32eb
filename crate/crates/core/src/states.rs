//! Test and benchmark states.
//!
//! Randomized constructors draw from `ChaCha8Rng` seeded with
//! `seed_from_u64`, so a seed reproduces the same matrix on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix, C_ONE, C_ZERO};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerParams {
    d: usize,
    w: f64,
}

impl WernerParams {
    /// `d >= 2`, `w` in `[-1, 1]`.
    pub fn new(d: usize, w: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Argument(format!("Werner dimension must be at least 2, got {d}")));
        }
        if !(-1.0..=1.0).contains(&w) {
            return Err(Error::Argument(format!("Werner parameter w={w} outside [-1, 1]")));
        }
        Ok(WernerParams { d, w })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn w(&self) -> f64 {
        self.w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomStateParams {
    d: usize,
    seed: u64,
}

impl RandomStateParams {
    pub fn new(d: usize, seed: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::Argument(format!("state dimension must be at least 2, got {d}")));
        }
        Ok(RandomStateParams { d, seed })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Swap `F = sum_jk |jk><kj|` on `C^d ⊗ C^d`.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(d * d, d * d);
    for j in 0..d {
        for k in 0..d {
            f[(j * d + k, k * d + j)] = C_ONE;
        }
    }
    f
}

/// `rho_w = (d - w)/(d(d^2-1)) I + (d w - 1)/(d(d^2-1)) F`, with `Tr(F rho_w) = w`.
pub fn werner_state(p: WernerParams) -> ComplexMatrix {
    let d = p.d as f64;
    let norm = d * (d * d - 1.0);
    let id_weight = (d - p.w) / norm;
    let swap_weight = (d * p.w - 1.0) / norm;
    let f = swap_operator(p.d);
    ComplexMatrix::from_fn(p.d * p.d, p.d * p.d, |r, c| {
        let id = if r == c { id_weight } else { 0.0 };
        Complex64::new(id + swap_weight * f[(r, c)].re, 0.0)
    })
}

/// `|Phi><Phi|` for `|Phi> = sum_j |jj> / sqrt(d)`.
pub fn bell_state(d: usize) -> ComplexMatrix {
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut psi = vec![C_ZERO; d * d];
    for j in 0..d {
        psi[j * d + j] = amp;
    }
    ComplexMatrix::projector(&psi)
}

fn gaussian_matrix<R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    })
}

fn random_density_with<R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(d, rng);
    // G G^dagger, Hermitian by construction
    let mut rho = ComplexMatrix::zeros(d, d);
    for r in 0..d {
        for c in r..d {
            let z: Complex64 = (0..d).map(|k| g[(r, k)] * g[(c, k)].conj()).sum();
            rho[(r, c)] = z;
            rho[(c, r)] = z.conj();
        }
    }
    let tr: f64 = (0..d).map(|i| rho[(i, i)].re).sum();
    rho.scale(Complex64::new(1.0 / tr, 0.0))
}

/// `G G^dagger / Tr(G G^dagger)` with `G` a `d x d` matrix of independent
/// standard complex Gaussians (Hilbert-Schmidt measure).
pub fn random_density(p: RandomStateParams) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    random_density_with(p.d, &mut rng)
}

/// Haar-random unitary: Gram-Schmidt on the columns of a complex Gaussian
/// matrix. Gram-Schmidt yields the QR factor with a positive real R
/// diagonal, which is the phase convention that makes Q Haar distributed.
fn random_unitary_with<R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(d, rng);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for c in 0..d {
        let mut v: Vec<Complex64> = (0..d).map(|r| g[(r, c)]).collect();
        // modified Gram-Schmidt, twice for orthogonality to rounding level
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(qi, vi)| qi.conj() * vi).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(d, d, |r, c| cols[c][r])
}

/// `sum_j p_j |a_j><a_j| ⊗ rho_j`, with `|a_j>` the columns of `basis`.
pub fn cq_state(basis: &ComplexMatrix, probs: &[f64], states_b: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let da = basis.rows();
    if !basis.is_square() || probs.len() != da || states_b.len() != da {
        return Err(Error::Shape(format!(
            "need a square basis with matching weights and states, got {}x{} basis, {} weights, {} states",
            basis.rows(),
            basis.cols(),
            probs.len(),
            states_b.len()
        )));
    }
    let db = states_b[0].rows();
    if states_b.iter().any(|s| s.rows() != db || !s.is_square()) {
        return Err(Error::Shape("side-b states must share one square shape".into()));
    }
    let mut rho = ComplexMatrix::zeros(da * db, da * db);
    for (j, (&pj, rho_j)) in probs.iter().zip(states_b).enumerate() {
        let ket: Vec<Complex64> = (0..da).map(|r| basis[(r, j)]).collect();
        let term = kron(&ComplexMatrix::projector(&ket), rho_j);
        rho = rho.add(&term.scale(Complex64::new(pj, 0.0)))?;
    }
    Ok(rho)
}

/// Random classical-quantum state: Haar-random basis on side a, uniform
/// draws normalized into a probability vector, and `da` independent
/// [`random_density`]-distributed states on side b.
pub fn random_cq_state(da: usize, db: usize, seed: u64) -> Result<ComplexMatrix> {
    if da < 2 || db < 2 {
        return Err(Error::Argument(format!("dimensions must be at least 2, got {da}x{db}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = random_unitary_with(da, &mut rng);
    let raw: Vec<f64> = (0..da).map(|_| rng.random::<f64>()).collect();
    let total: f64 = raw.iter().sum();
    let probs: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let states_b: Vec<ComplexMatrix> = (0..da).map(|_| random_density_with(db, &mut rng)).collect();
    cq_state(&basis, &probs, &states_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{bloch_opt, corrmat_opt};
    use crate::linalg::{check_density, ptrace_a, ptrace_b, trace, RealMatrix};
    use proptest::prelude::*;

    fn assert_valid(rho: &ComplexMatrix) {
        let chk = check_density(rho).unwrap();
        assert!(chk.hermiticity_defect <= 1e-13, "{chk:?}");
        assert!(chk.trace_defect <= 1e-13, "{chk:?}");
        assert!(chk.min_eigenvalue >= -1e-12, "{chk:?}");
    }

    #[test]
    fn qubit_swap_exchanges_middle_slots() {
        let f = swap_operator(2);
        let want = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(f[(r, c)].re, want[r][c] as f64);
                assert_eq!(f[(r, c)].im, 0.0);
            }
        }
    }

    #[test]
    fn swap_trace_and_involution() {
        for d in 2..=5 {
            let f = swap_operator(d);
            assert_eq!(trace(&f).unwrap(), Complex64::new(d as f64, 0.0));
            assert_eq!(f.matmul(&f).unwrap(), ComplexMatrix::identity(d * d));
            assert_eq!(f.transpose(), f);
        }
    }

    #[test]
    fn swap_conjugation_exchanges_kronecker_factors() {
        let a = random_density(RandomStateParams::new(3, 1).unwrap());
        let b = gaussian_matrix(3, &mut ChaCha8Rng::seed_from_u64(2));
        let f = swap_operator(3);
        let lhs = f.matmul(&kron(&a, &b)).unwrap().matmul(&f).unwrap();
        assert!(lhs.max_abs_diff(&kron(&b, &a)) < 1e-15);
    }

    #[test]
    fn werner_expectation_of_swap_is_w() {
        for d in 2..=5 {
            for w in [-1.0, -0.5, 0.0, 0.25, 1.0] {
                let rho = werner_state(WernerParams::new(d, w).unwrap());
                let fw = trace(&swap_operator(d).matmul(&rho).unwrap()).unwrap();
                assert!((fw.re - w).abs() < 1e-14 && fw.im == 0.0);
                assert_valid(&rho);
            }
        }
    }

    #[test]
    fn werner_marginals_are_maximally_mixed() {
        for d in 2..=4 {
            let rho = werner_state(WernerParams::new(d, 0.7).unwrap());
            let mixed = ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0));
            assert!(ptrace_b(&rho, d, d).unwrap().max_abs_diff(&mixed) < 1e-15);
            assert!(ptrace_a(&rho, d, d).unwrap().max_abs_diff(&mixed) < 1e-15);
        }
    }

    #[test]
    fn werner_at_w_half_qubits_has_no_ameliorated_discord() {
        let rho = werner_state(WernerParams::new(2, 0.5).unwrap());
        let r = crate::discord::discord_hsa(&rho, 2, 2, crate::Side::A).unwrap();
        assert!(r.hsa_value < 1e-15);
    }

    #[test]
    fn werner_params_validated() {
        assert!(WernerParams::new(1, 0.0).is_err());
        assert!(WernerParams::new(2, 1.0001).is_err());
        assert!(WernerParams::new(2, f64::NAN).is_err());
        assert!(RandomStateParams::new(1, 0).is_err());
        assert!(random_cq_state(1, 2, 0).is_err());
    }

    #[test]
    fn werner_is_linear_in_w() {
        for d in 2..=4 {
            let (w1, w2) = (-0.8, 0.6);
            let mid = werner_state(WernerParams::new(d, (w1 + w2) / 2.0).unwrap());
            let avg = werner_state(WernerParams::new(d, w1).unwrap())
                .add(&werner_state(WernerParams::new(d, w2).unwrap()))
                .unwrap()
                .scale(Complex64::new(0.5, 0.0));
            assert!(mid.max_abs_diff(&avg) <= 1e-15);
        }
    }

    #[test]
    fn qubit_bell_state_layout() {
        let rho = bell_state(2);
        for r in 0..4 {
            for c in 0..4 {
                let corner = (r == 0 || r == 3) && (c == 0 || c == 3);
                let want = if corner { 0.5 } else { 0.0 };
                assert!((rho[(r, c)].re - want).abs() < 1e-15 && rho[(r, c)].im == 0.0);
            }
        }
    }

    #[test]
    fn bell_states_are_pure_with_mixed_marginals() {
        for d in 2..=4 {
            let rho = bell_state(d);
            assert_valid(&rho);
            assert!((crate::discord::purity(&rho) - 1.0).abs() < 1e-14);
            let mixed = ComplexMatrix::identity(d).scale(Complex64::new(1.0 / d as f64, 0.0));
            assert!(ptrace_b(&rho, d, d).unwrap().max_abs_diff(&mixed) < 1e-15);
            assert!(ptrace_a(&rho, d, d).unwrap().max_abs_diff(&mixed) < 1e-15);
        }
    }

    #[test]
    fn random_density_is_valid_and_deterministic() {
        for d in 2..=9 {
            let p = RandomStateParams::new(d, 1234 + d as u64).unwrap();
            let rho = random_density(p);
            let chk = check_density(&rho).unwrap();
            assert!(chk.trace_defect <= 1e-14);
            assert!(chk.min_eigenvalue >= -1e-14);
            assert_eq!(rho.hermiticity_defect(), 0.0);
            assert_eq!(rho.as_slice(), random_density(p).as_slice());
        }
        let a = random_density(RandomStateParams::new(3, 1).unwrap());
        let b = random_density(RandomStateParams::new(3, 2).unwrap());
        assert_ne!(a, b);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 2..=6 {
            let u = random_unitary_with(d, &mut rng);
            let uu = u.adjoint().matmul(&u).unwrap();
            assert!(uu.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-14);
        }
    }

    #[test]
    fn random_cq_states_are_valid() {
        for (da, db) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            for seed in 0..4 {
                let rho = random_cq_state(da, db, seed).unwrap();
                assert_valid(&rho);
                assert!((trace(&rho).unwrap().re - 1.0).abs() <= 1e-13);
                assert_eq!(rho, random_cq_state(da, db, seed).unwrap());
            }
        }
    }

    #[test]
    fn computational_basis_cq_with_equal_states_is_product() {
        let rb = random_density(RandomStateParams::new(3, 9).unwrap());
        let probs = [0.2, 0.5, 0.3];
        let rho = cq_state(&ComplexMatrix::identity(3), &probs, &[rb.clone(), rb.clone(), rb.clone()]).unwrap();
        let ra = ComplexMatrix::from_real_diag(&probs);
        assert!(rho.max_abs_diff(&kron(&ra, &rb)) < 1e-15);
        let outer = RealMatrix::outer(bloch_opt(&ra).unwrap().comps(), bloch_opt(&rb).unwrap().comps());
        assert!(corrmat_opt(&rho, 3, 3).unwrap().entries().max_abs_diff(&outer) < 1e-13);
    }

    #[test]
    fn cq_state_shape_checks() {
        let rb = ComplexMatrix::identity(2);
        assert!(cq_state(&ComplexMatrix::identity(2), &[1.0], &[rb.clone(), rb.clone()]).is_err());
        assert!(cq_state(&ComplexMatrix::identity(2), &[0.5, 0.5], &[rb, ComplexMatrix::identity(3)]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn constructors_emit_density_matrices(seed in any::<u64>(), d in 2usize..6, w in -1.0..=1.0f64) {
            for rho in [
                random_density(RandomStateParams::new(d, seed).unwrap()),
                werner_state(WernerParams::new(d, w).unwrap()),
                random_cq_state(d, 2, seed).unwrap(),
            ] {
                let chk = check_density(&rho).unwrap();
                prop_assert!(chk.hermiticity_defect <= 1e-13);
                prop_assert!(chk.trace_defect <= 1e-13);
                prop_assert!(chk.min_eigenvalue >= -1e-12);
            }
        }
    }
}

//! Dense Hermitian linear algebra kernel.
//!
//! Everything downstream — thermal weights, characteristic curves, ensemble
//! averages — reduces to eigendecompositions of dense Hermitian matrices,
//! Kronecker products, and identity-padded embeddings of local operators into
//! a multipartite Hilbert space. Matrices are stored dense and row-major;
//! real-symmetric inputs (all imaginary parts exactly zero) are routed to the
//! real eigensolver path, which is noticeably faster.
//!
//! Eigendecompositions run single-threaded per matrix: parallelism in this
//! crate lives at the disorder-realization level, and a fixed sequential
//! kernel keeps results bit-reproducible regardless of worker count.

use num_complex::Complex64;
use std::sync::Once;

use crate::error::{Error, Result};

/// Per-entry absolute tolerance for the Hermiticity check in [`HermitianMatrix::new`].
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Default cap on the dimension of Kronecker/embedding products.
pub const DEFAULT_MAX_DIM: usize = 1 << 20;

fn init_faer() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

/// Dense Hermitian (or real-symmetric) matrix, row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates shape, finiteness, and Hermiticity within [`HERMITICITY_TOL`].
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("matrix dimension must be >= 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                context: "HermitianMatrix::new",
                expected: dim * dim,
                found: data.len(),
            });
        }
        for i in 0..dim {
            for j in i..dim {
                let upper = data[i * dim + j];
                let lower = data[j * dim + i];
                if !upper.re.is_finite() || !upper.im.is_finite() {
                    return Err(Error::NonFiniteEntry { i, j });
                }
                if !lower.re.is_finite() || !lower.im.is_finite() {
                    return Err(Error::NonFiniteEntry { i: j, j: i });
                }
                let delta = (upper - lower.conj()).norm();
                if delta > HERMITICITY_TOL {
                    return Err(Error::NotHermitian {
                        i,
                        j,
                        re: upper.re,
                        im: upper.im,
                        delta,
                        tol: HERMITICITY_TOL,
                    });
                }
            }
        }
        Ok(Self { dim, data })
    }

    /// Constructor for internal builders whose output is Hermitian by
    /// construction (Kronecker products, sums of Hermitian terms, mirrored
    /// samples). Checked in debug builds only.
    pub(crate) fn from_parts_unchecked(dim: usize, data: Vec<Complex64>) -> Self {
        debug_assert_eq!(data.len(), dim * dim);
        debug_assert!(
            {
                let mut ok = true;
                'outer: for i in 0..dim {
                    for j in i..dim {
                        if (data[i * dim + j] - data[j * dim + i].conj()).norm() > 1e-10 {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                ok
            },
            "internal builder produced a non-Hermitian matrix"
        );
        Self { dim, data }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self::new(dim, data)
    }

    pub fn from_real(dim: usize, real: &[f64]) -> Result<Self> {
        Self::new(dim, real.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut data = vec![Complex64::ZERO; dim * dim];
        for (i, &x) in diag.iter().enumerate() {
            data[i * dim + i] = Complex64::new(x, 0.0);
        }
        Self::from_parts_unchecked(dim, data)
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_parts_unchecked(dim, vec![Complex64::ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diag(&vec![1.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    /// True when every imaginary part is exactly zero; such matrices take the
    /// real-symmetric eigensolver path.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    /// Trace; real for Hermitian matrices.
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i].re).sum()
    }

    /// Max-norm: largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_parts_unchecked(self.dim, self.data.iter().map(|&z| z * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                context: "HermitianMatrix::add",
                expected: self.dim,
                found: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self::from_parts_unchecked(self.dim, data))
    }

    /// `self += c * other`; dimensions must already agree.
    pub(crate) fn add_assign_scaled(&mut self, other: &Self, c: f64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b * c;
        }
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
///
/// Eigenvectors are stored column-major: column `n` is the eigenvector of
/// `eigenvalues[n]`. Within a degenerate subspace the basis is arbitrary.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    dim: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Complex64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector for eigenvalue `n` as a contiguous slice.
    pub fn eigenvector(&self, n: usize) -> &[Complex64] {
        &self.eigenvectors[n * self.dim..(n + 1) * self.dim]
    }

    pub(crate) fn eigenvectors_flat(&self) -> &[Complex64] {
        &self.eigenvectors
    }

    /// `V diag(λ) V†`, Hermitized against roundoff.
    pub fn reconstruct(&self) -> HermitianMatrix {
        let d = self.dim;
        let mut scaled = vec![Complex64::ZERO; d * d];
        // column n of V times λ_n, column-major
        for n in 0..d {
            let col = self.eigenvector(n);
            for i in 0..d {
                scaled[n * d + i] = col[i] * self.eigenvalues[n];
            }
        }
        // R = (V Λ) V†, computed row-major through the transposed views
        let r = matmul_col_major(d, &scaled, &self.eigenvectors, false, true);
        let mut data = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                let v = r[j * d + i];
                let w = r[i * d + j].conj();
                data[i * d + j] = (v + w) * 0.5;
            }
        }
        HermitianMatrix::from_parts_unchecked(d, data)
    }

    /// Largest modulus of `V†V - I`.
    pub fn orthonormality_defect(&self) -> f64 {
        let d = self.dim;
        let g = matmul_col_major(d, &self.eigenvectors, &self.eigenvectors, true, false);
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[j * d + i] - target).norm());
            }
        }
        worst
    }
}

/// `op(A) * op(B)` for column-major `dim x dim` slices, returned column-major.
/// `adj_*` selects the conjugate transpose of the operand.
pub(crate) fn matmul_col_major(
    dim: usize,
    a: &[Complex64],
    b: &[Complex64],
    adj_a: bool,
    adj_b: bool,
) -> Vec<Complex64> {
    init_faer();
    let av = faer::MatRef::from_column_major_slice(a, dim, dim);
    let bv = faer::MatRef::from_column_major_slice(b, dim, dim);
    let prod = match (adj_a, adj_b) {
        (false, false) => av * bv,
        (true, false) => av.adjoint() * bv,
        (false, true) => av * bv.adjoint(),
        (true, true) => av.adjoint() * bv.adjoint(),
    };
    let mut out = vec![Complex64::ZERO; dim * dim];
    for j in 0..dim {
        for i in 0..dim {
            out[j * dim + i] = prod[(i, j)];
        }
    }
    out
}

/// Row-major product of two Hermitian matrices (not itself Hermitian).
pub(crate) fn matmul_hermitian(a: &HermitianMatrix, b: &HermitianMatrix) -> Vec<Complex64> {
    debug_assert_eq!(a.dim, b.dim);
    let d = a.dim;
    // Row-major slices read column-major are the transposes, and
    // (A B)ᵀ = Bᵀ Aᵀ, so multiplying the transposed views in swapped order
    // yields A·B in row-major layout directly.
    matmul_col_major(d, &b.data, &a.data, false, false)
}

/// `AB + BA`; Hermitian whenever `A` and `B` are.
pub fn anticommutator(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            context: "anticommutator",
            expected: a.dim,
            found: b.dim,
        });
    }
    let ab = matmul_hermitian(a, b);
    let ba = matmul_hermitian(b, a);
    let data = ab.iter().zip(&ba).map(|(&x, &y)| x + y).collect();
    Ok(HermitianMatrix::from_parts_unchecked(a.dim, data))
}

/// Largest entry modulus of the commutator `AB - BA`.
pub fn commutator_norm(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            context: "commutator_norm",
            expected: a.dim,
            found: b.dim,
        });
    }
    let ab = matmul_hermitian(a, b);
    let ba = matmul_hermitian(b, a);
    Ok(ab
        .iter()
        .zip(&ba)
        .map(|(&x, &y)| (x - y).norm())
        .fold(0.0, f64::max))
}

fn evd_error(dim: usize) -> Error {
    Error::EigenSolver { dim }
}

/// Full eigendecomposition, eigenvalues ascending.
pub fn eigh(a: &HermitianMatrix) -> Result<SpectralDecomposition> {
    init_faer();
    let d = a.dim;
    if a.is_real() {
        let mut m = faer::Mat::<f64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = a.get(i, j).re;
            }
        }
        let evd = m
            .self_adjoint_eigen(faer::Side::Lower)
            .map_err(|_| evd_error(d))?;
        let eigenvalues: Vec<f64> = (0..d).map(|i| evd.S().column_vector()[i]).collect();
        let mut eigenvectors = vec![Complex64::ZERO; d * d];
        let u = evd.U();
        for n in 0..d {
            for i in 0..d {
                eigenvectors[n * d + i] = Complex64::new(u[(i, n)], 0.0);
            }
        }
        Ok(SpectralDecomposition {
            dim: d,
            eigenvalues,
            eigenvectors,
        })
    } else {
        let mut m = faer::Mat::<faer::c64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = a.get(i, j);
            }
        }
        let evd = m
            .self_adjoint_eigen(faer::Side::Lower)
            .map_err(|_| evd_error(d))?;
        let eigenvalues: Vec<f64> = (0..d).map(|i| evd.S().column_vector()[i].re).collect();
        let mut eigenvectors = vec![Complex64::ZERO; d * d];
        let u = evd.U();
        for n in 0..d {
            for i in 0..d {
                eigenvectors[n * d + i] = u[(i, n)];
            }
        }
        Ok(SpectralDecomposition {
            dim: d,
            eigenvalues,
            eigenvectors,
        })
    }
}

/// Eigenvalues only (ascending); cheaper than [`eigh`] when no basis is needed.
pub fn eigh_values(a: &HermitianMatrix) -> Result<Vec<f64>> {
    init_faer();
    let d = a.dim;
    if a.is_real() {
        let mut m = faer::Mat::<f64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = a.get(i, j).re;
            }
        }
        m.self_adjoint_eigenvalues(faer::Side::Lower)
            .map_err(|_| evd_error(d))
    } else {
        let mut m = faer::Mat::<faer::c64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = a.get(i, j);
            }
        }
        m.self_adjoint_eigenvalues(faer::Side::Lower)
            .map_err(|_| evd_error(d))
    }
}

/// Kronecker product with the default dimension cap.
pub fn kron(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<HermitianMatrix> {
    kron_with_max(a, b, DEFAULT_MAX_DIM)
}

/// Kronecker product; errors when the product dimension exceeds `max_dim`.
pub fn kron_with_max(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    max_dim: usize,
) -> Result<HermitianMatrix> {
    let (da, db) = (a.dim, b.dim);
    let dim = da
        .checked_mul(db)
        .ok_or(Error::DimensionOverflow {
            dim: usize::MAX,
            max: max_dim,
        })?;
    if dim > max_dim {
        return Err(Error::DimensionOverflow { dim, max: max_dim });
    }
    let mut data = vec![Complex64::ZERO; dim * dim];
    for i in 0..da {
        for j in 0..da {
            let aij = a.data[i * da + j];
            if aij == Complex64::ZERO {
                continue;
            }
            for k in 0..db {
                let row = (i * db + k) * dim + j * db;
                for l in 0..db {
                    data[row + l] = aij * b.data[k * db + l];
                }
            }
        }
    }
    Ok(HermitianMatrix::from_parts_unchecked(dim, data))
}

/// `I ⊗ … ⊗ op ⊗ … ⊗ I` with `op` at position `slot` of the factor list `dims`.
pub fn embed_local(
    op: &HermitianMatrix,
    slot: usize,
    dims: &[usize],
) -> Result<HermitianMatrix> {
    if slot >= dims.len() {
        return Err(Error::SlotOutOfRange {
            slot,
            len: dims.len(),
        });
    }
    if dims[slot] != op.dim {
        return Err(Error::DimensionMismatch {
            context: "embed_local slot dimension",
            expected: dims[slot],
            found: op.dim,
        });
    }
    let mut factors: Vec<Option<&HermitianMatrix>> = vec![None; dims.len()];
    factors[slot] = Some(op);
    embed_product(&factors, dims, DEFAULT_MAX_DIM)
}

/// Identity-padded tensor product: each `Some(op)` occupies its slot, every
/// `None` contributes an identity of the slot dimension.
pub(crate) fn embed_product(
    factors: &[Option<&HermitianMatrix>],
    dims: &[usize],
    max_dim: usize,
) -> Result<HermitianMatrix> {
    debug_assert_eq!(factors.len(), dims.len());
    let mut total: usize = 1;
    for &d in dims {
        total = total
            .checked_mul(d)
            .ok_or(Error::DimensionOverflow {
                dim: usize::MAX,
                max: max_dim,
            })?;
    }
    if total > max_dim {
        return Err(Error::DimensionOverflow {
            dim: total,
            max: max_dim,
        })
    }
    let mut acc: Option<HermitianMatrix> = None;
    for (slot, factor) in factors.iter().enumerate() {
        let next = match factor {
            Some(op) => {
                if op.dim != dims[slot] {
                    return Err(Error::DimensionMismatch {
                        context: "embed_product slot dimension",
                        expected: dims[slot],
                        found: op.dim,
                    });
                }
                (*op).clone()
            }
            None => HermitianMatrix::identity(dims[slot]),
        };
        acc = Some(match acc {
            None => next,
            Some(prev) => kron_with_max(&prev, &next, max_dim)?,
        });
    }
    Ok(acc.expect("embed_product requires at least one factor"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn random_hermitian(dim: usize, seed: u64) -> HermitianMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut data = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let re: f64 = rng.sample(StandardNormal);
                if i == j {
                    data[i * dim + i] = Complex64::new(re, 0.0);
                } else {
                    let im: f64 = rng.sample(StandardNormal);
                    data[i * dim + j] = Complex64::new(re, im);
                    data[j * dim + i] = Complex64::new(re, -im);
                }
            }
        }
        HermitianMatrix::from_parts_unchecked(dim, data)
    }

    fn random_real_symmetric(dim: usize, seed: u64) -> HermitianMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut data = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v: f64 = rng.sample(StandardNormal);
                data[i * dim + j] = Complex64::new(v, 0.0);
                data[j * dim + i] = Complex64::new(v, 0.0);
            }
        }
        HermitianMatrix::from_parts_unchecked(dim, data)
    }

    #[test]
    fn eigh_diagonal_matrix_sorts_ascending() {
        let m = HermitianMatrix::from_diag(&[3.0, 1.0, 2.0]);
        let dec = eigh(&m).unwrap();
        assert_eq!(dec.eigenvalues(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn eigh_pauli_x_spectrum() {
        let m = HermitianMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let dec = eigh(&m).unwrap();
        assert!((dec.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((dec.eigenvalues()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let m = random_real_symmetric(64, 11);
        let vals = eigh_values(&m).unwrap();
        let sum: f64 = vals.iter().sum();
        assert!((sum - m.trace()).abs() <= 1e-9 * m.trace().abs().max(1.0));
    }

    #[test]
    fn decomposition_invariants_hold() {
        for seed in [1u64, 2, 3] {
            let m = random_hermitian(24, seed);
            let dec = eigh(&m).unwrap();
            assert!(dec
                .eigenvalues()
                .windows(2)
                .all(|w| w[0] <= w[1]));
            let recon = dec.reconstruct();
            let err = recon.max_abs_diff(&m);
            assert!(err <= 1e-9 * m.max_abs().max(1.0), "reconstruction {err:.3e}");
            assert!(dec.orthonormality_defect() <= 1e-10);
        }
    }

    #[test]
    fn eigh_of_reconstruction_is_idempotent() {
        let m = random_hermitian(16, 5);
        let first = eigh(&m).unwrap();
        let second = eigh(&first.reconstruct()).unwrap();
        for (a, b) in first.eigenvalues().iter().zip(second.eigenvalues()) {
            assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
        }
    }

    #[test]
    fn rejects_non_hermitian_with_entry_report() {
        let data = vec![
            Complex64::new(1.0, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.7, 0.0),
            Complex64::new(2.0, 0.0),
        ];
        match HermitianMatrix::new(2, data) {
            Err(Error::NotHermitian { i, j, .. }) => {
                assert_eq!((i, j), (0, 1));
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_finite_entries() {
        let data = vec![
            Complex64::new(f64::NAN, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
            Complex64::ZERO,
        ];
        assert!(matches!(
            HermitianMatrix::new(2, data),
            Err(Error::NonFiniteEntry { .. })
        ));
    }

    #[test]
    fn kron_diagonal_case() {
        let a = HermitianMatrix::from_diag(&[1.0, 2.0]);
        let b = HermitianMatrix::from_diag(&[3.0, 4.0]);
        let k = kron(&a, &b).unwrap();
        let expect = HermitianMatrix::from_diag(&[3.0, 4.0, 6.0, 8.0]);
        assert!(k.max_abs_diff(&expect) == 0.0);
    }

    #[test]
    fn kron_identity_doubles_multiplicity() {
        let a = random_hermitian(3, 7);
        let k = kron(&HermitianMatrix::identity(2), &a).unwrap();
        let va = eigh_values(&a).unwrap();
        let vk = eigh_values(&k).unwrap();
        let mut expect: Vec<f64> = va.iter().flat_map(|&x| [x, x]).collect();
        expect.sort_by(f64::total_cmp);
        for (x, y) in vk.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn kron_spectrum_is_pairwise_products() {
        let a = random_hermitian(4, 21);
        let b = random_hermitian(4, 22);
        let va = eigh_values(&a).unwrap();
        let vb = eigh_values(&b).unwrap();
        let mut expect: Vec<f64> = va
            .iter()
            .flat_map(|&x| vb.iter().map(move |&y| x * y))
            .collect();
        expect.sort_by(f64::total_cmp);
        let vk = eigh_values(&kron(&a, &b).unwrap()).unwrap();
        for (x, y) in vk.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn kron_respects_dimension_cap() {
        let a = random_hermitian(4, 1);
        let b = random_hermitian(4, 2);
        assert!(matches!(
            kron_with_max(&a, &b, 8),
            Err(Error::DimensionOverflow { dim: 16, max: 8 })
        ));
    }

    #[test]
    fn kron_associativity_within_tolerance() {
        let norm = |m: &HermitianMatrix| m.scaled(1.0 / m.max_abs());
        let a = norm(&random_hermitian(2, 31));
        let b = norm(&random_hermitian(3, 32));
        let c = norm(&random_hermitian(2, 33));
        let left = kron(&kron(&a, &b).unwrap(), &c).unwrap();
        let right = kron(&a, &kron(&b, &c).unwrap()).unwrap();
        assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn kron_trace_is_multiplicative() {
        let a = random_hermitian(3, 41);
        let b = random_hermitian(5, 42);
        let k = kron(&a, &b).unwrap();
        let expect = a.trace() * b.trace();
        assert!((k.trace() - expect).abs() <= 1e-10 * expect.abs().max(1.0));
    }

    #[test]
    fn embed_single_factor_is_identity_operation() {
        let a = random_hermitian(5, 51);
        let e = embed_local(&a, 0, &[5]).unwrap();
        assert!(e.max_abs_diff(&a) == 0.0);
    }

    #[test]
    fn embed_sigma_z_second_slot() {
        let sz = HermitianMatrix::from_diag(&[1.0, -1.0]);
        let e = embed_local(&sz, 1, &[2, 2]).unwrap();
        let expect = HermitianMatrix::from_diag(&[1.0, -1.0, 1.0, -1.0]);
        assert!(e.max_abs_diff(&expect) == 0.0);
    }

    #[test]
    fn embed_spectrum_has_product_multiplicity() {
        let a = random_hermitian(3, 61);
        let e = embed_local(&a, 1, &[2, 3, 2]).unwrap();
        let va = eigh_values(&a).unwrap();
        let mut expect: Vec<f64> = va.iter().flat_map(|&x| vec![x; 4]).collect();
        expect.sort_by(f64::total_cmp);
        let ve = eigh_values(&e).unwrap();
        for (x, y) in ve.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-11);
        }
    }

    #[test]
    fn embeddings_on_disjoint_slots_commute() {
        let a = random_hermitian(3, 71);
        let b = random_hermitian(4, 72);
        let ea = embed_local(&a, 0, &[3, 4]).unwrap();
        let eb = embed_local(&b, 1, &[3, 4]).unwrap();
        assert!(commutator_norm(&ea, &eb).unwrap() <= 1e-10);
    }

    #[test]
    fn embed_rejects_bad_slot_and_dimension() {
        let a = random_hermitian(3, 81);
        assert!(matches!(
            embed_local(&a, 2, &[3, 4]),
            Err(Error::SlotOutOfRange { slot: 2, len: 2 })
        ));
        assert!(matches!(
            embed_local(&a, 1, &[3, 4]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}

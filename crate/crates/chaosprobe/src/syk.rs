//! Coupled Sachdev-Ye-Kitaev model on a Jordan-Wigner chain.
//!
//! `2N` Majorana operators are split into a left side (chain indices
//! `0..N`) and a right side (`N..2N`), each carrying all-to-all random
//! quartic interactions, plus a random bilinear coupling between matching
//! left/right pairs:
//!
//! ```text
//! H = H_L + H_R + μ H_b,
//! H_α = Σ_{k<l<m<n} J^(α)_{klmn} χ_k^α χ_l^α χ_m^α χ_n^α,
//! H_b = i Σ_k K_k χ_k^L χ_k^R,
//! ```
//!
//! with `⟨J²⟩ = 3! J²/N³` and `⟨K²⟩ = K²/N²`, all couplings resampled
//! independently per realization. Operators satisfy `{χ_a, χ_b} = δ_ab`
//! (so `χ² = 1/2`), realized as `χ_{2m} ∝ Z^{⊗m} X_{m}`,
//! `χ_{2m+1} ∝ Z^{⊗m} Y_{m}` with a `1/√2` normalization; `2N` Majoranas
//! live on `N` qubits, Hilbert dimension `2^N`.
//!
//! The side-to-chain assignment is a convention: any other assignment is
//! unitarily equivalent and leaves every spectrum unchanged.

use itertools::Itertools;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::HermitianMatrix;
use crate::pauli::PauliString;

/// Hard cap on the chain length (24 Majoranas = 12 qubits = dimension 4096).
pub const DEFAULT_MAX_MAJORANAS: usize = 24;

/// Specification of one coupled-SYK realization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CsykSpec {
    /// Majorana fermions per side; the chain holds `2N`.
    pub n_per_side: usize,
    /// Quartic coupling scale `J`.
    pub j_coupling: f64,
    /// Bilinear coupling scale `K`.
    pub k_coupling: f64,
    /// Bilinear strength `μ ≥ 0`.
    pub mu: f64,
    pub seed: u64,
}

impl CsykSpec {
    pub fn new(n_per_side: usize, j_coupling: f64, k_coupling: f64, mu: f64, seed: u64) -> Result<Self> {
        if n_per_side < 4 {
            return Err(Error::InvalidSpec(
                "quartic terms need at least 4 Majoranas per side".into(),
            ));
        }
        if 2 * n_per_side > DEFAULT_MAX_MAJORANAS {
            return Err(Error::InvalidSpec(format!(
                "2N = {} exceeds the maximum chain length {}",
                2 * n_per_side,
                DEFAULT_MAX_MAJORANAS
            )));
        }
        if !(j_coupling > 0.0) || !(k_coupling > 0.0) {
            return Err(Error::InvalidSpec(
                "coupling scales J and K must be positive".into(),
            ));
        }
        if !(mu >= 0.0) || !mu.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "bilinear strength mu must be >= 0, got {mu}"
            )));
        }
        Ok(Self {
            n_per_side,
            j_coupling,
            k_coupling,
            mu,
            seed,
        })
    }

    /// Hilbert-space dimension `2^N`.
    pub fn dim(&self) -> usize {
        1 << self.n_per_side
    }
}

/// All four Hamiltonian pieces of one realization.
/// `h_total = h_left + h_right + mu * h_bilinear` holds entrywise by construction.
#[derive(Clone, Debug)]
pub struct CsykHamiltonians {
    pub h_left: HermitianMatrix,
    pub h_right: HermitianMatrix,
    pub h_bilinear: HermitianMatrix,
    pub h_total: HermitianMatrix,
}

/// One realization's random couplings, in deterministic draw order:
/// left quartic (lexicographic 4-tuples), right quartic, then bilinear.
#[derive(Clone, Debug)]
pub struct CsykCouplings {
    pub j_left: Vec<f64>,
    pub j_right: Vec<f64>,
    pub k_diag: Vec<f64>,
}

/// Jordan-Wigner Majorana strings for a chain of `total` operators.
pub(crate) fn majorana_strings(total: usize) -> Vec<PauliString> {
    let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    (0..total)
        .map(|a| {
            let qubit = a / 2;
            let mut s = if a % 2 == 0 {
                PauliString::pauli_x(qubit)
            } else {
                PauliString::pauli_y(qubit)
            };
            for q in 0..qubit {
                s = s.mul(&PauliString::pauli_z(q));
            }
            s.scaled(inv_sqrt2)
        })
        .collect()
}

/// Dense Majorana operators `χ_0 … χ_{2N-1}`, each of dimension `2^N`,
/// satisfying `{χ_a, χ_b} = δ_ab · I`.
pub fn majorana_ops(total: usize) -> Result<Vec<HermitianMatrix>> {
    majorana_ops_with_max(total, DEFAULT_MAX_MAJORANAS)
}

pub fn majorana_ops_with_max(total: usize, max_majoranas: usize) -> Result<Vec<HermitianMatrix>> {
    if total == 0 || total % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "Majorana chain length must be even and positive, got {total}"
        )));
    }
    if total > max_majoranas {
        return Err(Error::InvalidSpec(format!(
            "chain length {total} exceeds the maximum {max_majoranas}"
        )));
    }
    let n_qubits = total / 2;
    Ok(majorana_strings(total)
        .iter()
        .map(|s| s.materialize(n_qubits))
        .collect())
}

/// Draws every random coupling of one realization, deterministically in the seed.
pub fn sample_couplings(spec: &CsykSpec) -> CsykCouplings {
    let n = spec.n_per_side;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let quartic_std = (6.0 * spec.j_coupling * spec.j_coupling / (n as f64).powi(3)).sqrt();
    let bilinear_std = spec.k_coupling / n as f64;
    let n_quartic = (0..n).combinations(4).count();
    let mut draw = |std: f64, count: usize, out: &mut Vec<f64>| {
        for _ in 0..count {
            let g: f64 = rng.sample(StandardNormal);
            out.push(std * g);
        }
    };
    let mut j_left = Vec::with_capacity(n_quartic);
    let mut j_right = Vec::with_capacity(n_quartic);
    let mut k_diag = Vec::with_capacity(n);
    draw(quartic_std, n_quartic, &mut j_left);
    draw(quartic_std, n_quartic, &mut j_right);
    draw(bilinear_std, n, &mut k_diag);
    CsykCouplings {
        j_left,
        j_right,
        k_diag,
    }
}

fn quartic_side(
    strings: &[PauliString],
    side_offset: usize,
    n: usize,
    couplings: &[f64],
    n_qubits: usize,
) -> HermitianMatrix {
    let dim = 1usize << n_qubits;
    let mut data = vec![Complex64::ZERO; dim * dim];
    for (tuple, &j) in (0..n).combinations(4).zip(couplings) {
        let term = strings[side_offset + tuple[0]]
            .mul(&strings[side_offset + tuple[1]])
            .mul(&strings[side_offset + tuple[2]])
            .mul(&strings[side_offset + tuple[3]]);
        debug_assert!(term.is_hermitian());
        term.accumulate(n_qubits, Complex64::new(j, 0.0), &mut data);
    }
    HermitianMatrix::from_parts_unchecked(dim, data)
}

pub(crate) fn build_bilinear(
    strings: &[PauliString],
    n: usize,
    k_diag: &[f64],
    n_qubits: usize,
) -> HermitianMatrix {
    let dim = 1usize << n_qubits;
    let mut data = vec![Complex64::ZERO; dim * dim];
    for (k, &kk) in k_diag.iter().enumerate() {
        // i χ_k^L χ_k^R is Hermitian because the two factors anticommute.
        let term = strings[k].mul(&strings[n + k]).scaled(Complex64::I);
        debug_assert!(term.is_hermitian());
        term.accumulate(n_qubits, Complex64::new(kk, 0.0), &mut data);
    }
    HermitianMatrix::from_parts_unchecked(dim, data)
}

/// Builds all Hamiltonian pieces of one realization.
pub fn build_csyk(spec: &CsykSpec) -> Result<CsykHamiltonians> {
    let n = spec.n_per_side;
    let n_qubits = n; // 2N Majoranas on N qubits
    let strings = majorana_strings(2 * n);
    let couplings = sample_couplings(spec);
    let h_left = quartic_side(&strings, 0, n, &couplings.j_left, n_qubits);
    let h_right = quartic_side(&strings, n, n, &couplings.j_right, n_qubits);
    let h_bilinear = build_bilinear(&strings, n, &couplings.k_diag, n_qubits);
    let mut h_total = h_left.clone();
    h_total.add_assign_scaled(&h_right, 1.0);
    h_total.add_assign_scaled(&h_bilinear, spec.mu);
    Ok(CsykHamiltonians {
        h_left,
        h_right,
        h_bilinear,
        h_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{anticommutator, eigh_values};

    #[test]
    fn two_majoranas_are_scaled_pauli_x_and_y() {
        let ops = majorana_ops(2).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ops[0].get(0, 1).re - s).abs() < 1e-15);
        assert!((ops[0].get(1, 0).re - s).abs() < 1e-15);
        assert!((ops[1].get(0, 1).im + s).abs() < 1e-15);
        assert!((ops[1].get(1, 0).im - s).abs() < 1e-15);
        let sq = anticommutator(&ops[0], &ops[0]).unwrap();
        assert!(sq.max_abs_diff(&HermitianMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn anticommutators_vanish_on_eight_majoranas() {
        let ops = majorana_ops(8).unwrap();
        let id = HermitianMatrix::identity(16);
        for a in 0..8 {
            for b in a..8 {
                let ac = anticommutator(&ops[a], &ops[b]).unwrap();
                let err = if a == b {
                    ac.max_abs_diff(&id)
                } else {
                    ac.max_abs()
                };
                assert!(err <= 1e-14, "pair ({a},{b}): {err:.3e}");
            }
        }
    }

    #[test]
    fn majorana_square_is_half_identity() {
        let ops = majorana_ops(6).unwrap();
        let half = HermitianMatrix::identity(8).scaled(0.5);
        for op in &ops {
            // χ² = {χ, χ} / 2
            let sq = anticommutator(op, op).unwrap().scaled(0.5);
            assert!(sq.max_abs_diff(&half) < 1e-15);
        }
    }

    #[test]
    fn coupling_counts_match_combinatorics() {
        let spec = CsykSpec::new(10, 1.0, 1.0, 0.1, 7).unwrap();
        let c = sample_couplings(&spec);
        assert_eq!(c.j_left.len(), 210);
        assert_eq!(c.j_right.len(), 210);
        assert_eq!(c.k_diag.len(), 10);
    }

    #[test]
    fn build_is_deterministic_and_consistent() {
        let spec = CsykSpec::new(5, 1.0, 1.0, 0.3, 99).unwrap();
        let a = build_csyk(&spec).unwrap();
        let b = build_csyk(&spec).unwrap();
        assert_eq!(a.h_total.data(), b.h_total.data());
        // h_total equals the sum of its parts entrywise
        let mut sum = a.h_left.clone();
        sum.add_assign_scaled(&a.h_right, 1.0);
        sum.add_assign_scaled(&a.h_bilinear, spec.mu);
        assert!(sum.max_abs_diff(&a.h_total) == 0.0);
    }

    #[test]
    fn hamiltonian_pieces_are_traceless() {
        let spec = CsykSpec::new(6, 1.0, 1.0, 1.0, 4).unwrap();
        let h = build_csyk(&spec).unwrap();
        for m in [&h.h_left, &h.h_right, &h.h_bilinear] {
            assert!(m.trace().abs() <= 1e-10);
        }
    }

    #[test]
    fn bilinear_spectrum_is_all_sign_combinations() {
        // Three left/right pairs: spectrum of i Σ K_k χ_k^L χ_k^R is
        // Σ_k ± K_k / 2 over all sign choices.
        let strings = majorana_strings(6);
        let k = [0.9, 0.4, 0.17];
        let hb = build_bilinear(&strings, 3, &k, 3);
        let mut expect: Vec<f64> = (0..8)
            .map(|mask| {
                (0..3)
                    .map(|i| {
                        let sign = if mask >> i & 1 == 1 { 1.0 } else { -1.0 };
                        sign * k[i] / 2.0
                    })
                    .sum()
            })
            .collect();
        expect.sort_by(f64::total_cmp);
        let got = eigh_values(&hb).unwrap();
        for (a, b) in got.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn quartic_variance_smoke() {
        let n = 10usize;
        let mut sum_sq = 0.0;
        let draws = 20_000u64;
        let count_per = 210;
        for seed in 0..(draws / count_per as u64) {
            let spec = CsykSpec::new(n, 1.0, 1.0, 0.0, seed).unwrap();
            let c = sample_couplings(&spec);
            for j in &c.j_left {
                sum_sq += j * j;
            }
        }
        let samples = (draws / count_per as u64) * count_per as u64;
        let var = sum_sq / samples as f64;
        let expect = 6.0 / 1000.0;
        assert!((var / expect - 1.0).abs() < 0.1, "var {var}");
    }

    #[test]
    fn spec_validation() {
        assert!(CsykSpec::new(3, 1.0, 1.0, 0.0, 0).is_err());
        assert!(CsykSpec::new(13, 1.0, 1.0, 0.0, 0).is_err());
        assert!(CsykSpec::new(5, 0.0, 1.0, 0.0, 0).is_err());
        assert!(CsykSpec::new(5, 1.0, 1.0, -0.5, 0).is_err());
        assert!(majorana_ops(7).is_err());
        assert!(majorana_ops(26).is_err());
    }
}

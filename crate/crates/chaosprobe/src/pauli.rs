//! Pauli-string bookkeeping on a qubit register.
//!
//! A string is stored in symplectic form `coeff · X^x · Z^z` with one bit per
//! qubit in the masks `x` and `z` (`Y_q = i · X_q Z_q`, with the phase folded
//! into the coefficient). Products are O(1) bit operations, and a string
//! materializes into a dense matrix with exactly one nonzero per column:
//!
//! ```text
//! (X^x Z^z)|b⟩ = (-1)^{popcount(b & z)} |b ⊕ x⟩.
//! ```
//!
//! This is the fast path for assembling Majorana monomials; building the same
//! monomials by repeated dense multiplication would cost O(d³) each.

use num_complex::Complex64;

use crate::linalg::HermitianMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliString {
    pub coeff: Complex64,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity() -> Self {
        Self {
            coeff: Complex64::ONE,
            x: 0,
            z: 0,
        }
    }

    pub fn pauli_x(qubit: usize) -> Self {
        Self {
            coeff: Complex64::ONE,
            x: 1 << qubit,
            z: 0,
        }
    }

    pub fn pauli_y(qubit: usize) -> Self {
        Self {
            coeff: Complex64::I,
            x: 1 << qubit,
            z: 1 << qubit,
        }
    }

    pub fn pauli_z(qubit: usize) -> Self {
        Self {
            coeff: Complex64::ONE,
            x: 0,
            z: 1 << qubit,
        }
    }

    pub fn scaled(mut self, c: Complex64) -> Self {
        self.coeff *= c;
        self
    }

    /// Operator product. Phase rule: `Z^z X^x = (-1)^{|z ∧ x|} X^x Z^z`.
    pub fn mul(&self, other: &Self) -> Self {
        let sign = if (self.z & other.x).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        Self {
            coeff: self.coeff * other.coeff * sign,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        }
    }

    /// Strings with identical masks are equal or anti-equal operators; masks
    /// differing anywhere give trace-orthogonal operators.
    pub fn same_masks(&self, other: &Self) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// `P† = conj(c) (-1)^{|x ∧ z|} X^x Z^z`.
    pub fn is_hermitian(&self) -> bool {
        let sign = if (self.x & self.z).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        (self.coeff.conj() * sign - self.coeff).norm() < 1e-15
    }

    /// Adds `scale * self` into a dense row-major `2^n × 2^n` buffer.
    pub fn accumulate(&self, n_qubits: usize, scale: Complex64, data: &mut [Complex64]) {
        let dim = 1usize << n_qubits;
        debug_assert_eq!(data.len(), dim * dim);
        let c = self.coeff * scale;
        for col in 0..dim {
            let row = col ^ self.x as usize;
            let sign = if (col as u64 & self.z).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            data[row * dim + col] += c * sign;
        }
    }

    /// Dense materialization; the caller asserts Hermiticity.
    pub fn materialize(&self, n_qubits: usize) -> HermitianMatrix {
        let dim = 1usize << n_qubits;
        let mut data = vec![Complex64::ZERO; dim * dim];
        self.accumulate(n_qubits, Complex64::ONE, &mut data);
        HermitianMatrix::from_parts_unchecked(dim, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;

    fn dense(p: &PauliString, n: usize) -> HermitianMatrix {
        p.materialize(n)
    }

    #[test]
    fn single_qubit_matrices_match_references() {
        let x = dense(&PauliString::pauli_x(0), 1);
        let y = dense(&PauliString::pauli_y(0), 1);
        let z = dense(&PauliString::pauli_z(0), 1);
        assert_eq!(x.get(0, 1), Complex64::ONE);
        assert_eq!(x.get(1, 0), Complex64::ONE);
        assert_eq!(y.get(0, 1), -Complex64::I);
        assert_eq!(y.get(1, 0), Complex64::I);
        assert_eq!(z.get(0, 0), Complex64::ONE);
        assert_eq!(z.get(1, 1), -Complex64::ONE);
    }

    #[test]
    fn xz_anticommute_through_phase_rule() {
        let x = PauliString::pauli_x(0);
        let z = PauliString::pauli_z(0);
        let xz = x.mul(&z);
        let zx = z.mul(&x);
        assert!(xz.same_masks(&zx));
        assert_eq!(xz.coeff, -zx.coeff);
    }

    #[test]
    fn product_matches_dense_kron() {
        // Z_1 X_0 on two qubits (qubit 0 = least significant bit).
        let s = PauliString::pauli_z(1).mul(&PauliString::pauli_x(0));
        let m = dense(&s, 2);
        // qubit 1 is the high bit, so the dense tensor form is Z ⊗ X
        let z = HermitianMatrix::from_diag(&[1.0, -1.0]);
        let x = HermitianMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let expect = kron(&z, &x).unwrap();
        assert!(m.max_abs_diff(&expect) == 0.0);
    }

    #[test]
    fn hermiticity_detection() {
        assert!(PauliString::pauli_x(2).is_hermitian());
        assert!(PauliString::pauli_y(1).is_hermitian());
        let s = PauliString::pauli_x(0).scaled(Complex64::I);
        assert!(!s.is_hermitian());
    }
}

//! Ancilla-based interferometric measurement of `g(t)`.
//!
//! Protocol: prepare the ancilla in `|+⟩`, apply the controlled evolution
//! `U(t) = |1⟩⟨1| ⊗ e^{itX} + |0⟩⟨0| ⊗ 1` against the system in `ρ_th`, and
//! read out the ancilla. The reduced ancilla state after the interaction is
//!
//! ```text
//! ρ_anc = 1/2 [[1, ḡ(t)], [g(t), 1]],
//! ```
//!
//! so `⟨σ_x⟩ = Re g(t)` and `⟨σ_y⟩ = Im g(t)` (the σ_x readout is the same
//! expectation as σ_z after a Hadamard). [`ancilla_expectations`] simulates
//! this reduced state directly in the X eigenbasis — exact and `O(d)` given
//! precomputed weights — while [`ancilla_expectations_joint`] materializes
//! the full joint density matrix as a structural cross-check of the
//! controlled-gate construction, practical up to [`JOINT_MAX_DIM`].
//!
//! Finite-shot readout draws each Pauli estimate from its own Bernoulli
//! budget (`p = (1 + ⟨σ⟩)/2`), matching the simplest experimental protocol.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::charfn::{char_value, ObservableWeights};
use crate::error::{Error, Result};
use crate::linalg::{eigh, HermitianMatrix};

/// Largest dimension accepted by the joint-state debug path.
pub const JOINT_MAX_DIM: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShotEstimate {
    pub shots: u64,
    pub estimated_re: f64,
    pub estimated_im: f64,
}

/// Exact ancilla expectations at one time, with optional finite-shot estimates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AncillaReadout {
    pub t: f64,
    pub exact_re: f64,
    pub exact_im: f64,
    pub shots: Option<ShotEstimate>,
}

/// Exact readout from the reduced ancilla state.
pub fn ancilla_expectations(w: &ObservableWeights, t: f64) -> AncillaReadout {
    let g = char_value(w, t);
    // ρ_anc = (I + Re g σ_x + Im g σ_y)/2
    let rho01 = 0.5 * g.conj();
    let rho10 = 0.5 * g;
    let exact_re = (rho01 + rho10).re;
    let exact_im = (Complex64::I * (rho01 - rho10)).re;
    AncillaReadout {
        t,
        exact_re,
        exact_im,
        shots: None,
    }
}

/// Bernoulli sampling of both Pauli readouts, `n_shots` per basis,
/// deterministic in the seed. Draw order: σ_x budget first, then σ_y.
pub fn sample_shots(readout: &AncillaReadout, n_shots: u64, seed: u64) -> Result<AncillaReadout> {
    if n_shots == 0 {
        return Err(Error::InvalidSpec("shot count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut estimate = |exact: f64| -> Result<f64> {
        let p = ((1.0 + exact) / 2.0).clamp(0.0, 1.0);
        let dist = Binomial::new(n_shots, p)
            .map_err(|e| Error::InvalidSpec(format!("invalid Bernoulli parameter: {e}")))?;
        let plus = dist.sample(&mut rng);
        Ok(2.0 * plus as f64 / n_shots as f64 - 1.0)
    };
    let estimated_re = estimate(readout.exact_re)?;
    let estimated_im = estimate(readout.exact_im)?;
    Ok(AncillaReadout {
        shots: Some(ShotEstimate {
            shots: n_shots,
            estimated_re,
            estimated_im,
        }),
        ..*readout
    })
}

/// Full joint-state simulation of the protocol (ancilla ⊗ system), tracing
/// out the system at the end. Exponentially more expensive than the reduced
/// path; capped at [`JOINT_MAX_DIM`].
pub fn ancilla_expectations_joint(
    h: &HermitianMatrix,
    x: &HermitianMatrix,
    beta: f64,
    t: f64,
) -> Result<AncillaReadout> {
    let d = h.dim();
    if d > JOINT_MAX_DIM {
        return Err(Error::JointStateTooLarge {
            dim: d,
            max: JOINT_MAX_DIM,
        });
    }
    if x.dim() != d {
        return Err(Error::DimensionMismatch {
            context: "ancilla_expectations_joint",
            expected: d,
            found: x.dim(),
        });
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::NegativeBeta { beta });
    }

    // ρ_th dense from the H eigenbasis
    let hdec = eigh(h)?;
    let shift = hdec.eigenvalues()[0];
    let mut pops: Vec<f64> = hdec
        .eigenvalues()
        .iter()
        .map(|&e| (-beta * (e - shift)).exp())
        .collect();
    let z: f64 = pops.iter().sum();
    for p in &mut pops {
        *p /= z;
    }
    let mut rho = vec![Complex64::ZERO; d * d];
    for (n, &p) in pops.iter().enumerate() {
        let v = hdec.eigenvector(n);
        for i in 0..d {
            for j in 0..d {
                rho[i * d + j] += v[i] * p * v[j].conj();
            }
        }
    }

    // e^{itX} dense from the X eigenbasis
    let xdec = eigh(x)?;
    let mut u_t = vec![Complex64::ZERO; d * d];
    for n in 0..d {
        let phase = Complex64::new(0.0, t * xdec.eigenvalues()[n]).exp();
        let v = xdec.eigenvector(n);
        for i in 0..d {
            for j in 0..d {
                u_t[i * d + j] += v[i] * phase * v[j].conj();
            }
        }
    }

    // joint state (|+⟩⟨+| ⊗ ρ_th), blocks indexed by ancilla (a, b)
    // after U(t): block (a,b) is U_a ρ U_b† / 2 with U_0 = 1, U_1 = e^{itX}
    let mut blocks = [[vec![Complex64::ZERO; d * d], vec![Complex64::ZERO; d * d]],
        [vec![Complex64::ZERO; d * d], vec![Complex64::ZERO; d * d]]];
    let mul = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let aik = a[i * d + k];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += aik * b[k * d + j];
                }
            }
        }
        out
    };
    let adjoint = |a: &[Complex64]| -> Vec<Complex64> {
        let mut out = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = a[j * d + i].conj();
            }
        }
        out
    };
    let id: Vec<Complex64> = {
        let mut m = vec![Complex64::ZERO; d * d];
        for i in 0..d {
            m[i * d + i] = Complex64::ONE;
        }
        m
    };
    let u_ops = [&id, &u_t];
    for a in 0..2 {
        for b in 0..2 {
            let left = mul(u_ops[a], &rho);
            let full = mul(&left, &adjoint(u_ops[b]));
            for (dst, src) in blocks[a][b].iter_mut().zip(full) {
                *dst = src * 0.5;
            }
        }
    }

    // trace out the system: ρ_anc[a][b] = tr(block[a][b])
    let tr = |m: &[Complex64]| -> Complex64 { (0..d).map(|i| m[i * d + i]).sum() };
    let r00 = tr(&blocks[0][0]);
    let r01 = tr(&blocks[0][1]);
    let r10 = tr(&blocks[1][0]);
    let r11 = tr(&blocks[1][1]);
    debug_assert!((r00.re + r11.re - 1.0).abs() < 1e-10);
    let exact_re = (r01 + r10).re;
    let exact_im = (Complex64::I * (r01 - r10)).re;
    Ok(AncillaReadout {
        t,
        exact_re,
        exact_im,
        shots: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charfn::thermal_weights;
    use crate::goe::{sample_goe, GoeSpec};

    fn setup(dim: usize, seed: u64, beta: f64) -> (HermitianMatrix, HermitianMatrix, ObservableWeights) {
        let h = sample_goe(&GoeSpec::new(dim, 1.0, seed).unwrap());
        let x = sample_goe(&GoeSpec::new(dim, 1.0, seed + 500).unwrap());
        let w = thermal_weights(&h, &x, beta).unwrap();
        (h, x, w)
    }

    #[test]
    fn time_zero_reads_unity() {
        let (_, _, w) = setup(6, 1, 0.2);
        let r = ancilla_expectations(&w, 0.0);
        assert!((r.exact_re - 1.0).abs() < 1e-12);
        assert!(r.exact_im.abs() < 1e-12);
    }

    #[test]
    fn single_eigenvalue_gives_pure_phase() {
        let w = ObservableWeights::new(vec![0.9], vec![1.0]).unwrap();
        for t in [0.3, 2.0, 17.0] {
            let r = ancilla_expectations(&w, t);
            assert!((r.exact_re - (0.9 * t).cos()).abs() < 1e-13);
            assert!((r.exact_im - (0.9 * t).sin()).abs() < 1e-13);
        }
    }

    #[test]
    fn readout_equals_characteristic_function() {
        let (_, _, w) = setup(8, 2, 0.35);
        for t in [0.0, 0.7, 3.3, 12.0] {
            let g = char_value(&w, t);
            let r = ancilla_expectations(&w, t);
            assert!((r.exact_re - g.re).abs() <= 1e-12);
            assert!((r.exact_im - g.im).abs() <= 1e-12);
            assert!(r.exact_re.powi(2) + r.exact_im.powi(2) <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn joint_state_path_cross_checks_reduced_path() {
        let (h, x, w) = setup(8, 3, 0.5);
        for t in [0.2, 1.1, 4.0] {
            let fast = ancilla_expectations(&w, t);
            let joint = ancilla_expectations_joint(&h, &x, 0.5, t).unwrap();
            assert!(
                (fast.exact_re - joint.exact_re).abs() < 1e-11,
                "re at t={t}: {} vs {}",
                fast.exact_re,
                joint.exact_re
            );
            assert!(
                (fast.exact_im - joint.exact_im).abs() < 1e-11,
                "im at t={t}"
            );
        }
    }

    #[test]
    fn joint_state_respects_dimension_cap() {
        let h = sample_goe(&GoeSpec::new(65, 1.0, 1).unwrap());
        let x = sample_goe(&GoeSpec::new(65, 1.0, 2).unwrap());
        assert!(matches!(
            ancilla_expectations_joint(&h, &x, 0.1, 1.0),
            Err(Error::JointStateTooLarge { .. })
        ));
    }

    #[test]
    fn deterministic_exact_outcomes_survive_sampling() {
        let r = AncillaReadout {
            t: 1.0,
            exact_re: 1.0,
            exact_im: 0.0,
            shots: None,
        };
        for shots in [1u64, 100, 10_000] {
            let est = sample_shots(&r, shots, 42).unwrap().shots.unwrap();
            assert_eq!(est.estimated_re, 1.0);
        }
    }

    #[test]
    fn shot_sampling_is_seed_deterministic() {
        let (_, _, w) = setup(6, 4, 0.1);
        let r = ancilla_expectations(&w, 2.0);
        let a = sample_shots(&r, 1000, 7).unwrap();
        let b = sample_shots(&r, 1000, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_shots(&r, 1000, 8).unwrap();
        assert!(a != c || a.shots == c.shots);
    }

    #[test]
    fn zero_expectation_concentrates() {
        let r = AncillaReadout {
            t: 1.0,
            exact_re: 0.0,
            exact_im: 0.0,
            shots: None,
        };
        let mut bad = 0;
        for seed in 0..200 {
            let est = sample_shots(&r, 1_000_000, seed).unwrap().shots.unwrap();
            if est.estimated_re.abs() >= 5e-3 {
                bad += 1;
            }
        }
        assert!(bad <= 1, "binomial concentration violated ({bad}/200)");
    }
}

//! Numerical probes of quantum chaos in multipartite systems.
//!
//! The central object is the characteristic function of an energy observable
//! `X` in a thermal state,
//!
//! ```text
//! g(t) = tr(ρ_th e^{itX}),      G(t) = |g(t)|²,
//! ```
//!
//! whose time profile exposes spectral statistics: chaotic spectra produce the
//! dip-ramp-plateau structure familiar from the spectral form factor (the
//! special case `X = H`). Choosing `X` as a subsystem Hamiltonian or a bare
//! interaction term isolates the contribution of that piece to the global
//! behavior.
//!
//! The crate provides:
//!
//! - a dense Hermitian eigendecomposition kernel ([`linalg`]);
//! - seeded Gaussian-orthogonal-ensemble sampling ([`goe`]);
//! - multipartite Hamiltonians with k-body couplings ([`multipartite`]);
//! - the coupled Sachdev-Ye-Kitaev model on a Jordan-Wigner chain ([`syk`]);
//! - thermal weights, `g(t)`, `G(t)` and spectral histograms ([`charfn`]);
//! - closed-form GOE-averaged curves with a complex Bessel `I₁` ([`analytic`],
//!   [`bessel`]);
//! - an ancilla-interferometry readout simulation ([`interferometry`]);
//! - a seeded, parallel, checkpointable ensemble runner ([`ensemble`]);
//! - run-spec parsing, figure presets, diagnostics, CSV/JSON export and SVG
//!   plots ([`runspec`], [`diagnostics`], [`export`], [`plot`]).
//!
//! Quadrature and matrix-exponential oracles used by the validation suite live
//! in [`oracles`]; they are deliberately independent of the production paths
//! they check.

pub mod analytic;
pub mod bessel;
pub mod charfn;
pub mod diagnostics;
pub mod ensemble;
pub mod error;
pub mod export;
pub mod goe;
pub mod interferometry;
pub mod linalg;
pub mod multipartite;
pub mod oracles;
pub mod pauli;
pub mod plot;
pub mod runspec;
pub mod syk;

pub use error::{Error, Result};
pub use linalg::{eigh, eigh_values, embed_local, kron, HermitianMatrix, SpectralDecomposition};

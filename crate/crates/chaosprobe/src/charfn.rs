//! Thermal weights, the characteristic function `g(t)` and its modulus
//! squared `G(t)`, and the spectral distribution `P(x)`.
//!
//! For an observable `X` with spectrum `{x_n}` and a thermal state
//! `ρ_th = e^{-βH}/Z(β)`, the diagonal weights `w_n = ⟨x_n|ρ_th|x_n⟩` carry
//! the full counting statistics of `X`, and
//!
//! ```text
//! g(t) = tr(ρ_th e^{itX}) = Σ_n w_n e^{i t x_n},      G(t) = |g(t)|².
//! ```
//!
//! The weights are computed once per `(H, X, β)` and reused across the whole
//! time grid; the dominant cost is the two eigendecompositions, not the
//! Fourier sum. Energies are shifted by their minimum before exponentiation,
//! which cancels in the normalized weights and prevents overflow at large
//! `β‖H‖`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, eigh_values, matmul_col_major, HermitianMatrix, SpectralDecomposition};

/// Thermal state data in the energy eigenbasis.
#[derive(Clone, Debug)]
pub struct ThermalState {
    beta: f64,
    basis: SpectralDecomposition,
    /// Ground-state shift used for overflow-safe exponentials.
    shift: f64,
    /// Normalized populations `e^{-β(E_n - E_min)} / Σ_m e^{-β(E_m - E_min)}`.
    populations: Vec<f64>,
    shifted_sum: f64,
}

impl ThermalState {
    pub fn new(basis: SpectralDecomposition, beta: f64) -> Result<Self> {
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::NegativeBeta { beta });
        }
        let shift = basis.eigenvalues().first().copied().unwrap_or(0.0);
        let mut populations: Vec<f64> = basis
            .eigenvalues()
            .iter()
            .map(|&e| (-beta * (e - shift)).exp())
            .collect();
        let shifted_sum: f64 = populations.iter().sum();
        for p in &mut populations {
            *p /= shifted_sum;
        }
        Ok(Self {
            beta,
            basis,
            shift,
            populations,
            shifted_sum,
        })
    }

    pub fn from_hamiltonian(h: &HermitianMatrix, beta: f64) -> Result<Self> {
        Ok(Self::new(eigh(h)?, beta)?)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn basis(&self) -> &SpectralDecomposition {
        &self.basis
    }

    pub fn populations(&self) -> &[f64] {
        &self.populations
    }

    /// Unshifted partition value `Z(β) = Σ_n e^{-β E_n}`. May overflow for
    /// very large `β‖H‖`; the normalized populations never do.
    pub fn partition_value(&self) -> f64 {
        (-self.beta * self.shift).exp() * self.shifted_sum
    }
}

/// Spectrum of the observable (ascending) with its thermal weights.
#[derive(Clone, Debug)]
pub struct ObservableWeights {
    eigenvalues: Vec<f64>,
    weights: Vec<f64>,
}

impl ObservableWeights {
    /// Validates ordering, the clamped-positivity rule, and unit total mass.
    pub fn new(eigenvalues: Vec<f64>, mut weights: Vec<f64>) -> Result<Self> {
        if eigenvalues.len() != weights.len() {
            return Err(Error::DimensionMismatch {
                context: "ObservableWeights::new",
                expected: eigenvalues.len(),
                found: weights.len(),
            });
        }
        if !eigenvalues.windows(2).all(|w| w[0] <= w[1]) {
            return Err(Error::InvalidSpec(
                "observable eigenvalues must be ascending".into(),
            ));
        }
        for w in &mut weights {
            if *w < -1e-12 {
                return Err(Error::InvalidSpec(format!(
                    "weight {w} below the clamping threshold -1e-12"
                )));
            }
            if *w < 0.0 {
                *w = 0.0;
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidSpec(format!(
                "weights sum to {total}, expected 1 within 1e-10"
            )));
        }
        Ok(Self {
            eigenvalues,
            weights,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Shifts the spectrum by `c` (the `X → X + cI` map).
    pub fn shifted(&self, c: f64) -> Self {
        Self {
            eigenvalues: self.eigenvalues.iter().map(|x| x + c).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Scales the spectrum by `c > 0` (the `X → cX` map).
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            eigenvalues: self.eigenvalues.iter().map(|x| x * c).collect(),
            weights: self.weights.clone(),
        }
    }
}

/// Boltzmann weights on a spectrum that is its own observable (`X = H`).
pub fn weights_from_spectrum(eigenvalues: &[f64], beta: f64) -> Result<ObservableWeights> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::NegativeBeta { beta });
    }
    let shift = eigenvalues.first().copied().unwrap_or(0.0);
    let mut weights: Vec<f64> = eigenvalues
        .iter()
        .map(|&e| (-beta * (e - shift)).exp())
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    ObservableWeights::new(eigenvalues.to_vec(), weights)
}

/// Full-counting-statistics weights of `X` in the thermal state of `H`.
///
/// `β = 0` shortcut: the state is maximally mixed, so only the spectrum of
/// `X` is needed and the eigendecomposition of `H` is skipped entirely.
pub fn thermal_weights(
    h: &HermitianMatrix,
    x: &HermitianMatrix,
    beta: f64,
) -> Result<ObservableWeights> {
    if h.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            context: "thermal_weights",
            expected: h.dim(),
            found: x.dim(),
        });
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::NegativeBeta { beta });
    }
    let d = h.dim();
    if beta == 0.0 {
        let xs = eigh_values(x)?;
        let w = vec![1.0 / d as f64; d];
        return ObservableWeights::new(xs, w);
    }
    let state = ThermalState::from_hamiltonian(h, beta)?;
    let xdec = eigh(x)?;
    weights_in_basis(&state, &xdec)
}

/// Weights of an already-diagonalized observable in a thermal state:
/// `w_n = Σ_m |⟨x_n|E_m⟩|² p_m`.
pub fn weights_in_basis(
    state: &ThermalState,
    xdec: &SpectralDecomposition,
) -> Result<ObservableWeights> {
    let d = xdec.dim();
    if state.basis().dim() != d {
        return Err(Error::DimensionMismatch {
            context: "weights_in_basis",
            expected: state.basis().dim(),
            found: d,
        });
    }
    // S = V_X† V_H, column m = the m-th energy eigenvector in the X basis.
    let overlap = matmul_col_major(
        d,
        xdec.eigenvectors_flat(),
        state.basis().eigenvectors_flat(),
        true,
        false,
    );
    let p = state.populations();
    let mut weights = vec![0.0f64; d];
    for m in 0..d {
        let col = &overlap[m * d..(m + 1) * d];
        let pm = p[m];
        if pm == 0.0 {
            continue;
        }
        for (n, s) in col.iter().enumerate() {
            weights[n] += pm * s.norm_sqr();
        }
    }
    ObservableWeights::new(xdec.eigenvalues().to_vec(), weights)
}

/// Time grid with `g(t)` and `G(t) = |g(t)|²` for one realization and observable.
#[derive(Clone, Debug)]
pub struct CharacteristicCurve {
    pub times: Vec<f64>,
    pub g_values: Vec<Complex64>,
    pub g_mod_squared: Vec<f64>,
}

/// `g(t)` at a single (possibly negative) time.
pub fn char_value(w: &ObservableWeights, t: f64) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for (&x, &wn) in w.eigenvalues().iter().zip(w.weights()) {
        let (s, c) = (t * x).sin_cos();
        acc += Complex64::new(wn * c, wn * s);
    }
    acc
}

/// Evaluates the curve over a non-negative time grid; cost `O(|times| · d)`.
pub fn evaluate_curve(w: &ObservableWeights, times: &[f64]) -> Result<CharacteristicCurve> {
    if let Some(&bad) = times.iter().find(|&&t| !(t >= 0.0) || !t.is_finite()) {
        return Err(Error::InvalidSpec(format!(
            "curve times must be finite and non-negative, got {bad}"
        )));
    }
    let g_values: Vec<Complex64> = times.iter().map(|&t| char_value(w, t)).collect();
    let g_mod_squared = g_values.iter().map(|g| g.norm_sqr().min(1.0)).collect();
    Ok(CharacteristicCurve {
        times: times.to_vec(),
        g_values,
        g_mod_squared,
    })
}

/// Histogram of the eigenvalue distribution `P(x)`: probability mass per bin.
#[derive(Clone, Debug)]
pub struct SpectralHistogram {
    /// `bins + 1` ascending edges.
    pub edges: Vec<f64>,
    /// Probability mass per bin; sums to the weight captured by the range.
    pub mass: Vec<f64>,
}

impl SpectralHistogram {
    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }
}

/// Bins the weights over `range` (defaults to the full spectral span).
/// Eigenvalues at the upper edge land in the last bin.
pub fn spectral_distribution(
    w: &ObservableWeights,
    bins: usize,
    range: Option<(f64, f64)>,
) -> Result<SpectralHistogram> {
    if bins == 0 {
        return Err(Error::InvalidSpec("histogram needs at least one bin".into()));
    }
    if w.is_empty() {
        return Err(Error::InvalidSpec("empty spectrum".into()));
    }
    let (mut lo, mut hi) = match range {
        Some((lo, hi)) => {
            if !(lo < hi) {
                return Err(Error::InvalidSpec(format!(
                    "histogram range [{lo}, {hi}] is empty"
                )));
            }
            (lo, hi)
        }
        None => (w.eigenvalues()[0], *w.eigenvalues().last().unwrap()),
    };
    if lo == hi {
        // single-point spectrum: center a unit-width bin on it
        lo -= 0.5;
        hi += 0.5;
    }
    if !w.eigenvalues().iter().any(|&x| (lo..=hi).contains(&x)) {
        return Err(Error::EmptyHistogramRange { lo, hi });
    }
    let width = (hi - lo) / bins as f64;
    let mut mass = vec![0.0f64; bins];
    for (&x, &wn) in w.eigenvalues().iter().zip(w.weights()) {
        if x < lo || x > hi {
            continue;
        }
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        mass[idx] += wn;
    }
    let edges = (0..=bins).map(|k| lo + k as f64 * width).collect();
    Ok(SpectralHistogram { edges, mass })
}

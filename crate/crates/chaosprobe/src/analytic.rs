//! Closed-form GOE-averaged quantities.
//!
//! With the semicircle convention of radius `R = 2σ√d` and total mass `d`,
//! the ensemble-averaged partition function is
//!
//! ```text
//! ⟨Z(x)⟩ = √d · I₁(2σ√d x) / (σx),
//! ```
//!
//! and the averaged probe assembles (annealing approximation) as
//!
//! ```text
//! ⟨G(t)⟩ = [⟨Z(2β)⟩ · C(t) + |⟨Z(β+it)⟩|²] / ⟨Z(β)⟩²,
//! ```
//!
//! with the piecewise ramp coefficient breaking at `t = 2√d/σ`:
//!
//! ```text
//! C(t) = tσ/√d − (tσ/2√d) ln(1 + tσ/√d)                 t ≤ 2√d/σ
//! C(t) = 2 − (tσ/2√d) ln[(t + √d/σ)/(t − √d/σ)]          t > 2√d/σ
//! ```
//!
//! [`avg_g_alt`] assembles the same curve through the correction-term route
//! (subtracted constant fixed by `G(0) = 1`); the two forms are algebraically
//! equivalent and both are exposed as a guard against transcription slips in
//! the piecewise formulas.
//!
//! All assemblies run on exponentially scaled partition values, so any `β`
//! up to the argument cap works without overflow.
//!
//! Convention note: a GOE sample with density `exp(-tr H²/2σ_s²)` (this
//! crate's sampler) has semicircle radius `σ_s √(2d)`, which matches the
//! closed forms above at `σ = σ_s/√2`. [`GoeAnalyticParams::for_sample_sigma`]
//! applies that bridge; feeding the sampler σ directly into the closed forms
//! stretches every timescale by √2.

use num_complex::Complex64;

use crate::bessel;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GoeAnalyticParams {
    pub dim: usize,
    pub sigma: f64,
    pub beta: f64,
}

impl GoeAnalyticParams {
    pub fn new(dim: usize, sigma: f64, beta: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("dimension must be >= 1".into()));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "sigma must be positive and finite, got {sigma}"
            )));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::NegativeBeta { beta });
        }
        Ok(Self { dim, sigma, beta })
    }

    /// Parameters whose semicircle matches a GOE *sample* drawn with
    /// `sigma_sample` under the `exp(-tr H²/2σ²)` density: `σ = σ_sample/√2`.
    pub fn for_sample_sigma(dim: usize, sigma_sample: f64, beta: f64) -> Result<Self> {
        Self::new(dim, sigma_sample / std::f64::consts::SQRT_2, beta)
    }

    /// `σ√d`, half the semicircle radius.
    fn scale(&self) -> f64 {
        self.sigma * (self.dim as f64).sqrt()
    }

    /// Ramp saturation time `2√d/σ`.
    pub fn plateau_time(&self) -> f64 {
        2.0 * (self.dim as f64).sqrt() / self.sigma
    }
}

/// `⟨Z(x)⟩` for `Re x ≥ 0`; the `x → 0` limit is exactly `d`.
pub fn avg_partition(x: Complex64, p: &GoeAnalyticParams) -> Result<Complex64> {
    if x.re < 0.0 {
        return Err(Error::InvalidSpec(format!(
            "avg_partition requires Re x >= 0, got {}",
            x.re
        )));
    }
    if x == Complex64::ZERO {
        return Ok(Complex64::new(p.dim as f64, 0.0));
    }
    let z = x * (2.0 * p.scale());
    let i1 = bessel::i1(z)?;
    Ok(i1 * (p.dim as f64).sqrt() / (p.sigma * x))
}

/// `⟨Z(x)⟩` as `(mantissa, exponent)` with value `mantissa · e^exponent`,
/// `exponent = 2σ√d · Re x`. Never overflows within the argument cap.
pub fn avg_partition_scaled(x: Complex64, p: &GoeAnalyticParams) -> Result<(Complex64, f64)> {
    if x.re < 0.0 {
        return Err(Error::InvalidSpec(format!(
            "avg_partition requires Re x >= 0, got {}",
            x.re
        )));
    }
    if x == Complex64::ZERO {
        return Ok((Complex64::new(p.dim as f64, 0.0), 0.0));
    }
    let two_s = 2.0 * p.scale();
    let z = x * two_s;
    let i1s = bessel::i1_scaled(z)?;
    Ok((i1s * (p.dim as f64).sqrt() / (p.sigma * x), two_s * x.re))
}

/// Piecewise ramp coefficient; continuous at the breakpoint where both
/// branches give `2 - ln 3`.
pub fn c_goe(t: f64, p: &GoeAnalyticParams) -> f64 {
    assert!(t >= 0.0 && t.is_finite(), "c_goe requires t >= 0");
    let s = (p.dim as f64).sqrt() / p.sigma; // √d/σ
    let u = t / s;
    if u <= 2.0 {
        u - 0.5 * u * u.ln_1p()
    } else {
        // ln((t+s)/(t-s)) via ln1p for accuracy deep in the plateau
        2.0 - 0.5 * u * (2.0 * s / (t - s)).ln_1p()
    }
}

fn scaled_ingredients(t: f64, p: &GoeAnalyticParams) -> Result<(f64, f64, f64)> {
    let beta = p.beta;
    let (z2b, _) = avg_partition_scaled(Complex64::new(2.0 * beta, 0.0), p)?;
    let (zb, _) = avg_partition_scaled(Complex64::new(beta, 0.0), p)?;
    let (zbt, _) = avg_partition_scaled(Complex64::new(beta, t), p)?;
    // the e^{4σ√d β} envelopes of numerator and denominator cancel exactly
    Ok((z2b.re, zb.re, zbt.norm_sqr()))
}

/// Ensemble-averaged `⟨G(t)⟩`, main assembly.
pub fn avg_g(t: f64, p: &GoeAnalyticParams) -> Result<f64> {
    let (z2b, zb, zbt2) = scaled_ingredients(t, p)?;
    Ok((z2b * c_goe(t, p) + zbt2) / (zb * zb))
}

/// Same curve assembled through the correction term
/// `⟨|Z|²⟩ = ⟨Z(2β)⟩ + |⟨Z(β+it)⟩|² + ∗` with the constant fixed by `G(0)=1`.
pub fn avg_g_alt(t: f64, p: &GoeAnalyticParams) -> Result<f64> {
    let (z2b, zb, zbt2) = scaled_ingredients(t, p)?;
    let s = (p.dim as f64).sqrt() / p.sigma;
    let u = t / s;
    // ∗ / ⟨Z(2β)⟩, from the piecewise correction with α = (σ/√d)⟨Z(2β)⟩
    let star_ratio = if u <= 2.0 {
        -(1.0 - u + 0.5 * u * u.ln_1p())
    } else {
        1.0 - 0.5 * u * (2.0 * s / (t - s)).ln_1p()
    };
    Ok((z2b * (1.0 + star_ratio) + zbt2) / (zb * zb))
}

/// Long-time plateau `⟨Z(2β)⟩ / ⟨Z(β)⟩²`; equals `1/d` at infinite temperature.
pub fn plateau(p: &GoeAnalyticParams) -> Result<f64> {
    let (z2b, _) = avg_partition_scaled(Complex64::new(2.0 * p.beta, 0.0), p)?;
    let (zb, _) = avg_partition_scaled(Complex64::new(p.beta, 0.0), p)?;
    Ok(z2b.re / (zb.re * zb.re))
}

/// `⟨G⟩` over a whole grid.
pub fn avg_g_curve(times: &[f64], p: &GoeAnalyticParams) -> Result<Vec<f64>> {
    times.iter().map(|&t| avg_g(t, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::avg_partition_scaled_quad;

    fn params(dim: usize, sigma: f64, beta: f64) -> GoeAnalyticParams {
        GoeAnalyticParams::new(dim, sigma, beta).unwrap()
    }

    #[test]
    fn partition_limit_at_zero_is_dimension() {
        let p = params(64, 1.0, 0.0);
        assert_eq!(
            avg_partition(Complex64::ZERO, &p).unwrap().re,
            64.0
        );
        let near = avg_partition(Complex64::new(1e-13, 0.0), &p).unwrap();
        assert!((near.re / 64.0 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn partition_matches_semicircle_quadrature_real_axis() {
        let p = params(64, 1.0, 0.0);
        for beta in [0.05, 0.25, 1.0] {
            let x = Complex64::new(beta, 0.0);
            let (got, _) = avg_partition_scaled(x, &p).unwrap();
            let oracle = avg_partition_scaled_quad(x, 64, 1.0);
            assert!(
                (got - oracle).norm() / oracle.norm() < 1e-8,
                "beta = {beta}: {got} vs {oracle}"
            );
        }
    }

    #[test]
    fn partition_matches_oscillatory_quadrature() {
        let p = params(64, 1.0, 0.0);
        let x = Complex64::new(0.01, 10.0);
        let (got, _) = avg_partition_scaled(x, &p).unwrap();
        let oracle = avg_partition_scaled_quad(x, 64, 1.0);
        assert!(
            (got.norm() - oracle.norm()).abs() / oracle.norm() < 1e-7,
            "{} vs {}",
            got.norm(),
            oracle.norm()
        );
    }

    #[test]
    fn partition_is_real_positive_on_positive_axis() {
        let p = params(128, 0.8, 0.0);
        for x in [0.01, 0.3, 2.0, 11.0] {
            let v = avg_partition(Complex64::new(x, 0.0), &p).unwrap();
            assert!(v.re > 0.0);
            assert!(v.im.abs() < 1e-12 * v.re);
        }
    }

    #[test]
    fn ramp_coefficient_endpoints() {
        let p = params(1024, 1.0, 0.01);
        assert_eq!(c_goe(0.0, &p), 0.0);
        let breakpoint = p.plateau_time();
        let left = c_goe(breakpoint, &p);
        let right = c_goe(breakpoint * (1.0 + 1e-12), &p);
        let expect = 2.0 - 3.0f64.ln();
        assert!((left - expect).abs() < 1e-9, "left branch {left}");
        assert!((left - right).abs() < 1e-9, "continuity {left} vs {right}");
        // t → ∞ limit is 1
        let far = c_goe(1e6 * breakpoint / 2.0, &p);
        assert!((far - 1.0).abs() < 1e-4);
    }

    #[test]
    fn avg_g_is_one_at_time_zero() {
        for (d, sigma, beta) in [(64, 1.0, 0.0), (1024, 1.0, 0.01), (256, 0.5, 0.4)] {
            let p = params(d, sigma, beta);
            let g0 = avg_g(0.0, &p).unwrap();
            assert!((g0 - 1.0).abs() < 1e-10, "d={d} beta={beta}: {g0}");
        }
    }

    #[test]
    fn assemblies_agree_everywhere() {
        let p = params(1024, 1.0, 0.01);
        let bp = p.plateau_time();
        for t in [0.0, 0.01, 0.3, 1.0, bp * 0.5, bp, bp * (1.0 + 1e-9), bp * 3.0, 1e3] {
            let a = avg_g(t, &p).unwrap();
            let b = avg_g_alt(t, &p).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "t = {t}: {a} vs {b}");
        }
    }

    #[test]
    fn plateau_value_and_infinite_temperature_limit() {
        let p = params(512, 1.0, 0.0);
        let pl = plateau(&p).unwrap();
        assert!((pl - 1.0 / 512.0).abs() < 1e-15);
        let p = params(1024, 1.0, 0.01);
        let pl = plateau(&p).unwrap();
        // weakly perturbed from 1/d at small β (≈ +10% at 2σ√d·β = 0.64)
        assert!((pl * 1024.0 - 1.0).abs() < 0.15);
        let far = avg_g(4e4, &p).unwrap();
        assert!((far / pl - 1.0).abs() < 1e-3);
    }

    #[test]
    fn plateau_approach_from_below() {
        // Eq.-level fact: 1 - C(u) = 1/(3u²) + O(u⁻⁴), so the curve reaches
        // the plateau to 1% (relative) once tσ/√d ≳ 5.8.
        let p = params(1024, 1.0, 0.01);
        let pl = plateau(&p).unwrap();
        let s = (1024f64).sqrt();
        let near = avg_g(4.0 * s, &p).unwrap();
        let rel = (near / pl - 1.0).abs();
        assert!((rel - 1.0 / 48.0).abs() < 3e-3, "deficit at u=4: {rel}");
        let converged = avg_g(6.0 * s, &p).unwrap();
        assert!((converged / pl - 1.0).abs() < 0.01);
        // the deviation is tiny on the natural scale of G
        assert!((near - pl).abs() < 1e-4);
    }

    #[test]
    fn rejects_negative_real_part_and_bad_params() {
        let p = params(64, 1.0, 0.0);
        assert!(avg_partition(Complex64::new(-0.1, 0.0), &p).is_err());
        assert!(GoeAnalyticParams::new(0, 1.0, 0.0).is_err());
        assert!(GoeAnalyticParams::new(8, -1.0, 0.0).is_err());
        assert!(GoeAnalyticParams::new(8, 1.0, -0.2).is_err());
    }

    #[test]
    fn sample_convention_bridge_halves_variance() {
        let p = GoeAnalyticParams::for_sample_sigma(256, 1.0, 0.0).unwrap();
        assert!((p.sigma - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        // semicircle radius 2σ√d then equals σ_sample √(2d)
        let radius = 2.0 * p.sigma * 16.0;
        assert!((radius - crate::goe::support_radius(256, 1.0)).abs() < 1e-12);
    }
}

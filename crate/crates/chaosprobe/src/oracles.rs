//! Independent numerical oracles for the validation suite.
//!
//! Nothing here is a runtime dependency of the simulators or the closed-form
//! curves; these routines exist so tests can check production code against an
//! implementation that shares none of its machinery:
//!
//! - adaptive Gauss-Kronrod quadrature with oscillation-aware pre-splitting,
//! - semicircle-density integrals for the ensemble-averaged partition function,
//! - Bessel `I₁`/`J₁` values by direct integral representation,
//! - a scaling-and-squaring matrix exponential for thermal-weight checks.

use num_complex::Complex64;

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK dqk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

fn gk15(f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for k in 0..7 {
        let dx = half * XGK[k];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += fsum * WGK[k];
        if k % 2 == 1 {
            gauss += fsum * WG[k / 2];
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).norm();
    (value, err)
}

/// Adaptive panel-splitting quadrature of a complex-valued integrand.
///
/// `initial_panels` pre-splits the interval so oscillatory integrands start
/// from panels spanning about one period; refinement then bisects the worst
/// panel until the summed error estimate drops below `abs_tol`.
/// Returns the integral and the final error estimate.
pub fn adaptive_quadrature(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    abs_tol: f64,
    initial_panels: usize,
) -> (Complex64, f64) {
    const MAX_PANELS: usize = 400_000;
    let n0 = initial_panels.clamp(1, MAX_PANELS);
    let mut panels: Vec<(f64, f64, Complex64, f64)> = Vec::with_capacity(n0 * 2);
    let width = (b - a) / n0 as f64;
    for k in 0..n0 {
        let lo = a + k as f64 * width;
        let hi = if k + 1 == n0 { b } else { lo + width };
        let (v, e) = gk15(f, lo, hi);
        panels.push((lo, hi, v, e));
    }
    loop {
        let total_err: f64 = panels.iter().map(|p| p.3).sum();
        if total_err <= abs_tol || panels.len() >= MAX_PANELS {
            let total: Complex64 = panels.iter().map(|p| p.2).sum();
            return (total, total_err);
        }
        let (worst_idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .unwrap();
        let (lo, hi, _, _) = panels.swap_remove(worst_idx);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Semicircle spectral density of total mass `d` on `|E| ≤ 2σ√d`:
/// `ρ(E) = √(4σ²d - E²) / (2πσ²)`.
pub fn semicircle_density(e: f64, dim: usize, sigma: f64) -> f64 {
    let r2 = 4.0 * sigma * sigma * dim as f64;
    if e * e >= r2 {
        0.0
    } else {
        (r2 - e * e).sqrt() / (2.0 * std::f64::consts::PI * sigma * sigma)
    }
}

/// Scaled ensemble-averaged partition function by quadrature:
/// `e^{-2σ√d Re x} ∫ ρ(E) e^{-xE} dE` with the substitution `E = R cos θ`,
/// which removes the square-root endpoints:
/// `(2d/π) ∫_0^π sin²θ e^{-xR cos θ - R Re x} dθ`.
pub fn avg_partition_scaled_quad(x: Complex64, dim: usize, sigma: f64) -> Complex64 {
    let r = 2.0 * sigma * (dim as f64).sqrt();
    let oscillations = (x.im.abs() * r / std::f64::consts::PI).ceil() as usize;
    let f = move |theta: f64| -> Complex64 {
        let c = theta.cos();
        let s = theta.sin();
        let exponent = -x * (r * c) - Complex64::new(r * x.re, 0.0);
        exponent.exp() * (s * s)
    };
    let (integral, _err) = adaptive_quadrature(
        &f,
        0.0,
        std::f64::consts::PI,
        1e-14 * std::f64::consts::PI,
        oscillations + 8,
    );
    integral * (2.0 * dim as f64 / std::f64::consts::PI)
}

/// `I₁(z) e^{-Re z}` for `Re z ≥ 0` via the integral representation
/// `I₁(z) = (1/π) ∫_0^π e^{z cos θ} cos θ dθ`.
pub fn i1_scaled_quad(z: Complex64) -> Complex64 {
    let oscillations = (z.im.abs() / std::f64::consts::PI).ceil() as usize;
    let f = move |theta: f64| -> Complex64 {
        let c = theta.cos();
        (z * c - Complex64::new(z.re, 0.0)).exp() * c
    };
    let (integral, _err) = adaptive_quadrature(
        &f,
        0.0,
        std::f64::consts::PI,
        1e-14 * std::f64::consts::PI,
        oscillations + 8,
    );
    integral / std::f64::consts::PI
}

/// `J₁(y)` via `(1/π) ∫_0^π cos(θ - y sin θ) dθ`.
pub fn j1_quad(y: f64) -> f64 {
    let oscillations = (y.abs() / std::f64::consts::PI).ceil() as usize;
    let f = move |theta: f64| -> Complex64 {
        Complex64::new((theta - y * theta.sin()).cos(), 0.0)
    };
    let (integral, _err) = adaptive_quadrature(
        &f,
        0.0,
        std::f64::consts::PI,
        1e-14 * std::f64::consts::PI,
        oscillations + 8,
    );
    integral.re / std::f64::consts::PI
}

fn matmul_small(d: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
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
}

/// Dense matrix exponential by scaling-and-squaring with a Taylor kernel.
/// Intended for small validation problems, not production use.
pub fn expm(dim: usize, a: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.len(), dim * dim);
    let norm1 = (0..dim)
        .map(|j| (0..dim).map(|i| a[i * dim + j].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm1 > 0.25 {
        (norm1 / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings as i32);
    let scaled: Vec<Complex64> = a.iter().map(|&z| z * scale).collect();

    let mut result = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        result[i * dim + i] = Complex64::ONE;
    }
    let mut term = result.clone();
    for k in 1..=30 {
        term = matmul_small(dim, &term, &scaled);
        let inv_k = 1.0 / k as f64;
        for t in &mut term {
            *t *= inv_k;
        }
        for (r, &t) in result.iter_mut().zip(&term) {
            *r += t;
        }
    }
    for _ in 0..squarings {
        result = matmul_small(dim, &result, &result);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_integrates_polynomials_exactly() {
        let f = |x: f64| Complex64::new(x * x * x - 2.0 * x + 1.0, 0.0);
        let (v, e) = adaptive_quadrature(&f, -1.0, 2.0, 1e-13, 1);
        // ∫ x³-2x+1 dx over [-1,2] = [x⁴/4 - x² + x] = (4-4+2) - (1/4-1-1)
        let expect = 2.0 - (0.25 - 2.0);
        assert!((v.re - expect).abs() < 1e-12, "{} vs {expect}", v.re);
        assert!(e < 1e-13);
    }

    #[test]
    fn quadrature_handles_oscillatory_integrands() {
        // ∫_0^π cos(40 x) dx = sin(40π)/40
        let f = |x: f64| Complex64::new((40.0 * x).cos(), 0.0);
        let (v, _) = adaptive_quadrature(&f, 0.0, std::f64::consts::PI, 1e-13, 40);
        let expect = (40.0 * std::f64::consts::PI).sin() / 40.0;
        assert!((v.re - expect).abs() < 1e-12);
    }

    #[test]
    fn j1_matches_reference_values() {
        // high-precision references for J₁
        assert!((j1_quad(1.0) - 0.440_050_585_744_933_5).abs() < 1e-12);
        assert!((j1_quad(10.0) - 0.043_472_746_168_861_44).abs() < 1e-12);
    }

    #[test]
    fn i1_on_real_axis_matches_series_values() {
        // I₁(1) and I₁(5), scaled by e^{-x}
        let v1 = i1_scaled_quad(Complex64::new(1.0, 0.0));
        assert!((v1.re - 0.565_159_103_992_485 * (-1.0f64).exp()).abs() < 1e-12);
        let v5 = i1_scaled_quad(Complex64::new(5.0, 0.0));
        assert!((v5.re - 24.335_642_142_450_53 * (-5.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn i1_imaginary_axis_equals_j1() {
        for y in [1.0, 10.0, 100.0] {
            let i1 = i1_scaled_quad(Complex64::new(0.0, y));
            let j1 = j1_quad(y);
            // I₁(iy) = i J₁(y)
            assert!((i1.im - j1).abs() < 1e-12, "y = {y}");
            assert!(i1.re.abs() < 1e-12);
        }
    }

    #[test]
    fn expm_matches_scalar_and_rotation() {
        let e = expm(1, &[Complex64::new(0.7, 0.0)]);
        assert!((e[0].re - 0.7f64.exp()).abs() < 1e-13);
        // exp(i t σ_x) = cos t + i sin t σ_x
        let t = 0.6;
        let a = vec![
            Complex64::ZERO,
            Complex64::new(0.0, t),
            Complex64::new(0.0, t),
            Complex64::ZERO,
        ];
        let e = expm(2, &a);
        assert!((e[0].re - t.cos()).abs() < 1e-13);
        assert!((e[1].im - t.sin()).abs() < 1e-13);
    }
}

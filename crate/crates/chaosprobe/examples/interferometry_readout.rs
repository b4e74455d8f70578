//! Ancilla interferometry: the exact readout reproduces g(t), and the
//! finite-shot estimate converges at the statistical rate.
//!
//! Run with: `cargo run --release --example interferometry_readout`

use chaosprobe::charfn::{char_value, thermal_weights};
use chaosprobe::goe::{sample_goe, GoeSpec};
use chaosprobe::interferometry::{ancilla_expectations, ancilla_expectations_joint, sample_shots};

fn main() -> chaosprobe::Result<()> {
    let h = sample_goe(&GoeSpec::new(32, 1.0, 5)?);
    let x = sample_goe(&GoeSpec::new(32, 1.0, 6)?);
    let beta = 0.2;
    let w = thermal_weights(&h, &x, beta)?;

    println!("exact readout vs characteristic function:");
    let mut worst = 0.0f64;
    for k in 0..=20 {
        let t = 0.4 * k as f64;
        let g = char_value(&w, t);
        let r = ancilla_expectations(&w, t);
        worst = worst
            .max((r.exact_re - g.re).abs())
            .max((r.exact_im - g.im).abs());
    }
    println!("  max |readout - g(t)| over the grid: {worst:.2e}");

    let joint = ancilla_expectations_joint(&h, &x, beta, 1.3)?;
    let fast = ancilla_expectations(&w, 1.3);
    println!(
        "  joint-state cross-check at t = 1.3: ({:+.12}, {:+.12}) vs ({:+.12}, {:+.12})",
        joint.exact_re, joint.exact_im, fast.exact_re, fast.exact_im
    );

    println!("\nshot-noise convergence at t = 1.3 (RMSE over 200 seeds):");
    println!("{:>10} {:>12} {:>14}", "shots", "rmse", "rmse * sqrt(n)");
    for shots in [100u64, 10_000, 1_000_000] {
        let mut sq = 0.0;
        let seeds = 200;
        for seed in 0..seeds {
            let est = sample_shots(&fast, shots, seed)?.shots.unwrap();
            sq += (est.estimated_re - fast.exact_re).powi(2)
                + (est.estimated_im - fast.exact_im).powi(2);
        }
        let rmse = (sq / (2.0 * seeds as f64)).sqrt();
        println!(
            "{shots:>10} {rmse:>12.3e} {:>14.3}",
            rmse * (shots as f64).sqrt()
        );
    }
    Ok(())
}

//! Checkpointed ensemble runs: interrupt, resume, and land on the same
//! statistics as an uninterrupted run.
//!
//! Run with: `cargo run --release --example checkpoint_resume`

use chaosprobe::ensemble::{
    checkpoint, merge, resume, resume_run, run_ensemble, run_ensemble_range,
};
use chaosprobe::runspec::{ModelSpec, ObservableSpec, RunSpec, TimeGrid};

fn main() -> chaosprobe::Result<()> {
    let spec = RunSpec {
        model: ModelSpec::GoeMultipartite {
            dims: vec![64],
            sigma: 1.0,
            couplings: vec![],
            orders: Some(vec![]),
            shared_terms: false,
            local_terms: true,
        },
        beta: 0.05,
        observable: ObservableSpec::Total,
        grid: TimeGrid::new(1e-2, 1e3, 200),
        realizations: 120,
        master_seed: 2718,
    };

    let full = run_ensemble(&spec, 0)?;

    // "interrupt" after 50 realizations, persist, reload, complete
    let dir = std::env::temp_dir().join("chaosprobe-checkpoint-demo");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("demo.ckpt");
    let partial = run_ensemble_range(&spec, 0, 0..50)?;
    checkpoint(&partial, &path)?;
    println!(
        "checkpointed {} of {} realizations to {}",
        partial.count,
        spec.realizations,
        path.display()
    );
    let reloaded = resume(&path)?;
    let completed = resume_run(&spec, 0, reloaded)?;

    let max_diff = completed
        .mean_g
        .iter()
        .zip(&full.mean_g)
        .map(|(a, b)| (a - b).abs() / a.abs().max(1e-300))
        .fold(0.0f64, f64::max);
    println!("resumed vs uninterrupted: max relative difference {max_diff:.2e}");

    // split/merge workflow gives the same answer
    let left = run_ensemble_range(&spec, 0, 0..60)?;
    let right = run_ensemble_range(&spec, 0, 60..120)?;
    let merged = merge(&left, &right)?;
    let max_diff = merged
        .mean_g
        .iter()
        .zip(&full.mean_g)
        .map(|(a, b)| (a - b).abs() / a.abs().max(1e-300))
        .fold(0.0f64, f64::max);
    println!("merged halves vs single run:  max relative difference {max_diff:.2e}");

    std::fs::remove_file(&path).ok();
    Ok(())
}

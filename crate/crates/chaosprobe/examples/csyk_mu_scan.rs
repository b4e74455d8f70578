// Scratch study: coupled-SYK dip ratio vs bilinear strength, to position the
// preset sweep inside the monotone washout regime.

use chaosprobe::diagnostics::{diagnose, DiagnosticsConfig};
use chaosprobe::ensemble::run_ensemble;
use chaosprobe::runspec::{ModelSpec, ObservableSpec, RunSpec, TimeGrid};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let realizations: u64 = args[1].parse().unwrap();
    let mu_list: Vec<f64> = args[2..].iter().map(|s| s.parse().unwrap()).collect();
    for mu in mu_list {
        let spec = RunSpec {
            model: ModelSpec::Csyk {
                n_per_side: 10,
                j: 1.0,
                k: 1.0,
                mu,
            },
            beta: 0.0,
            observable: ObservableSpec::Total,
            grid: TimeGrid::new(1e-2, 1e5, 400),
            realizations,
            master_seed: 410,
        };
        let t0 = std::time::Instant::now();
        let stats = run_ensemble(&spec, 2).unwrap();
        let d = diagnose(&stats, &DiagnosticsConfig::default()).unwrap();
        println!(
            "mu={mu}: ratio={:.3} span={:.3} dip_t={:.3} plateau={:.3e} [{:?}]",
            d.dip_depth_ratio, d.ramp_span_decades, d.dip_time, d.plateau_estimate,
            t0.elapsed()
        );
    }
}

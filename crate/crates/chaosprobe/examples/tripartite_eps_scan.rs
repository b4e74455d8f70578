// Scratch study: tripartite dip ratio as a function of the shared coupling,
// to place the preset sweep where suppression is monotone and well separated.

use chaosprobe::diagnostics::{diagnose, DiagnosticsConfig};
use chaosprobe::ensemble::run_ensemble;
use chaosprobe::runspec::{ModelSpec, ObservableSpec, RunSpec, TimeGrid};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let realizations: u64 = args[1].parse().unwrap();
    let eps_list: Vec<f64> = args[2..].iter().map(|s| s.parse().unwrap()).collect();
    for eps in eps_list {
        let spec = RunSpec {
            model: ModelSpec::GoeMultipartite {
                dims: vec![5, 5, 5],
                sigma: 1.0,
                couplings: vec![eps, eps],
                orders: Some(vec![2, 3]),
                shared_terms: true,
                local_terms: true,
            },
            beta: 0.01,
            observable: ObservableSpec::Total,
            grid: TimeGrid::new(1e-2, 1e3, 400),
            realizations,
            master_seed: 310,
        };
        let stats = run_ensemble(&spec, 2).unwrap();
        let d = diagnose(&stats, &DiagnosticsConfig::default()).unwrap();
        println!(
            "eps={eps}: ratio={:.3} span={:.3} plateau={:.3e} dip_t={:.3}",
            d.dip_depth_ratio, d.ramp_span_decades, d.plateau_estimate, d.dip_time
        );
    }
}

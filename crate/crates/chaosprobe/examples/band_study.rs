use chaosprobe::analytic::{avg_g_curve, GoeAnalyticParams};
use chaosprobe::diagnostics::{diagnose, DiagnosticsConfig};
use chaosprobe::ensemble::run_ensemble;
use chaosprobe::runspec::{ModelSpec, ObservableSpec, RunSpec, TimeGrid};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let dim: usize = args[1].parse().unwrap();
    let reals: u64 = args[2].parse().unwrap();
    let seeds: Vec<u64> = args[3..].iter().map(|s| s.parse().unwrap()).collect();
    for seed in seeds {
        let spec = RunSpec {
            model: ModelSpec::GoeMultipartite {
                dims: vec![dim],
                sigma: 1.0,
                couplings: vec![],
                orders: Some(vec![]),
                shared_terms: false,
                local_terms: true,
            },
            beta: 0.01,
            observable: ObservableSpec::Total,
            grid: TimeGrid::new(1e-2, 1e3, 400),
            realizations: reals,
            master_seed: seed,
        };
        let p = GoeAnalyticParams::for_sample_sigma(dim, 1.0, 0.01).unwrap();
        let stats = run_ensemble(&spec, 2).unwrap();
        let analytic = avg_g_curve(&stats.times, &p).unwrap();
        let d = diagnose(&stats, &DiagnosticsConfig::default()).unwrap();
        let mut max_dex = 0.0f64;
        let mut max_t = 0.0;
        let mut ratio_window = Vec::new();
        for i in 0..stats.times.len() {
            let t = stats.times[i];
            if t >= d.dip_time && stats.mean_g[i] > 0.0 {
                let dex = (stats.mean_g[i].log10() - analytic[i].log10()).abs();
                if dex > max_dex { max_dex = dex; max_t = t; }
            }
            // mid-ramp window for the systematic ratio
            let u = t * p.sigma / (dim as f64).sqrt();
            if (0.05..0.3).contains(&u) {
                ratio_window.push(stats.mean_g[i] / analytic[i]);
            }
        }
        let mean_ratio: f64 = ratio_window.iter().sum::<f64>() / ratio_window.len() as f64;
        println!(
            "d={dim} R={reals} seed={seed}: max_dex={max_dex:.4} at t={max_t:.3}, dip_time={:.3}, mid-ramp MC/analytic={mean_ratio:.4}",
            d.dip_time
        );
    }
}

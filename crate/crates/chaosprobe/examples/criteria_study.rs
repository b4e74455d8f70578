// Scratch study: dip/ramp diagnostics across the preset sweeps at reduced
// realization counts, to sanity-check the property-based expectations before
// running the full acceptance suite.

use chaosprobe::diagnostics::{diagnose, DiagnosticsConfig};
use chaosprobe::ensemble::run_ensemble;
use chaosprobe::runspec::{find_preset, ModelSpec};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let preset_name = &args[1];
    let realizations: u64 = args[2].parse().unwrap();
    let preset = find_preset(preset_name).unwrap();
    for run in &preset.runs {
        let mut spec = run.spec.clone();
        spec.realizations = realizations;
        let t0 = std::time::Instant::now();
        let stats = run_ensemble(&spec, 2).unwrap();
        let d = diagnose(&stats, &DiagnosticsConfig::default()).unwrap();
        let model = match &spec.model {
            ModelSpec::GoeMultipartite { dims, .. } => format!("goe{dims:?}"),
            ModelSpec::Csyk { mu, .. } => format!("csyk mu={mu}"),
        };
        println!(
            "{}/{}: {model} obs={:?} -> plateau={:.3e} dip_t={:.3} ratio={:.3} span={:.3} [{:?}]",
            preset.name,
            run.label,
            spec.observable,
            d.plateau_estimate,
            d.dip_time,
            d.dip_depth_ratio,
            d.ramp_span_decades,
            t0.elapsed()
        );
    }
}

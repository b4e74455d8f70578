//! Command-line front end: run ensemble jobs, evaluate closed-form curves,
//! compare the two, diagnose exported curves, and plot.
//!
//! Exit codes: 0 success, 1 validation error, 2 runtime failure,
//! 3 tolerance breach in `compare --check`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use chaosprobe::analytic::{avg_g_curve, plateau, GoeAnalyticParams};
use chaosprobe::diagnostics::{diagnose, diagnose_curve, DiagnosticsConfig};
use chaosprobe::ensemble::{self, EnsembleStats};
use chaosprobe::error::Error;
use chaosprobe::export;
use chaosprobe::plot::{write_svg, PlotSeries};
use chaosprobe::runspec::{self, ModelSpec, ObservableSpec, RunSpec};

#[derive(Parser)]
#[command(
    name = "chaosprobe",
    version,
    about = "Spectral-chaos probes via characteristic functions of energy observables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute a run spec (TOML file) or a named preset.
    Run {
        /// Path to a TOML run spec.
        #[arg(long, conflicts_with = "preset")]
        spec: Option<PathBuf>,
        /// Name of a bundled preset (see `presets`).
        #[arg(long)]
        preset: Option<String>,
        /// Output directory for exported curves.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        parallelism: Option<usize>,
        /// Export format: csv, json, or both.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Checkpoint file; with --resume, continues a previous run.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Resume from the checkpoint file if it exists.
        #[arg(long)]
        resume: bool,
        /// Also write an SVG overlay of all curves in the job.
        #[arg(long)]
        plot: bool,
    },
    /// Evaluate the closed-form ensemble-averaged curve.
    Analytic {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 1e-2)]
        t_min: f64,
        #[arg(long, default_value_t = 1e4)]
        t_max: f64,
        #[arg(long, default_value_t = 400)]
        points: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a single-GOE job and overlay the closed-form curve.
    Compare {
        #[arg(long, conflicts_with = "preset")]
        spec: Option<PathBuf>,
        /// Preset name (must be a single-GOE total-energy job, e.g. fig1-reduced).
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long)]
        parallelism: Option<usize>,
        /// Enforce the agreement band; exit 3 on breach.
        #[arg(long)]
        check: bool,
        /// Max |log10 MC - log10 analytic| past the dip.
        #[arg(long, default_value_t = 0.15)]
        tolerance_dex: f64,
        /// Relative plateau tolerance.
        #[arg(long, default_value_t = 0.2)]
        plateau_tol: f64,
    },
    /// Dip/ramp/plateau diagnostics of an exported CSV curve.
    Diagnose {
        input: PathBuf,
        /// Print machine-readable JSON.
        #[arg(long)]
        json: bool,
    },
    /// Overlay one or more exported CSV curves into an SVG.
    Plot {
        inputs: Vec<PathBuf>,
        #[arg(long, default_value = "plot.svg")]
        out: PathBuf,
        /// Legend labels (defaults to file stems).
        #[arg(long, num_args = 1..)]
        labels: Option<Vec<String>>,
    },
    /// List bundled presets.
    Presets,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::InvalidSpec(_)
        | Error::UnknownKeys(_)
        | Error::NegativeBeta { .. }
        | Error::DimensionMismatch { .. }
        | Error::DimensionOverflow { .. }
        | Error::SlotOutOfRange { .. }
        | Error::MissingTerm { .. }
        | Error::GridTooShort { .. }
        | Error::SpecHashMismatch { .. } => 1,
        _ => 2,
    }
}

fn default_parallelism(requested: Option<usize>) -> usize {
    requested.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

fn gather_runs(
    spec: &Option<PathBuf>,
    preset: &Option<String>,
) -> Result<Vec<(String, RunSpec)>, Error> {
    match (spec, preset) {
        (Some(path), None) => {
            let spec = runspec::parse_runspec_path(path)?;
            let label = path
                .file_stem()
                .map(|s| s.to_string_lossy().to_string())
                .unwrap_or_else(|| "run".into());
            Ok(vec![(label, spec)])
        }
        (None, Some(name)) => {
            let preset = runspec::find_preset(name)?;
            Ok(preset
                .runs
                .into_iter()
                .map(|r| (format!("{name}-{}", r.label), r.spec))
                .collect())
        }
        _ => Err(Error::InvalidSpec(
            "exactly one of --spec or --preset is required".into(),
        )),
    }
}

fn print_diagnostics(label: &str, stats: &EnsembleStats) {
    match diagnose(stats, &DiagnosticsConfig::default()) {
        Ok(d) => println!(
            "{label}: plateau {:.4e}  dip_time {:.4e}  dip_depth_ratio {:.3}  ramp_span {:.3} decades",
            d.plateau_estimate, d.dip_time, d.dip_depth_ratio, d.ramp_span_decades
        ),
        Err(e) => println!("{label}: diagnostics unavailable ({e})"),
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Run {
            spec,
            preset,
            out,
            parallelism,
            format,
            checkpoint,
            resume,
            plot,
        } => {
            let runs = gather_runs(&spec, &preset)?;
            let par = default_parallelism(parallelism);
            std::fs::create_dir_all(&out)?;
            let mut series = Vec::new();
            for (label, spec) in &runs {
                println!("# {label}");
                println!("{}", runspec::to_toml_string(spec)?.trim_end());
                let stats = execute_run(spec, par, checkpoint.as_deref(), resume, &runs, label)?;
                export_stats(&stats, spec, &format, &out, label)?;
                print_diagnostics(label, &stats);
                series.push(PlotSeries {
                    label: label.clone(),
                    times: stats.times.clone(),
                    values: stats.mean_g.clone(),
                });
            }
            if plot {
                let path = out.join(plot_name(&runs));
                let dropped = write_svg(&series, &path)?;
                println!("wrote {} ({dropped} non-positive points dropped)", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Analytic {
            dim,
            sigma,
            beta,
            t_min,
            t_max,
            points,
            out,
        } => {
            let p = GoeAnalyticParams::new(dim, sigma, beta)?;
            let grid = runspec::TimeGrid::new(t_min, t_max, points);
            grid.validate()?;
            let times = grid.times();
            let curve = avg_g_curve(&times, &p)?;
            let mut text = String::from("t,analytic_G\n");
            for (t, g) in times.iter().zip(&curve) {
                text.push_str(&format!("{t:.16e},{g:.16e}\n"));
            }
            match out {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    println!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
            println!(
                "# plateau {:.6e}, plateau time {:.4}",
                plateau(&p)?,
                p.plateau_time()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Compare {
            spec,
            preset,
            out,
            parallelism,
            check,
            tolerance_dex,
            plateau_tol,
        } => {
            let runs = gather_runs(&spec, &preset)?;
            let par = default_parallelism(parallelism);
            std::fs::create_dir_all(&out)?;
            let mut worst_dex: f64 = 0.0;
            let mut worst_plateau: f64 = 0.0;
            for (label, spec) in &runs {
                let (dims, sigma) = match &spec.model {
                    ModelSpec::GoeMultipartite { dims, sigma, .. }
                        if dims.len() == 1 && spec.observable == ObservableSpec::Total =>
                    {
                        (dims.clone(), *sigma)
                    }
                    _ => {
                        return Err(Error::InvalidSpec(
                            "compare requires a single-GOE model with the total observable"
                                .into(),
                        ))
                    }
                };
                // closed forms use the semicircle convention matched to the
                // sampler density (σ_analytic = σ_sample / √2)
                let p = GoeAnalyticParams::for_sample_sigma(dims[0], sigma, spec.beta)?;
                let stats = ensemble::run_ensemble(spec, par)?;
                let times = stats.times.clone();
                let analytic = avg_g_curve(&times, &p)?;
                let csv = out.join(format!("{label}.csv"));
                export::write_curve_csv(&stats, Some(&analytic), &csv)?;
                println!("wrote {}", csv.display());
                let svg = out.join(format!("{label}.svg"));
                write_svg(
                    &[
                        PlotSeries {
                            label: "monte-carlo".into(),
                            times: times.clone(),
                            values: stats.mean_g.clone(),
                        },
                        PlotSeries {
                            label: "closed-form".into(),
                            times: times.clone(),
                            values: analytic.clone(),
                        },
                    ],
                    &svg,
                )?;
                println!("wrote {}", svg.display());

                let d = diagnose(&stats, &DiagnosticsConfig::default())?;
                let mut max_dex: f64 = 0.0;
                for i in 0..times.len() {
                    if times[i] >= d.dip_time && stats.mean_g[i] > 0.0 {
                        let dex = (stats.mean_g[i].log10() - analytic[i].log10()).abs();
                        max_dex = max_dex.max(dex);
                    }
                }
                let plateau_rel = (d.plateau_estimate / plateau(&p)? - 1.0).abs();
                println!(
                    "{label}: max |Δlog10 G| past dip = {max_dex:.4} (tolerance {tolerance_dex}), \
                     plateau rel. err = {plateau_rel:.4} (tolerance {plateau_tol})"
                );
                worst_dex = worst_dex.max(max_dex);
                worst_plateau = worst_plateau.max(plateau_rel);
            }
            if check && (worst_dex > tolerance_dex || worst_plateau > plateau_tol) {
                eprintln!("comparison outside tolerance");
                return Ok(ExitCode::from(3));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Diagnose { input, json } => {
            let curve = export::read_curve_csv(&input)?;
            let d = diagnose_curve(&curve.times, &curve.mean_g, &DiagnosticsConfig::default())?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "plateau_estimate": d.plateau_estimate,
                        "dip_time": d.dip_time,
                        "dip_depth_ratio": d.dip_depth_ratio,
                        "ramp_span_decades": d.ramp_span_decades,
                    })
                );
            } else {
                println!("plateau_estimate   {:.6e}", d.plateau_estimate);
                println!("dip_time           {:.6e}", d.dip_time);
                println!("dip_depth_ratio    {:.4}", d.dip_depth_ratio);
                println!("ramp_span_decades  {:.4}", d.ramp_span_decades);
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Plot { inputs, out, labels } => {
            if inputs.is_empty() {
                return Err(Error::InvalidSpec("plot needs at least one input".into()));
            }
            if let Some(labels) = &labels {
                if labels.len() != inputs.len() {
                    return Err(Error::InvalidSpec(format!(
                        "{} labels for {} inputs",
                        labels.len(),
                        inputs.len()
                    )));
                }
            }
            let mut series = Vec::new();
            for (i, path) in inputs.iter().enumerate() {
                let curve = export::read_curve_csv(path)?;
                let label = labels
                    .as_ref()
                    .map(|l| l[i].clone())
                    .unwrap_or_else(|| {
                        path.file_stem()
                            .map(|s| s.to_string_lossy().to_string())
                            .unwrap_or_else(|| format!("series-{i}"))
                    });
                series.push(PlotSeries {
                    label,
                    times: curve.times,
                    values: curve.mean_g,
                });
            }
            let dropped = write_svg(&series, &out)?;
            println!("wrote {} ({dropped} non-positive points dropped)", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Presets => {
            for preset in runspec::presets() {
                println!("{:14} {}", preset.name, preset.description);
                for run in &preset.runs {
                    println!("    - {}", run.label);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn plot_name(runs: &[(String, RunSpec)]) -> String {
    let stem = runs
        .first()
        .map(|(l, _)| l.split('-').next().unwrap_or("curves").to_string())
        .unwrap_or_else(|| "curves".into());
    format!("{stem}.svg")
}

fn execute_run(
    spec: &RunSpec,
    par: usize,
    checkpoint: Option<&Path>,
    resume: bool,
    runs: &[(String, RunSpec)],
    label: &str,
) -> Result<EnsembleStats, Error> {
    match checkpoint {
        None => ensemble::run_ensemble(spec, par),
        Some(path) => {
            if runs.len() > 1 {
                return Err(Error::InvalidSpec(
                    "checkpointing applies to single-spec runs only".into(),
                ));
            }
            let existing = if resume && path.exists() {
                let saved = ensemble::resume(path)?;
                println!(
                    "{label}: resuming from {} ({} realizations done)",
                    path.display(),
                    saved.count
                );
                Some(saved)
            } else {
                None
            };
            ensemble::run_ensemble_checkpointed(spec, par, path, existing)
        }
    }
}

fn export_stats(
    stats: &EnsembleStats,
    spec: &RunSpec,
    format: &str,
    out: &Path,
    label: &str,
) -> Result<(), Error> {
    let write_csv = matches!(format, "csv" | "both");
    let write_json = matches!(format, "json" | "both");
    if !write_csv && !write_json {
        return Err(Error::InvalidSpec(format!(
            "unknown export format '{format}' (expected csv, json, or both)"
        )));
    }
    if write_csv {
        let path = out.join(format!("{label}.csv"));
        export::write_curve_csv(stats, None, &path)?;
        println!("wrote {}", path.display());
    }
    if write_json {
        let path = out.join(format!("{label}.json"));
        export::write_curve_json(stats, None, Some(spec), &path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

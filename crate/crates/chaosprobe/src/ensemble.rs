//! Seeded, parallel ensemble averaging with streaming statistics and
//! checkpoint persistence.
//!
//! Realizations are independent work items: realization `r` derives its seed
//! from `(master_seed, r)`, so workers never share generator state. Curves
//! fold into running mean/variance accumulators per time point (Welford), in
//! fixed blocks of [`BLOCK_SIZE`] realizations folded in index order; block
//! accumulators then combine in block order with the parallel-variance
//! (Chan) rule. The reduction tree is therefore a pure function of the index
//! set — results are bit-identical for any worker count, and checkpointed
//! runs resume onto the same tree.
//!
//! Per-realization failures are recorded with their seed and skipped; a job
//! fails once more than [`MAX_FAILURE_FRACTION`] of its realizations fail.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::Range;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charfn::{evaluate_curve, thermal_weights, weights_from_spectrum};
use crate::error::{Error, Result};
use crate::goe::sample_goe_from;
use crate::linalg::{eigh_values, HermitianMatrix};
use crate::multipartite::{build_observable, build_total, MultipartiteSpec, ObservableSelector};
use crate::runspec::{spec_hash, ModelSpec, ObservableSpec, RunSpec};
use crate::syk::{build_csyk, CsykSpec};

/// Realizations folded sequentially per reduction-tree leaf.
pub const BLOCK_SIZE: usize = 32;
/// A job aborts when the failed fraction exceeds this.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FailedRealization {
    pub index: u64,
    pub seed: u64,
    pub reason: String,
}

/// Per-time-point running statistics of `G(t)` across realizations, plus the
/// seed ledger identifying exactly which realizations are folded in.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EnsembleStats {
    pub times: Vec<f64>,
    pub mean_g: Vec<f64>,
    /// Sum of squared deviations; variance is `m2 / (count - 1)`.
    pub m2_g: Vec<f64>,
    pub count: u64,
    pub master_seed: u64,
    pub spec_hash: String,
    /// Sorted indices of completed realizations.
    pub completed: Vec<u64>,
    pub failed: Vec<FailedRealization>,
}

impl EnsembleStats {
    pub fn empty(times: Vec<f64>, spec_hash: String, master_seed: u64) -> Self {
        let n = times.len();
        Self {
            times,
            mean_g: vec![0.0; n],
            m2_g: vec![0.0; n],
            count: 0,
            master_seed,
            spec_hash,
            completed: Vec::new(),
            failed: Vec::new(),
        }
    }

    fn fold(&mut self, index: u64, curve: &[f64]) {
        debug_assert_eq!(curve.len(), self.times.len());
        self.count += 1;
        let n = self.count as f64;
        for i in 0..self.mean_g.len() {
            let x = curve[i];
            let delta = x - self.mean_g[i];
            self.mean_g[i] += delta / n;
            self.m2_g[i] += delta * (x - self.mean_g[i]);
        }
        self.completed.push(index);
    }

    pub fn variance(&self) -> Vec<f64> {
        if self.count < 2 {
            return vec![0.0; self.m2_g.len()];
        }
        let denom = (self.count - 1) as f64;
        self.m2_g.iter().map(|&m2| (m2 / denom).max(0.0)).collect()
    }

    /// Standard error of the mean at each time point.
    pub fn stderr(&self) -> Vec<f64> {
        let var = self.variance();
        if self.count == 0 {
            return var;
        }
        let n = self.count as f64;
        var.iter().map(|v| (v / n).sqrt()).collect()
    }
}

/// Parallel-variance combination of two disjoint accumulators.
pub fn merge(a: &EnsembleStats, b: &EnsembleStats) -> Result<EnsembleStats> {
    if a.spec_hash != b.spec_hash {
        return Err(Error::SpecHashMismatch {
            expected: a.spec_hash.clone(),
            found: b.spec_hash.clone(),
        });
    }
    if a.times.len() != b.times.len() {
        return Err(Error::GridMismatch {
            index: a.times.len().min(b.times.len()),
        });
    }
    if let Some(i) = a.times.iter().zip(&b.times).position(|(x, y)| x != y) {
        return Err(Error::GridMismatch { index: i });
    }
    let set: std::collections::BTreeSet<u64> = a.completed.iter().copied().collect();
    if let Some(&dup) = b.completed.iter().find(|i| set.contains(i)) {
        return Err(Error::MergeOverlap { index: dup });
    }
    if a.count == 0 {
        let mut out = b.clone();
        out.failed = a.failed.iter().chain(&b.failed).cloned().collect();
        return Ok(out);
    }
    if b.count == 0 {
        let mut out = a.clone();
        out.failed = a.failed.iter().chain(&b.failed).cloned().collect();
        return Ok(out);
    }
    let (na, nb) = (a.count as f64, b.count as f64);
    let n = na + nb;
    let len = a.times.len();
    let mut mean_g = vec![0.0; len];
    let mut m2_g = vec![0.0; len];
    for i in 0..len {
        let delta = b.mean_g[i] - a.mean_g[i];
        mean_g[i] = a.mean_g[i] + delta * (nb / n);
        m2_g[i] = a.m2_g[i] + b.m2_g[i] + delta * delta * (na * nb / n);
    }
    let mut completed: Vec<u64> = a.completed.iter().chain(&b.completed).copied().collect();
    completed.sort_unstable();
    Ok(EnsembleStats {
        times: a.times.clone(),
        mean_g,
        m2_g,
        count: a.count + b.count,
        master_seed: a.master_seed,
        spec_hash: a.spec_hash.clone(),
        completed,
        failed: a.failed.iter().chain(&b.failed).cloned().collect(),
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream seed for realization `r` of a job; no coordination needed between
/// workers drawing different realizations.
pub fn derive_seed(master_seed: u64, realization: u64) -> u64 {
    splitmix64(master_seed ^ splitmix64(realization))
}

// ---------------------------------------------------------------------------
// the per-realization pipeline
// ---------------------------------------------------------------------------

fn goe_realization(
    dims: &[usize],
    sigma: f64,
    couplings: &[f64],
    orders: &[usize],
    shared_terms: bool,
    local_terms: bool,
    observable: &ObservableSpec,
    seed: u64,
) -> Result<(HermitianMatrix, Option<HermitianMatrix>)> {
    let n = dims.len();
    let selector = observable.to_selector(n)?;
    // superscripts that need samples, in a fixed draw order
    let mut superscripts = std::collections::BTreeSet::new();
    if local_terms {
        superscripts.insert(0usize);
    }
    for &l in orders {
        superscripts.insert(l - 1);
    }
    if let ObservableSelector::Interaction(subset) = &selector {
        superscripts.insert(subset.len() - 1);
    }
    let mut spec = MultipartiteSpec::new(dims.to_vec(), couplings.to_vec(), orders.iter().copied())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 0..n {
        if shared_terms {
            let m = sample_goe_from(&mut rng, dims[j], sigma);
            for &s in &superscripts {
                if s == 0 && !local_terms {
                    continue;
                }
                spec.set_term(j, s, m.clone())?;
            }
        } else {
            for &s in &superscripts {
                if s == 0 && !local_terms {
                    continue;
                }
                spec.set_term(j, s, sample_goe_from(&mut rng, dims[j], sigma))?;
            }
        }
        if !local_terms {
            spec.set_term(j, 0, HermitianMatrix::zeros(dims[j]))?;
        }
    }
    let h = build_total(&spec)?;
    let x = match selector {
        ObservableSelector::Total => None,
        other => Some(build_observable(&spec, &other)?),
    };
    Ok((h, x))
}

fn csyk_realization(
    model: &ModelSpec,
    observable: &ObservableSpec,
    seed: u64,
) -> Result<(HermitianMatrix, Option<HermitianMatrix>)> {
    let ModelSpec::Csyk {
        n_per_side,
        j,
        k,
        mu,
    } = model
    else {
        unreachable!("caller matched the model variant");
    };
    let spec = CsykSpec::new(*n_per_side, *j, *k, *mu, seed)?;
    let parts = build_csyk(&spec)?;
    Ok(match observable {
        ObservableSpec::Total => (parts.h_total, None),
        ObservableSpec::Left => (parts.h_total.clone(), Some(parts.h_left)),
        ObservableSpec::Bilinear => (parts.h_total.clone(), Some(parts.h_bilinear)),
        other => {
            return Err(Error::InvalidSpec(format!(
                "observable {other:?} does not apply to the csyk model"
            )))
        }
    })
}

/// Builds one realization and evaluates its `G(t)` curve.
///
/// Exact shortcuts: `X = H` needs only the eigenvalues of `H`; `β = 0` needs
/// only the eigenvalues of `X`.
pub fn realization_curve(spec: &RunSpec, seed: u64, times: &[f64]) -> Result<Vec<f64>> {
    let (h, x) = match &spec.model {
        ModelSpec::GoeMultipartite {
            dims,
            sigma,
            couplings,
            shared_terms,
            local_terms,
            ..
        } => goe_realization(
            dims,
            *sigma,
            couplings,
            &spec.model.goe_orders(),
            *shared_terms,
            *local_terms,
            &spec.observable,
            seed,
        )?,
        model @ ModelSpec::Csyk { .. } => csyk_realization(model, &spec.observable, seed)?,
    };
    let weights = match x {
        None => {
            let ev = eigh_values(&h)?;
            weights_from_spectrum(&ev, spec.beta)?
        }
        Some(x) => {
            if spec.beta == 0.0 {
                let ev = eigh_values(&x)?;
                weights_from_spectrum(&ev, 0.0)?
            } else {
                thermal_weights(&h, &x, spec.beta)?
            }
        }
    };
    Ok(evaluate_curve(&weights, times)?.g_mod_squared)
}

// ---------------------------------------------------------------------------
// the runner
// ---------------------------------------------------------------------------

struct RunConfig<'a> {
    checkpoint: Option<&'a Path>,
    existing: Option<EnsembleStats>,
}

fn compute_block_with(
    master_seed: u64,
    times: &[f64],
    hash: &str,
    indices: &[u64],
    curve_fn: &(dyn Fn(u64, u64) -> Result<Vec<f64>> + Sync),
) -> EnsembleStats {
    let mut acc = EnsembleStats::empty(times.to_vec(), hash.to_string(), master_seed);
    for &idx in indices {
        let seed = derive_seed(master_seed, idx);
        match curve_fn(idx, seed) {
            Ok(curve) => acc.fold(idx, &curve),
            Err(e) => acc.failed.push(FailedRealization {
                index: idx,
                seed,
                reason: e.to_string(),
            }),
        }
    }
    acc
}

fn compute_block(spec: &RunSpec, times: &[f64], hash: &str, indices: &[u64]) -> EnsembleStats {
    compute_block_with(spec.master_seed, times, hash, indices, &|_, seed| {
        realization_curve(spec, seed, times)
    })
}

fn enforce_failure_budget(stats: &EnsembleStats) -> Result<()> {
    let attempted = stats.count + stats.failed.len() as u64;
    let allowed = (MAX_FAILURE_FRACTION * attempted as f64).floor() as usize;
    if stats.failed.len() > allowed {
        return Err(Error::TooManyFailures {
            failed: stats.failed.len(),
            total: attempted as usize,
            allowed,
        });
    }
    Ok(())
}

fn run_indices(
    spec: &RunSpec,
    parallelism: usize,
    indices: &[u64],
    config: RunConfig<'_>,
) -> Result<EnsembleStats> {
    spec.validate()?;
    let parallelism = parallelism.max(1);
    let times = spec.grid.times();
    let hash = spec_hash(spec);
    let mut acc = match config.existing {
        Some(existing) => {
            if existing.spec_hash != hash {
                return Err(Error::SpecHashMismatch {
                    expected: hash,
                    found: existing.spec_hash,
                });
            }
            existing
        }
        None => EnsembleStats::empty(times.clone(), hash.clone(), spec.master_seed),
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::InvalidSpec(format!("worker pool: {e}")))?;

    let blocks: Vec<&[u64]> = indices.chunks(BLOCK_SIZE).collect();
    // checkpoint cadence: after every group of `parallelism` blocks
    for group in blocks.chunks(parallelism.max(1)) {
        let results: Vec<EnsembleStats> = pool.install(|| {
            group
                .par_iter()
                .map(|block| compute_block(spec, &times, &hash, block))
                .collect()
        });
        for block_stats in results {
            acc = merge(&acc, &block_stats)?;
        }
        if let Some(path) = config.checkpoint {
            checkpoint(&acc, path)?;
        }
    }

    enforce_failure_budget(&acc)?;
    Ok(acc)
}

/// Runs every realization of the spec.
pub fn run_ensemble(spec: &RunSpec, parallelism: usize) -> Result<EnsembleStats> {
    run_ensemble_range(spec, parallelism, 0..spec.realizations)
}

/// Runs a slice of the realization index space (for split/merge workflows).
pub fn run_ensemble_range(
    spec: &RunSpec,
    parallelism: usize,
    range: Range<u64>,
) -> Result<EnsembleStats> {
    let indices: Vec<u64> = range.collect();
    run_indices(
        spec,
        parallelism,
        &indices,
        RunConfig {
            checkpoint: None,
            existing: None,
        },
    )
}

/// Runs with periodic checkpointing; when `resume_from` holds previously
/// checkpointed stats, only the missing realizations are computed.
pub fn run_ensemble_checkpointed(
    spec: &RunSpec,
    parallelism: usize,
    path: &Path,
    resume_from: Option<EnsembleStats>,
) -> Result<EnsembleStats> {
    let done: std::collections::BTreeSet<u64> = resume_from
        .as_ref()
        .map(|s| {
            s.completed
                .iter()
                .copied()
                .chain(s.failed.iter().map(|f| f.index))
                .collect()
        })
        .unwrap_or_default();
    let indices: Vec<u64> = (0..spec.realizations)
        .filter(|i| !done.contains(i))
        .collect();
    let stats = run_indices(
        spec,
        parallelism,
        &indices,
        RunConfig {
            checkpoint: Some(path),
            existing: resume_from,
        },
    )?;
    checkpoint(&stats, path)?;
    Ok(stats)
}

/// Completes the missing realizations of a previously saved run (no file I/O).
pub fn resume_run(
    spec: &RunSpec,
    parallelism: usize,
    saved: EnsembleStats,
) -> Result<EnsembleStats> {
    let done: std::collections::BTreeSet<u64> = saved
        .completed
        .iter()
        .copied()
        .chain(saved.failed.iter().map(|f| f.index))
        .collect();
    let indices: Vec<u64> = (0..spec.realizations)
        .filter(|i| !done.contains(i))
        .collect();
    run_indices(
        spec,
        parallelism,
        &indices,
        RunConfig {
            checkpoint: None,
            existing: Some(saved),
        },
    )
}

// ---------------------------------------------------------------------------
// checkpoint persistence (versioned JSON, atomic rename)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CheckpointFile {
    version: u32,
    stats: EnsembleStats,
}

/// Writes the full statistics and ledger; atomic via temp-file rename.
pub fn checkpoint(stats: &EnsembleStats, path: &Path) -> Result<()> {
    let file = CheckpointFile {
        version: CHECKPOINT_VERSION,
        stats: stats.clone(),
    };
    let json = serde_json::to_string(&file)
        .map_err(|e| Error::CorruptCheckpoint {
            detail: e.to_string(),
        })?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, json)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a checkpoint; spec compatibility is enforced on resume, not here.
pub fn resume(path: &Path) -> Result<EnsembleStats> {
    let text = std::fs::read_to_string(path)?;
    let file: CheckpointFile =
        serde_json::from_str(&text).map_err(|e| Error::CorruptCheckpoint {
            // serde_json reports line and column of the failure
            detail: e.to_string(),
        })?;
    if file.version != CHECKPOINT_VERSION {
        return Err(Error::CorruptCheckpoint {
            detail: format!(
                "unsupported checkpoint version {} (expected {})",
                file.version, CHECKPOINT_VERSION
            ),
        });
    }
    Ok(file.stats)
}

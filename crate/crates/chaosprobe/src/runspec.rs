//! Declarative run specifications, TOML parsing, and bundled presets.
//!
//! A run spec names a disorder model, an inverse temperature, an observable,
//! a time grid, and a realization budget. The TOML schema:
//!
//! ```toml
//! beta = 0.01
//! realizations = 500
//! seed = 42
//! observable = "total"          # or { local = 1 }, { interaction = [1, 2] },
//!                               # "left", "bilinear" (coupled-SYK sides)
//!
//! [model]
//! type = "goe-multipartite"     # or "csyk"
//! dims = [10, 10]
//! sigma = 1.0                   # default 1
//! couplings = [1.0]             # ε_1 … ε_{N-1}
//! orders = [2]                  # default: every order 2..=N
//! shared-terms = false          # one matrix per subsystem reused for all orders
//! local-terms = true            # sample H^(0); false builds pure-interaction models
//!
//! [grid]
//! t-min = 1e-2                  # default grid: log-spaced, 400 points, 1e-2..1e4
//! t-max = 1e4
//! points = 400
//! log = true
//! ```
//!
//! Unknown keys anywhere in the document are collected and rejected in one
//! error; defaults are made explicit by the echo-back serializer. Subsystem
//! indices in observables are 1-based, matching the usual `H_1 ⊗ H_2` naming.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::DEFAULT_MAX_DIM;
use crate::multipartite::ObservableSelector;
use crate::syk::CsykSpec;

fn default_sigma() -> f64 {
    1.0
}

fn default_coupling_scale() -> f64 {
    1.0
}

fn default_true() -> bool {
    true
}

fn default_realizations() -> u64 {
    500
}

/// Disorder model template; per-realization matrices are sampled from this.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ModelSpec {
    #[serde(rename_all = "kebab-case")]
    GoeMultipartite {
        dims: Vec<usize>,
        #[serde(default = "default_sigma")]
        sigma: f64,
        #[serde(default)]
        couplings: Vec<f64>,
        /// Interaction orders to include; `None` means every order `2..=N`.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orders: Option<Vec<usize>>,
        #[serde(default)]
        shared_terms: bool,
        #[serde(default = "default_true")]
        local_terms: bool,
    },
    #[serde(rename_all = "kebab-case")]
    Csyk {
        n_per_side: usize,
        #[serde(default = "default_coupling_scale")]
        j: f64,
        #[serde(default = "default_coupling_scale")]
        k: f64,
        #[serde(default)]
        mu: f64,
    },
}

impl ModelSpec {
    pub fn hilbert_dim(&self) -> usize {
        match self {
            Self::GoeMultipartite { dims, .. } => dims.iter().product(),
            Self::Csyk { n_per_side, .. } => 1 << n_per_side,
        }
    }

    /// Effective interaction orders for the GOE model.
    pub fn goe_orders(&self) -> Vec<usize> {
        match self {
            Self::GoeMultipartite { dims, orders, .. } => match orders {
                Some(o) => o.clone(),
                None => (2..=dims.len()).collect(),
            },
            Self::Csyk { .. } => Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::GoeMultipartite {
                dims,
                sigma,
                couplings,
                orders,
                ..
            } => {
                if dims.is_empty() {
                    return Err(Error::InvalidSpec("model.dims must be non-empty".into()));
                }
                if dims.iter().any(|&d| d == 0) {
                    return Err(Error::InvalidSpec(
                        "model.dims entries must be >= 1".into(),
                    ));
                }
                let mut total = 1usize;
                for &d in dims {
                    total = total.checked_mul(d).ok_or(Error::DimensionOverflow {
                        dim: usize::MAX,
                        max: DEFAULT_MAX_DIM,
                    })?;
                }
                if total > DEFAULT_MAX_DIM {
                    return Err(Error::DimensionOverflow {
                        dim: total,
                        max: DEFAULT_MAX_DIM,
                    });
                }
                if !(*sigma > 0.0) || !sigma.is_finite() {
                    return Err(Error::InvalidSpec(format!(
                        "model.sigma must be positive, got {sigma}"
                    )));
                }
                if couplings.len() != dims.len() - 1 {
                    return Err(Error::InvalidSpec(format!(
                        "model.couplings must list ε_1..ε_{} ({} values) for {} subsystems, got {}",
                        dims.len() - 1,
                        dims.len() - 1,
                        dims.len(),
                        couplings.len()
                    )));
                }
                if couplings.iter().any(|c| !c.is_finite()) {
                    return Err(Error::InvalidSpec(
                        "model.couplings must be finite".into(),
                    ));
                }
                if let Some(orders) = orders {
                    let mut seen = std::collections::BTreeSet::new();
                    for &l in orders {
                        if l < 2 || l > dims.len() {
                            return Err(Error::InvalidSpec(format!(
                                "model.orders entry {l} outside 2..={}",
                                dims.len()
                            )));
                        }
                        if !seen.insert(l) {
                            return Err(Error::InvalidSpec(format!(
                                "model.orders lists {l} twice"
                            )));
                        }
                    }
                }
                Ok(())
            }
            Self::Csyk {
                n_per_side,
                j,
                k,
                mu,
            } => {
                CsykSpec::new(*n_per_side, *j, *k, *mu, 0)?;
                Ok(())
            }
        }
    }
}

/// Observable choice; GOE selectors use 1-based subsystem indices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum ObservableSpec {
    #[default]
    Total,
    Local(usize),
    Interaction(Vec<usize>),
    Left,
    Bilinear,
}

impl ObservableSpec {
    /// Converts a GOE selector to 0-based module indices.
    pub fn to_selector(&self, n_subsystems: usize) -> Result<ObservableSelector> {
        match self {
            Self::Total => Ok(ObservableSelector::Total),
            Self::Local(j) => {
                if *j == 0 || *j > n_subsystems {
                    return Err(Error::InvalidSpec(format!(
                        "observable.local = {j} outside 1..={n_subsystems}"
                    )));
                }
                Ok(ObservableSelector::Local(j - 1))
            }
            Self::Interaction(subset) => {
                if subset.len() < 2 || subset.len() > n_subsystems {
                    return Err(Error::InvalidSpec(format!(
                        "observable.interaction order {} outside 2..={n_subsystems}",
                        subset.len()
                    )));
                }
                if !subset.windows(2).all(|w| w[0] < w[1]) {
                    return Err(Error::InvalidSpec(
                        "observable.interaction indices must be strictly increasing".into(),
                    ));
                }
                if subset.iter().any(|&j| j == 0 || j > n_subsystems) {
                    return Err(Error::InvalidSpec(format!(
                        "observable.interaction indices must lie in 1..={n_subsystems}"
                    )));
                }
                Ok(ObservableSelector::Interaction(
                    subset.iter().map(|j| j - 1).collect(),
                ))
            }
            Self::Left | Self::Bilinear => Err(Error::InvalidSpec(
                "left/bilinear observables only apply to the csyk model".into(),
            )),
        }
    }
}

impl Serialize for ObservableSpec {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct LocalRepr {
            local: usize,
        }
        #[derive(Serialize)]
        struct InteractionRepr {
            interaction: Vec<usize>,
        }
        match self {
            Self::Total => ser.serialize_str("total"),
            Self::Left => ser.serialize_str("left"),
            Self::Bilinear => ser.serialize_str("bilinear"),
            Self::Local(j) => LocalRepr { local: *j }.serialize(ser),
            Self::Interaction(s) => InteractionRepr {
                interaction: s.clone(),
            }
            .serialize(ser),
        }
    }
}

impl<'de> Deserialize<'de> for ObservableSpec {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Name(String),
            Table {
                #[serde(default)]
                local: Option<usize>,
                #[serde(default)]
                interaction: Option<Vec<usize>>,
            },
        }
        match Repr::deserialize(de)? {
            Repr::Name(s) => match s.as_str() {
                "total" => Ok(Self::Total),
                "left" => Ok(Self::Left),
                "bilinear" => Ok(Self::Bilinear),
                other => Err(D::Error::custom(format!(
                    "unknown observable '{other}'; expected total/left/bilinear or a \
                     {{ local = j }} / {{ interaction = [...] }} table"
                ))),
            },
            Repr::Table { local, interaction } => match (local, interaction) {
                (Some(j), None) => Ok(Self::Local(j)),
                (None, Some(s)) => Ok(Self::Interaction(s)),
                _ => Err(D::Error::custom(
                    "observable table must set exactly one of 'local' or 'interaction'",
                )),
            },
        }
    }
}

/// Evaluation grid; log-spaced by default, with `t = 0` always prepended.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case", default)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
    pub log: bool,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_min: 1e-2,
            t_max: 1e4,
            points: 400,
            log: true,
        }
    }
}

impl TimeGrid {
    pub fn new(t_min: f64, t_max: f64, points: usize) -> Self {
        Self {
            t_min,
            t_max,
            points,
            log: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min > 0.0) || !(self.t_max > self.t_min) || !self.t_max.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "grid requires 0 < t-min < t-max, got [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidSpec("grid.points must be >= 2".into()));
        }
        Ok(())
    }

    /// Grid values with `0` prepended (so every curve records `G(0) = 1`).
    pub fn times(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.points + 1);
        out.push(0.0);
        let n = self.points;
        if self.log {
            let (la, lb) = (self.t_min.log10(), self.t_max.log10());
            for k in 0..n {
                let f = k as f64 / (n - 1) as f64;
                out.push(10f64.powf(la + f * (lb - la)));
            }
        } else {
            for k in 0..n {
                let f = k as f64 / (n - 1) as f64;
                out.push(self.t_min + f * (self.t_max - self.t_min));
            }
        }
        out
    }
}

/// Complete declarative description of one ensemble job.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunSpec {
    pub model: ModelSpec,
    pub beta: f64,
    #[serde(default)]
    pub observable: ObservableSpec,
    #[serde(default)]
    pub grid: TimeGrid,
    #[serde(default = "default_realizations")]
    pub realizations: u64,
    #[serde(default, rename = "seed")]
    pub master_seed: u64,
}

impl RunSpec {
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(Error::NegativeBeta { beta: self.beta });
        }
        self.grid.validate()?;
        if self.realizations == 0 {
            return Err(Error::InvalidSpec("realizations must be >= 1".into()));
        }
        match (&self.model, &self.observable) {
            (ModelSpec::GoeMultipartite { dims, .. }, obs) => {
                obs.to_selector(dims.len()).map(|_| ())
            }
            (ModelSpec::Csyk { .. }, ObservableSpec::Total)
            | (ModelSpec::Csyk { .. }, ObservableSpec::Left)
            | (ModelSpec::Csyk { .. }, ObservableSpec::Bilinear) => Ok(()),
            (ModelSpec::Csyk { .. }, other) => Err(Error::InvalidSpec(format!(
                "observable {other:?} does not apply to the csyk model"
            ))),
        }
    }
}

/// SHA-256 over the canonical JSON serialization; identifies a job for
/// checkpointing and export metadata.
pub fn spec_hash(spec: &RunSpec) -> String {
    let canonical = serde_json::to_string(spec).expect("RunSpec serializes");
    let digest = Sha256::digest(canonical.as_bytes());
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Echo-back serialization with every default made explicit.
pub fn to_toml_string(spec: &RunSpec) -> Result<String> {
    toml::to_string(spec).map_err(|e| Error::InvalidSpec(format!("serialization failed: {e}")))
}

fn collect_unknown_keys(top: &toml::Table) -> Vec<String> {
    let mut unknown = Vec::new();
    const TOP: &[&str] = &["model", "beta", "observable", "grid", "realizations", "seed"];
    for key in top.keys() {
        if !TOP.contains(&key.as_str()) {
            unknown.push(key.clone());
        }
    }
    if let Some(model) = top.get("model").and_then(|m| m.as_table()) {
        let allowed: &[&str] = match model.get("type").and_then(|t| t.as_str()) {
            Some("csyk") => &["type", "n-per-side", "j", "k", "mu"],
            _ => &[
                "type",
                "dims",
                "sigma",
                "couplings",
                "orders",
                "shared-terms",
                "local-terms",
            ],
        };
        for key in model.keys() {
            if !allowed.contains(&key.as_str()) {
                unknown.push(format!("model.{key}"));
            }
        }
    }
    if let Some(grid) = top.get("grid").and_then(|g| g.as_table()) {
        const GRID: &[&str] = &["t-min", "t-max", "points", "log"];
        for key in grid.keys() {
            if !GRID.contains(&key.as_str()) {
                unknown.push(format!("grid.{key}"));
            }
        }
    }
    if let Some(obs) = top.get("observable").and_then(|o| o.as_table()) {
        const OBS: &[&str] = &["local", "interaction"];
        for key in obs.keys() {
            if !OBS.contains(&key.as_str()) {
                unknown.push(format!("observable.{key}"));
            }
        }
    }
    unknown.sort();
    unknown
}

/// Parses and validates a TOML run spec.
pub fn parse_runspec(text: &str) -> Result<RunSpec> {
    let doc: toml::Table = text
        .parse()
        .map_err(|e| Error::InvalidSpec(format!("TOML parse error: {e}")))?;
    let unknown = collect_unknown_keys(&doc);
    if !unknown.is_empty() {
        return Err(Error::UnknownKeys(unknown));
    }
    let spec: RunSpec =
        toml::from_str(text).map_err(|e| Error::InvalidSpec(format!("{e}")))?;
    spec.validate()?;
    Ok(spec)
}

pub fn parse_runspec_path(path: &std::path::Path) -> Result<RunSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_runspec(&text)
}

// ---------------------------------------------------------------------------
// presets
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct LabeledSpec {
    pub label: String,
    pub spec: RunSpec,
}

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub runs: Vec<LabeledSpec>,
}

fn goe_single(dim: usize) -> ModelSpec {
    ModelSpec::GoeMultipartite {
        dims: vec![dim],
        sigma: 1.0,
        couplings: vec![],
        orders: Some(vec![]),
        shared_terms: false,
        local_terms: true,
    }
}

fn goe_bipartite(eps: f64, local_terms: bool) -> ModelSpec {
    ModelSpec::GoeMultipartite {
        dims: vec![10, 10],
        sigma: 1.0,
        couplings: vec![eps],
        orders: Some(vec![2]),
        shared_terms: false,
        local_terms,
    }
}

fn goe_tripartite(eps: f64) -> ModelSpec {
    ModelSpec::GoeMultipartite {
        dims: vec![5, 5, 5],
        sigma: 1.0,
        couplings: vec![eps, eps],
        orders: Some(vec![2, 3]),
        shared_terms: true,
        local_terms: true,
    }
}

fn csyk_model(mu: f64) -> ModelSpec {
    ModelSpec::Csyk {
        n_per_side: 10,
        j: 1.0,
        k: 1.0,
        mu,
    }
}

/// Coupling sweep for the bipartite presets.
pub const EPS_SWEEP: [f64; 4] = [0.1, 1.0, 5.0, 10.0];
/// Coupling sweep for the tripartite presets. With shared term matrices the
/// three pair channels plus the triple channel suppress the global dip well
/// below ε = 1, so the sweep sits an order of magnitude lower than the
/// bipartite one to resolve the crossover.
pub const EPS3_SWEEP: [f64; 4] = [0.02, 0.05, 0.1, 0.2];
/// Bilinear-strength sweep for the coupled-SYK presets. Between μ ≈ 0.3 and
/// μ ≈ 3 the bilinear term couples the two sides into one larger chaotic
/// system and the dip deepens; the monotone washout regime starts above that
/// hump, so the sweep jumps from the weak-coupling point straight into it.
pub const MU_SWEEP: [f64; 4] = [0.1, 10.0, 20.0, 40.0];

fn spec(
    model: ModelSpec,
    beta: f64,
    observable: ObservableSpec,
    grid: TimeGrid,
    realizations: u64,
    master_seed: u64,
) -> RunSpec {
    RunSpec {
        model,
        beta,
        observable,
        grid,
        realizations,
        master_seed,
    }
}

fn sweep_label(prefix: &str, value: f64) -> String {
    format!("{prefix}{value}")
}

/// All bundled presets.
pub fn presets() -> Vec<Preset> {
    let short_grid = TimeGrid::new(1e-2, 1e3, 400);
    let syk_grid = TimeGrid::new(1e-2, 1e5, 400);
    let mut out = Vec::new();

    out.push(Preset {
        name: "fig1",
        description: "single GOE(1024) and a GOE(32)xGOE(32) product model, beta = 0.01, \
                      500 realizations; total-energy observable",
        runs: vec![
            LabeledSpec {
                label: "goe-1024".into(),
                spec: spec(goe_single(1024), 0.01, ObservableSpec::Total, short_grid, 500, 7),
            },
            LabeledSpec {
                label: "goe-32x32".into(),
                spec: spec(
                    ModelSpec::GoeMultipartite {
                        dims: vec![32, 32],
                        sigma: 1.0,
                        couplings: vec![1.0],
                        orders: Some(vec![2]),
                        shared_terms: false,
                        local_terms: false,
                    },
                    0.01,
                    ObservableSpec::Total,
                    short_grid,
                    500,
                    102,
                ),
            },
        ],
    });

    out.push(Preset {
        name: "fig1-reduced",
        description: "GOE(256), beta = 0.01, 200 realizations; laptop-scale variant of fig1",
        runs: vec![LabeledSpec {
            label: "goe-256".into(),
            spec: spec(goe_single(256), 0.01, ObservableSpec::Total, short_grid, 200, 103),
        }],
    });

    let eps_runs = |observable: ObservableSpec, realizations: u64, beta: f64| -> Vec<LabeledSpec> {
        EPS_SWEEP
            .iter()
            .enumerate()
            .map(|(i, &eps)| LabeledSpec {
                label: sweep_label("eps-", eps),
                spec: spec(
                    goe_bipartite(eps, true),
                    beta,
                    observable.clone(),
                    short_grid,
                    realizations,
                    210 + i as u64,
                ),
            })
            .collect()
    };

    out.push(Preset {
        name: "fig2a",
        description: "bipartite GOE(10)xGOE(10) coupling sweep, X = H",
        runs: eps_runs(ObservableSpec::Total, 500, 0.01),
    });
    out.push(Preset {
        name: "fig2b",
        description: "bipartite coupling sweep, local observable X = H_1",
        runs: eps_runs(ObservableSpec::Local(1), 500, 0.01),
    });
    out.push(Preset {
        name: "fig2c",
        description: "bipartite coupling sweep, bare interaction observable X = H_1 x H_2",
        runs: eps_runs(ObservableSpec::Interaction(vec![1, 2]), 500, 0.01),
    });

    let fig3 = |name: &'static str, observable: ObservableSpec, desc: &'static str| Preset {
        name,
        description: desc,
        runs: EPS3_SWEEP
            .iter()
            .enumerate()
            .map(|(i, &eps)| LabeledSpec {
                label: sweep_label("eps-", eps),
                spec: spec(
                    goe_tripartite(eps),
                    0.01,
                    observable.clone(),
                    short_grid,
                    500,
                    310 + i as u64,
                ),
            })
            .collect(),
    };
    out.push(fig3(
        "fig3a",
        ObservableSpec::Total,
        "tripartite GOE(5)^3 coupling sweep (shared term matrices), X = H",
    ));
    out.push(fig3(
        "fig3b",
        ObservableSpec::Local(1),
        "tripartite coupling sweep, local observable X = H_1",
    ));
    out.push(fig3(
        "fig3c",
        ObservableSpec::Interaction(vec![1, 2]),
        "tripartite coupling sweep, pair interaction X = H_1 x H_2",
    ));
    out.push(fig3(
        "fig3d",
        ObservableSpec::Interaction(vec![1, 2, 3]),
        "tripartite coupling sweep, triple interaction X = H_1 x H_2 x H_3",
    ));

    let fig4a_runs = |realizations: u64| -> Vec<LabeledSpec> {
        MU_SWEEP
            .iter()
            .enumerate()
            .map(|(i, &mu)| LabeledSpec {
                label: sweep_label("mu-", mu),
                spec: spec(
                    csyk_model(mu),
                    0.0,
                    ObservableSpec::Total,
                    syk_grid,
                    realizations,
                    410 + i as u64,
                ),
            })
            .collect()
    };
    out.push(Preset {
        name: "fig4a",
        description: "coupled SYK (2N = 20, J = K = 1, beta = 0) bilinear-strength sweep, X = H",
        runs: fig4a_runs(500),
    });
    out.push(Preset {
        name: "fig4a-smoke",
        description: "fig4a at 100 realizations",
        runs: fig4a_runs(100),
    });

    let fig4b_runs = |realizations: u64| -> Vec<LabeledSpec> {
        vec![
            LabeledSpec {
                label: "left".into(),
                spec: spec(
                    csyk_model(MU_SWEEP[3]),
                    0.0,
                    ObservableSpec::Left,
                    syk_grid,
                    realizations,
                    420,
                ),
            },
            LabeledSpec {
                label: "bilinear".into(),
                spec: spec(
                    csyk_model(MU_SWEEP[3]),
                    0.0,
                    ObservableSpec::Bilinear,
                    syk_grid,
                    realizations,
                    421,
                ),
            },
        ]
    };
    out.push(Preset {
        name: "fig4b",
        description: "coupled SYK side and bilinear observables (X = H_L, X = H_b) at the \
                      strongest bilinear coupling",
        runs: fig4b_runs(500),
    });
    out.push(Preset {
        name: "fig4b-smoke",
        description: "fig4b at 100 realizations",
        runs: fig4b_runs(100),
    });

    out.push(Preset {
        name: "figs1",
        description: "bipartite sweep point eps = 1 averaged over 1, 10 and 100 realizations",
        runs: [1u64, 10, 100]
            .iter()
            .map(|&r| LabeledSpec {
                label: format!("r-{r}"),
                spec: spec(
                    goe_bipartite(1.0, true),
                    0.01,
                    ObservableSpec::Total,
                    short_grid,
                    r,
                    510,
                ),
            })
            .collect(),
    });

    out.push(Preset {
        name: "figs2",
        description: "bipartite sweep point eps = 1 at beta = 0, 0.01 and 0.1 \
                      (100 realizations)",
        runs: [0.0, 0.01, 0.1]
            .iter()
            .map(|&beta| LabeledSpec {
                label: format!("beta-{beta}"),
                spec: spec(
                    goe_bipartite(1.0, true),
                    beta,
                    ObservableSpec::Total,
                    short_grid,
                    100,
                    610,
                ),
            })
            .collect(),
    });

    out
}

pub fn find_preset(name: &str) -> Result<Preset> {
    presets()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| {
            let names: Vec<&str> = presets().iter().map(|p| p.name).collect();
            Error::InvalidSpec(format!(
                "unknown preset '{name}'; available: {}",
                names.join(", ")
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FULL: &str = r#"
beta = 0.01
realizations = 500
seed = 7
observable = { interaction = [1, 2] }

[model]
type = "goe-multipartite"
dims = [10, 10]
couplings = [1.0]
orders = [2]

[grid]
t-min = 1e-2
t-max = 1e3
points = 100
"#;

    #[test]
    fn parses_full_document_with_defaults() {
        let spec = parse_runspec(FULL).unwrap();
        assert_eq!(spec.master_seed, 7);
        assert_eq!(spec.observable, ObservableSpec::Interaction(vec![1, 2]));
        match &spec.model {
            ModelSpec::GoeMultipartite {
                sigma,
                shared_terms,
                local_terms,
                ..
            } => {
                assert_eq!(*sigma, 1.0);
                assert!(!shared_terms);
                assert!(*local_terms);
            }
            other => panic!("wrong model {other:?}"),
        }
        assert!(spec.grid.log);
        // echo-back round-trips with all defaults explicit
        let echoed = to_toml_string(&spec).unwrap();
        assert!(echoed.contains("sigma = 1.0"), "{echoed}");
        let again = parse_runspec(&echoed).unwrap();
        assert_eq!(spec, again);
    }

    #[test]
    fn unknown_keys_are_listed_together() {
        // top-level keys must precede the [model] table
        let doc = format!("bogus = 1\n{FULL}\n[extra]\nx = 2");
        match parse_runspec(&doc) {
            Err(Error::UnknownKeys(keys)) => {
                assert!(keys.contains(&"bogus".to_string()));
                assert!(keys.contains(&"extra".to_string()));
            }
            other => panic!("expected UnknownKeys, got {other:?}"),
        }
        let doc = FULL.replace("couplings", "couplinks");
        assert!(matches!(parse_runspec(&doc), Err(Error::UnknownKeys(_))));
    }

    #[test]
    fn empty_document_is_rejected() {
        assert!(parse_runspec("").is_err());
    }

    #[test]
    fn missing_model_fields_are_rejected() {
        let doc = "beta = 0.1\n[model]\ntype = \"goe-multipartite\"\n";
        assert!(parse_runspec(doc).is_err());
    }

    #[test]
    fn physical_inconsistencies_are_rejected() {
        let doc = FULL.replace("{ interaction = [1, 2] }", "{ interaction = [1, 2, 3] }");
        assert!(parse_runspec(&doc).is_err());
        let doc = FULL.replace("{ interaction = [1, 2] }", "{ local = 3 }");
        assert!(parse_runspec(&doc).is_err());
        let doc = FULL.replace("beta = 0.01", "beta = -1.0");
        assert!(parse_runspec(&doc).is_err());
        let doc = FULL.replace("{ interaction = [1, 2] }", "\"left\"");
        assert!(parse_runspec(&doc).is_err());
    }

    #[test]
    fn csyk_document_parses() {
        let doc = r#"
beta = 0.0
observable = "left"
[model]
type = "csyk"
n-per-side = 10
mu = 0.1
"#;
        let spec = parse_runspec(doc).unwrap();
        assert_eq!(spec.realizations, 500);
        assert_eq!(spec.model.hilbert_dim(), 1024);
    }

    #[test]
    fn grid_prepends_zero_and_spans_range() {
        let g = TimeGrid::new(0.01, 1000.0, 150);
        let times = g.times();
        assert_eq!(times.len(), 151);
        assert_eq!(times[0], 0.0);
        assert!((times[1] - 0.01).abs() < 1e-15);
        assert!((times[150] - 1000.0).abs() < 1e-9);
    }

    #[test]
    fn spec_hash_is_stable_and_sensitive() {
        let a = parse_runspec(FULL).unwrap();
        let b = parse_runspec(FULL).unwrap();
        assert_eq!(spec_hash(&a), spec_hash(&b));
        let c = parse_runspec(&FULL.replace("beta = 0.01", "beta = 0.02")).unwrap();
        assert_ne!(spec_hash(&a), spec_hash(&c));
    }

    #[test]
    fn presets_all_validate() {
        for preset in presets() {
            assert!(!preset.runs.is_empty(), "{} empty", preset.name);
            for run in &preset.runs {
                run.spec
                    .validate()
                    .unwrap_or_else(|e| panic!("{}/{}: {e}", preset.name, run.label));
            }
        }
        assert!(find_preset("fig1").is_ok());
        assert!(find_preset("not-a-preset").is_err());
    }
}

//! Curve export and import: CSV with embedded metadata, and JSON with the
//! full spec echo.
//!
//! CSV layout: `#`-prefixed metadata lines (spec hash, master seed,
//! realization count), a fixed header row, then one row per grid point with
//! 17 significant digits — enough for lossless f64 round-trips. Two exports
//! of the same run are byte-identical.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ensemble::EnsembleStats;
use crate::error::{Error, Result};
use crate::runspec::RunSpec;

pub const CSV_HEADER_BASE: &str = "t,mean_G,stderr_G";
pub const CSV_HEADER_WITH_ANALYTIC: &str = "t,mean_G,stderr_G,analytic_G";

/// A curve read back from disk.
#[derive(Clone, Debug, PartialEq)]
pub struct ExportedCurve {
    pub metadata: BTreeMap<String, String>,
    pub times: Vec<f64>,
    pub mean_g: Vec<f64>,
    pub stderr_g: Vec<f64>,
    pub analytic_g: Option<Vec<f64>>,
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders the CSV exactly as written to disk.
pub fn curve_csv_string(stats: &EnsembleStats, analytic: Option<&[f64]>) -> Result<String> {
    if let Some(a) = analytic {
        if a.len() != stats.times.len() {
            return Err(Error::DimensionMismatch {
                context: "analytic column length",
                expected: stats.times.len(),
                found: a.len(),
            });
        }
    }
    let stderr = stats.stderr();
    let mut out = String::new();
    out.push_str("# chaosprobe curve v1\n");
    out.push_str(&format!("# spec_hash = {}\n", stats.spec_hash));
    out.push_str(&format!("# master_seed = {}\n", stats.master_seed));
    out.push_str(&format!("# realizations = {}\n", stats.count));
    out.push_str(if analytic.is_some() {
        CSV_HEADER_WITH_ANALYTIC
    } else {
        CSV_HEADER_BASE
    });
    out.push('\n');
    for i in 0..stats.times.len() {
        out.push_str(&fmt(stats.times[i]));
        out.push(',');
        out.push_str(&fmt(stats.mean_g[i]));
        out.push(',');
        out.push_str(&fmt(stderr[i]));
        if let Some(a) = analytic {
            out.push(',');
            out.push_str(&fmt(a[i]));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn write_curve_csv(
    stats: &EnsembleStats,
    analytic: Option<&[f64]>,
    path: &Path,
) -> Result<()> {
    std::fs::write(path, curve_csv_string(stats, analytic)?)?;
    Ok(())
}

/// Parses a file produced by [`write_curve_csv`].
pub fn read_curve_csv(path: &Path) -> Result<ExportedCurve> {
    let text = std::fs::read_to_string(path)?;
    parse_curve_csv(&text)
}

pub fn parse_curve_csv(text: &str) -> Result<ExportedCurve> {
    let mut metadata = BTreeMap::new();
    let mut data = String::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                metadata.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        data.push_str(line);
        data.push('\n');
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(data.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::ExportParse(e.to_string()))?
        .clone();
    let with_analytic = match headers.iter().collect::<Vec<_>>().join(",").as_str() {
        h if h == CSV_HEADER_WITH_ANALYTIC => true,
        h if h == CSV_HEADER_BASE => false,
        other => {
            return Err(Error::ExportParse(format!(
                "unexpected CSV header '{other}'"
            )))
        }
    };
    let mut times = Vec::new();
    let mut mean_g = Vec::new();
    let mut stderr_g = Vec::new();
    let mut analytic_g = if with_analytic { Some(Vec::new()) } else { None };
    for record in reader.records() {
        let record = record.map_err(|e| Error::ExportParse(e.to_string()))?;
        let field = |i: usize| -> Result<f64> {
            record
                .get(i)
                .ok_or_else(|| Error::ExportParse(format!("missing field {i}")))?
                .parse()
                .map_err(|e| Error::ExportParse(format!("bad float: {e}")))
        };
        times.push(field(0)?);
        mean_g.push(field(1)?);
        stderr_g.push(field(2)?);
        if let Some(a) = analytic_g.as_mut() {
            a.push(field(3)?);
        }
    }
    Ok(ExportedCurve {
        metadata,
        times,
        mean_g,
        stderr_g,
        analytic_g,
    })
}

/// JSON export document: metadata plus the spec echo and the raw columns.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurveJson {
    pub format: String,
    pub spec_hash: String,
    pub master_seed: u64,
    pub realizations: u64,
    pub build: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec: Option<RunSpec>,
    pub times: Vec<f64>,
    pub mean_g: Vec<f64>,
    pub stderr_g: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic_g: Option<Vec<f64>>,
}

pub fn curve_json_string(
    stats: &EnsembleStats,
    analytic: Option<&[f64]>,
    spec: Option<&RunSpec>,
) -> Result<String> {
    let doc = CurveJson {
        format: "chaosprobe-curve-v1".into(),
        spec_hash: stats.spec_hash.clone(),
        master_seed: stats.master_seed,
        realizations: stats.count,
        build: format!("chaosprobe {}", env!("CARGO_PKG_VERSION")),
        spec: spec.cloned(),
        times: stats.times.clone(),
        mean_g: stats.mean_g.clone(),
        stderr_g: stats.stderr(),
        analytic_g: analytic.map(|a| a.to_vec()),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::ExportParse(e.to_string()))
}

pub fn write_curve_json(
    stats: &EnsembleStats,
    analytic: Option<&[f64]>,
    spec: Option<&RunSpec>,
    path: &Path,
) -> Result<()> {
    std::fs::write(path, curve_json_string(stats, analytic, spec)?)?;
    Ok(())
}

pub fn read_curve_json(path: &Path) -> Result<CurveJson> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::ExportParse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fake_stats() -> EnsembleStats {
        let mut s = EnsembleStats::empty(vec![0.0, 0.1, 1.0, 10.0], "cafe".into(), 42);
        s.mean_g = vec![1.0, 0.9, 0.31234567890123456, 1.0 / 3.0];
        s.m2_g = vec![0.0, 0.01, 0.002, 3e-17];
        s.count = 7;
        s.completed = (0..7).collect();
        s
    }

    #[test]
    fn csv_round_trips_exactly() {
        let stats = fake_stats();
        let text = curve_csv_string(&stats, None).unwrap();
        let parsed = parse_curve_csv(&text).unwrap();
        assert_eq!(parsed.times, stats.times);
        assert_eq!(parsed.mean_g, stats.mean_g);
        assert_eq!(parsed.stderr_g, stats.stderr());
        assert_eq!(parsed.metadata.get("spec_hash").unwrap(), "cafe");
        assert_eq!(parsed.metadata.get("master_seed").unwrap(), "42");
        // byte-identical re-export
        let again = curve_csv_string(&stats, None).unwrap();
        assert_eq!(text, again);
    }

    #[test]
    fn csv_with_analytic_column() {
        let stats = fake_stats();
        let analytic = vec![1.0, 0.89, 0.3, 0.33];
        let text = curve_csv_string(&stats, Some(&analytic)).unwrap();
        assert!(text.contains(CSV_HEADER_WITH_ANALYTIC));
        let parsed = parse_curve_csv(&text).unwrap();
        assert_eq!(parsed.analytic_g.unwrap(), analytic);
        // length mismatch rejected
        assert!(curve_csv_string(&stats, Some(&analytic[..2])).is_err());
    }

    #[test]
    fn json_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("curve.json");
        let stats = fake_stats();
        write_curve_json(&stats, None, None, &path).unwrap();
        let doc = read_curve_json(&path).unwrap();
        assert_eq!(doc.mean_g, stats.mean_g);
        assert_eq!(doc.spec_hash, "cafe");
        assert_eq!(doc.realizations, 7);
    }
}

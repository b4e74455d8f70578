//! Dip/ramp/plateau diagnostics of averaged curves.
//!
//! The plateau estimate is the mean of `⟨G⟩` over the last decade of the
//! grid; the dip is the minimum of a 5-point median-smoothed curve restricted
//! to earlier times. Ratios are scale-free: rescaling the time axis moves
//! `dip_time` but changes neither `dip_depth_ratio` nor `ramp_span_decades`.
//! Thresholds are conventions of this crate and are configurable.

use crate::ensemble::EnsembleStats;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticsConfig {
    /// Width of the trailing plateau window, in decades.
    pub plateau_window_decades: f64,
    /// Median smoothing window (odd; shrinks near the edges).
    pub smoothing_points: usize,
    /// Minimum plateau/dip ratio for a dip to count as present.
    pub dip_threshold: f64,
    /// Fraction of the plateau the smoothed curve must reach to end the ramp.
    pub plateau_reach_fraction: f64,
    /// Minimum grid span required, in decades.
    pub min_decades: f64,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            plateau_window_decades: 1.0,
            smoothing_points: 5,
            dip_threshold: 1.25,
            plateau_reach_fraction: 0.8,
            min_decades: 3.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveDiagnostics {
    /// Mean of the curve over the trailing plateau window.
    pub plateau_estimate: f64,
    /// Location of the smoothed pre-plateau minimum.
    pub dip_time: f64,
    /// `plateau_estimate / min(smoothed curve)`, at least 1.
    pub dip_depth_ratio: f64,
    /// `log10(t_plateau_reached / dip_time)`, 0 when no dip is present.
    pub ramp_span_decades: f64,
}

fn median_smooth(values: &[f64], window: usize) -> Vec<f64> {
    let radius = window / 2;
    let n = values.len();
    let mut out = Vec::with_capacity(n);
    let mut buf = Vec::with_capacity(window);
    for i in 0..n {
        let r = radius.min(i).min(n - 1 - i);
        buf.clear();
        buf.extend_from_slice(&values[i - r..=i + r]);
        buf.sort_by(f64::total_cmp);
        out.push(buf[buf.len() / 2]);
    }
    out
}

/// Diagnoses a `(t, G)` curve; `t = 0` entries are ignored.
pub fn diagnose_curve(
    times: &[f64],
    values: &[f64],
    cfg: &DiagnosticsConfig,
) -> Result<CurveDiagnostics> {
    let pairs: Vec<(f64, f64)> = times
        .iter()
        .zip(values)
        .filter(|(&t, _)| t > 0.0)
        .map(|(&t, &v)| (t, v))
        .collect();
    if pairs.len() < 8 {
        return Err(Error::GridTooShort {
            decades: 0.0,
            required: cfg.min_decades,
        });
    }
    let t_min = pairs.first().unwrap().0;
    let t_max = pairs.last().unwrap().0;
    let decades = (t_max / t_min).log10();
    if decades < cfg.min_decades {
        return Err(Error::GridTooShort {
            decades,
            required: cfg.min_decades,
        });
    }

    let window_start = t_max / 10f64.powf(cfg.plateau_window_decades);
    let plateau_values: Vec<f64> = pairs
        .iter()
        .filter(|(t, _)| *t >= window_start)
        .map(|(_, v)| *v)
        .collect();
    let plateau_estimate = plateau_values.iter().sum::<f64>() / plateau_values.len() as f64;

    let raw: Vec<f64> = pairs.iter().map(|(_, v)| *v).collect();
    let smoothed = median_smooth(&raw, cfg.smoothing_points.max(1) | 1);

    let pre_plateau: Vec<(f64, f64)> = pairs
        .iter()
        .zip(&smoothed)
        .filter(|((t, _), _)| *t < window_start)
        .map(|((t, _), &s)| (*t, s))
        .collect();
    if pre_plateau.is_empty() {
        return Err(Error::GridTooShort {
            decades,
            required: cfg.min_decades,
        });
    }
    let (dip_time, dip_value) = pre_plateau
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let floor = dip_value.min(plateau_estimate).max(f64::MIN_POSITIVE);
    let dip_depth_ratio = plateau_estimate / floor;

    let ramp_span_decades = if dip_depth_ratio >= cfg.dip_threshold {
        let target = plateau_estimate * cfg.plateau_reach_fraction;
        let reach = pairs
            .iter()
            .zip(&smoothed)
            .find(|((t, _), &s)| *t >= dip_time && s >= target)
            .map(|((t, _), _)| *t)
            .unwrap_or(window_start);
        (reach / dip_time).log10().max(0.0)
    } else {
        0.0
    };

    Ok(CurveDiagnostics {
        plateau_estimate,
        dip_time,
        dip_depth_ratio,
        ramp_span_decades,
    })
}

/// Diagnoses the ensemble mean curve.
pub fn diagnose(stats: &EnsembleStats, cfg: &DiagnosticsConfig) -> Result<CurveDiagnostics> {
    diagnose_curve(&stats.times, &stats.mean_g, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{avg_g_curve, plateau, GoeAnalyticParams};
    use crate::runspec::TimeGrid;

    #[test]
    fn analytic_goe_curve_shows_dip_ramp_plateau() {
        let p = GoeAnalyticParams::new(1024, 1.0, 0.01).unwrap();
        let times = TimeGrid::new(1e-2, 1e3, 400).times();
        let curve = avg_g_curve(&times, &p).unwrap();
        let d = diagnose_curve(&times, &curve, &DiagnosticsConfig::default()).unwrap();
        assert!(d.dip_depth_ratio > 3.0, "ratio {}", d.dip_depth_ratio);
        assert!(d.ramp_span_decades > 0.5, "span {}", d.ramp_span_decades);
        let pl = plateau(&p).unwrap();
        assert!(
            (d.plateau_estimate / pl - 1.0).abs() < 0.05,
            "plateau {} vs {}",
            d.plateau_estimate,
            pl
        );
    }

    #[test]
    fn monotone_decay_has_no_ramp() {
        let times = TimeGrid::new(1e-2, 1e2, 200).times();
        let values: Vec<f64> = times
            .iter()
            .map(|&t| 0.01 + 1.0 / (1.0 + (4.0 * t).powi(2)))
            .collect();
        let d = diagnose_curve(&times, &values, &DiagnosticsConfig::default()).unwrap();
        assert_eq!(d.ramp_span_decades, 0.0);
        assert!(d.dip_depth_ratio < 1.25);
    }

    #[test]
    fn ratios_are_invariant_under_time_rescaling() {
        let p = GoeAnalyticParams::new(256, 1.0, 0.01).unwrap();
        let times = TimeGrid::new(1e-2, 1e3, 300).times();
        let curve = avg_g_curve(&times, &p).unwrap();
        let cfg = DiagnosticsConfig::default();
        let base = diagnose_curve(&times, &curve, &cfg).unwrap();
        // same samples on a rescaled axis: G'(t) = G(8t)
        let rescaled: Vec<f64> = times.iter().map(|&t| t / 8.0).collect();
        let moved = diagnose_curve(&rescaled, &curve, &cfg).unwrap();
        assert!((base.dip_depth_ratio - moved.dip_depth_ratio).abs() <= 1e-9);
        assert!((base.ramp_span_decades - moved.ramp_span_decades).abs() <= 1e-9);
        assert!((moved.dip_time * 8.0 - base.dip_time).abs() <= 1e-9 * base.dip_time);
    }

    #[test]
    fn short_grids_are_rejected() {
        let times = TimeGrid::new(0.1, 10.0, 50).times();
        let values = vec![0.5; times.len()];
        assert!(matches!(
            diagnose_curve(&times, &values, &DiagnosticsConfig::default()),
            Err(Error::GridTooShort { .. })
        ));
    }

    #[test]
    fn median_smoothing_suppresses_spikes() {
        let mut v = vec![1.0; 11];
        v[5] = 100.0;
        let s = median_smooth(&v, 5);
        assert_eq!(s[5], 1.0);
        assert_eq!(s[0], 1.0);
    }
}

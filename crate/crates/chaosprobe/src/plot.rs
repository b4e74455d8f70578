//! Minimal SVG log-log plotting for averaged curves.
//!
//! One polyline per labeled series on shared log-log axes (`t` horizontal,
//! `⟨G(t)⟩` vertical), decade ticks, and a legend. Non-positive points
//! cannot appear on log axes and are dropped; the drop count is embedded as
//! an SVG comment and returned to the caller.

use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct PlotSeries {
    pub label: String,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 600.0;
const MARGIN_L: f64 = 80.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 28.0;
const MARGIN_B: f64 = 56.0;
const PALETTE: [&str; 8] = [
    "#1f5fa8", "#c9303e", "#2e8b57", "#8951a8", "#e07b27", "#6b4f2e", "#1a9eaa", "#666666",
];

/// Renders the SVG document; returns it with the number of dropped points.
pub fn render_svg(series: &[PlotSeries]) -> Result<(String, usize)> {
    if series.is_empty() {
        return Err(Error::EmptySeries {
            label: "(no series)".into(),
        });
    }
    let mut dropped = 0usize;
    let mut cleaned: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for s in series {
        let pts: Vec<(f64, f64)> = s
            .times
            .iter()
            .zip(&s.values)
            .filter(|(&t, &v)| t > 0.0 && v > 0.0 && t.is_finite() && v.is_finite())
            .map(|(&t, &v)| (t.log10(), v.log10()))
            .collect();
        dropped += s.times.len() - pts.len();
        if pts.is_empty() {
            return Err(Error::EmptySeries {
                label: s.label.clone(),
            });
        }
        cleaned.push((s.label.clone(), pts));
    }

    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    let mut y_lo = f64::INFINITY;
    let mut y_hi = f64::NEG_INFINITY;
    for (_, pts) in &cleaned {
        for &(x, y) in pts {
            x_lo = x_lo.min(x);
            x_hi = x_hi.max(x);
            y_lo = y_lo.min(y);
            y_hi = y_hi.max(y);
        }
    }
    // pad to whole decades so ticks land on the frame
    let x_lo = x_lo.floor();
    let x_hi = x_hi.ceil().max(x_lo + 1.0);
    let y_lo = y_lo.floor();
    let y_hi = y_hi.ceil().max(y_lo + 1.0);

    let plot_w = WIDTH - MARGIN_L - MARGIN_R;
    let plot_h = HEIGHT - MARGIN_T - MARGIN_B;
    let px = |x: f64| MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!("<!-- dropped {dropped} non-positive points -->\n"));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // decade grid and ticks
    let mut k = x_lo as i64;
    while k as f64 <= x_hi {
        let x = px(k as f64);
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#dddddd\"/>\n",
            MARGIN_T,
            MARGIN_T + plot_h
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\">1e{k}</text>\n",
            MARGIN_T + plot_h + 20.0
        ));
        k += 1;
    }
    let mut k = y_lo as i64;
    while k as f64 <= y_hi {
        let y = py(k as f64);
        svg.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#dddddd\"/>\n",
            MARGIN_L,
            MARGIN_L + plot_w
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"end\">1e{k}</text>\n",
            MARGIN_L - 8.0,
            y + 4.0
        ));
        k += 1;
    }

    // frame and axis labels
    svg.push_str(&format!(
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"black\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"15\" text-anchor=\"middle\">t</text>\n",
        MARGIN_L + plot_w / 2.0,
        HEIGHT - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" font-size=\"15\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {:.1})\">&#x27E8;G(t)&#x27E9;</text>\n",
        MARGIN_T + plot_h / 2.0,
        MARGIN_T + plot_h / 2.0
    ));

    // series
    for (i, (_, pts)) in cleaned.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        for (j, &(x, y)) in pts.iter().enumerate() {
            d.push_str(if j == 0 { "M" } else { " L" });
            d.push_str(&format!("{:.2} {:.2}", px(x), py(y)));
        }
        svg.push_str(&format!(
            "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\"/>\n"
        ));
    }

    // legend
    let legend_x = MARGIN_L + plot_w - 200.0;
    let mut legend_y = MARGIN_T + 16.0;
    for (i, (label, _)) in cleaned.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        svg.push_str(&format!(
            "<line x1=\"{legend_x}\" y1=\"{legend_y}\" x2=\"{:.1}\" y2=\"{legend_y}\" \
             stroke=\"{color}\" stroke-width=\"2\"/>\n",
            legend_x + 26.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\">{}</text>\n",
            legend_x + 32.0,
            legend_y + 4.0,
            xml_escape(label)
        ));
        legend_y += 18.0;
    }

    svg.push_str("</svg>\n");
    Ok((svg, dropped))
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes the plot; returns how many non-positive points were dropped.
pub fn write_svg(series: &[PlotSeries], path: &Path) -> Result<usize> {
    let (svg, dropped) = render_svg(series)?;
    std::fs::write(path, svg)?;
    Ok(dropped)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_series_renders_horizontal_line() {
        let s = PlotSeries {
            label: "flat".into(),
            times: vec![0.0, 1.0, 10.0, 100.0],
            values: vec![1.0, 0.5, 0.5, 0.5],
        };
        let (svg, dropped) = render_svg(&[s]).unwrap();
        assert_eq!(dropped, 1); // the t = 0 point
        assert!(svg.contains("<path"));
        assert!(svg.contains("flat"));
        // all three surviving y coordinates equal
        let path_line = svg.lines().find(|l| l.starts_with("<path")).unwrap();
        let d_start = path_line.find("d=\"").unwrap() + 3;
        let d_end = d_start + path_line[d_start..].find('"').unwrap();
        let ys: Vec<&str> = path_line[d_start..d_end]
            .trim_start_matches('M')
            .split(" L")
            .map(|seg| seg.trim().split(' ').nth(1).unwrap())
            .collect();
        assert_eq!(ys.len(), 3);
        assert!(ys.windows(2).all(|w| w[0] == w[1]), "{ys:?}");
    }

    #[test]
    fn multi_series_overlay_has_legend_entries() {
        let mk = |label: &str, scale: f64| PlotSeries {
            label: label.into(),
            times: vec![0.1, 1.0, 10.0],
            values: vec![1.0 * scale, 0.1 * scale, 0.01 * scale],
        };
        let (svg, _) = render_svg(&[mk("mc", 1.0), mk("analytic", 0.9)]).unwrap();
        assert!(svg.contains("mc"));
        assert!(svg.contains("analytic"));
        assert_eq!(svg.matches("<path").count(), 2);
    }

    #[test]
    fn empty_series_is_rejected() {
        assert!(render_svg(&[]).is_err());
        let s = PlotSeries {
            label: "bad".into(),
            times: vec![0.0, 1.0],
            values: vec![1.0, -0.5],
        };
        match render_svg(&[s]) {
            Err(Error::EmptySeries { label }) => assert_eq!(label, "bad"),
            other => panic!("expected EmptySeries, got {other:?}"),
        }
    }
}

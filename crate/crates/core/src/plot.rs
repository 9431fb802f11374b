//! Minimal SVG line charts for sweep results.
//!
//! Each series is drawn as the trial mean with a shaded band of one standard
//! deviation above and below.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::Metric;
use crate::sweep::{SweepAxis, SweepResult};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 460.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

const VIRIDIS: [&str; 9] = [
    "#440154", "#472d7b", "#3b528b", "#2c728e", "#21918c", "#28ae80", "#5ec962", "#addc30",
    "#fde725",
];
const METRIC_COLORS: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];
const DASHES: [&str; 6] = ["", "7 3", "2 3", "9 3 2 3", "1 4", "12 4"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub x: f64,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub dash: String,
    pub points: Vec<SeriesPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Fixed y range; derived from the data when `None`.
    pub y_range: Option<(f64, f64)>,
    pub log_y: bool,
    pub series: Vec<Series>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn nice_step(span: f64, target: usize) -> f64 {
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn linear_ticks(lo: f64, hi: f64) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    let step = nice_step(hi - lo, 5);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-3 {
        format!("{v:.0e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

impl LineChart {
    fn x_extent(&self) -> (f64, f64) {
        let xs = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.x));
        let (lo, hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
            (a.min(x), b.max(x))
        });
        if lo == hi {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    }

    fn y_extent(&self) -> (f64, f64) {
        if let Some(r) = self.y_range {
            return r;
        }
        let vals = self.series.iter().flat_map(|s| {
            s.points
                .iter()
                .flat_map(|p| [p.mean - p.std, p.mean + p.std])
                .filter(|v| !self.log_y || *v > 0.0)
        });
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
        if !lo.is_finite() {
            return if self.log_y { (1e-3, 1.0) } else { (0.0, 1.0) };
        }
        if self.log_y {
            (
                10f64.powf(lo.log10().floor()),
                10f64.powf(hi.log10().ceil().max(lo.log10().floor() + 1.0)),
            )
        } else if lo == hi {
            (lo - 0.5, hi + 0.5)
        } else {
            (lo, hi)
        }
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1) = self.x_extent();
        let (y0, y1) = self.y_extent();
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let (ly0, ly1) = (y0.log10(), y1.log10());
        let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| {
            let t = if self.log_y {
                (y.max(y0).log10() - ly0) / (ly1 - ly0)
            } else {
                (y - y0) / (y1 - y0)
            };
            TOP + (1.0 - t.clamp(-0.05, 1.05)) * ph
        };

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(
            svg,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&self.title)
        );

        // axes and grid
        let _ = writeln!(svg, r##"<g stroke="#ccc" stroke-width="0.5">"##);
        let xt = linear_ticks(x0, x1);
        for &t in &xt {
            let _ = writeln!(
                svg,
                r#"<line x1="{0:.2}" y1="{TOP}" x2="{0:.2}" y2="{1:.2}"/>"#,
                sx(t),
                TOP + ph
            );
        }
        let yt: Vec<f64> = if self.log_y {
            let step = ((ly1 - ly0) / 6.0).ceil().max(1.0) as i64;
            (ly0.round() as i64..=ly1.round() as i64)
                .step_by(step as usize)
                .map(|e| 10f64.powi(e as i32))
                .collect()
        } else {
            linear_ticks(y0, y1)
        };
        for &t in &yt {
            let _ = writeln!(
                svg,
                r#"<line x1="{LEFT}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}"/>"#,
                sy(t),
                LEFT + pw
            );
        }
        let _ = writeln!(svg, "</g>");
        let _ = writeln!(
            svg,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for &t in &xt {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                sx(t),
                TOP + ph + 16.0,
                tick_label(t)
            );
        }
        for &t in &yt {
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                sy(t) + 4.0,
                tick_label(t)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text transform="translate(18 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );

        // bands, then lines
        for s in &self.series {
            if s.points.iter().all(|p| p.std == 0.0) {
                continue;
            }
            let upper = s.points.iter().map(|p| (p.x, p.mean + p.std));
            let lower = s.points.iter().rev().map(|p| (p.x, p.mean - p.std));
            let pts: Vec<String> = upper
                .chain(lower)
                .map(|(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polygon points="{}" fill="{}" fill-opacity="0.2" stroke="none"/>"#,
                pts.join(" "),
                s.color
            );
        }
        for s in &self.series {
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|p| format!("{:.2},{:.2}", sx(p.x), sy(p.mean)))
                .collect();
            let dash = if s.dash.is_empty() {
                String::new()
            } else {
                format!(r#" stroke-dasharray="{}""#, s.dash)
            };
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.6"{dash}/>"#,
                pts.join(" "),
                s.color
            );
        }

        // legend
        let lx = LEFT + pw + 14.0;
        for (i, s) in self.series.iter().enumerate() {
            let y = TOP + 8.0 + i as f64 * 16.0;
            if y > HEIGHT - 10.0 {
                break;
            }
            let dash = if s.dash.is_empty() {
                String::new()
            } else {
                format!(r#" stroke-dasharray="{}""#, s.dash)
            };
            let _ = writeln!(
                svg,
                r#"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="2"{dash}/>"#,
                lx + 26.0,
                s.color
            );
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}">{}</text>"#,
                lx + 32.0,
                y + 4.0,
                escape(&s.label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn mean_std(vals: &[f64]) -> (f64, f64) {
    let n = vals.len() as f64;
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// One series per `(metric, d)`, averaging over trials at each parameter value.
pub fn sweep_series(result: &SweepResult, metrics: &[Metric]) -> Vec<Series> {
    let dims: Vec<Option<usize>> = {
        let mut d: Vec<Option<usize>> = result.records.iter().map(|r| r.d).collect();
        d.sort();
        d.dedup();
        d
    };
    let multi_d = dims.len() > 1;
    let mut out = Vec::new();
    for (mi, &metric) in metrics.iter().enumerate() {
        for (di, &d) in dims.iter().enumerate() {
            let mut by_x: BTreeMap<u64, (f64, Vec<f64>)> = BTreeMap::new();
            for r in result.records.iter().filter(|r| r.d == d) {
                // order-preserving key for non-negative parameters
                by_x.entry(r.param.to_bits())
                    .or_insert_with(|| (r.param, Vec::new()))
                    .1
                    .push(r.values.get(metric));
            }
            let mut points: Vec<SeriesPoint> = by_x
                .into_values()
                .map(|(x, vals)| {
                    let (mean, std) = mean_std(&vals);
                    SeriesPoint { x, mean, std }
                })
                .collect();
            points.sort_by(|a, b| a.x.total_cmp(&b.x));
            let color = if multi_d {
                let t = di as f64 / (dims.len() - 1) as f64;
                VIRIDIS[(t * (VIRIDIS.len() - 1) as f64).round() as usize]
            } else {
                METRIC_COLORS[mi % METRIC_COLORS.len()]
            };
            let label = match d {
                Some(d) if multi_d => format!("{} d={d}", metric.label()),
                _ => metric.label().to_string(),
            };
            out.push(Series {
                label,
                color: color.to_string(),
                dash: if multi_d {
                    DASHES[mi % DASHES.len()].to_string()
                } else {
                    String::new()
                },
                points,
            });
        }
    }
    out
}

pub fn sweep_chart(result: &SweepResult, metrics: &[Metric]) -> LineChart {
    let family = result.records.first().map_or("", |r| r.family.as_str());
    let (x_label, title) = match result.axis {
        SweepAxis::Radius => ("radius of generated support", format!("{family} supports")),
        SweepAxis::Scale => ("scale s", format!("{family} scaling")),
    };
    LineChart {
        title,
        x_label: x_label.into(),
        y_label: "metric value".into(),
        y_range: Some((0.0, 1.0)),
        log_y: false,
        series: sweep_series(result, metrics),
    }
}

pub fn render_svg_string(result: &SweepResult, metrics: &[Metric]) -> Result<String> {
    if result.is_empty() {
        return Err(Error::InvalidInput("cannot plot an empty sweep".into()));
    }
    if metrics.is_empty() {
        return Err(Error::InvalidInput(
            "no metrics selected for plotting".into(),
        ));
    }
    Ok(sweep_chart(result, metrics).to_svg())
}

pub fn render_svg(result: &SweepResult, metrics: &[Metric], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let svg = render_svg_string(result, metrics)?;
    fs::write(path, svg).map_err(|e| Error::io(path, e))
}

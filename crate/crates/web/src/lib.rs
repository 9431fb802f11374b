//! Browser bindings: each export runs a small experiment and returns an SVG
//! string for the page to drop into the DOM.

use genpr::caps::{
    cap_area_fraction, cap_fraction_approx, cap_volume_fraction, nn_fraction, CapKind, CapQuery,
};
use genpr::grid::range_inclusive;
use genpr::plot::{LineChart, Series, SeriesPoint};
use genpr::sweep::run_synthetic_sweep;
use genpr::{Metric, PairFamily, RngSpec, SweepConfig};
use wasm_bindgen::prelude::*;

/// Largest cloud the page will evaluate; keeps a single-threaded run interactive.
pub const MAX_DEMO_N: usize = 3000;

fn point(x: f64, y: f64) -> SeriesPoint {
    SeriesPoint {
        x,
        mean: y,
        std: 0.0,
    }
}

/// Six metrics against the radius of the generated support for one dimension.
#[allow(clippy::too_many_arguments)]
pub fn radius_sweep(
    family: &str,
    d: usize,
    n: usize,
    k: usize,
    r_min: f64,
    r_max: f64,
    r_step: f64,
    seed: u32,
) -> genpr::Result<String> {
    if n > MAX_DEMO_N {
        return Err(genpr::Error::InvalidInput(format!(
            "n is capped at {MAX_DEMO_N} in the browser"
        )));
    }
    let cfg = SweepConfig {
        family: family.parse()?,
        dims: vec![d],
        radii: range_inclusive(r_min, r_max, r_step)?,
        n,
        k,
        trials: 1,
        seed: u64::from(seed),
        out_path: None,
    };
    let result = run_synthetic_sweep(&cfg)?;
    let mut chart = genpr::plot::sweep_chart(&result, &Metric::ALL);
    chart.title = format!("{} supports, d = {d}, n = {n}, k = {k}", cfg.family);
    Ok(chart.to_svg())
}

/// Exact and approximate cap fractions against dimension, on a log axis.
pub fn cap_curves(phi: f64, d_max: usize) -> genpr::Result<String> {
    if d_max < 3 {
        return Err(genpr::Error::InvalidInput(
            "d_max must be at least 3".into(),
        ));
    }
    let dims: Vec<usize> = (2..=d_max).collect();
    let mut vol = Vec::new();
    let mut area = Vec::new();
    let mut vol_approx = Vec::new();
    let mut area_approx = Vec::new();
    for &d in &dims {
        let q = CapQuery::new(d, phi)?;
        let x = d as f64;
        vol.push(point(x, cap_volume_fraction(q)?));
        area.push(point(x, cap_area_fraction(q)?));
        if phi < std::f64::consts::FRAC_PI_2 {
            vol_approx.push(point(x, cap_fraction_approx(q, CapKind::Volume)?));
            area_approx.push(point(x, cap_fraction_approx(q, CapKind::Area)?));
        }
    }
    let series = |label: &str, color: &str, dash: &str, points: Vec<SeriesPoint>| Series {
        label: label.into(),
        color: color.into(),
        dash: dash.into(),
        points,
    };
    let mut all = vec![
        series("volume", "#1f77b4", "", vol),
        series("area", "#d62728", "", area),
    ];
    if !vol_approx.is_empty() {
        all.push(series("volume (large d)", "#1f77b4", "6 3", vol_approx));
        all.push(series("area (large d)", "#d62728", "6 3", area_approx));
    }
    // drop underflowed tails so the log axis stays readable
    for s in &mut all {
        s.points.retain(|p| p.mean > 1e-300);
    }
    let chart = LineChart {
        title: format!("cap fraction at colatitude {phi:.3} rad"),
        x_label: "dimension d".into(),
        y_label: "fraction of ball / sphere".into(),
        y_range: None,
        log_y: true,
        series: all,
    };
    Ok(chart.to_svg())
}

/// Fraction of points whose nearest neighbor on the unit sphere is at least
/// `t` away, for dimensions 2, 4, ..., up to `d_max`.
pub fn concentration(
    n: usize,
    t: f64,
    trials: usize,
    d_max: usize,
    seed: u32,
) -> genpr::Result<String> {
    if n > MAX_DEMO_N {
        return Err(genpr::Error::InvalidInput(format!(
            "n is capped at {MAX_DEMO_N} in the browser"
        )));
    }
    let mut pts = Vec::new();
    let mut d = 2;
    while d <= d_max.max(2) {
        let f = nn_fraction(d, n, t, trials, RngSpec::new(u64::from(seed), d as u64))?;
        pts.push(point(d as f64, f));
        d *= 2;
    }
    let chart = LineChart {
        title: format!("nearest-neighbor distance >= {t} (n = {n})"),
        x_label: "dimension d".into(),
        y_label: "fraction of points".into(),
        y_range: Some((0.0, 1.0)),
        log_y: false,
        series: vec![Series {
            label: format!("t = {t}"),
            color: "#2ca02c".into(),
            dash: String::new(),
            points: pts,
        }],
    };
    Ok(chart.to_svg())
}

fn js_err(e: genpr::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = radiusSweepSvg)]
#[allow(clippy::too_many_arguments)]
pub fn radius_sweep_svg(
    family: &str,
    d: usize,
    n: usize,
    k: usize,
    r_min: f64,
    r_max: f64,
    r_step: f64,
    seed: u32,
) -> Result<String, JsError> {
    radius_sweep(family, d, n, k, r_min, r_max, r_step, seed).map_err(js_err)
}

#[wasm_bindgen(js_name = capCurvesSvg)]
pub fn cap_curves_svg(phi: f64, d_max: usize) -> Result<String, JsError> {
    cap_curves(phi, d_max).map_err(js_err)
}

#[wasm_bindgen(js_name = concentrationSvg)]
pub fn concentration_svg(
    n: usize,
    t: f64,
    trials: usize,
    d_max: usize,
    seed: u32,
) -> Result<String, JsError> {
    concentration(n, t, trials, d_max, seed).map_err(js_err)
}

#[wasm_bindgen(js_name = families)]
pub fn families() -> Vec<String> {
    PairFamily::ALL
        .iter()
        .map(|f| f.key().to_string())
        .collect()
}

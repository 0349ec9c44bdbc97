//! Scatter plot of country means with the fitted line and its confidence band,
//! rendered as a standalone SVG document.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::stats::RegressionFit;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

/// Number of x positions at which the band outline is sampled.
pub const BAND_SAMPLES: usize = 120;

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub x: f64,
    pub y: f64,
    pub label: String,
    pub weight: f64,
}

/// Band outline in data space: `(x, lo, hi)` at `samples` evenly spaced
/// positions from `x_min` to `x_max`.
pub fn band_outline(
    fit: &RegressionFit,
    x_min: f64,
    x_max: f64,
    level: f64,
    samples: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    let steps = samples.max(2) - 1;
    (0..=steps)
        .map(|i| {
            let x = x_min + (x_max - x_min) * i as f64 / steps as f64;
            fit.confidence_band(x, level).map(|(lo, hi)| (x, lo, hi))
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders points, the least-squares line and its `level` confidence band.
pub fn report_scatter(
    points: &[ScatterPoint],
    fit: &RegressionFit,
    level: f64,
    title: &str,
    x_label: &str,
    y_label: &str,
) -> Result<String> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: points.len(),
        });
    }
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        x_min = x_min.min(p.x);
        x_max = x_max.max(p.x);
    }
    if !x_min.is_finite() || !x_max.is_finite() || x_max <= x_min {
        return Err(Error::DegenerateAxis);
    }
    let band = band_outline(fit, x_min, x_max, level, BAND_SAMPLES)?;

    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        y_min = y_min.min(p.y);
        y_max = y_max.max(p.y);
    }
    for &(_, lo, hi) in &band {
        y_min = y_min.min(lo);
        y_max = y_max.max(hi);
    }
    if !y_min.is_finite() || !y_max.is_finite() {
        return Err(Error::DegenerateAxis);
    }
    if y_max <= y_min {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let x_pad = 0.05 * (x_max - x_min);
    let y_pad = 0.05 * (y_max - y_min);
    let (x0, x1) = (x_min - x_pad, x_max + x_pad);
    let (y0, y1) = (y_min - y_pad, y_max + y_pad);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let py = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        w,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    // axes and ticks
    let _ = writeln!(
        w,
        r#"<g stroke="black" stroke-width="1"><line x1="{LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.2}"/></g>"#,
        TOP + plot_h,
        LEFT + plot_w,
        TOP + plot_h,
        TOP + plot_h
    );
    let _ = writeln!(w, r#"<g font-family="sans-serif" font-size="11">"#);
    for i in 0..=5 {
        let xv = x0 + (x1 - x0) * i as f64 / 5.0;
        let yv = y0 + (y1 - y0) * i as f64 / 5.0;
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{xv:.2}</text>"#,
            px(xv),
            TOP + plot_h + 16.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.2}</text>"#,
            LEFT - 6.0,
            py(yv) + 4.0
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(y_label)
    );

    // band: upper edge left to right, lower edge right to left
    let mut outline = String::new();
    for &(x, _, hi) in &band {
        let _ = write!(outline, "{:.2},{:.2} ", px(x), py(hi));
    }
    for &(x, lo, _) in band.iter().rev() {
        let _ = write!(outline, "{:.2},{:.2} ", px(x), py(lo));
    }
    let _ = writeln!(
        w,
        r##"<polygon class="band" points="{}" fill="#9ecae1" fill-opacity="0.5" stroke="none"/>"##,
        outline.trim_end()
    );
    let _ = writeln!(
        w,
        r##"<line class="fit" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#08519c" stroke-width="2"/>"##,
        px(x_min),
        py(fit.predict(x_min)),
        px(x_max),
        py(fit.predict(x_max))
    );

    let w_max = points.iter().map(|p| p.weight).fold(0.0, f64::max);
    let _ = writeln!(w, r##"<g fill="#d94801" fill-opacity="0.7">"##);
    for p in points {
        let r = if w_max > 0.0 {
            2.0 + 6.0 * (p.weight.max(0.0) / w_max).sqrt()
        } else {
            3.0
        };
        let _ = writeln!(
            w,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}"><title>{}</title></circle>"#,
            px(p.x),
            py(p.y),
            escape(&p.label)
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

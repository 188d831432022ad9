//! Minimal SVG line plots of sweep tables.
//!
//! The first column is the abscissa, every other column one polyline. Output
//! depends only on the table and the options, so equal input gives equal
//! bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::table::Table;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PlotOptions {
    /// `None` picks log scale when the abscissa is a positive geometric grid.
    pub log_x: Option<bool>,
    pub log_y: bool,
}

/// Whether `xs` is a positive grid with a constant ratio other than one.
pub fn is_geometric(xs: &[f64]) -> bool {
    if xs.len() < 3 || xs.iter().any(|&x| !(x > 0.0)) {
        return false;
    }
    let r = xs[1] / xs[0];
    let uniform_ratio = xs
        .windows(2)
        .all(|w| ((w[1] / w[0]) / r - 1.0).abs() < 1e-9);
    let d = xs[1] - xs[0];
    let uniform_step = xs
        .windows(2)
        .all(|w| ((w[1] - w[0]) - d).abs() <= 1e-9 * d.abs());
    uniform_ratio && !uniform_step
}

struct Scale {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Scale {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Option<Self> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| v.is_finite() && (!log || *v > 0.0)) {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() {
            return None;
        }
        if hi == lo {
            let pad = if lo == 0.0 { 1.0 } else { 0.05 * lo.abs() };
            lo -= pad;
            hi += pad;
        }
        Some(Scale { lo, hi, log })
    }

    /// Position in [0, 1], or `None` when the value cannot be drawn.
    fn unit(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let v = if self.log { v.log10() } else { v };
        Some((v - self.lo) / (self.hi - self.lo))
    }

    fn label(&self, u: f64) -> String {
        let v = self.lo + u * (self.hi - self.lo);
        let v = if self.log { 10f64.powf(v) } else { v };
        format!("{v:.3e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render(table: &Table, opts: &PlotOptions) -> Result<String> {
    if table.columns() < 2 {
        return Err(Error::Parse(
            "plot needs an axis column and at least one data column".into(),
        ));
    }
    let xs = table.column(0);
    if xs.iter().any(Option::is_none) {
        return Err(Error::Parse("axis column has empty cells".into()));
    }
    let xs: Vec<f64> = xs.into_iter().flatten().collect();
    let log_x = opts.log_x.unwrap_or_else(|| is_geometric(&xs));
    let sx = Scale::fit(xs.iter().copied(), log_x)
        .ok_or_else(|| Error::Parse("axis column has no drawable values".into()))?;
    let ys = (1..table.columns()).flat_map(|k| table.column(k)).flatten();
    let sy = Scale::fit(ys, opts.log_y).unwrap_or(Scale {
        lo: 0.0,
        hi: 1.0,
        log: opts.log_y,
    });

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |u: f64| LEFT + u * pw;
    let py = |u: f64| TOP + (1.0 - u) * ph;

    let mut s = String::new();
    let w = &mut s;
    let ok = "writing to a String cannot fail";
    writeln!(w, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#).expect(ok);
    writeln!(
        w,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    )
    .expect(ok);
    for k in 0..=4 {
        let u = k as f64 / 4.0;
        writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(u),
            HEIGHT - BOTTOM + 16.0,
            sx.label(u)
        )
        .expect(ok);
        writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            py(u) + 4.0,
            sy.label(u)
        )
        .expect(ok);
    }
    let scale_note = |log: bool| if log { " (log)" } else { "" };
    writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}{}</text>"#,
        px(0.5),
        HEIGHT - 10.0,
        escape(&table.header[0]),
        scale_note(log_x)
    )
    .expect(ok);
    if opts.log_y {
        writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}">(log)</text>"#,
            6.0,
            TOP + 10.0
        )
        .expect(ok);
    }

    for k in 1..table.columns() {
        let color = COLORS[(k - 1) % COLORS.len()];
        // missing or undrawable values split the curve
        let mut segment: Vec<String> = Vec::new();
        let mut segments = Vec::new();
        for (x, y) in xs.iter().zip(table.column(k)) {
            match (sx.unit(*x), y.and_then(|y| sy.unit(y))) {
                (Some(ux), Some(uy)) => segment.push(format!("{:.2},{:.2}", px(ux), py(uy))),
                _ => segments.push(std::mem::take(&mut segment)),
            }
        }
        segments.push(segment);
        for seg in segments.iter().filter(|seg| !seg.is_empty()) {
            writeln!(
                w,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                seg.join(" ")
            )
            .expect(ok);
        }
        let ly = TOP + 14.0 * k as f64;
        let lx = WIDTH - RIGHT + 10.0;
        writeln!(w, r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#, ly - 4.0, lx + 18.0, ly - 4.0).expect(ok);
        writeln!(
            w,
            r#"<text x="{:.2}" y="{ly:.2}">{}</text>"#,
            lx + 24.0,
            escape(&table.header[k])
        )
        .expect(ok);
    }
    writeln!(w, "</svg>").expect(ok);
    Ok(s)
}

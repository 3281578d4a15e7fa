use std::fmt::Write;

use modlyap::Error;

use crate::format::FORMAT_VERSION;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;

#[derive(Clone, Debug, PartialEq)]
pub struct PlotOptions {
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub title: String,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { x_range: (0.0, 0.5), y_range: (620.0, 685.0), title: "Lambda~_j".into() }
    }
}

impl PlotOptions {
    /// Ranges fitted to the data with a small margin.
    pub fn fitted(points: &[(f64, f64)], title: &str) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::EmptyData);
        }
        let span = |vals: Vec<f64>| {
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let pad = if hi > lo { 0.05 * (hi - lo) } else { 0.5 * lo.abs().max(1.0) };
            (lo - pad, hi + pad)
        };
        Ok(PlotOptions {
            x_range: span(points.iter().map(|p| p.0).collect()),
            y_range: span(points.iter().map(|p| p.1).collect()),
            title: title.into(),
        })
    }
}

fn tick_label(v: f64, step: f64) -> String {
    let decimals = (-(step.abs().log10().floor()) as i32 + 1).clamp(0, 8) as usize;
    format!("{v:.decimals$}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Scatter and line plot of `(x, value)` samples as a self-contained SVG document. The samples
/// are sorted by `x` first.
pub fn emit_plot(points: &[(f64, f64)], opts: &PlotOptions) -> Result<String, Error> {
    if points.is_empty() {
        return Err(Error::EmptyData);
    }
    if points.iter().any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(Error::OutOfRange("plot data must be finite".into()));
    }
    let ((x0, x1), (y0, y1)) = (opts.x_range, opts.y_range);
    if !(x1 > x0 && y1 > y0) {
        return Err(Error::OutOfRange(format!("empty plot range {:?} x {:?}", opts.x_range, opts.y_range)));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, "<!-- format_version {FORMAT_VERSION} -->");
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/></clipPath>"#);
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for i in 0..=5 {
        let (xv, yv) = (x0 + (x1 - x0) * i as f64 / 5.0, y0 + (y1 - y0) * i as f64 / 5.0);
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            tick_label(xv, (x1 - x0) / 5.0)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            tick_label(yv, (y1 - y0) / 5.0)
        );
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(&opts.title));
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">x</text>"#, LEFT + pw / 2.0, HEIGHT - 12.0);
    let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
    if pts.len() > 1 {
        let line: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="steelblue" stroke-width="1" points="{}"/>"#, line.join(" "));
    }
    for &(x, y) in &pts {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="1.6" fill="black"/>"#, sx(x), sy(y));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

/// `(x, value)` pairs from a CSV with `x` and `value` columns; `#` lines are skipped.
pub fn read_xy_csv(text: &str) -> Result<Vec<(f64, f64)>, Error> {
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = r.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Parse(format!("CSV has no {name:?} column")))
    };
    let (ix, iv) = (col("x")?, col("value")?);
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let num = |i: usize| {
            rec.get(i)
                .unwrap_or("")
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", rec.position().map_or(0, |p| p.line()))))
        };
        out.push((num(ix)?, num(iv)?));
    }
    Ok(out)
}

//! Deterministic standalone SVG renderings of the report data objects.
//!
//! Every renderer is a pure function from data to an SVG string: fixed
//! canvas, fixed palette, coordinates formatted with two decimals, no
//! timestamps or randomness, so identical inputs yield byte-identical
//! output. Logarithmic axes span whole decades (`10^floor(log10 min)` to
//! `10^ceil(log10 max)`, widened by one decade when degenerate); zero
//! values cannot appear on a log axis, so they are dropped and the dropped
//! count is annotated on the canvas.

use std::fmt::Write as _;

use crate::graphlet::Spectrogram;
use crate::report::{DegreeHistogram, PersistentScatter, RankSizeCurve};
use crate::temporal::CollabNetwork;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;
pub const MARGIN_LEFT: f64 = 60.0;
pub const MARGIN_RIGHT: f64 = 20.0;
pub const MARGIN_TOP: f64 = 20.0;
pub const MARGIN_BOTTOM: f64 = 40.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// Whole-decade log domain covering all (positive) values.
fn log_domain(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values.filter(|v| *v > 0.0) {
        min = min.min(v);
        max = max.max(v);
    }
    if !min.is_finite() {
        return None;
    }
    let lo = 10f64.powf(min.log10().floor());
    let mut hi = 10f64.powf(max.log10().ceil());
    if hi <= lo {
        hi = lo * 10.0;
    }
    Some((lo, hi))
}

fn map_log(v: f64, domain: (f64, f64), out: (f64, f64)) -> f64 {
    let t = (v.ln() - domain.0.ln()) / (domain.1.ln() - domain.0.ln());
    out.0 + t * (out.1 - out.0)
}

fn map_linear(v: f64, domain: (f64, f64), out: (f64, f64)) -> f64 {
    let t = if domain.1 > domain.0 {
        (v - domain.0) / (domain.1 - domain.0)
    } else {
        0.0
    };
    out.0 + t * (out.1 - out.0)
}

struct Canvas {
    body: String,
    width: f64,
    height: f64,
}

impl Canvas {
    fn new(width: f64, height: f64) -> Canvas {
        Canvas {
            body: String::new(),
            width,
            height,
        }
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str) {
        writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="1"/>"#
        )
        .unwrap();
    }

    fn circle(&mut self, cx: f64, cy: f64, r: f64, style: &str) {
        writeln!(self.body, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" {style}/>"#).unwrap();
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}"/>"#
        )
        .unwrap();
    }

    fn text(&mut self, x: f64, y: f64, anchor: &str, content: &str) {
        writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" font-family="monospace" font-size="11" text-anchor="{anchor}">{}</text>"#,
            escape(content)
        )
        .unwrap();
    }

    fn polyline(&mut self, points: &[(f64, f64)], stroke: &str) {
        if points.is_empty() {
            return;
        }
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        writeln!(
            self.body,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#,
            coords.join(" ")
        )
        .unwrap();
    }

    /// Plot frame plus decade tick labels for log axes.
    fn frame(&mut self, title: &str) {
        let (x0, x1) = (MARGIN_LEFT, self.width - MARGIN_RIGHT);
        let (y0, y1) = (self.height - MARGIN_BOTTOM, MARGIN_TOP);
        self.line(x0, y0, x1, y0, "#000");
        self.line(x0, y0, x0, y1, "#000");
        self.text((x0 + x1) / 2.0, 14.0, "middle", title);
    }

    fn log_ticks_x(&mut self, domain: (f64, f64)) {
        let (x0, x1) = (MARGIN_LEFT, self.width - MARGIN_RIGHT);
        let y = self.height - MARGIN_BOTTOM;
        let lo_exp = domain.0.log10().round() as i32;
        let hi_exp = domain.1.log10().round() as i32;
        for e in lo_exp..=hi_exp {
            let x = map_log(10f64.powi(e), domain, (x0, x1));
            self.line(x, y, x, y + 4.0, "#000");
            self.text(x, y + 16.0, "middle", &format!("1e{e}"));
        }
    }

    fn log_ticks_y(&mut self, domain: (f64, f64)) {
        let (y0, y1) = (self.height - MARGIN_BOTTOM, MARGIN_TOP);
        let x = MARGIN_LEFT;
        let lo_exp = domain.0.log10().round() as i32;
        let hi_exp = domain.1.log10().round() as i32;
        for e in lo_exp..=hi_exp {
            let y = map_log(10f64.powi(e), domain, (y0, y1));
            self.line(x - 4.0, y, x, y, "#000");
            self.text(x - 6.0, y + 4.0, "end", &format!("1e{e}"));
        }
    }

    fn omitted_note(&mut self, n: usize) {
        if n > 0 {
            self.text(
                self.width - MARGIN_RIGHT,
                self.height - 6.0,
                "end",
                &format!("omitted from log axes: {n}"),
            );
        }
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n<rect x=\"0\" y=\"0\" width=\"{:.0}\" height=\"{:.0}\" fill=\"#fff\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.width, self.height, self.body
        )
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn plot_x() -> (f64, f64) {
    (MARGIN_LEFT, WIDTH - MARGIN_RIGHT)
}

fn plot_y() -> (f64, f64) {
    (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP)
}

/// Degree histogram as a log-x point-and-line plot; the y axis is
/// logarithmic when the spec says so. Empty bins cannot be drawn on the log
/// axis and are skipped silently (they carry no vertices); a zero-degree
/// bin center is dropped from the log x axis and counted.
pub fn render_histogram(hist: &DegreeHistogram, title: &str) -> String {
    let mut canvas = Canvas::new(WIDTH, HEIGHT);
    canvas.frame(title);

    let mut dropped = 0usize;
    let mut points_data: Vec<(f64, f64)> = Vec::new();
    for (i, &c) in hist.counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let center = hist.bin_center(i);
        if center <= 0.0 {
            dropped += 1;
            continue;
        }
        points_data.push((center, c as f64));
    }

    if let Some(xd) = log_domain(points_data.iter().map(|p| p.0)) {
        canvas.log_ticks_x(xd);
        let yd_log = log_domain(points_data.iter().map(|p| p.1));
        let pts: Vec<(f64, f64)> = points_data
            .iter()
            .map(|&(cx, cy)| {
                let x = map_log(cx, xd, plot_x());
                let y = if hist.spec.log_counts {
                    map_log(cy, yd_log.unwrap(), plot_y())
                } else {
                    let max = points_data.iter().map(|p| p.1).fold(0.0, f64::max);
                    map_linear(cy, (0.0, max), plot_y())
                };
                (x, y)
            })
            .collect();
        if hist.spec.log_counts {
            canvas.log_ticks_y(yd_log.unwrap());
        }
        canvas.polyline(&pts, PALETTE[0]);
        for &(x, y) in &pts {
            canvas.circle(x, y, 2.0, &format!(r#"fill="{}""#, PALETTE[0]));
        }
    }
    canvas.omitted_note(dropped);
    canvas.finish()
}

/// Four-strip spectrogram: one horizontal strip per graphlet row (d1..d4),
/// column order as given, intensity `ln(1+v)` normalized per row. Columns
/// are aggregated into at most 1024 pixel columns by block maxima. Cohort
/// boundaries appear as red vertical lines.
pub fn render_spectrogram(s: &Spectrogram, title: &str) -> String {
    let n = s.n_columns();
    let strip_h = 90.0;
    let gap = 24.0;
    let height = MARGIN_TOP + 4.0 * (strip_h + gap) + MARGIN_BOTTOM;
    let mut canvas = Canvas::new(WIDTH, height);
    canvas.text(WIDTH / 2.0, 14.0, "middle", title);

    let labels = ["d1", "d2", "d3", "d4"];
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let block = n.div_ceil(1024).max(1);
    let n_px = n.div_ceil(block).max(1);
    let px_w = (x1 - x0) / n_px as f64;

    for (k, label) in labels.iter().enumerate() {
        let top = MARGIN_TOP + k as f64 * (strip_h + gap) + gap;
        canvas.text(x0 - 8.0, top + strip_h / 2.0, "end", label);
        canvas.line(x0, top, x1, top, "#999");
        canvas.line(x0, top + strip_h, x1, top + strip_h, "#999");
        if n == 0 {
            continue;
        }
        let row = &s.rows[k];
        let mut maxima = vec![0u64; n_px];
        for (c, &v) in row.iter().enumerate() {
            let px = c / block;
            maxima[px] = maxima[px].max(v);
        }
        let row_max = *maxima.iter().max().unwrap();
        if row_max == 0 {
            continue;
        }
        let denom = (1.0 + row_max as f64).ln();
        for (px, &m) in maxima.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let intensity = (1.0 + m as f64).ln() / denom;
            let shade = 255 - (intensity * 255.0).round() as u32;
            canvas.rect(
                x0 + px as f64 * px_w,
                top,
                px_w.max(0.5),
                strip_h,
                &format!("rgb({shade},{shade},{shade})"),
            );
        }
        for &b in &s.boundaries {
            if b == 0 || b >= n {
                continue;
            }
            let x = x0 + (b as f64 / block as f64) * px_w;
            canvas.line(x, top, x, top + strip_h, "#d62728");
        }
    }
    canvas.finish()
}

/// Persistent-cohort scatter on log-log axes: bi-fork count (`d2`) on x,
/// triangle count (`d4`) on y. One color per network; authors persistent in
/// every network get an extra black ring. Points with a zero coordinate are
/// dropped from the log axes and counted.
pub fn render_scatter(scatter: &PersistentScatter, title: &str) -> String {
    let mut canvas = Canvas::new(WIDTH, HEIGHT);
    canvas.frame(title);

    let usable = |p: &(u64, u64)| p.0 > 0 && p.1 > 0;
    let all: Vec<(u64, u64)> = scatter
        .sets
        .iter()
        .flat_map(|s| s.points.iter().copied())
        .collect();
    let dropped = all.iter().filter(|p| !usable(p)).count();

    let xd = log_domain(all.iter().filter(|p| usable(p)).map(|p| p.0 as f64));
    let yd = log_domain(all.iter().filter(|p| usable(p)).map(|p| p.1 as f64));
    if let (Some(xd), Some(yd)) = (xd, yd) {
        canvas.log_ticks_x(xd);
        canvas.log_ticks_y(yd);
        for (si, set) in scatter.sets.iter().enumerate() {
            let color = PALETTE[si % PALETTE.len()];
            let stride = set.points.len().div_ceil(50_000).max(1);
            for (i, p) in set.points.iter().enumerate() {
                if i % stride != 0 || !usable(p) {
                    continue;
                }
                let x = map_log(p.0 as f64, xd, plot_x());
                let y = map_log(p.1 as f64, yd, plot_y());
                canvas.circle(x, y, 2.0, &format!(r#"fill="{color}" fill-opacity="0.6""#));
            }
            canvas.text(
                WIDTH - MARGIN_RIGHT,
                MARGIN_TOP + 14.0 * (si as f64 + 1.0),
                "end",
                &format!("{} ({})", set.label, set.points.len()),
            );
        }
        // ring the cross-network persistent authors
        for set in &scatter.sets {
            for (i, a) in set.authors.iter().enumerate() {
                let p = set.points[i];
                if usable(&p) && scatter.common_authors.binary_search(a).is_ok() {
                    let x = map_log(p.0 as f64, xd, plot_x());
                    let y = map_log(p.1 as f64, yd, plot_y());
                    canvas.circle(x, y, 3.5, r##"fill="none" stroke="#000""##);
                }
            }
        }
    }
    canvas.omitted_note(dropped);
    canvas.finish()
}

/// Rank-size curves: degree (`d1`) as a line and bi-fork count (`d2`) as
/// dots over log rank, log value. Zero values are dropped and counted.
pub fn render_curves(curve: &RankSizeCurve, title: &str) -> String {
    let mut canvas = Canvas::new(WIDTH, HEIGHT);
    canvas.frame(title);

    let n = curve.d1.len();
    let dropped = curve.d1.iter().filter(|&&v| v == 0).count()
        + curve.d2.iter().filter(|&&v| v == 0).count();
    let xd = log_domain(std::iter::once(1.0).chain(std::iter::once(n as f64)));
    let yd = log_domain(
        curve
            .d1
            .iter()
            .chain(curve.d2.iter())
            .filter(|&&v| v > 0)
            .map(|&v| v as f64),
    );
    if let (Some(xd), Some(yd)) = (xd, yd) {
        canvas.log_ticks_x(xd);
        canvas.log_ticks_y(yd);
        let stride = n.div_ceil(4096).max(1);
        let line: Vec<(f64, f64)> = (0..n)
            .step_by(stride)
            .filter(|&i| curve.d1[i] > 0)
            .map(|i| {
                (
                    map_log((i + 1) as f64, xd, plot_x()),
                    map_log(curve.d1[i] as f64, yd, plot_y()),
                )
            })
            .collect();
        canvas.polyline(&line, PALETTE[0]);
        for i in (0..n).step_by(stride) {
            if curve.d2[i] == 0 {
                continue;
            }
            let x = map_log((i + 1) as f64, xd, plot_x());
            let y = map_log(curve.d2[i] as f64, yd, plot_y());
            canvas.circle(x, y, 1.5, &format!(r#"fill="{}""#, PALETTE[1]));
        }
        canvas.text(
            WIDTH - MARGIN_RIGHT,
            MARGIN_TOP + 14.0,
            "end",
            "line: degree, dots: bi-forks",
        );
    }
    canvas.omitted_note(dropped);
    canvas.finish()
}

/// Cohort-ordered adjacency heatmap: vertices follow `order` on both axes,
/// aggregated into square pixel blocks of `ceil(n/1024)` vertices; block
/// link counts map to grayscale through `ln(1+c)`. Cohort boundaries are
/// drawn in red on both axes.
pub fn render_heatmap(net: &CollabNetwork, order: &[usize], title: &str) -> String {
    let n = net.graph.n_vertices();
    assert_eq!(order.len(), n, "order must cover every vertex");
    let block = n.div_ceil(1024).max(1);
    let grid = n.div_ceil(block).max(1);
    let side = grid as f64;
    let width = MARGIN_LEFT + side + MARGIN_RIGHT;
    let height = MARGIN_TOP + 20.0 + side + MARGIN_BOTTOM;
    let mut canvas = Canvas::new(width, height);
    canvas.text(width / 2.0, 14.0, "middle", title);
    let (x0, y0) = (MARGIN_LEFT, MARGIN_TOP + 20.0);

    let mut pos = vec![0usize; n];
    for (c, &v) in order.iter().enumerate() {
        pos[v] = c;
    }
    let mut cells = vec![0u64; grid * grid];
    for (u, v) in net.graph.edges() {
        let (ci, cj) = (pos[u] / block, pos[v] / block);
        cells[ci * grid + cj] += 1;
        if ci != cj {
            cells[cj * grid + ci] += 1;
        }
    }
    let max = cells.iter().copied().max().unwrap_or(0);
    if max > 0 {
        let denom = (1.0 + max as f64).ln();
        for ci in 0..grid {
            for cj in 0..grid {
                let c = cells[ci * grid + cj];
                if c == 0 {
                    continue;
                }
                let shade = 255 - ((1.0 + c as f64).ln() / denom * 255.0).round() as u32;
                canvas.rect(
                    x0 + cj as f64,
                    y0 + ci as f64,
                    1.0,
                    1.0,
                    &format!("rgb({shade},{shade},{shade})"),
                );
            }
        }
    }
    for &b in &net.boundaries {
        if b == 0 || b >= n {
            continue;
        }
        let off = b as f64 / block as f64;
        canvas.line(x0 + off, y0, x0 + off, y0 + side, "#d62728");
        canvas.line(x0, y0 + off, x0 + side, y0 + off, "#d62728");
    }
    canvas.line(x0, y0, x0 + side, y0, "#000");
    canvas.line(x0, y0, x0, y0 + side, "#000");
    canvas.line(x0 + side, y0, x0 + side, y0 + side, "#000");
    canvas.line(x0, y0 + side, x0 + side, y0 + side, "#000");
    canvas.finish()
}

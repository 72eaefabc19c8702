//! CSV data sets and SVG error-rate charts.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::SweepResult;
use crate::model::DataMatrix;

/// Parses a comma-separated numeric table. A first row containing any
/// non-numeric cell is taken as the header; otherwise columns are `X1..Xp`.
pub fn parse_csv(text: &str) -> Result<DataMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut header: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            row: r + 1,
            col: 0,
            msg: e.to_string(),
        })?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: Vec<std::result::Result<f64, _>> = record.iter().map(str::parse::<f64>).collect();
        if r == 0 && parsed.iter().any(|v| v.is_err()) {
            header = Some(record.iter().map(str::to_owned).collect());
            continue;
        }
        let width = header.as_ref().map(Vec::len).or_else(|| rows.first().map(Vec::len));
        if let Some(w) = width {
            if record.len() != w {
                return Err(Error::Parse {
                    row: r + 1,
                    col: record.len().min(w) + 1,
                    msg: format!("expected {w} fields, found {}", record.len()),
                });
            }
        }
        let mut row = Vec::with_capacity(parsed.len());
        for (c, v) in parsed.into_iter().enumerate() {
            match v {
                Ok(x) if x.is_finite() => row.push(x),
                _ => {
                    return Err(Error::Parse {
                        row: r + 1,
                        col: c + 1,
                        msg: format!("`{}` is not a finite number", &record[c]),
                    })
                }
            }
        }
        rows.push(row);
    }

    let p = header.as_ref().map(Vec::len).or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    if rows.len() < 2 {
        return Err(Error::Parse {
            row: rows.len() + 1,
            col: 0,
            msg: format!("need at least 2 data rows, found {}", rows.len()),
        });
    }
    if p < 2 {
        return Err(Error::Parse {
            row: 1,
            col: p,
            msg: format!("need at least 2 columns, found {p}"),
        });
    }
    DataMatrix::from_rows(&rows, header)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<DataMatrix> {
    parse_csv(&std::fs::read_to_string(path)?)
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Header row of labels followed by one line per observation.
pub fn matrix_to_csv(m: &DataMatrix) -> String {
    let mut out = m.col_names().join(",");
    out.push('\n');
    for i in 0..m.n() {
        let row: Vec<String> = m.row(i).map(format_f64).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(m: &DataMatrix, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, matrix_to_csv(m))?;
    Ok(())
}

/// Error-rate curves sharing one sigma grid.
#[derive(Debug, Clone)]
pub struct FigureSpec {
    pub title: String,
    pub series: Vec<(String, SweepResult)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Line chart of `f` against `sigma`, y axis fixed to `[0, 1]` with grid
/// lines every 0.1, one polyline per series.
pub fn render_svg(fig: &FigureSpec) -> Result<String> {
    let grid: Vec<f64> = match fig.series.first() {
        Some((_, r)) => r.points.iter().map(|p| p.sigma).collect(),
        None => return Err(Error::Domain("figure has no series".into())),
    };
    for (label, r) in &fig.series {
        if r.points.iter().map(|p| p.sigma).ne(grid.iter().copied()) {
            return Err(Error::Domain(format!("series `{label}` uses a different sigma grid")));
        }
    }
    let x_max = grid.last().copied().unwrap_or(1.0).max(1e-12);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |s: f64| LEFT + s / x_max * plot_w;
    let sy = |f: f64| TOP + (1.0 - f.clamp(0.0, 1.0)) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(&fig.title)
    );
    for t in 0..=10 {
        let f = f64::from(t) / 10.0;
        let y = sy(f);
        let _ = writeln!(
            out,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/>"##,
            LEFT + plot_w
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.2}" text-anchor="end">{f:.1}</text>"#,
            LEFT - 6.0,
            y + 4.0
        );
    }
    for t in 0..=10 {
        let s = x_max * f64::from(t) / 10.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.1}" text-anchor="middle">{s:.2}</text>"#,
            sx(s),
            TOP + plot_h + 16.0
        );
    }
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">sigma</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">f</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    for (idx, (label, r)) in fig.series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let pts: Vec<String> = r
            .points
            .iter()
            .map(|p| format!("{:.2},{:.2}", sx(p.sigma), sy(p.error_rate)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = TOP + 14.0 + 16.0 * idx as f64;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{ly:.1}" fill="{color}">{}</text>"#,
            LEFT + 10.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

//! CSV tables and static SVG charts for sweep results.
//!
//! The CSV schema is fixed: header
//! `axis_value,test,mdr,vr,rate,n_valid,n_flagged,seed`, UTF-8, LF line
//! endings, floats in shortest round-trip decimal form, absent metrics as
//! empty fields. Charts are self-contained SVG documents, one per metric,
//! with the sweep axis on x and one polyline per test.

use std::fs;
use std::path::{Path, PathBuf};

use super::{HarnessError, SweepRow, SweepTable, TestKind};

pub const CSV_HEADER: &str = "axis_value,test,mdr,vr,rate,n_valid,n_flagged,seed";

/// Shortest decimal representation that round-trips through `f64` parsing.
pub fn format_float(x: f64) -> String {
    format!("{x}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

/// Serialize a table; the byte content is a pure function of the rows.
pub fn table_to_csv(table: &SweepTable) -> String {
    let mut out = String::with_capacity(64 * (table.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            format_float(row.axis_value),
            row.test,
            format_opt(row.mdr),
            format_opt(row.vr),
            format_opt(row.rate),
            row.n_valid,
            row.n_flagged,
            row.seed
        ));
    }
    out
}

fn parse_opt(field: &str, what: &str, line: usize) -> Result<Option<f64>, HarnessError> {
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse()
        .map(Some)
        .map_err(|_| HarnessError::Csv(format!("line {line}: bad {what} '{field}'")))
}

fn parse_field<T: std::str::FromStr>(
    field: &str,
    what: &str,
    line: usize,
) -> Result<T, HarnessError> {
    field.parse().map_err(|_| HarnessError::Csv(format!("line {line}: bad {what} '{field}'")))
}

/// Parse CSV emitted by [`table_to_csv`]; exact inverse on valid input.
pub fn parse_csv(text: &str) -> Result<SweepTable, HarnessError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(HarnessError::Csv(format!("unexpected header '{header}'")));
        }
        None => return Err(HarnessError::Csv("empty document".into())),
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(HarnessError::Csv(format!(
                "line {line_no}: expected 8 fields, got {}",
                fields.len()
            )));
        }
        rows.push(SweepRow {
            axis_value: parse_field(fields[0], "axis_value", line_no)?,
            test: fields[1]
                .parse::<TestKind>()
                .map_err(|e| HarnessError::Csv(format!("line {line_no}: {e}")))?,
            mdr: parse_opt(fields[2], "mdr", line_no)?,
            vr: parse_opt(fields[3], "vr", line_no)?,
            rate: parse_opt(fields[4], "rate", line_no)?,
            n_valid: parse_field(fields[5], "n_valid", line_no)?,
            n_flagged: parse_field(fields[6], "n_flagged", line_no)?,
            seed: parse_field(fields[7], "seed", line_no)?,
        });
    }
    Ok(SweepTable { rows })
}

/// The three plotted metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Mdr,
    Vr,
    Rate,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Mdr, Metric::Vr, Metric::Rate];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Mdr => "mdr",
            Metric::Vr => "vr",
            Metric::Rate => "rate",
        }
    }

    fn pick(self, row: &SweepRow) -> Option<f64> {
        match self {
            Metric::Mdr => row.mdr,
            Metric::Vr => row.vr,
            Metric::Rate => row.rate,
        }
    }
}

fn test_color(test: TestKind) -> &'static str {
    match test {
        TestKind::Fs => "#1f77b4",
        TestKind::Cq => "#d62728",
        TestKind::Plugin => "#2ca02c",
    }
}

fn format_tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    if trimmed.is_empty() || trimmed == "-" {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

/// Render one metric panel as a self-contained SVG document.
pub fn render_svg(table: &SweepTable, metric: Metric) -> String {
    let (width, height) = (640.0, 400.0);
    let (ml, mr, mt, mb) = (64.0, 140.0, 42.0, 48.0);
    let plot_w = width - ml - mr;
    let plot_h = height - mt - mb;

    let mut series: Vec<(TestKind, Vec<(f64, f64)>)> = Vec::new();
    for test in TestKind::ALL {
        if !table.rows.iter().any(|r| r.test == test) {
            continue;
        }
        let points: Vec<(f64, f64)> = table
            .rows
            .iter()
            .filter(|r| r.test == test)
            .filter_map(|r| metric.pick(r).map(|y| (r.axis_value, y)))
            .collect();
        series.push((test, points));
    }

    let xs: Vec<f64> = series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.0)).collect();
    let ys: Vec<f64> = series.iter().flat_map(|(_, pts)| pts.iter().map(|p| p.1)).collect();
    let bounds = |vals: &[f64]| -> (f64, f64) {
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if !lo.is_finite() || !hi.is_finite() {
            (0.0, 1.0)
        } else if lo == hi {
            (lo - 0.5, hi + 0.5)
        } else {
            let pad = 0.05 * (hi - lo);
            (lo - pad, hi + pad)
        }
    };
    let (x_lo, x_hi) = bounds(&xs);
    let (y_lo, y_hi) = bounds(&ys);
    let sx = |x: f64| ml + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| mt + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" \
         width=\"{width}\" height=\"{height}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        ml + plot_w / 2.0,
        metric.name()
    ));

    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{ml:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        mt + plot_h,
        ml + plot_w,
        mt + plot_h
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml:.2}\" y1=\"{mt:.2}\" x2=\"{ml:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
        mt + plot_h
    ));

    // Ticks and labels.
    for i in 0..5 {
        let frac = i as f64 / 4.0;
        let xv = x_lo + frac * (x_hi - x_lo);
        let xp = sx(xv);
        svg.push_str(&format!(
            "<line x1=\"{xp:.2}\" y1=\"{0:.2}\" x2=\"{xp:.2}\" y2=\"{1:.2}\" stroke=\"black\"/>\n",
            mt + plot_h,
            mt + plot_h + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{xp:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{}</text>\n",
            mt + plot_h + 18.0,
            format_tick(xv)
        ));
        let yv = y_lo + frac * (y_hi - y_lo);
        let yp = sy(yv);
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{yp:.2}\" x2=\"{ml:.2}\" y2=\"{yp:.2}\" stroke=\"black\"/>\n",
            ml - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{}</text>\n",
            ml - 8.0,
            yp + 4.0,
            format_tick(yv)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
         text-anchor=\"middle\">axis value</text>\n",
        ml + plot_w / 2.0,
        height - 10.0
    ));

    // One polyline per test, plus a legend entry.
    for (idx, (test, points)) in series.iter().enumerate() {
        if points.is_empty() {
            continue;
        }
        let coords: Vec<String> =
            points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
            test_color(*test),
            coords.join(" ")
        ));
        let ly = mt + 14.0 + 20.0 * idx as f64;
        svg.push_str(&format!(
            "<line x1=\"{0:.2}\" y1=\"{ly:.2}\" x2=\"{1:.2}\" y2=\"{ly:.2}\" stroke=\"{2}\" \
             stroke-width=\"2\"/>\n",
            ml + plot_w + 12.0,
            ml + plot_w + 36.0,
            test_color(*test)
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            ml + plot_w + 42.0,
            ly + 4.0,
            test
        ));
    }

    svg.push_str("</svg>\n");
    svg
}

fn write_file(path: &Path, content: &str) -> Result<(), HarnessError> {
    fs::write(path, content)
        .map_err(|e| HarnessError::Io { path: path.to_path_buf(), message: e.to_string() })
}

/// Write the CSV (and, when requested, one SVG per metric) into `out_dir`.
/// Returns the written paths. An empty table is an error and writes nothing.
pub fn emit_outputs(
    table: &SweepTable,
    out_dir: &Path,
    plot: bool,
) -> Result<Vec<PathBuf>, HarnessError> {
    if table.rows.is_empty() {
        return Err(HarnessError::EmptyTable);
    }
    fs::create_dir_all(out_dir)
        .map_err(|e| HarnessError::Io { path: out_dir.to_path_buf(), message: e.to_string() })?;
    let mut paths = Vec::new();
    let csv_path = out_dir.join("metrics.csv");
    write_file(&csv_path, &table_to_csv(table))?;
    paths.push(csv_path);
    if plot {
        for metric in Metric::ALL {
            let path = out_dir.join(format!("{}.svg", metric.name()));
            write_file(&path, &render_svg(table, metric))?;
            paths.push(path);
        }
    }
    Ok(paths)
}

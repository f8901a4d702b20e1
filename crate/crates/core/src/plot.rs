//! Self-contained SVG charts over aggregate CSV files.
//!
//! Charts are a convenience; the CSV stays the contract. Line charts draw
//! one series per input file with a ±1 std band; `rep_bins` renders as one
//! heatmap per file (years by centrality bin, diverging around ratio 1).
//! A `plot_summary.csv` sidecar records peak and final values per series.
//! Rendering is pure string assembly from the parsed numbers, so identical
//! inputs produce byte-identical images.

use crate::error::{invalid, Error, Result};
use crate::output::format_sig9;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Field names accepted by [`render_plots`].
pub const VALID_FIELDS: &[&str] = &[
    "inflow_x",
    "share_F",
    "lambda",
    "net_homophily",
    "perc_F_by_F",
    "perc_F_by_M",
    "perc_F_by_all",
    "delta_s",
    "fstar",
    "fstar_cv",
    "rep_bins",
];

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_L: f64 = 64.0;
const MARGIN_R: f64 = 16.0;
const MARGIN_T: f64 = 24.0;
const MARGIN_B: f64 = 42.0;
const PALETTE: &[&str] = &[
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

/// One parsed aggregate CSV.
struct Table {
    name: String,
    header: Vec<String>,
    rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    fn parse(name: String, text: &str, origin: &Path) -> Result<Table> {
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::ConfigParse(format!("{}: empty file", origin.display())))?
            .split(',')
            .map(str::to_string)
            .collect();
        let mut rows = Vec::new();
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != header.len() {
                return Err(Error::ConfigParse(format!(
                    "{}: line {} has {} cells, header has {}",
                    origin.display(),
                    lineno + 2,
                    cells.len(),
                    header.len()
                )));
            }
            let mut row = Vec::with_capacity(cells.len());
            for (cell, col) in cells.iter().zip(header.iter()) {
                if cell.is_empty() {
                    row.push(None);
                } else {
                    let v: f64 = cell.parse().map_err(|_| {
                        Error::ConfigParse(format!(
                            "{}: line {}, column {col}: not a number: `{cell}`",
                            origin.display(),
                            lineno + 2
                        ))
                    })?;
                    row.push(Some(v));
                }
            }
            rows.push(row);
        }
        Ok(Table { name, header, rows })
    }

    fn col(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    fn require_col(&self, name: &str, origin: &Path) -> Result<usize> {
        self.col(name).ok_or_else(|| {
            Error::ConfigParse(format!("{}: missing column `{name}`", origin.display()))
        })
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

/// Tick positions at a round step covering [lo, hi].
fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    if !(hi > lo) {
        return vec![lo];
    }
    let raw = (hi - lo) / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = mag
        * if norm < 1.5 {
            1.0
        } else if norm < 3.0 {
            2.0
        } else if norm < 7.0 {
            5.0
        } else {
            10.0
        };
    let mut ticks = Vec::new();
    let mut t = (lo / step).ceil() * step;
    while t <= hi + step * 1e-9 {
        // snap -0 and accumulated error to the grid
        ticks.push((t / step).round() * step);
        t += step;
    }
    ticks
}

struct SeriesPoint {
    year: f64,
    mean: f64,
    std: f64,
}

/// Defined points of one (file, field) series, row order preserved.
fn extract_series(table: &Table, field: &str, origin: &Path) -> Result<Vec<SeriesPoint>> {
    let year_col = table.require_col("year", origin)?;
    let mean_col = table.require_col(&format!("{field}_mean"), origin)?;
    let std_col = table.col(&format!("{field}_std"));
    let mut out = Vec::new();
    for row in &table.rows {
        let (Some(year), Some(mean)) = (row[year_col], row[mean_col]) else {
            continue;
        };
        let std = std_col.and_then(|c| row[c]).unwrap_or(0.0);
        out.push(SeriesPoint { year, mean, std });
    }
    Ok(out)
}

fn line_chart(field: &str, series: &[(String, Vec<SeriesPoint>)]) -> String {
    let (pw, ph) = (WIDTH - MARGIN_L - MARGIN_R, HEIGHT - MARGIN_T - MARGIN_B);
    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    );

    let points: Vec<&SeriesPoint> = series.iter().flat_map(|(_, p)| p.iter()).collect();
    if points.is_empty() {
        let _ = write!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#666\">no data for {}</text>\n</svg>\n",
            px(WIDTH / 2.0),
            px(HEIGHT / 2.0),
            esc(field)
        );
        return svg;
    }

    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in &points {
        x0 = x0.min(p.year);
        x1 = x1.max(p.year);
        y0 = y0.min(p.mean - p.std);
        y1 = y1.max(p.mean + p.std);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let pad = (y1 - y0) * 0.05;
    y0 -= pad;
    y1 += pad;
    let sx = |x: f64| MARGIN_L + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_T + (y1 - y) / (y1 - y0) * ph;

    for t in nice_ticks(y0, y1, 5) {
        let y = sy(t);
        let _ = write!(
            svg,
            "<line x1=\"{}\" y1=\"{y2}\" x2=\"{}\" y2=\"{y2}\" stroke=\"#ddd\"/>\n\
             <text x=\"{}\" y=\"{}\" text-anchor=\"end\" fill=\"#444\">{}</text>\n",
            px(MARGIN_L),
            px(WIDTH - MARGIN_R),
            px(MARGIN_L - 6.0),
            px(y + 4.0),
            format_sig9(t),
            y2 = px(y),
        );
    }
    for t in nice_ticks(x0, x1, 8) {
        let x = sx(t);
        let _ = write!(
            svg,
            "<line x1=\"{x2}\" y1=\"{}\" x2=\"{x2}\" y2=\"{}\" stroke=\"#eee\"/>\n\
             <text x=\"{x2}\" y=\"{}\" text-anchor=\"middle\" fill=\"#444\">{}</text>\n",
            px(MARGIN_T),
            px(HEIGHT - MARGIN_B),
            px(HEIGHT - MARGIN_B + 16.0),
            format_sig9(t),
            x2 = px(x),
        );
    }
    let _ = write!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>\n\
         <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#222\">year</text>\n\
         <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#222\" \
         transform=\"rotate(-90 14 {mid})\">{}</text>\n",
        px(MARGIN_L),
        px(MARGIN_T),
        px(pw),
        px(ph),
        px(MARGIN_L + pw / 2.0),
        px(HEIGHT - 8.0),
        px(14.0),
        px(MARGIN_T + ph / 2.0),
        esc(field),
        mid = px(MARGIN_T + ph / 2.0),
    );

    for (si, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        if !pts.is_empty() {
            let mut band = String::new();
            for p in pts.iter() {
                let _ = write!(band, "{},{} ", px(sx(p.year)), px(sy(p.mean + p.std)));
            }
            for p in pts.iter().rev() {
                let _ = write!(band, "{},{} ", px(sx(p.year)), px(sy(p.mean - p.std)));
            }
            let _ = write!(
                svg,
                "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.15\" stroke=\"none\"/>\n",
                band.trim_end()
            );
            if pts.len() == 1 {
                let _ = write!(
                    svg,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>\n",
                    px(sx(pts[0].year)),
                    px(sy(pts[0].mean))
                );
            } else {
                let mut line = String::new();
                for p in pts.iter() {
                    let _ = write!(line, "{},{} ", px(sx(p.year)), px(sy(p.mean)));
                }
                let _ = write!(
                    svg,
                    "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                    line.trim_end()
                );
            }
        }
        let ly = MARGIN_T + 14.0 + 16.0 * si as f64;
        let _ = write!(
            svg,
            "<rect x=\"{}\" y=\"{}\" width=\"14\" height=\"4\" fill=\"{color}\"/>\n\
             <text x=\"{}\" y=\"{}\" fill=\"#222\">{}</text>\n",
            px(MARGIN_L + 8.0),
            px(ly - 4.0),
            px(MARGIN_L + 26.0),
            px(ly),
            esc(name)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn lerp(a: u8, b: u8, t: f64) -> u8 {
    (a as f64 + (b as f64 - a as f64) * t).round() as u8
}

/// Blue below 1, white at 1, red above; input clamped to [0, 2].
fn diverging_color(v: f64) -> String {
    let t = v.clamp(0.0, 2.0) / 2.0;
    let (a, b, u) = if t < 0.5 {
        ((0x21, 0x66, 0xac), (0xf7, 0xf7, 0xf7), t * 2.0)
    } else {
        ((0xf7, 0xf7, 0xf7), (0xb2, 0x18, 0x2b), (t - 0.5) * 2.0)
    };
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(a.0, b.0, u),
        lerp(a.1, b.1, u),
        lerp(a.2, b.2, u)
    )
}

fn bin_columns(table: &Table, origin: &Path) -> Result<Vec<usize>> {
    (1..=20)
        .map(|b| table.require_col(&format!("rep_bin_{b:02}_mean"), origin))
        .collect()
}

fn heatmap(table: &Table, origin: &Path) -> Result<String> {
    let year_col = table.require_col("year", origin)?;
    let bins = bin_columns(table, origin)?;
    let (pw, ph) = (WIDTH - MARGIN_L - MARGIN_R, HEIGHT - MARGIN_T - MARGIN_B);
    let n_years = table.rows.len().max(1);
    let cw = pw / n_years as f64;
    let ch = ph / bins.len() as f64;

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"16\" fill=\"#222\">{}: representation ratio by centrality bin \
         (blue &lt; 1 &lt; red)</text>\n",
        px(MARGIN_L),
        esc(&table.name)
    );
    for (yi, row) in table.rows.iter().enumerate() {
        let x = MARGIN_L + yi as f64 * cw;
        for (bi, &col) in bins.iter().enumerate() {
            let y = MARGIN_T + bi as f64 * ch;
            let fill = match row[col] {
                Some(v) => diverging_color(v),
                None => "#cccccc".to_string(),
            };
            let _ = write!(
                svg,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\"/>\n",
                px(x),
                px(y),
                px(cw + 0.5),
                px(ch + 0.5)
            );
        }
    }
    // x labels from the year column, about 8 of them
    let stride = (n_years / 8).max(1);
    for (yi, row) in table.rows.iter().enumerate() {
        if yi % stride != 0 {
            continue;
        }
        if let Some(year) = row[year_col] {
            let _ = write!(
                svg,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#444\">{}</text>\n",
                px(MARGIN_L + (yi as f64 + 0.5) * cw),
                px(HEIGHT - MARGIN_B + 16.0),
                format_sig9(year)
            );
        }
    }
    for bi in [0usize, 9, 19] {
        let _ = write!(
            svg,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" fill=\"#444\">bin {}</text>\n",
            px(MARGIN_L - 6.0),
            px(MARGIN_T + (bi as f64 + 0.5) * ch + 4.0),
            bi + 1
        );
    }
    let _ = write!(
        svg,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#999\"/>\n\
         <text x=\"{}\" y=\"{}\" text-anchor=\"middle\" fill=\"#222\">year</text>\n</svg>\n",
        px(MARGIN_L),
        px(MARGIN_T),
        px(pw),
        px(ph),
        px(MARGIN_L + pw / 2.0),
        px(HEIGHT - 8.0)
    );
    Ok(svg)
}

/// file, field, peak year (earliest on ties), peak and final mean.
fn summary_line(name: &str, field: &str, pts: &[SeriesPoint]) -> Option<String> {
    let peak = pts
        .iter()
        .reduce(|best, p| if p.mean > best.mean { p } else { best })?;
    let last = pts.last()?;
    Some(format!(
        "{name},{field},{},{},{}",
        format_sig9(peak.year),
        format_sig9(peak.mean),
        format_sig9(last.mean)
    ))
}

/// Render the selected fields from the given aggregate CSVs into `out_dir`.
/// Returns the written file names. Line fields become `<field>.svg` with one
/// series per input; `rep_bins` becomes `rep_bins_<input>.svg` per input.
pub fn render_plots(csv_paths: &[PathBuf], fields: &[String], out_dir: &Path) -> Result<Vec<String>> {
    if fields.is_empty() {
        return Err(invalid("fields", "at least one field is required"));
    }
    if csv_paths.is_empty() {
        return Err(invalid("csvs", "at least one CSV file is required"));
    }
    for field in fields {
        if !VALID_FIELDS.contains(&field.as_str()) {
            return Err(Error::UnknownField {
                field: field.clone(),
                valid: VALID_FIELDS.join(", "),
            });
        }
    }

    let mut tables = Vec::with_capacity(csv_paths.len());
    for path in csv_paths {
        let text = std::fs::read_to_string(path)?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "input".to_string());
        let mut name = stem.clone();
        let mut k = 1;
        while tables.iter().any(|t: &Table| t.name == name) {
            k += 1;
            name = format!("{stem}_{k}");
        }
        tables.push(Table::parse(name, &text, path)?);
    }

    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut summary = String::from("file,field,peak_year,peak_value,final_value\n");

    for field in fields {
        if field == "rep_bins" {
            for (table, path) in tables.iter().zip(csv_paths.iter()) {
                let svg = heatmap(table, path)?;
                let file = format!("rep_bins_{}.svg", table.name);
                std::fs::write(out_dir.join(&file), svg)?;
                written.push(file);
            }
        } else {
            let mut series = Vec::with_capacity(tables.len());
            for (table, path) in tables.iter().zip(csv_paths.iter()) {
                let pts = extract_series(table, field, path)?;
                if let Some(line) = summary_line(&table.name, field, &pts) {
                    summary.push_str(&line);
                    summary.push('\n');
                }
                series.push((table.name.clone(), pts));
            }
            let file = format!("{field}.svg");
            std::fs::write(out_dir.join(&file), line_chart(field, &series))?;
            written.push(file);
        }
    }

    std::fs::write(out_dir.join("plot_summary.csv"), summary)?;
    written.push("plot_summary.csv".to_string());
    Ok(written)
}

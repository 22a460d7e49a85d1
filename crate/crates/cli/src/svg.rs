//! Static SVG line plots of CSV snapshot tables. Fixed 800 x 600 canvas,
//! one polyline per selected column, tick-labeled axes and a legend.

use std::fmt::Write as _;
use std::path::Path;

use crate::csv::CsvTable;
use crate::runner::write_atomic;
use crate::{CliError, Result};

pub struct PlotOptions {
    /// Column headers to draw; `None` draws every value column.
    pub columns: Option<Vec<String>>,
    pub title: Option<String>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 56.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];
const TICKS: usize = 5;

pub fn render_svg(table: &CsvTable, options: &PlotOptions) -> Result<String> {
    let selected: Vec<usize> = match &options.columns {
        None => (0..table.headers.len()).collect(),
        Some(names) => names
            .iter()
            .map(|name| {
                table.headers.iter().position(|h| h == name).ok_or_else(|| {
                    CliError::Config(format!(
                        "unknown column `{name}`; available: {}",
                        table.headers.join(", ")
                    ))
                })
            })
            .collect::<Result<_>>()?,
    };
    if selected.is_empty() {
        return Err(CliError::Config("no columns selected".into()));
    }

    let (x_min, x_max) = padded_range(table.x.iter().copied());
    let (y_min, y_max) = padded_range(selected.iter().flat_map(|&k| table.columns[k].iter().copied()));

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_px = |x: f64, y: f64| {
        (
            MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w,
            MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h,
        )
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        s,
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    if let Some(title) = &options.title {
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
             text-anchor=\"middle\">{}</text>",
            WIDTH / 2.0,
            escape(title)
        );
    }

    // frame
    let _ = writeln!(
        s,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>"
    );

    // ticks and labels
    for k in 0..TICKS {
        let f = k as f64 / (TICKS - 1) as f64;
        let xv = x_min + f * (x_max - x_min);
        let (px, _) = to_px(xv, y_min);
        let y0 = MARGIN_TOP + plot_h;
        let _ = writeln!(
            s,
            "<line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
            y0 + 6.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{}</text>",
            y0 + 20.0,
            tick_label(xv)
        );

        let yv = y_min + f * (y_max - y_min);
        let (_, py) = to_px(x_min, yv);
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{MARGIN_LEFT}\" y2=\"{py:.2}\" stroke=\"black\"/>",
            MARGIN_LEFT - 6.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"end\">{}</text>",
            MARGIN_LEFT - 10.0,
            py + 4.0,
            tick_label(yv)
        );
    }

    // polylines
    for (i, &k) in selected.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut points = String::new();
        for (x, y) in table.x.iter().zip(&table.columns[k]) {
            let (px, py) = to_px(*x, *y);
            let _ = write!(points, "{px:.2},{py:.2} ");
        }
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            points.trim_end()
        );
    }

    // legend, top-right inside the frame
    for (i, &k) in selected.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = MARGIN_TOP + 16.0 + 18.0 * i as f64;
        let x = WIDTH - MARGIN_RIGHT - 150.0;
        let _ = writeln!(
            s,
            "<line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>",
            x + 24.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            x + 30.0,
            y + 4.0,
            escape(&table.headers[k])
        );
    }

    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg_plot(csv_path: &Path, out_path: &Path, options: &PlotOptions) -> Result<()> {
    let table = crate::csv::read_csv(csv_path)?;
    write_atomic(out_path, render_svg(&table, options)?.as_bytes())
}

fn padded_range(vals: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let span = (hi - lo).max(1e-12);
    let pad = 0.05 * span;
    if hi - lo < 1e-12 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo - pad, hi + pad)
    }
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csv::parse_csv;

    fn table() -> CsvTable {
        parse_csv("x,t=0.000000,t=5.000000\n0,1,-1\n0.5,0,0\n1,1,1\n").unwrap()
    }

    #[test]
    fn draws_one_polyline_per_column() {
        let svg = render_svg(
            &table(),
            &PlotOptions {
                columns: None,
                title: Some("demo".into()),
            },
        )
        .unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("t=0.000000"));
        assert!(svg.contains("demo"));
    }

    #[test]
    fn constant_column_yields_horizontal_line() {
        let t = parse_csv("x,t=0.000000\n0,2\n1,2\n").unwrap();
        let svg = render_svg(
            &t,
            &PlotOptions {
                columns: None,
                title: None,
            },
        )
        .unwrap();
        // both points map to the same vertical pixel
        let points = svg
            .split("points=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap();
        let ys: Vec<&str> = points
            .split_whitespace()
            .map(|p| p.split(',').nth(1).unwrap())
            .collect();
        assert_eq!(ys[0], ys[1]);
    }

    #[test]
    fn unknown_column_lists_available_headers() {
        let err = render_svg(
            &table(),
            &PlotOptions {
                columns: Some(vec!["t=9.000000".into()]),
                title: None,
            },
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("t=9.000000"));
        assert!(msg.contains("t=0.000000"));
        assert!(msg.contains("t=5.000000"));
    }

    #[test]
    fn deterministic_output() {
        let opts = PlotOptions {
            columns: None,
            title: Some("x".into()),
        };
        assert_eq!(
            render_svg(&table(), &opts).unwrap(),
            render_svg(&table(), &opts).unwrap()
        );
    }
}

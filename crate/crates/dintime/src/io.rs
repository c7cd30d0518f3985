//! Portable data artifacts: `#`-commented CSV tables and 16-bit binary PGM
//! heatmaps. Floats are written with Rust's shortest round-trip formatting,
//! so a written table re-reads bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::domain::{SpaceGrid, SpaceTimeIntensity};
use crate::error::{Error, Result};

/// Render a space-time intensity table as CSV: `#`-prefixed metadata header
/// lines, then one row per time with the time in the first column.
pub fn csv_string(pattern: &SpaceTimeIntensity, meta: &[String]) -> String {
    let mut out = String::new();
    let g = &pattern.grid;
    let _ = writeln!(out, "# dintime {}", env!("CARGO_PKG_VERSION"));
    for m in meta {
        let _ = writeln!(out, "# {m}");
    }
    let _ = writeln!(
        out,
        "# grid: x_min={} x_max={} n_points={} periodic={}",
        g.x_min, g.x_max, g.n_points, g.periodic
    );
    let _ = writeln!(out, "# columns: t, |psi|^2 at each grid point");
    for (t, row) in pattern.times.iter().zip(&pattern.values) {
        let _ = write!(out, "{t}");
        for v in row {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, pattern: &SpaceTimeIntensity, meta: &[String]) -> Result<()> {
    fs::write(path, csv_string(pattern, meta))?;
    Ok(())
}

/// Parse a CSV written by [`csv_string`] back into times/values (the grid is
/// recovered from the header).
pub fn read_csv(path: &Path) -> Result<SpaceTimeIntensity> {
    let text = fs::read_to_string(path)?;
    parse_csv(&text)
}

pub fn parse_csv(text: &str) -> Result<SpaceTimeIntensity> {
    let mut grid: Option<SpaceGrid> = None;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# grid:") {
            let mut x_min = None;
            let mut x_max = None;
            let mut n_points = None;
            let mut periodic = false;
            for tok in rest.split_whitespace() {
                if let Some((k, v)) = tok.split_once('=') {
                    match k {
                        "x_min" => x_min = v.parse::<f64>().ok(),
                        "x_max" => x_max = v.parse::<f64>().ok(),
                        "n_points" => n_points = v.parse::<usize>().ok(),
                        "periodic" => periodic = v == "true",
                        _ => {}
                    }
                }
            }
            let (lo, hi, n) = match (x_min, x_max, n_points) {
                (Some(a), Some(b), Some(n)) => (a, b, n),
                _ => return Err(Error::Validation("malformed grid header".into())),
            };
            grid = Some(if periodic {
                SpaceGrid::new_periodic(lo, hi, n)?
            } else {
                SpaceGrid::new(lo, hi, n)?
            });
            continue;
        }
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let t: f64 = cols
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Validation("malformed CSV row".into()))?;
        let row: std::result::Result<Vec<f64>, _> = cols.map(|s| s.parse::<f64>()).collect();
        times.push(t);
        values.push(row.map_err(|e| Error::Validation(format!("malformed CSV value: {e}")))?);
    }
    let grid = grid.ok_or_else(|| Error::Validation("CSV missing grid header".into()))?;
    SpaceTimeIntensity::new(times, grid, values)
}

/// Render a plain numeric table (ridge lists, error norms) with the same
/// `#` metadata header convention as the intensity CSVs.
pub fn table_string(meta: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# dintime {}", env!("CARGO_PKG_VERSION"));
    for m in meta {
        let _ = writeln!(out, "# {m}");
    }
    for row in rows {
        let mut first = true;
        for v in row {
            if !first {
                out.push(',');
            }
            let _ = write!(out, "{v}");
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn write_table(path: &Path, meta: &[String], rows: &[Vec<f64>]) -> Result<()> {
    fs::write(path, table_string(meta, rows))?;
    Ok(())
}

/// Write a 16-bit binary PGM (P5) heatmap: one image row per time, intensity
/// linearly mapped to 0..65535 per file, with the min/max recorded in a
/// header comment. Samples are big-endian per the PGM standard.
pub fn write_pgm(path: &Path, pattern: &SpaceTimeIntensity) -> Result<()> {
    let w = pattern.grid.n_points;
    let h = pattern.times.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for row in &pattern.values {
        for &v in row {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut buf = Vec::with_capacity(64 + 2 * w * h);
    buf.extend_from_slice(format!("P5\n# intensity min={lo} max={hi}\n{w} {h}\n65535\n").as_bytes());
    for row in &pattern.values {
        for &v in row {
            let q = (((v - lo) / span) * 65535.0).round() as u16;
            buf.extend_from_slice(&q.to_be_bytes());
        }
    }
    fs::write(path, buf)?;
    Ok(())
}

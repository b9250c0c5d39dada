//! CSV and SVG writers for run artifacts.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::diagnostics::{DiagnosticsRecord, StabilityReport};
use crate::error::{Error, Result};

pub const RECORDS_HEADER: &str = "time,l_inf,l_2,i1,i2,i3_as_written,i3_cubic_only";
pub const SNAPSHOTS_HEADER: &str = "x,u_numeric,u_exact,t";

/// Six significant digits.
fn sig6(v: f64) -> String {
    format!("{v:.5e}")
}

pub fn record_row(r: &DiagnosticsRecord) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.t,
        sig6(r.l_inf),
        sig6(r.l_2),
        sig6(r.i1),
        sig6(r.i2),
        sig6(r.i3),
        sig6(r.i3_cubic)
    )
}

/// Line-oriented CSV file that remembers its path for error messages.
pub struct CsvWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CsvWriter {
    pub fn create(path: impl Into<PathBuf>, header: &str) -> Result<Self> {
        let path = path.into();
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut w = CsvWriter {
            path,
            out: BufWriter::new(file),
        };
        w.line(header)?;
        Ok(w)
    }

    pub fn line(&mut self, line: &str) -> Result<()> {
        self.out
            .write_all(line.as_bytes())
            .and_then(|_| self.out.write_all(b"\n"))
            .map_err(|e| Error::io(&self.path, e))
    }

    pub fn finish(mut self) -> Result<PathBuf> {
        self.out.flush().map_err(|e| Error::io(&self.path, e))?;
        Ok(self.path)
    }
}

pub fn write_snapshot_rows(
    w: &mut CsvWriter,
    nodes: &[f64],
    numeric: &[f64],
    exact: &[f64],
    t: f64,
) -> Result<()> {
    for ((x, u), e) in nodes.iter().zip(numeric).zip(exact) {
        w.line(&format!("{x},{u:e},{e:e},{t}"))?;
    }
    Ok(())
}

pub fn write_stability(path: &Path, report: &StabilityReport) -> Result<()> {
    let text = format!("{}\n{}\n", StabilityReport::CSV_HEADER, report.csv_row());
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Self-contained SVG line plot of the numeric (solid) and reference
/// (dashed) profiles.
pub fn snapshot_svg(nodes: &[f64], numeric: &[f64], exact: &[f64], t: f64) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 48.0;
    let finite = |v: &&f64| v.is_finite();
    let xmin = nodes.iter().cloned().fold(f64::INFINITY, f64::min);
    let xmax = nodes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (mut ymin, mut ymax) = numeric
        .iter()
        .chain(exact)
        .filter(finite)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if ymax.is_nan() || ymin.is_nan() || ymax <= ymin {
        ymin -= 0.5;
        ymax += 0.5;
    }
    let margin = 0.05 * (ymax - ymin);
    let (ymin, ymax) = (ymin - margin, ymax + margin);
    let sx = |x: f64| PAD + (x - xmin) / (xmax - xmin) * (W - 2.0 * PAD);
    let sy = |y: f64| H - PAD - (y - ymin) / (ymax - ymin) * (H - 2.0 * PAD);
    let polyline = |ys: &[f64]| {
        nodes
            .iter()
            .zip(ys)
            .filter(|(_, y)| y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * PAD,
        H - 2.0 * PAD
    );
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="gray" stroke-dasharray="6,4" points="{}"/>"#,
        polyline(exact)
    );
    let _ = writeln!(
        s,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        polyline(numeric)
    );
    let label = |x: f64, y: f64, anchor: &str, text: String| {
        format!(
            r#"<text x="{x:.1}" y="{y:.1}" font-size="12" font-family="sans-serif" text-anchor="{anchor}">{text}</text>"#
        )
    };
    let _ = writeln!(
        s,
        "{}",
        label(PAD, H - PAD + 16.0, "start", format!("{xmin}"))
    );
    let _ = writeln!(
        s,
        "{}",
        label(W - PAD, H - PAD + 16.0, "end", format!("{xmax}"))
    );
    let _ = writeln!(
        s,
        "{}",
        label(PAD - 4.0, H - PAD, "end", format!("{ymin:.3e}"))
    );
    let _ = writeln!(
        s,
        "{}",
        label(PAD - 4.0, PAD + 10.0, "end", format!("{ymax:.3e}"))
    );
    let _ = writeln!(
        s,
        "{}",
        label(W / 2.0, PAD - 12.0, "middle", format!("t = {t}"))
    );
    s.push_str("</svg>\n");
    s
}

//! CSV formats for coefficient vectors, eigenvalue tables and evolution
//! traces. Numbers are written with 17 significant digits in Rust's
//! locale-independent scientific notation, which round-trips exactly.

use crate::eigenbasis::{ModeIndex, SpectralCoefficients};
use crate::error::{Error, Result};
use crate::semigroup::TraceRow;
use crate::spectra::EigenvalueRecord;
use std::io::{Read, Write};

pub const COEFFICIENT_HEADER: [&str; 4] = ["n", "l", "m", "coefficient"];
pub const EIGEN_HEADER: [&str; 9] = [
    "n", "l", "m", "lambda_L", "lambda_B", "lambda1", "lambda2", "lambda3", "ratio",
];
pub const TRACE_HEADER: [&str; 4] = ["t", "l2_norm", "l2_norm_nonkernel", "dirichlet_form"];

/// 17 significant digits. Negative zero prints as zero.
pub fn format_real(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_real).unwrap_or_default()
}

fn csv_error(e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!(),
        }
    } else {
        Error::Parse(e.to_string())
    }
}

fn flush<W: Write>(w: csv::Writer<W>) -> Result<()> {
    w.into_inner().map_err(|e| Error::Io(e.into_error()))?.flush()?;
    Ok(())
}

pub fn write_coefficients<W: Write>(w: W, c: &SpectralCoefficients) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(COEFFICIENT_HEADER).map_err(csv_error)?;
    for (m, x) in c.iter() {
        out.write_record([m.n().to_string(), m.l().to_string(), m.m().to_string(), format_real(x)])
            .map_err(csv_error)?;
    }
    flush(out)
}

/// Reads `n,l,m,coefficient` rows; the header is optional. Blank lines and
/// `#` comments are skipped. Without an explicit cutoff, the largest level
/// present is used.
pub fn read_coefficients<R: Read>(r: R, cutoff: Option<u32>) -> Result<SpectralCoefficients> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(r);
    let mut rows = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        if i == 0 && record.iter().eq(COEFFICIENT_HEADER) {
            continue;
        }
        let line = record.position().map_or(0, |p| p.line());
        let bad = |what: &str| Error::Parse(format!("line {line}: {what}: {record:?}"));
        if record.len() != 4 {
            return Err(bad("expected 4 fields"));
        }
        let n: u32 = record[0].parse().map_err(|_| bad("bad n"))?;
        let l: u32 = record[1].parse().map_err(|_| bad("bad l"))?;
        let m: i32 = record[2].parse().map_err(|_| bad("bad m"))?;
        let x: f64 = record[3].parse().map_err(|_| bad("bad coefficient"))?;
        if !x.is_finite() {
            return Err(bad("non-finite coefficient"));
        }
        let mode = ModeIndex::new(n, l, m).map_err(|_| bad("|m| > l"))?;
        if !seen.insert(mode) {
            return Err(bad("duplicate mode"));
        }
        rows.push((mode, x));
    }
    let cutoff = cutoff.unwrap_or_else(|| rows.iter().map(|(m, _)| m.level()).max().unwrap_or(0));
    SpectralCoefficients::from_pairs(cutoff, rows)
}

pub fn write_eigen_table<W: Write>(w: W, records: &[EigenvalueRecord]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(EIGEN_HEADER).map_err(csv_error)?;
    for r in records {
        let (l1, l2, l3) = match r.split {
            Some(s) => (Some(s.lambda1), Some(s.lambda2), Some(s.lambda3)),
            None => (None, None, None),
        };
        out.write_record([
            r.mode.n().to_string(),
            r.mode.l().to_string(),
            r.mode.m().to_string(),
            format_real(r.lambda_l),
            format_real(r.lambda_b),
            format_opt(l1),
            format_opt(l2),
            format_opt(l3),
            format_opt(r.ratio),
        ])
        .map_err(csv_error)?;
    }
    flush(out)
}

pub fn write_trace<W: Write>(w: W, rows: &[TraceRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(TRACE_HEADER).map_err(csv_error)?;
    for r in rows {
        out.write_record([
            format_real(r.t),
            format_real(r.l2_norm),
            format_real(r.l2_norm_nonkernel),
            format_real(r.dirichlet_form),
        ])
        .map_err(csv_error)?;
    }
    flush(out)
}

//! QMAT / RMAT text formats.
//!
//! ```text
//! QMAT 1
//! <rows> <cols>
//! w x y z        (rows·cols lines, row-major)
//! ```
//!
//! `RMAT 1` is the same with one float per entry line. Lines starting with
//! `#` are comments and blank lines are skipped. Floats are written with the
//! shortest representation that parses back to the same binary64 value.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::qmat::{QMatrix, RMatrix};
use crate::quat::Quaternion;

/// Shortest round-trip decimal rendering of a binary64 value.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || !a.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

pub fn write_qmat_string(m: &QMatrix) -> String {
    let mut out = format!("QMAT 1\n{} {}\n", m.rows(), m.cols());
    for q in m.as_slice() {
        writeln!(out, "{q}").expect("writing to a String");
    }
    out
}

pub fn write_rmat_string(m: &RMatrix) -> String {
    let mut out = format!("RMAT 1\n{} {}\n", m.rows(), m.cols());
    for v in m.as_slice() {
        writeln!(out, "{}", fmt_f64(*v)).expect("writing to a String");
    }
    out
}

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_float(line: usize, tok: &str) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("invalid number {tok:?}")))
}

/// Reads magic, version and shape; returns the remaining lines.
fn parse_header<'a>(
    text: &'a str,
    magic: &str,
) -> Result<(usize, usize, usize, impl Iterator<Item = (usize, &'a str)>)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, format!("missing {magic} header")))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&magic) {
        return Err(parse_err(hline, format!("expected header `{magic} 1`, found {header:?}")));
    }
    match toks.as_slice() {
        [_, "1"] => {}
        [_, v] => return Err(parse_err(hline, format!("unsupported {magic} version {v}"))),
        _ => return Err(parse_err(hline, format!("expected header `{magic} 1`, found {header:?}"))),
    }

    let (sline, shape) = lines.next().ok_or_else(|| parse_err(hline + 1, "missing shape line"))?;
    let dims: Vec<&str> = shape.split_whitespace().collect();
    let [r, c] = dims.as_slice() else {
        return Err(parse_err(sline, format!("expected `<rows> <cols>`, found {shape:?}")));
    };
    let parse_dim = |t: &str| -> Result<usize> {
        match t.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(parse_err(sline, format!("invalid dimension {t:?}"))),
        }
    };
    let rows = parse_dim(r)?;
    let cols = parse_dim(c)?;
    Ok((rows, cols, sline, lines))
}

pub fn parse_qmat(text: &str) -> Result<QMatrix> {
    let (rows, cols, mut last, mut lines) = parse_header(text, "QMAT")?;
    let n = rows * cols;
    let mut data = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {n} entries, found {}", data.len())))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(parse_err(ln, format!("expected 4 components, found {}", toks.len())));
        }
        data.push(Quaternion::new(
            parse_float(ln, toks[0])?,
            parse_float(ln, toks[1])?,
            parse_float(ln, toks[2])?,
            parse_float(ln, toks[3])?,
        ));
        last = ln;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected trailing data"));
    }
    QMatrix::from_vec(rows, cols, data)
}

pub fn parse_rmat(text: &str) -> Result<RMatrix> {
    let (rows, cols, mut last, mut lines) = parse_header(text, "RMAT")?;
    let n = rows * cols;
    let mut data = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(last + 1, format!("expected {n} entries, found {}", data.len())))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 1 {
            return Err(parse_err(ln, format!("expected 1 value, found {}", toks.len())));
        }
        data.push(parse_float(ln, toks[0])?);
        last = ln;
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "unexpected trailing data"));
    }
    RMatrix::from_vec(rows, cols, data)
}

pub fn read_qmat(path: &Path) -> Result<QMatrix> {
    parse_qmat(&fs::read_to_string(path)?)
}

pub fn read_rmat(path: &Path) -> Result<RMatrix> {
    parse_rmat(&fs::read_to_string(path)?)
}

pub fn write_qmat(path: &Path, m: &QMatrix) -> Result<()> {
    Ok(fs::write(path, write_qmat_string(m))?)
}

pub fn write_rmat(path: &Path, m: &RMatrix) -> Result<()> {
    Ok(fs::write(path, write_rmat_string(m))?)
}

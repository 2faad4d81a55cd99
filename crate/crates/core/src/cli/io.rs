//! Dense matrix text formats: headerless CSV and Matrix Market
//! (`array` / `coordinate`, `real general`).

use std::fmt::Write as _;

use thiserror::Error;

use super::format::Precision;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    #[value(name = "mm")]
    MatrixMarket,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn line_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        msg: msg.into(),
    }
}

fn parse_number(token: &str, line: usize) -> Result<f64, ParseError> {
    let v: f64 = token
        .trim()
        .parse()
        .map_err(|_| line_err(line, format!("invalid number {:?}", token.trim())))?;
    if !v.is_finite() {
        return Err(line_err(
            line,
            format!("non-finite value {:?}", token.trim()),
        ));
    }
    Ok(v)
}

pub fn parse(text: &str, format: Format) -> Result<Matrix<f64>, ParseError> {
    match format {
        Format::Csv => parse_csv(text),
        Format::MatrixMarket => parse_matrix_market(text),
    }
}

/// One matrix row per line, comma separated, no header. Trailing blank lines
/// are ignored.
pub fn parse_csv(text: &str) -> Result<Matrix<f64>, ParseError> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    let end = lines
        .iter()
        .rposition(|l| !l.trim().is_empty())
        .map_or(0, |k| k + 1);
    if end == 0 {
        return Err(ParseError::Empty);
    }
    let mut cols = 0;
    let mut entries = Vec::new();
    for (k, line) in lines[..end].iter().enumerate() {
        if line.trim().is_empty() {
            return Err(line_err(k + 1, "blank line inside matrix"));
        }
        let row = line
            .split(',')
            .map(|t| parse_number(t, k + 1))
            .collect::<Result<Vec<_>, _>>()?;
        if k == 0 {
            cols = row.len();
        } else if row.len() != cols {
            return Err(line_err(
                k + 1,
                format!("expected {cols} fields, found {}", row.len()),
            ));
        }
        entries.extend(row);
    }
    Matrix::new(end, cols, entries).map_err(|e| ParseError::Invalid(e.to_string()))
}

pub fn parse_matrix_market(text: &str) -> Result<Matrix<f64>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l.trim()));
    let (_, header) = lines.next().ok_or(ParseError::Empty)?;
    let fields: Vec<String> = header
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(line_err(1, "expected a %%MatrixMarket matrix header"));
    }
    let coordinate = match fields[2].as_str() {
        "array" => false,
        "coordinate" => true,
        other => return Err(line_err(1, format!("unsupported layout {other:?}"))),
    };
    if fields[3] != "real" || fields[4] != "general" {
        return Err(line_err(
            1,
            format!(
                "only real general matrices are supported, got {} {}",
                fields[3], fields[4]
            ),
        ));
    }

    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body
        .next()
        .ok_or(ParseError::Invalid("missing size line".into()))?;
    let dims = size
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| line_err(size_line, "invalid size line"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let want = if coordinate { 3 } else { 2 };
    if dims.len() != want {
        return Err(line_err(size_line, format!("expected {want} size fields")));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if rows == 0 || cols == 0 {
        return Err(line_err(size_line, "matrix dimensions must be positive"));
    }

    let mut dense = vec![0.0; rows * cols];
    if coordinate {
        let nnz = dims[2];
        let mut seen = 0;
        for (line, text) in body {
            let t: Vec<&str> = text.split_whitespace().collect();
            if t.len() != 3 {
                return Err(line_err(line, "expected `row col value`"));
            }
            let idx = |s: &str, bound: usize| -> Result<usize, ParseError> {
                match s.parse::<usize>() {
                    Ok(v) if (1..=bound).contains(&v) => Ok(v - 1),
                    _ => Err(line_err(
                        line,
                        format!("index {s:?} out of range 1..={bound}"),
                    )),
                }
            };
            let (i, j) = (idx(t[0], rows)?, idx(t[1], cols)?);
            dense[i * cols + j] += parse_number(t[2], line)?;
            seen += 1;
        }
        if seen != nnz {
            return Err(ParseError::Invalid(format!(
                "expected {nnz} entries, found {seen}"
            )));
        }
    } else {
        let mut values = Vec::with_capacity(rows * cols);
        for (line, text) in body {
            for t in text.split_whitespace() {
                values.push(parse_number(t, line)?);
            }
        }
        if values.len() != rows * cols {
            return Err(ParseError::Invalid(format!(
                "expected {} entries, found {}",
                rows * cols,
                values.len()
            )));
        }
        // Array layout is column-major.
        for (k, v) in values.into_iter().enumerate() {
            dense[(k % rows) * cols + k / rows] = v;
        }
    }
    Matrix::new(rows, cols, dense).map_err(|e| ParseError::Invalid(e.to_string()))
}

/// A unit of CLI output.
#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    Matrix(Matrix<f64>),
    /// Written as a single column.
    Vector(Vec<f64>),
}

fn write_csv(
    out: &mut String,
    rows: usize,
    cols: usize,
    at: &dyn Fn(usize, usize) -> f64,
    p: Precision,
) {
    for i in 0..rows {
        for j in 0..cols {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&p.format(at(i, j)));
        }
        out.push('\n');
    }
}

fn write_mm(
    out: &mut String,
    rows: usize,
    cols: usize,
    at: &dyn Fn(usize, usize) -> f64,
    p: Precision,
) {
    out.push_str("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(out, "{rows} {cols}");
    for j in 0..cols {
        for i in 0..rows {
            out.push_str(&p.format(at(i, j)));
            out.push('\n');
        }
    }
}

/// Renders blocks in order, separated by one blank line.
pub fn render(blocks: &[Block], format: Format, precision: Precision) -> String {
    let mut out = String::new();
    for (k, block) in blocks.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let write = match format {
            Format::Csv => write_csv,
            Format::MatrixMarket => write_mm,
        };
        match block {
            Block::Matrix(m) => write(&mut out, m.rows(), m.cols(), &|i, j| m.get(i, j), precision),
            Block::Vector(v) => write(&mut out, v.len(), 1, &|i, _| v[i], precision),
        }
    }
    out
}

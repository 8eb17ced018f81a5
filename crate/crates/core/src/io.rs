//! Plain-text matrix input and the CSV trace format.
//!
//! Trace layout: a header row, then one row per recorded iteration with the
//! columns `iter, reward, upper, lower, gap, x_1..x_n, y_1..y_n,
//! xhat_1..xhat_n, yhat_1..yhat_n`. Reals are written with 17 significant
//! digits so every value parses back to the same `f64`.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::game::RewardMatrix;
use crate::solver::RunResult;

/// Reads a square matrix, one row per line, fields separated by commas or
/// whitespace. Blank lines and lines starting with `#` are skipped.
pub fn load_matrix(path: impl AsRef<Path>) -> Result<RewardMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn parse_matrix(text: &str) -> Result<RewardMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = if trimmed.contains(',') {
            trimmed.split(',').map(str::trim).collect()
        } else {
            trimmed.split_whitespace().collect()
        };
        let row = fields
            .iter()
            .enumerate()
            .map(|(col, tok)| {
                tok.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        Error::format(Some(lineno), Some(col + 1), format!("cannot parse {tok:?} as a finite number"))
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::format(
                    Some(lineno),
                    None,
                    format!("row has {} entries, previous rows have {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::format(None, None, "matrix file contains no rows"));
    }
    if rows.len() != rows[0].len() {
        return Err(Error::format(
            None,
            None,
            format!("matrix is {}x{}, expected a square matrix", rows.len(), rows[0].len()),
        ));
    }
    RewardMatrix::new(rows)
}

/// One trace row.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub iter: usize,
    pub reward: f64,
    pub upper: f64,
    pub lower: f64,
    pub gap: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub x_hat: Vec<f64>,
    pub y_hat: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceTable {
    pub n: usize,
    pub rows: Vec<TraceRow>,
}

impl TraceTable {
    pub fn from_run(result: &RunResult) -> Self {
        let n = result.final_x_hat.dim();
        let rows = result
            .records
            .iter()
            .map(|r| TraceRow {
                iter: r.k,
                reward: r.reward,
                upper: r.upper,
                lower: r.lower,
                gap: r.gap,
                x: r.x.as_slice().to_vec(),
                y: r.y.as_slice().to_vec(),
                x_hat: r.x_hat.as_slice().to_vec(),
                y_hat: r.y_hat.as_slice().to_vec(),
            })
            .collect();
        TraceTable { n, rows }
    }

    pub fn header(n: usize) -> Vec<String> {
        let mut cols: Vec<String> = ["iter", "reward", "upper", "lower", "gap"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        for prefix in ["x", "y", "xhat", "yhat"] {
            cols.extend((1..=n).map(|i| format!("{prefix}_{i}")));
        }
        cols
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{}", Self::header(self.n).join(","))?;
        for row in &self.rows {
            write!(w, "{}", row.iter)?;
            let scalars = [row.reward, row.upper, row.lower, row.gap];
            let vectors = [&row.x, &row.y, &row.x_hat, &row.y_hat];
            for v in scalars.iter().chain(vectors.into_iter().flatten()) {
                write!(w, ",{v:.16e}")?;
            }
            writeln!(w)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read<R: Read>(r: R) -> Result<Self> {
        let mut lines = BufReader::new(r).lines();
        let header = match lines.next() {
            Some(line) => line?,
            None => return Err(Error::format(None, None, "trace is empty")),
        };
        let cols: Vec<&str> = header.trim_end().split(',').collect();
        if cols.len() < 9 || !(cols.len() - 5).is_multiple_of(4) {
            return Err(Error::format(Some(1), None, format!("unexpected column count {}", cols.len())));
        }
        let n = (cols.len() - 5) / 4;
        if cols != Self::header(n) {
            return Err(Error::format(Some(1), None, "header does not match the trace layout"));
        }

        let mut rows = Vec::new();
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.trim_end().split(',').collect();
            if fields.len() != cols.len() {
                return Err(Error::format(
                    Some(lineno),
                    None,
                    format!("expected {} fields, found {}", cols.len(), fields.len()),
                ));
            }
            let iter = fields[0]
                .parse::<usize>()
                .map_err(|_| Error::format(Some(lineno), Some(1), format!("bad iteration index {:?}", fields[0])))?;
            let values = fields[1..]
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    f.parse::<f64>()
                        .map_err(|_| Error::format(Some(lineno), Some(i + 2), format!("bad number {f:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            let block = |b: usize| values[4 + b * n..4 + (b + 1) * n].to_vec();
            rows.push(TraceRow {
                iter,
                reward: values[0],
                upper: values[1],
                lower: values[2],
                gap: values[3],
                x: block(0),
                y: block(1),
                x_hat: block(2),
                y_hat: block(3),
            });
        }
        Ok(TraceTable { n, rows })
    }
}

pub fn write_trace<W: Write>(w: W, result: &RunResult) -> Result<()> {
    TraceTable::from_run(result).write(w)
}

pub fn read_trace<R: Read>(r: R) -> Result<TraceTable> {
    TraceTable::read(r)
}

//! Matrix and sequence files, boundary CSV.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use sectoria_core::claim2::PositiveSequencePair;
use sectoria_core::{ComplexMatrix, C64};

use crate::error::{CliError, CliResult};

/// `{"n": 2, "re": [[..], [..]], "im": [[..], [..]]}`, rows outermost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(a: &ComplexMatrix) -> CliResult<Self> {
        if !a.is_square() {
            return Err(CliError::usage("only square matrices can be written"));
        }
        let n = a.n();
        let rows = |f: fn(&C64) -> f64| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| (0..n).map(|j| f(&a[(i, j)])).collect())
                .collect()
        };
        Ok(Self {
            n,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        })
    }

    pub fn to_matrix(&self) -> CliResult<ComplexMatrix> {
        let n = self.n;
        let shaped = |rows: &[Vec<f64>]| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if n == 0 || !shaped(&self.re) || !shaped(&self.im) {
            return Err(CliError::usage(format!(
                "re and im must both be {n}x{n} arrays with n >= 1"
            )));
        }
        Ok(ComplexMatrix::from_parts(&self.re, &self.im)?)
    }
}

/// `{"a": [1, ..], "b": [1, ..]}` including the leading ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

fn read_to_string(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_to_string(path)?)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    parse_json::<MatrixFile>(path)?.to_matrix()
}

pub fn write_matrix(path: &Path, a: &ComplexMatrix) -> CliResult<()> {
    let json = serde_json::to_string_pretty(&MatrixFile::from_matrix(a)?)
        .map_err(|e| CliError::usage(e.to_string()))?;
    fs::write(path, json + "\n").map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

pub fn read_sequences(path: &Path) -> CliResult<PositiveSequencePair> {
    let file: SequenceFile = parse_json(path)?;
    Ok(PositiveSequencePair::new(file.a, file.b)?)
}

/// Writes `re,im` rows. Negative zero is printed as `0`.
pub fn write_boundary_csv<W: Write>(out: W, points: &[C64]) -> CliResult<()> {
    let io_err = |e: csv::Error| CliError::usage(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["re", "im"]).map_err(io_err)?;
    for z in points {
        let re = (z.re + 0.0).to_string();
        let im = (z.im + 0.0).to_string();
        w.write_record([re, im]).map_err(io_err)?;
    }
    w.flush().map_err(|e| CliError::usage(e.to_string()))
}

//! CSV and JSON file formats.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use brunel_core::arith::Rational;
use brunel_core::coeffs::{CoeffKind, CoeffTable};
use brunel_core::operator::DenseMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum InputError {
    Io(io::Error),
    Json(serde_json::Error),
    Csv(csv::Error),
}

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Io(e) => write!(f, "{e}"),
            InputError::Json(e) => write!(f, "bad matrix file: {e}"),
            InputError::Csv(e) => write!(f, "bad table: {e}"),
        }
    }
}

impl std::error::Error for InputError {}

impl From<io::Error> for InputError {
    fn from(e: io::Error) -> Self {
        InputError::Io(e)
    }
}

impl From<csv::Error> for InputError {
    fn from(e: csv::Error) -> Self {
        InputError::Csv(e)
    }
}

/// One exact coefficient; `value` is a terminating decimal or `a/b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub p: u64,
    pub value: Rational,
}

pub fn table_rows(kind: CoeffKind, n_max: u64, p_max: u64) -> Vec<TableRow> {
    let table = CoeffTable::new(kind);
    table.fill(n_max, p_max);
    table
        .entries()
        .into_iter()
        .filter(|(n, p, _)| *n >= 1 && *p <= p_max)
        .map(|(n, p, value)| TableRow { n, p, value })
        .collect()
}

pub fn write_table_csv<W: Write>(w: W, rows: &[TableRow]) -> Result<(), InputError> {
    let mut out = csv::Writer::from_writer(w);
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_table_csv<R: Read>(r: R) -> Result<Vec<TableRow>, InputError> {
    csv::Reader::from_reader(r)
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(InputError::Csv)
}

/// Reads `{"dim": d, "rows": [[...], ...]}`.
pub fn read_matrix(path: &Path) -> Result<DenseMatrix, InputError> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(InputError::Json)
}

pub fn matrix_csv(m: &DenseMatrix) -> String {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in m.rows() {
        out.serialize(row).expect("writing to memory");
    }
    String::from_utf8(out.into_inner().expect("writing to memory")).expect("csv is utf-8")
}

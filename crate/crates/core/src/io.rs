//! Text formats for square matrices.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Parses a headerless comma-separated square matrix. Fields may carry
/// surrounding whitespace; blank lines are ignored.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(c, f)| {
                f.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}, column {}: `{f}` is not a number", r + 1, c + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("empty matrix".into()));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: format!("{n} columns"), got: format!("{}", bad.len()) });
    }
    DenseMatrix::from_rows(&rows)
}

pub fn matrix_to_csv(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

//! CSV serialization.
//!
//! Every value is written with 17 significant digits (`{:.16e}`), which
//! round-trips an `f64` exactly. Undefined values are written as `NaN`.

use std::path::Path;

use crate::error::{AppError, Result};
use crate::sweep::SweepTable;

/// A numeric table with a header.
#[derive(Clone, Debug, Default)]
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl PartialEq for CsvTable {
    /// Bitwise on values, with all `NaN`s equal.
    fn eq(&self, other: &Self) -> bool {
        let same = |a: &f64, b: &f64| a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan());
        self.columns == other.columns
            && self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(r, s)| r.len() == s.len() && r.iter().zip(s).all(|(a, b)| same(a, b)))
    }
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let k = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| AppError::Csv(format!("missing column `{name}`")))?;
        Ok(self.rows.iter().map(|r| r[k]).collect())
    }
}

impl From<&SweepTable> for CsvTable {
    fn from(t: &SweepTable) -> Self {
        Self { columns: t.columns(), rows: t.values() }
    }
}

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(table: &CsvTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| AppError::Csv(e.to_string());
    w.write_record(&table.columns).map_err(err)?;
    for row in &table.rows {
        if row.len() != table.columns.len() {
            return Err(AppError::Csv(format!("row has {} values for {} columns", row.len(), table.columns.len())));
        }
        w.write_record(row.iter().map(|&v| format_value(v))).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| AppError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| AppError::Csv(e.to_string()))
}

pub fn read_csv(text: &str) -> Result<CsvTable> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let err = |e: csv::Error| AppError::Csv(e.to_string());
    let columns: Vec<String> = r.headers().map_err(err)?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let rec = rec.map_err(err)?;
        let row = rec
            .iter()
            .map(|f| f.trim().parse::<f64>().map_err(|e| AppError::Csv(format!("row {}: `{f}`: {e}", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(CsvTable { columns, rows })
}

pub fn write_csv_file(path: &Path, table: &CsvTable) -> Result<()> {
    let text = write_csv(table)?;
    std::fs::write(path, text).map_err(|e| AppError::io(path, e))
}

pub fn read_csv_file(path: &Path) -> Result<CsvTable> {
    let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    read_csv(&text)
}

//! Numeric CSV tables with a canonical text form.
//!
//! Every value is written as `{:.16e}` (17 significant digits), which
//! round-trips any `f64`; missing values are empty cells. Parsing a file
//! written here and writing it again reproduces it byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    /// One row per grid point; `None` marks a value that failed to evaluate.
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Canonical text of one cell.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> usize {
        self.header.len()
    }

    /// Values of column `k`, with `None` for empty cells.
    pub fn column(&self, k: usize) -> Vec<Option<f64>> {
        self.rows.iter().map(|r| r[k]).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (k, cell) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                if let Some(x) = cell {
                    write!(out, "{}", format_value(*x)).expect("writing to a String cannot fail");
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        // only the final newline terminates; a blank line is a row of one empty cell
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(Error::Parse("empty CSV".into()));
        }
        let mut lines = body.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l));
        let header_line = lines.next().expect("split yields at least one piece");
        let header: Vec<String> = header_line
            .split(',')
            .map(|s| s.trim().to_string())
            .collect();
        if header.iter().any(String::is_empty) {
            return Err(Error::Parse("CSV header has an empty column name".into()));
        }
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != header.len() {
                return Err(Error::Parse(format!(
                    "CSV row {} has {} cells, header has {}",
                    i + 1,
                    cells.len(),
                    header.len()
                )));
            }
            let row = cells
                .iter()
                .map(|c| match c.trim() {
                    "" => Ok(None),
                    s => s.parse::<f64>().map(Some).map_err(|e| {
                        Error::Parse(format!("CSV row {}: `{s}` is not a number ({e})", i + 1))
                    }),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Ok(Table { header, rows })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_cells_survive() {
        let t = Table {
            header: vec!["T".into(), "a".into(), "b".into()],
            rows: vec![
                vec![Some(0.5), None, Some(-0.0)],
                vec![Some(1.0), Some(1e-300), None],
            ],
        };
        let csv = t.to_csv();
        assert_eq!(
            csv.lines().nth(1).unwrap(),
            "5.0000000000000000e-1,,-0.0000000000000000e0"
        );
        assert_eq!(Table::parse(&csv).unwrap().to_csv(), csv);
    }

    #[test]
    fn malformed_rows_are_rejected() {
        assert!(Table::parse("").is_err());
        assert!(Table::parse("a,b\n1\n").is_err());
        assert!(Table::parse("a,b\n1,x\n").is_err());
    }

    proptest! {
        #[test]
        fn reemission_is_byte_identical(values in prop::collection::vec(prop::option::of(any::<f64>().prop_filter("finite", |x| x.is_finite())), 1..40)) {
            let t = Table { header: vec!["x".into()], rows: values.iter().map(|v| vec![*v]).collect() };
            let csv = t.to_csv();
            let back = Table::parse(&csv).unwrap();
            prop_assert_eq!(&back, &t);
            prop_assert_eq!(back.to_csv(), csv);
        }
    }
}

//! CSV ingestion.
//!
//! Expected shape: a header row, then `n` RSS columns (`rss_0..rss_{n-1}`,
//! dBm, decimal) followed by one integer label column. An empty RSS cell
//! means the beacon was not heard and becomes [`MISSING_RSS_DBM`].
//!
//! Third-party corpora with a different column layout should be adapted to
//! this shape; the schema only fixes column counts, not header names.

use std::path::Path;

use super::{DatasetError, RawFingerprint, DEFAULT_BEACONS, DEFAULT_SPACES, MISSING_RSS_DBM};

/// Column spec for a fingerprint CSV: `n` RSS columns then a label column.
#[derive(Debug, Clone, Copy)]
pub struct CsvSchema {
    /// Number of RSS columns.
    pub n: usize,
    /// Number of symbolic spaces; labels must lie in `[0, classes)`.
    pub classes: usize,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            n: DEFAULT_BEACONS,
            classes: DEFAULT_SPACES,
        }
    }
}

/// Load raw fingerprints from a CSV file, one per data row, in file order.
pub fn load_csv(path: &Path, schema: &CsvSchema) -> Result<Vec<RawFingerprint>, DatasetError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => DatasetError::Io(std::io::Error::other(e.to_string())),
            _ => DatasetError::MalformedRow {
                row: 0,
                reason: e.to_string(),
            },
        })?;

    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        // header is row 1; first data row is row 2
        let row = i + 2;
        let record = record.map_err(|e| DatasetError::MalformedRow {
            row,
            reason: e.to_string(),
        })?;
        if record.len() != schema.n + 1 {
            return Err(DatasetError::MalformedRow {
                row,
                reason: format!("expected {} columns, found {}", schema.n + 1, record.len()),
            });
        }
        let mut rss = Vec::with_capacity(schema.n);
        for (col, field) in record.iter().take(schema.n).enumerate() {
            let field = field.trim();
            if field.is_empty() {
                rss.push(MISSING_RSS_DBM);
            } else {
                let v: f64 = field.parse().map_err(|_| DatasetError::MalformedRow {
                    row,
                    reason: format!("column {col}: non-numeric RSS value {field:?}"),
                })?;
                rss.push(v);
            }
        }
        let label_field = record.get(schema.n).unwrap().trim();
        let label: i64 = label_field.parse().map_err(|_| DatasetError::MalformedRow {
            row,
            reason: format!("non-integer label {label_field:?}"),
        })?;
        if label < 0 || label as usize >= schema.classes {
            return Err(DatasetError::UnknownLabel {
                row,
                label,
                classes: schema.classes,
            });
        }
        out.push(RawFingerprint {
            rss,
            label: label as usize,
        });
    }
    if out.is_empty() {
        return Err(DatasetError::EmptyFile);
    }
    Ok(out)
}

/// Write raw fingerprints in the same CSV shape `load_csv` reads.
pub fn write_csv(path: &Path, rows: &[RawFingerprint], n: usize) -> Result<(), DatasetError> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| DatasetError::Io(std::io::Error::other(e.to_string())))?;
    let mut header: Vec<String> = (0..n).map(|i| format!("rss_{i}")).collect();
    header.push("label".to_string());
    w.write_record(&header)
        .map_err(|e| DatasetError::Io(std::io::Error::other(e.to_string())))?;
    for fp in rows {
        let mut rec: Vec<String> = fp.rss.iter().map(|v| format!("{v}")).collect();
        rec.push(fp.label.to_string());
        w.write_record(&rec)
            .map_err(|e| DatasetError::Io(std::io::Error::other(e.to_string())))?;
    }
    w.flush()?;
    Ok(())
}

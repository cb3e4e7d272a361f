//! CSV ingestion: one claim per row, optional header, selectable column.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimsDataset {
    pub name: String,
    pub values: Vec<f64>,
    pub scale_note: String,
}

impl ClaimsDataset {
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.partial_cmp(b).expect("validated finite"));
        v
    }
}

/// A column given by header name or zero-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl ColumnSelector {
    pub fn parse(s: &str) -> Self {
        match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        }
    }
}

/// Reads `column` from the CSV at `path` and multiplies every value by `scale`.
///
/// A header row is recognized when the column is selected by name, or when
/// the first row's selected field is not numeric. Row numbers in errors
/// count file rows from 1, header included.
pub fn ingest_csv(path: &Path, column: &ColumnSelector, scale: f64) -> CliResult<ClaimsDataset> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(CliError::Usage(format!(
            "--scale must be positive, got {scale}"
        )));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::io(path, io),
            other => CliError::Usage(format!("{}: {other:?}", path.display())),
        })?;
    let mut records = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record
            .map_err(|e| CliError::Usage(format!("{}: row {}: {e}", path.display(), i + 1)))?;
        records.push(record);
    }
    let first = records
        .first()
        .ok_or_else(|| CliError::Usage(format!("{}: no rows", path.display())))?;

    let (index, skip) = match column {
        ColumnSelector::Name(name) => {
            let index = first.iter().position(|h| h == name).ok_or_else(|| {
                CliError::Usage(format!(
                    "{}: no column named `{name}` in header",
                    path.display()
                ))
            })?;
            (index, 1)
        }
        ColumnSelector::Index(index) => {
            let header = first
                .get(*index)
                .is_some_and(|field| field.parse::<f64>().is_err());
            (*index, usize::from(header))
        }
    };

    let mut values = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate().skip(skip) {
        let row = i + 1;
        let field = record.get(index).ok_or_else(|| {
            CliError::Usage(format!(
                "{}: row {row}: missing column {index}",
                path.display()
            ))
        })?;
        if field.is_empty() && record.len() <= 1 {
            continue;
        }
        let raw: f64 = field.parse().map_err(|_| {
            CliError::Usage(format!(
                "{}: row {row}: `{field}` is not a number",
                path.display()
            ))
        })?;
        let v = raw * scale;
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Usage(format!(
                "{}: row {row}: value {field} is not strictly positive",
                path.display()
            )));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(CliError::Usage(format!("{}: no data rows", path.display())));
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let scale_note = if scale == 1.0 {
        "as recorded".to_string()
    } else {
        format!("multiplied by {scale}")
    };
    Ok(ClaimsDataset {
        name,
        values,
        scale_note,
    })
}

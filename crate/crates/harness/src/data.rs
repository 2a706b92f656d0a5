//! Dataset ingestion: svmlight/libsvm text and delimited CSV.
//!
//! Labels arrive as `-1`, `0`, or `+1` and are normalized to `{-1, +1}`
//! (`0` maps to `-1`); anything else is an error naming the offending line.
//! Svmlight feature indices may be 0-based or 1-based: when no index 0
//! appears anywhere in the file the whole file is treated as 1-based and
//! shifted down by one. CSV rows are dense; zeros are dropped on conversion
//! and the non-label columns are renumbered from zero in order.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use streamboost_core::{Example, Label, SparseVector};

use crate::config::DataFormat;
use crate::error::HarnessError;

pub fn load_dataset(
    path: &Path,
    format: DataFormat,
    label_column: Option<usize>,
) -> Result<Vec<Example>, HarnessError> {
    let file = File::open(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let reader = BufReader::new(file);
    match format {
        DataFormat::Svmlight => load_svmlight(path, reader),
        DataFormat::Csv => {
            let column = label_column
                .ok_or_else(|| HarnessError::Config("csv requires a label column".into()))?;
            load_csv(path, reader, column)
        }
    }
}

fn parse_label(token: &str, path: &Path, line: u64) -> Result<Label, HarnessError> {
    let value: f64 = token.parse().map_err(|_| HarnessError::Label {
        path: path.display().to_string(),
        line,
        token: token.to_string(),
    })?;
    if value == 1.0 {
        Ok(Label::Pos)
    } else if value == 0.0 || value == -1.0 {
        Ok(Label::Neg)
    } else {
        Err(HarnessError::Label {
            path: path.display().to_string(),
            line,
            token: token.to_string(),
        })
    }
}

fn parse_error(path: &Path, line: u64, message: String) -> HarnessError {
    HarnessError::Parse {
        path: path.display().to_string(),
        line,
        message,
    }
}

fn load_svmlight<R: BufRead>(path: &Path, reader: R) -> Result<Vec<Example>, HarnessError> {
    let mut rows: Vec<(Label, Vec<(u32, f64)>, u64)> = Vec::new();
    let mut min_index = u32::MAX;
    for (number, line) in reader.lines().enumerate() {
        let number = number as u64 + 1;
        let line = line.map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        // A trailing "# ..." comment is part of the format.
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let label = parse_label(tokens.next().unwrap(), path, number)?;
        let mut features = Vec::new();
        for token in tokens {
            let (index, value) = token.split_once(':').ok_or_else(|| {
                parse_error(path, number, format!("expected index:value, got {token:?}"))
            })?;
            let index: u32 = index.parse().map_err(|_| {
                parse_error(path, number, format!("bad feature index {index:?}"))
            })?;
            let value: f64 = value.parse().map_err(|_| {
                parse_error(path, number, format!("bad feature value {value:?}"))
            })?;
            if !value.is_finite() {
                return Err(parse_error(
                    path,
                    number,
                    format!("feature {index} has non-finite value {value}"),
                ));
            }
            min_index = min_index.min(index);
            features.push((index, value));
        }
        rows.push((label, features, number));
    }
    if rows.is_empty() {
        return Err(HarnessError::EmptyDataset(path.to_path_buf()));
    }
    // No feature 0 anywhere: treat the file as 1-based and normalize.
    let shift = u32::from(min_index >= 1 && min_index != u32::MAX);
    rows.into_iter()
        .map(|(label, features, number)| {
            let shifted = features
                .into_iter()
                .map(|(index, value)| (index - shift, value))
                .collect();
            let features = SparseVector::new(shifted)
                .map_err(|e| parse_error(path, number, e.to_string()))?;
            Ok(Example::new(features, label))
        })
        .collect()
}

fn load_csv<R: BufRead>(
    path: &Path,
    reader: R,
    label_column: usize,
) -> Result<Vec<Example>, HarnessError> {
    let mut examples = Vec::new();
    for (number, line) in reader.lines().enumerate() {
        let number = number as u64 + 1;
        let line = line.map_err(|source| HarnessError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let content = line.trim();
        if content.is_empty() {
            continue;
        }
        let cells: Vec<&str> = content.split(',').map(str::trim).collect();
        if label_column >= cells.len() {
            return Err(parse_error(
                path,
                number,
                format!(
                    "label column {label_column} out of range for a {}-column row",
                    cells.len()
                ),
            ));
        }
        let label = parse_label(cells[label_column], path, number)?;
        let mut features = Vec::new();
        let mut next_index = 0u32;
        for (column, cell) in cells.iter().enumerate() {
            if column == label_column {
                continue;
            }
            let value: f64 = cell.parse().map_err(|_| {
                parse_error(path, number, format!("bad numeric value {cell:?} in column {column}"))
            })?;
            if !value.is_finite() {
                return Err(parse_error(
                    path,
                    number,
                    format!("non-finite value in column {column}"),
                ));
            }
            if value != 0.0 {
                features.push((next_index, value));
            }
            next_index += 1;
        }
        let features = SparseVector::new(features)
            .map_err(|e| parse_error(path, number, e.to_string()))?;
        examples.push(Example::new(features, label));
    }
    if examples.is_empty() {
        return Err(HarnessError::EmptyDataset(path.to_path_buf()));
    }
    Ok(examples)
}

//! CSV readers and writers: observation series, convergence traces and
//! order-search curves.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};
use greyfrac_core::greymodel::MIN_FIT_LEN;
use greyfrac_core::{Error as CoreError, Series};

use crate::error::{HarnessError, Result};

pub const SERIES_HEADER: [&str; 2] = ["label", "value"];
pub const TRACE_HEADER: [&str; 2] = ["iteration", "best_fitness"];
pub const CURVE_HEADER: [&str; 3] = ["r", "mean_error", "stddev"];

/// Data rows of a headed CSV, each paired with its 1-based line number.
fn rows(text: &str, header: &[&str]) -> Result<Vec<(u64, StringRecord)>> {
    let mut reader = ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(Trim::All)
        .from_reader(text.as_bytes());
    let found = reader.headers().map_err(csv_error)?.clone();
    if found.is_empty() || (found.len() == 1 && found[0].is_empty()) {
        return Err(HarnessError::Data(format!(
            "line 1: missing header, expected '{}'",
            header.join(",")
        )));
    }
    if found.iter().ne(header.iter().copied()) {
        return Err(HarnessError::Data(format!(
            "line 1: expected header '{}', found '{}'",
            header.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != header.len() {
            return Err(HarnessError::Data(format!(
                "line {line}: expected {} fields, found {}",
                header.len(),
                record.len()
            )));
        }
        out.push((line, record));
    }
    Ok(out)
}

fn csv_error(err: csv::Error) -> HarnessError {
    match err.position() {
        Some(pos) => HarnessError::Data(format!("line {}: {err}", pos.line())),
        None => HarnessError::Data(err.to_string()),
    }
}

fn field<T: std::str::FromStr>(record: &StringRecord, i: usize, line: u64, name: &str) -> Result<T> {
    record[i].parse().map_err(|_| {
        HarnessError::Data(format!("line {line}: cannot parse {name} '{}'", &record[i]))
    })
}

/// Parse a `label,value` series.
pub fn parse_series_csv(text: &str) -> Result<Series> {
    let rows = rows(text, &SERIES_HEADER)?;
    if rows.len() < MIN_FIT_LEN {
        return Err(HarnessError::Data(format!(
            "need at least {MIN_FIT_LEN} observations, found {}",
            rows.len()
        )));
    }
    let mut labels = Vec::with_capacity(rows.len());
    let mut values = Vec::with_capacity(rows.len());
    for (line, record) in &rows {
        labels.push(field::<i64>(record, 0, *line, "label")?);
        values.push(field::<f64>(record, 1, *line, "value")?);
    }
    Series::new(labels, values).map_err(|err| {
        let index = match err {
            CoreError::NonFinite { index }
            | CoreError::NonPositive { index, .. }
            | CoreError::BadLabels { index } => Some(index),
            _ => None,
        };
        match index {
            Some(i) => HarnessError::Data(format!("line {}: {err}", rows[i].0)),
            None => err.into(),
        }
    })
}

pub fn load_csv(path: &Path) -> Result<Series> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_series_csv(&text)
}

pub fn write_series_csv(labels: &[i64], values: &[f64]) -> String {
    let mut out = SERIES_HEADER.join(",") + "\n";
    for (label, value) in labels.iter().zip(values) {
        writeln!(out, "{label},{value}").unwrap();
    }
    out
}

/// Best-so-far fitness per iteration, iterations numbered from 1.
pub fn write_trace_csv(trace: &[f64]) -> String {
    let mut out = TRACE_HEADER.join(",") + "\n";
    for (i, f) in trace.iter().enumerate() {
        writeln!(out, "{},{f}", i + 1).unwrap();
    }
    out
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<f64>> {
    let mut trace = Vec::new();
    for (line, record) in rows(text, &TRACE_HEADER)? {
        let iteration: usize = field(&record, 0, line, "iteration")?;
        if iteration != trace.len() + 1 {
            return Err(HarnessError::Data(format!(
                "line {line}: expected iteration {}, found {iteration}",
                trace.len() + 1
            )));
        }
        let fitness: f64 = field(&record, 1, line, "best_fitness")?;
        if fitness.is_nan() {
            return Err(HarnessError::Data(format!("line {line}: best_fitness is NaN")));
        }
        trace.push(fitness);
    }
    Ok(trace)
}

/// One point of an order-search error curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub r: f64,
    pub mean_error: f64,
    pub stddev: f64,
}

pub fn write_curve_csv(curve: &[CurveRow]) -> String {
    let mut out = CURVE_HEADER.join(",") + "\n";
    for row in curve {
        writeln!(out, "{},{},{}", row.r, row.mean_error, row.stddev).unwrap();
    }
    out
}

pub fn parse_curve_csv(text: &str) -> Result<Vec<CurveRow>> {
    let mut curve: Vec<CurveRow> = Vec::new();
    for (line, record) in rows(text, &CURVE_HEADER)? {
        let row = CurveRow {
            r: field(&record, 0, line, "r")?,
            mean_error: field(&record, 1, line, "mean_error")?,
            stddev: field(&record, 2, line, "stddev")?,
        };
        if !(row.r > 0.0 && row.r <= 2.0) {
            return Err(HarnessError::Data(format!("line {line}: order {} outside (0, 2]", row.r)));
        }
        if curve.last().is_some_and(|prev| prev.r >= row.r) {
            return Err(HarnessError::Data(format!("line {line}: orders must increase")));
        }
        if row.mean_error.is_nan() || row.stddev.is_nan() {
            return Err(HarnessError::Data(format!("line {line}: NaN error")));
        }
        curve.push(row);
    }
    Ok(curve)
}

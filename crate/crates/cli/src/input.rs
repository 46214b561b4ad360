//! CSV series input.
//!
//! A file holds either one numeric column of values or two columns `(time, value)`.
//! A first row that does not parse as numbers is taken as a header. When a time
//! column is present it must be uniformly spaced, because the estimators assume
//! uniform sampling.

use std::path::Path;

use levytail::TimeSeries;

use crate::error::CliError;

/// Shortest series the estimators accept from the command line.
pub const MIN_SAMPLES: usize = 64;

/// Relative tolerance on the spacing of a time column.
const TIME_UNIFORMITY: f64 = 1e-9;

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    if e.is_io_error() {
        CliError::Io(format!("{}: {e}", path.display()))
    } else {
        CliError::Data(format!("{}: {e}", path.display()))
    }
}

pub fn read_series(path: &Path) -> Result<TimeSeries, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;

    let mut columns: Option<usize> = None;
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if i == 0 => {
                log::debug!("treating first row of {} as a header", path.display());
                continue;
            }
            Err(e) => {
                return Err(CliError::Data(format!(
                    "{}: row {}: {e}",
                    path.display(),
                    i + 1
                )))
            }
        };
        if !matches!(row.len(), 1 | 2) {
            return Err(CliError::Data(format!(
                "{}: expected one or two columns, found {}",
                path.display(),
                row.len()
            )));
        }
        if *columns.get_or_insert(row.len()) != row.len() {
            return Err(CliError::Data(format!(
                "{}: row {} has {} columns, earlier rows have {}",
                path.display(),
                i + 1,
                row.len(),
                columns.unwrap_or(0)
            )));
        }
        if row.len() == 2 {
            times.push(row[0]);
        }
        values.push(*row.last().expect("row is non-empty"));
    }

    if values.len() < MIN_SAMPLES {
        return Err(CliError::Data(format!(
            "{}: series has {} samples, at least {MIN_SAMPLES} are required",
            path.display(),
            values.len()
        )));
    }
    if !times.is_empty() {
        check_uniform(&times).map_err(|m| CliError::Data(format!("{}: {m}", path.display())))?;
    }
    TimeSeries::new(values).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn check_uniform(times: &[f64]) -> Result<(), String> {
    let steps = (times.len() - 1) as f64;
    let mean = (times[times.len() - 1] - times[0]) / steps;
    if !(mean > 0.0 && mean.is_finite()) {
        return Err("time column must be strictly increasing".into());
    }
    for (k, w) in times.windows(2).enumerate() {
        let dt = w[1] - w[0];
        if (dt - mean).abs() > TIME_UNIFORMITY * mean {
            return Err(format!(
                "time column is not uniformly spaced: step {} is {dt}, mean step is {mean}",
                k + 1
            ));
        }
    }
    Ok(())
}

/// Writes a series as a one-column CSV with a `value` header.
pub fn write_series(path: &Path, series: &TimeSeries) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| CliError::Io(format!("{}: {e}", path.display()));
    w.write_record(["value"]).map_err(io)?;
    for v in series.values() {
        w.write_record([v.to_string()]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

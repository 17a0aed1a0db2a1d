//! CSV emission and the matching reader. Files begin with '#'-prefixed
//! metadata lines (tool version, scenario echo, units), then a header row,
//! then data rows with 12 significant digits; bodies are deterministic for a
//! given config and seed.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::propagate::TimeSeries;
use crate::scenarios::Profile;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("refusing to write non-finite values (channel {0:?}, row {1})")]
    NonFinite(String, usize),
    #[error("i/o failure on {0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("parse failure at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

fn format_value(v: f64) -> String {
    format!("{v:.11e}")
}

fn metadata_block(meta: &std::collections::BTreeMap<String, String>, units: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# spincp {TOOL_VERSION}");
    let _ = writeln!(out, "# units: {units}");
    for (k, v) in meta {
        let _ = writeln!(out, "# {k} = {v}");
    }
    out
}

/// Write a time series: first column is time in seconds, then one column per
/// channel. NaN or infinite values are refused before any bytes reach disk.
pub fn write_series(series: &TimeSeries, path: &Path) -> Result<(), CsvError> {
    for (name, vals) in &series.channels {
        if let Some(row) = vals.iter().position(|v| !v.is_finite()) {
            return Err(CsvError::NonFinite(name.clone(), row));
        }
    }
    if let Some(row) = series.times.iter().position(|t| !t.is_finite()) {
        return Err(CsvError::NonFinite("time_s".into(), row));
    }
    let mut body = metadata_block(&series.metadata, "time_s seconds; channels dimensionless");
    let header: Vec<&str> = std::iter::once("time_s")
        .chain(series.channels.iter().map(|(n, _)| n.as_str()))
        .collect();
    let _ = writeln!(body, "{}", header.join(","));
    for (k, t) in series.times.iter().enumerate() {
        let mut row = vec![format_value(*t)];
        for (_, vals) in &series.channels {
            row.push(format_value(vals[k]));
        }
        let _ = writeln!(body, "{}", row.join(","));
    }
    write_atomic(path, &body)
}

/// Write a scan profile: scanned variable in Hz, both figures of merit.
pub fn write_profile(profile: &Profile, x_name: &str, path: &Path) -> Result<(), CsvError> {
    for (name, vals) in [
        ("max_over_tau", &profile.max_over_tau),
        ("at_fixed_tau", &profile.at_fixed_tau),
    ] {
        if let Some(row) = vals.iter().position(|v| !v.is_finite()) {
            return Err(CsvError::NonFinite(name.into(), row));
        }
    }
    let mut meta = profile.metadata.clone();
    meta.insert(
        "argmax_hz".into(),
        format!("{:.6}", profile.argmax / crate::constants::TAU),
    );
    let mut body = metadata_block(&meta, format!("{x_name} Hz; channels dimensionless").as_str());
    let _ = writeln!(body, "{x_name},max_over_tau,at_fixed_tau");
    for (k, x) in profile.x.iter().enumerate() {
        let _ = writeln!(
            body,
            "{},{},{}",
            format_value(x / crate::constants::TAU),
            format_value(profile.max_over_tau[k]),
            format_value(profile.at_fixed_tau[k])
        );
    }
    write_atomic(path, &body)
}

fn write_atomic(path: &Path, body: &str) -> Result<(), CsvError> {
    let mut f = fs::File::create(path)
        .map_err(|e| CsvError::Io(path.display().to_string(), e))?;
    f.write_all(body.as_bytes())
        .map_err(|e| CsvError::Io(path.display().to_string(), e))?;
    Ok(())
}

/// Read back a series written by [`write_series`]; round-trips to within
/// 1e-9 relative (12 significant digits are stored).
pub fn read_series(path: &Path) -> Result<TimeSeries, CsvError> {
    let text =
        fs::read_to_string(path).map_err(|e| CsvError::Io(path.display().to_string(), e))?;
    let mut metadata = std::collections::BTreeMap::new();
    let mut header: Option<Vec<String>> = None;
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                metadata.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        match &header {
            None => {
                header = Some(fields.iter().map(|s| s.trim().to_string()).collect());
                columns = vec![Vec::new(); fields.len()];
            }
            Some(h) => {
                if fields.len() != h.len() {
                    return Err(CsvError::Parse {
                        path: path.display().to_string(),
                        line: lineno + 1,
                        message: format!("expected {} fields, got {}", h.len(), fields.len()),
                    });
                }
                for (c, field) in fields.iter().enumerate() {
                    let v: f64 = field.trim().parse().map_err(|e| CsvError::Parse {
                        path: path.display().to_string(),
                        line: lineno + 1,
                        message: format!("bad number {field:?}: {e}"),
                    })?;
                    columns[c].push(v);
                }
            }
        }
    }
    let header = header.ok_or_else(|| CsvError::Parse {
        path: path.display().to_string(),
        line: 0,
        message: "missing header row".into(),
    })?;
    let mut cols = columns.into_iter();
    let times = cols.next().unwrap_or_default();
    let channels = header
        .into_iter()
        .skip(1)
        .zip(cols)
        .collect::<Vec<(String, Vec<f64>)>>();
    Ok(TimeSeries {
        times,
        channels,
        metadata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn sample_series() -> TimeSeries {
        TimeSeries {
            times: vec![0.0, 1.0e-3, 2.0e-3],
            channels: vec![
                ("Ix".into(), vec![0.0, 0.123456789012345, 3.999999]),
                ("S1z".into(), vec![4.0, 3.5, -1.0e-12]),
            ],
            metadata: BTreeMap::from([("phase".into(), "liquid".into())]),
        }
    }

    #[test]
    fn round_trip_preserves_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("series.csv");
        let ts = sample_series();
        write_series(&ts, &path).unwrap();
        let back = read_series(&path).unwrap();
        assert_eq!(back.metadata.get("phase").map(String::as_str), Some("liquid"));
        for ((na, va), (nb, vb)) in ts.channels.iter().zip(&back.channels) {
            assert_eq!(na, nb);
            for (a, b) in va.iter().zip(vb) {
                let tol = 1e-9 * a.abs().max(1e-300);
                assert!((a - b).abs() <= tol, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn refuses_nan_before_writing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        let mut ts = sample_series();
        ts.channels[0].1[1] = f64::NAN;
        assert!(matches!(
            write_series(&ts, &path),
            Err(CsvError::NonFinite(_, 1))
        ));
        assert!(!path.exists(), "no bytes should have been written");
    }

    #[test]
    fn empty_channel_series_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        let ts = TimeSeries {
            times: vec![],
            channels: vec![("Ix".into(), vec![])],
            metadata: BTreeMap::new(),
        };
        write_series(&ts, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let data_lines: Vec<&str> = text
            .lines()
            .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
            .collect();
        assert_eq!(data_lines, vec!["time_s,Ix"]);
    }

    #[test]
    fn deterministic_bodies() {
        let dir = tempfile::tempdir().unwrap();
        let (p1, p2) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
        let ts = sample_series();
        write_series(&ts, &p1).unwrap();
        write_series(&ts, &p2).unwrap();
        assert_eq!(
            std::fs::read(&p1).unwrap(),
            std::fs::read(&p2).unwrap()
        );
    }
}

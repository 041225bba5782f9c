//! Reading sensor traces from delimited text files and writing report
//! artifacts deterministically.
//!
//! Numbers in CSV artifacts are printed with 17 significant digits so a
//! re-read reproduces the exact bit pattern; non-finite values appear as
//! `inf` / `-inf`, which the standard float parser round-trips. JSON
//! artifacts carry the same convention (strings for non-finite reals) and
//! keep keys in a fixed (sorted) order. Sample indices in artifacts are
//! 1-based to match how the traces are usually numbered; everything
//! in-memory stays 0-based.

use crate::detector::DetectionReport;
use crate::error::{Error, Result};
use crate::evaluation::{EstimatorReport, QqSeries, RocCurve};
use crate::neighbors::PointSet;
use serde_json::{json, Map, Value};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Cell separator of a trace file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Delimiter {
    Comma,
    Whitespace,
    Tab,
}

impl Delimiter {
    fn split(self, line: &str) -> Vec<&str> {
        match self {
            Delimiter::Comma => line.split(',').map(str::trim).collect(),
            Delimiter::Whitespace => line.split_whitespace().collect(),
            Delimiter::Tab => line.split('\t').map(str::trim).collect(),
        }
    }
}

/// A delimited text file holding one sample per row.
#[derive(Debug, Clone)]
pub struct TraceFile {
    pub path: PathBuf,
    pub delimiter: Delimiter,
    /// 0-based column to read.
    pub column: usize,
    /// Rows to skip at the top of the file.
    pub header_rows: usize,
}

impl TraceFile {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            delimiter: Delimiter::Whitespace,
            column: 0,
            header_rows: 0,
        }
    }

    pub fn with_delimiter(mut self, delimiter: Delimiter) -> Self {
        self.delimiter = delimiter;
        self
    }

    pub fn with_column(mut self, column: usize) -> Self {
        self.column = column;
        self
    }

    pub fn with_header_rows(mut self, header_rows: usize) -> Self {
        self.header_rows = header_rows;
        self
    }
}

/// Parses the selected column as a 1-D series, in row order. Blank lines
/// are skipped; rows are numbered from 1 in error messages.
pub fn read_series(spec: &TraceFile) -> Result<PointSet> {
    let text = fs::read_to_string(&spec.path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            Error::FileNotFound(spec.path.display().to_string())
        } else {
            Error::Io(e)
        }
    })?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let row = i + 1;
        if i < spec.header_rows || line.trim().is_empty() {
            continue;
        }
        let cells = spec.delimiter.split(line);
        let cell = cells.get(spec.column).ok_or(Error::MissingColumn {
            row,
            column: spec.column,
        })?;
        // non-finite text is not a measurement; reject it here rather than
        // letting NaN poison the distance computations downstream
        let value = cell
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Parse {
                row,
                content: (*cell).to_string(),
            })?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(Error::EmptyFile);
    }
    PointSet::from_scalars(values)
}

/// Artifact output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// Any report the pipeline can write to disk.
#[derive(Debug, Clone, Copy)]
pub enum Report<'a> {
    Detection(&'a DetectionReport),
    Roc(&'a RocCurve),
    Qq(&'a QqSeries),
    Estimator(&'a EstimatorReport),
}

/// Formats a real with 17 significant digits (exact f64 round trip);
/// non-finite values become `inf` / `-inf`.
pub fn fmt_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// JSON value for a real; non-finite values are encoded as the strings
/// `"inf"` / `"-inf"` since JSON numbers cannot express them.
pub fn json_real(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

/// Reads back a real written by [`json_real`].
pub fn real_from_json(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) if s == "inf" => Some(f64::INFINITY),
        Value::String(s) if s == "-inf" => Some(f64::NEG_INFINITY),
        _ => None,
    }
}

/// Writes a report artifact; serialization is deterministic for equal
/// inputs (fixed key order, fixed float formatting).
pub fn write_report(report: Report<'_>, format: ReportFormat, path: &Path) -> Result<()> {
    let payload = match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(&to_json(report))
                .expect("report serialization cannot fail");
            out.push('\n');
            out
        }
        ReportFormat::Csv => to_csv(report),
    };
    let mut file = fs::File::create(path)?;
    file.write_all(payload.as_bytes())?;
    Ok(())
}

fn to_json(report: Report<'_>) -> Value {
    match report {
        Report::Detection(r) => {
            let mut map = Map::new();
            map.insert(
                "window_starts".into(),
                Value::Array(r.window_starts.iter().map(|&s| json!(s + 1)).collect()),
            );
            map.insert(
                "scores".into(),
                Value::Array(r.scores.iter().map(|&s| json_real(s)).collect()),
            );
            map.insert(
                "flags".into(),
                Value::Array(r.flags.iter().map(|&f| json!(f)).collect()),
            );
            map.insert("lower_threshold".into(), json_real(r.threshold_used.0));
            map.insert("upper_threshold".into(), json_real(r.threshold_used.1));
            map.insert(
                "confusion".into(),
                r.confusion
                    .map(|c| serde_json::to_value(c).expect("confusion serializes"))
                    .unwrap_or(Value::Null),
            );
            Value::Object(map)
        }
        Report::Roc(r) => json!({
            "points": r.points.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
            "auc": r.auc,
        }),
        Report::Qq(r) => json!({
            "points": r.points.iter().map(|&(t, s)| json!([t, s])).collect::<Vec<_>>(),
        }),
        Report::Estimator(r) => serde_json::to_value(r).expect("report serializes"),
    }
}

fn to_csv(report: Report<'_>) -> String {
    let mut out = String::new();
    match report {
        Report::Detection(r) => {
            out.push_str("window_start,score,flag\n");
            for i in 0..r.window_starts.len() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    r.window_starts[i] + 1,
                    fmt_real(r.scores[i]),
                    r.flags[i]
                ));
            }
        }
        Report::Roc(r) => {
            out.push_str("fpr,tpr\n");
            for &(x, y) in &r.points {
                out.push_str(&format!("{},{}\n", fmt_real(x), fmt_real(y)));
            }
        }
        Report::Qq(r) => {
            out.push_str("theoretical_quantile,sample_quantile\n");
            for &(t, s) in &r.points {
                out.push_str(&format!("{},{}\n", fmt_real(t), fmt_real(s)));
            }
        }
        Report::Estimator(r) => {
            out.push_str("trial,seed,raw_entropy,corrected_entropy\n");
            for t in &r.trials {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    t.trial,
                    t.seed,
                    fmt_real(t.raw),
                    fmt_real(t.corrected)
                ));
            }
        }
    }
    out
}

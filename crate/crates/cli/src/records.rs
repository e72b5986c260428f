//! Output tables and their CSV / JSON renderings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::format::{format_number, round_significant};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A flat numeric row with a fixed column contract.
pub trait Record {
    const COLUMNS: &'static [&'static str];
    fn values(&self) -> Vec<f64>;
}

/// One point of a transverse scan at fixed `n̄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub x: f64,
    #[serde(rename = "I")]
    pub i: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "I_norm")]
    pub i_norm: f64,
    #[serde(rename = "J_norm")]
    pub j_norm: f64,
    #[serde(rename = "D_norm")]
    pub d_norm: f64,
    pub g2m1: f64,
}

/// Tolerances applied when re-reading emitted scans.
pub const ADDITIVITY_TOLERANCE: f64 = 1e-10;
pub const RANGE_SLACK: f64 = 1e-12;

impl ScanRecord {
    /// Row invariants: `I = J + D`, normalised columns and `g² − 1` in `[0, 1]`.
    pub fn check(&self) -> std::result::Result<(), String> {
        let v = self.values();
        if let Some(k) = v.iter().position(|x| !x.is_finite()) {
            return Err(format!("{} is not finite", Self::COLUMNS[k]));
        }
        let gap = (self.i - self.j - self.d).abs();
        if gap > ADDITIVITY_TOLERANCE * self.i.abs().max(1.0) {
            return Err(format!("I - J - D = {gap:e}"));
        }
        for (name, val) in [("I_norm", self.i_norm), ("g2m1", self.g2m1)] {
            if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&val) {
                return Err(format!("{name} = {val} outside [0, 1]"));
            }
        }
        Ok(())
    }
}

impl Record for ScanRecord {
    const COLUMNS: &'static [&'static str] = &["x", "I", "J", "D", "I_norm", "J_norm", "D_norm", "g2m1"];

    fn values(&self) -> Vec<f64> {
        vec![
            self.x,
            self.i,
            self.j,
            self.d,
            self.i_norm,
            self.j_norm,
            self.d_norm,
            self.g2m1,
        ]
    }
}

/// Correlations at fixed offset as a function of `n̄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub nbar: f64,
    #[serde(rename = "I")]
    pub i: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "J_over_I")]
    pub j_over_i: f64,
    #[serde(rename = "D_over_I")]
    pub d_over_i: f64,
}

impl Record for SweepRecord {
    const COLUMNS: &'static [&'static str] = &["nbar", "I", "J", "D", "J_over_I", "D_over_I"];

    fn values(&self) -> Vec<f64> {
        vec![self.nbar, self.i, self.j, self.d, self.j_over_i, self.d_over_i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McRecord {
    pub x: f64,
    pub g2m1_estimate: f64,
    pub std_error: f64,
    pub g2m1_analytic: f64,
}

impl Record for McRecord {
    const COLUMNS: &'static [&'static str] = &["x", "g2m1_estimate", "std_error", "g2m1_analytic"];

    fn values(&self) -> Vec<f64> {
        vec![self.x, self.g2m1_estimate, self.std_error, self.g2m1_analytic]
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory writer cannot fail");
    String::from_utf8(bytes).expect("csv output is ascii")
}

pub fn render_csv<R: Record>(rows: &[R]) -> String {
    let mut w = csv_writer();
    w.write_record(R::COLUMNS).expect("in-memory write");
    for row in rows {
        w.write_record(row.values().into_iter().map(format_number))
            .expect("in-memory write");
    }
    finish_csv(w)
}

/// Array of objects keyed by the CSV column names, values rounded like the CSV.
pub fn render_json<R: Record>(rows: &[R]) -> String {
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|r| {
            let obj = R::COLUMNS
                .iter()
                .zip(r.values())
                .map(|(k, v)| (k.to_string(), serde_json::Value::from(round_significant(v))))
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("json values are serialisable");
    s.push('\n');
    s
}

pub fn render<R: Record>(rows: &[R], format: Format) -> String {
    match format {
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
    }
}

/// Reads a scan table back from CSV or JSON (detected from the content).
pub fn read_scan(path: &Path) -> Result<Vec<ScanRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let parse_err = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()));
    }
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| parse_err(e.to_string()))?.clone();
    if headers.iter().ne(ScanRecord::COLUMNS.iter().copied()) {
        return Err(parse_err(format!(
            "expected columns {}, found {}",
            ScanRecord::COLUMNS.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    reader
        .deserialize()
        .map(|r| r.map_err(|e| parse_err(e.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row() -> ScanRecord {
        ScanRecord {
            x: 0.0,
            i: 2.375_474_497_334_5,
            j: 2.008_430_397_488_7,
            d: 0.367_044_099_845_8,
            i_norm: 1.0,
            j_norm: 1.0,
            d_norm: 1.0,
            g2m1: 1.0,
        }
    }

    #[test]
    fn csv_layout() {
        let s = render_csv(&[row()]);
        assert_eq!(
            s,
            "x,I,J,D,I_norm,J_norm,D_norm,g2m1\n0,2.37547449733,2.00843039749,0.367044099846,1,1,1,1\n"
        );
    }

    #[test]
    fn json_mirrors_columns() {
        let v: serde_json::Value = serde_json::from_str(&render_json(&[row()])).unwrap();
        let obj = v[0].as_object().unwrap();
        assert_eq!(obj.keys().count(), 8);
        for k in ScanRecord::COLUMNS {
            assert!(obj.contains_key(*k), "{k}");
        }
        let back: Vec<ScanRecord> = serde_json::from_value(v).unwrap();
        assert!(back[0].check().is_ok());
    }

    #[test]
    fn invariants_flag_bad_rows() {
        assert!(row().check().is_ok());
        let mut r = row();
        r.d += 1e-6;
        assert!(r.check().is_err());
        let mut r = row();
        r.g2m1 = 1.1;
        assert!(r.check().is_err());
        let mut r = row();
        r.i_norm = f64::NAN;
        assert!(r.check().is_err());
    }
}

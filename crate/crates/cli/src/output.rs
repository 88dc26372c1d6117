//! Deterministic table/report emission: CSV with 17-significant-digit
//! decimals, JSON variants, and gnuplot stubs referencing the CSV by
//! relative path.

use std::path::{Path, PathBuf};

use crate::config::OutFormat;
use crate::CliError;

/// 17 significant digits: exact `f64` round trip, byte-stable output.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|v| fmt_f64(*v)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, value) in self.columns.iter().zip(row) {
                    obj.insert(name.to_string(), serde_json::json!(value));
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&rows).expect("json encoding");
        text.push('\n');
        text
    }

    /// Write the table under `dir` with the extension implied by `format`;
    /// returns the written path.
    pub fn write(&self, dir: &Path, stem: &str, format: OutFormat) -> Result<PathBuf, CliError> {
        let (ext, body) = match format {
            OutFormat::Csv => ("csv", self.to_csv()),
            OutFormat::Json => ("json", self.to_json()),
        };
        let path = dir.join(format!("{stem}.{ext}"));
        write_text(&path, &body)?;
        Ok(path)
    }
}

pub fn write_text(path: &Path, body: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::Solver(format!("cannot create {}: {e}", parent.display())))?;
    }
    std::fs::write(path, body)
        .map_err(|e| CliError::Solver(format!("cannot write {}: {e}", path.display())))
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("json encoding");
    text.push('\n');
    write_text(path, &text)
}

/// Gnuplot stub plotting `columns` of a data file in the same directory.
pub fn write_plot_stub(
    dir: &Path,
    stem: &str,
    data_file: &str,
    xlabel: &str,
    ylabel: &str,
) -> Result<(), CliError> {
    let body = format!(
        "# gnuplot stub; run from this directory\n\
         set datafile separator \",\"\n\
         set key autotitle columnhead\n\
         set xlabel \"{xlabel}\"\n\
         set ylabel \"{ylabel}\"\n\
         plot \"{data_file}\" using 1:2 with lines\n"
    );
    write_text(&dir.join(format!("{stem}.plt")), &body)
}

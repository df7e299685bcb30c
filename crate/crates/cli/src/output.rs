//! CSV/JSON sinks with lossless double formatting, and the matching reader.

use std::fs::File;
use std::io::{BufWriter, Write};

use crate::CliError;

/// 17 significant digits: enough to round-trip any f64 bit-exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

enum Target {
    Stdout(std::io::Stdout),
    File(BufWriter<File>),
}

/// Destination for command output: a file when `--output` is given,
/// stdout otherwise. CSV uses comma separators, one header row and LF
/// line endings.
pub struct OutputSink {
    target: Target,
}

impl OutputSink {
    pub fn create(path: Option<String>) -> Result<Self, CliError> {
        let target = match path {
            Some(p) => Target::File(BufWriter::new(File::create(p)?)),
            None => Target::Stdout(std::io::stdout()),
        };
        Ok(Self { target })
    }

    fn write_line(&mut self, line: &str) -> Result<(), CliError> {
        match &mut self.target {
            Target::Stdout(out) => {
                out.write_all(line.as_bytes())?;
                out.write_all(b"\n")?;
            }
            Target::File(f) => {
                f.write_all(line.as_bytes())?;
                f.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn csv_header(&mut self, names: &[&str]) -> Result<(), CliError> {
        self.write_line(&names.join(","))
    }

    pub fn csv_row(&mut self, fields: &[String]) -> Result<(), CliError> {
        self.write_line(&fields.join(","))
    }

    pub fn json<T: serde::Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| CliError::Usage(format!("serialization failed: {e}")))?;
        self.write_line(&text)
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        match &mut self.target {
            Target::Stdout(out) => out.flush()?,
            Target::File(f) => f.flush()?,
        }
        Ok(())
    }
}

/// A parsed CSV file: header names plus rows of raw fields.
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    /// Column index by header name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// All values of a column parsed as f64 (bit-exact for our own output).
    pub fn f64_column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.column(name)?;
        self.rows
            .iter()
            .map(|r| r.get(idx).and_then(|s| s.parse().ok()))
            .collect()
    }
}

/// Read back a CSV written by this tool.
pub fn read_csv(path: &str) -> Result<CsvTable, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let header = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("bad header in {path}: {e}")))?
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Usage(format!("bad row in {path}: {e}")))?;
        rows.push(record.iter().map(|s| s.to_string()).collect());
    }
    Ok(CsvTable { header, rows })
}

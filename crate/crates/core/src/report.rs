//! Tabular reports rendered as commented CSV or JSON.
//!
//! Every report starts with a header naming the tool version, the command,
//! the seed (when one applies) and the SHA-256 digest of each input file.
//! Nothing time-dependent goes into a report, so identical inputs and flags
//! give byte-identical output.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of_file(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Ok(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportHeader {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Vec<InputDigest>,
}

impl ReportHeader {
    pub fn new(command: &str) -> Self {
        ReportHeader {
            tool: "corpuscope".into(),
            version: crate::VERSION.into(),
            command: command.into(),
            seed: None,
            inputs: Vec::new(),
        }
    }
}

/// One table cell. Floats keep full precision in JSON and are rounded to
/// `decimals` in CSV.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Float { value: f64, decimals: usize },
}

impl Cell {
    pub fn float(value: f64, decimals: usize) -> Self {
        Cell::Float { value, decimals }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(n) => n.to_string(),
            Cell::Float { value, decimals } => format!("{value:.decimals$}"),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(n) => Value::from(*n),
            // non-finite values become null
            Cell::Float { value, .. } => serde_json::Number::from_f64(*value)
                .map(Value::Number)
                .unwrap_or(Value::Null),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n as i64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width mismatch in {}",
            self.name
        );
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub header: ReportHeader,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> Result<String> {
        let mut out = Vec::new();
        let h = &self.header;
        writeln!(out, "# {} {}", h.tool, h.version).unwrap();
        writeln!(out, "# command: {}", h.command).unwrap();
        if let Some(seed) = h.seed {
            writeln!(out, "# seed: {seed}").unwrap();
        }
        for input in &h.inputs {
            writeln!(out, "# input: {} sha256={}", input.path, input.sha256).unwrap();
        }
        for (i, table) in self.tables.iter().enumerate() {
            if i > 0 {
                writeln!(out).unwrap();
            }
            writeln!(out, "# table: {}", table.name).unwrap();
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::to_csv))?;
            }
            w.flush().map_err(|e| Error::io("<report>", e))?;
        }
        Ok(String::from_utf8(out).expect("report is UTF-8"))
    }

    fn to_json(&self) -> Result<String> {
        let mut root = Map::new();
        root.insert("header".into(), serde_json::to_value(&self.header)?);
        for table in &self.tables {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = table
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::to_json))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            root.insert(table.name.clone(), Value::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(root))?;
        s.push('\n');
        Ok(s)
    }
}

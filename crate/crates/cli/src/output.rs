//! Tables with a metadata header, written as CSV or versioned JSON.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::Result;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Real(x) if x.is_finite() => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Real(_) | Cell::Missing => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<i32> for Cell {
    fn from(i: i32) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
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

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Missing, Cell::Real)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn records(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(row) {
                    m.insert((*c).to_string(), v.json());
                }
                Value::Object(m)
            })
            .collect();
        Value::Array(rows)
    }
}

/// Everything a report carries besides its rows.
#[derive(Clone, Debug)]
pub struct Report {
    pub config: Vec<(&'static str, String)>,
    pub units: String,
    /// Extra lines for the header, in order.
    pub notes: Vec<(String, String)>,
    pub table: Table,
    /// Additional top-level JSON members.
    pub extra: Vec<(&'static str, Value)>,
}

impl Report {
    pub fn new(cfg: &RunConfig, table: Table) -> Self {
        Report {
            config: cfg.echo(),
            units: format!("{}; mass = {:?}", cfg.units.convention(), cfg.units.mass),
            notes: Vec::new(),
            table,
            extra: Vec::new(),
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.notes.push((key.into(), value.into()));
    }

    fn meta(&self) -> Value {
        let mut config = Map::new();
        for (k, v) in &self.config {
            config.insert((*k).to_string(), json!(v));
        }
        let mut notes = Map::new();
        for (k, v) in &self.notes {
            notes.insert(k.clone(), json!(v));
        }
        json!({
            "tool": "revb",
            "version": env!("CARGO_PKG_VERSION"),
            "units": self.units,
            "config": config,
            "notes": notes,
        })
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# tool: revb {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# units: {}", self.units)?;
        for (k, v) in &self.config {
            writeln!(w, "# config.{k}: {v}")?;
        }
        for (k, v) in &self.notes {
            writeln!(w, "# {k}: {v}")?;
        }
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.table.columns)?;
        for row in &self.table.rows {
            out.write_record(row.iter().map(Cell::csv))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> Result<()> {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("meta".into(), self.meta());
        doc.insert("records".into(), self.table.records());
        for (k, v) in &self.extra {
            doc.insert((*k).to_string(), v.clone());
        }
        serde_json::to_writer_pretty(&mut w, &Value::Object(doc))?;
        writeln!(w)?;
        Ok(())
    }

    pub fn write(&self, format: Format, w: impl Write) -> Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    /// Writes to `path`, or to stdout when there is none.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<()> {
        match path {
            Some(p) => {
                let mut w = BufWriter::new(File::create(p)?);
                self.write(format, &mut w)?;
                w.flush()?;
            }
            None => {
                let stdout = io::stdout();
                let mut w = stdout.lock();
                self.write(format, &mut w)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

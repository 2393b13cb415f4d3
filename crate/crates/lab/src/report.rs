//! Tables and their JSON and CSV renderings.
//!
//! Numbers are written with 17 significant digits in CSV and in shortest
//! round-trip form in JSON; both parse back to the same `f64`. Missing
//! values are `null` in JSON and empty in CSV.

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::config::{Format, RunConfig};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Null,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Null, Cell::Num)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl Cell {
    fn to_json(&self) -> Json {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Num(_) | Cell::Null => Json::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Null => String::new(),
        }
    }
}

/// Named columns and rows of cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::to_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// The data section: columns and rows.
    pub fn data_json(&self) -> Json {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    config: &'a RunConfig,
    version: &'static str,
    wall_time_s: f64,
    data: Json,
}

/// JSON envelope: config echo, library version, wall time and data.
pub fn envelope_json(config: &RunConfig, table: &Table, wall_time_s: f64) -> String {
    let env = Envelope {
        config,
        version: env!("CARGO_PKG_VERSION"),
        wall_time_s,
        data: table.data_json(),
    };
    let mut s = serde_json::to_string_pretty(&env).expect("envelope serializes");
    s.push('\n');
    s
}

pub fn render(config: &RunConfig, table: &Table, wall_time_s: f64) -> String {
    match config.format {
        Format::Json => envelope_json(config, table, wall_time_s),
        Format::Csv => table.to_csv(),
    }
}

//! Column-oriented result records serialized as CSV (default, plot-ready) or
//! JSON (programmatic).
//!
//! CSV: comma separator, one header row naming each column with its unit, LF
//! line endings, '.' decimal separator, floats at the configured number of
//! significant digits (default 17, full round-trip). Infinite timescales are
//! the literal token `inf`; in JSON they are `null` with a companion boolean
//! flag column. Trailer entries become `# key = value` comment lines after
//! the data rows.

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    /// An infinite-timescale signal: "inf" in CSV, null in JSON.
    Infinite,
    /// No value (error rows): empty in CSV, null in JSON.
    Empty,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub trailer: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            trailer: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn push_trailer(&mut self, key: &str, value: Cell) {
        self.trailer.push((key.to_string(), value));
    }
}

fn format_float(value: f64, significant_digits: usize) -> String {
    let digits = significant_digits.clamp(1, 17);
    format!("{:.*e}", digits - 1, value)
}

fn csv_escape(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn cell_to_csv(cell: &Cell, significant_digits: usize) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => format_float(*v, significant_digits),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(v) => csv_escape(v),
        Cell::Infinite => "inf".to_string(),
        Cell::Empty => String::new(),
    }
}

fn cell_to_json(cell: &Cell) -> Value {
    match cell {
        Cell::Int(v) => json!(v),
        Cell::Float(v) => json!(v),
        Cell::Bool(v) => json!(v),
        Cell::Text(v) => json!(v),
        Cell::Infinite | Cell::Empty => Value::Null,
    }
}

pub fn to_csv(table: &Table, significant_digits: usize) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| cell_to_csv(c, significant_digits))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    for (key, value) in &table.trailer {
        out.push_str(&format!(
            "# {key} = {}\n",
            cell_to_csv(value, significant_digits)
        ));
    }
    out
}

pub fn to_json(table: &Table) -> String {
    let records: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut map = Map::new();
            for (name, cell) in table.columns.iter().zip(row) {
                map.insert(name.clone(), cell_to_json(cell));
            }
            Value::Object(map)
        })
        .collect();
    let mut root = Map::new();
    root.insert("columns".to_string(), json!(table.columns));
    root.insert("records".to_string(), Value::Array(records));
    if !table.trailer.is_empty() {
        let mut trailer = Map::new();
        for (key, cell) in &table.trailer {
            trailer.insert(key.clone(), cell_to_json(cell));
        }
        root.insert("trailer".to_string(), Value::Object(trailer));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("json serialization");
    text.push('\n');
    text
}

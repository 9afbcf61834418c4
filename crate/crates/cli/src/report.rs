use num_bigint::BigUint;
use serde_json::{Map, Number, Value};

use crate::config::{Format, RunConfig};

pub fn big(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

/// Non-finite floats become null.
pub fn num(x: f64) -> Value {
    let x = if x == 0.0 { 0.0 } else { x };
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

/// Rows in a fixed column order, shared by the JSON and CSV renderings.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(r.iter().cloned())
                    .collect();
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

pub struct Report {
    pub command: &'static str,
    /// Top-level JSON fields besides `command`, `config` and `rows`.
    pub extra: Map<String, Value>,
    pub table: Table,
    /// Set the table as the JSON `rows` field.
    pub rows_in_json: bool,
    /// A failed cross-check; the report is still written.
    pub failure: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, table: Table) -> Self {
        Report {
            command,
            extra: Map::new(),
            table,
            rows_in_json: true,
            failure: None,
        }
    }

    pub fn fail(&mut self, why: String) {
        if self.failure.is_none() {
            self.failure = Some(why);
        }
    }

    pub fn render(&self, config: &RunConfig) -> String {
        match config.format {
            Format::Json => self.to_json(config),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self, config: &RunConfig) -> String {
        let mut doc = self.extra.clone();
        doc.insert("command".into(), Value::String(self.command.into()));
        doc.insert(
            "config".into(),
            serde_json::to_value(config).expect("configs serialize"),
        );
        if self.rows_in_json {
            doc.insert("rows".into(), self.table.json_rows());
        }
        serde_json::to_string_pretty(&Value::Object(doc)).expect("reports serialize") + "\n"
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.columns).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row.iter().map(cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }
}

pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

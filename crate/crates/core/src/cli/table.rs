//! Flat tables and their CSV / JSON forms.

use crate::error::{Error, Result};
use serde_json::{json, Value};

/// Placeholder for an absent value.
pub const MISSING: &str = "—";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Bool(bool),
    Missing,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Int(i) => Some(i as f64),
            Cell::Num(x) => Some(x),
            _ => None,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            // 17 significant digits
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => MISSING.to_string(),
        }
    }

    fn from_csv(s: &str) -> Result<Cell> {
        match s {
            MISSING => return Ok(Cell::Missing),
            "true" => return Ok(Cell::Bool(true)),
            "false" => return Ok(Cell::Bool(false)),
            _ => {}
        }
        if let Ok(i) = s.parse::<i64>() {
            return Ok(Cell::Int(i));
        }
        s.parse::<f64>().map(Cell::Num).map_err(|_| Error::config(format!("bad CSV cell {s:?}")))
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) => json!(x),
            Cell::Bool(b) => json!(b),
            Cell::Missing => Value::Null,
        }
    }

    fn from_json(v: &Value) -> Result<Cell> {
        match v {
            Value::Null => Ok(Cell::Missing),
            Value::Bool(b) => Ok(Cell::Bool(*b)),
            Value::Number(n) if n.is_i64() => Ok(Cell::Int(n.as_i64().unwrap())),
            Value::Number(n) if n.is_f64() => Ok(Cell::Num(n.as_f64().unwrap())),
            other => Err(Error::config(format!("bad JSON cell {other}"))),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() { Cell::Num(x) } else { Cell::Missing }
    }
}

impl From<i64> for Cell {
    fn from(i: i64) -> Self {
        Cell::Int(i)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(o: Option<T>) -> Self {
        o.map_or(Cell::Missing, Into::into)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::config(format!("unknown format {s:?} (csv|json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn parse(s: &str, format: Format) -> Result<Table> {
        match format {
            Format::Csv => Table::from_csv(s),
            Format::Json => Table::from_json(s),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::to_csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn from_csv(s: &str) -> Result<Table> {
        let mut rd = csv::Reader::from_reader(s.as_bytes());
        let columns = rd
            .headers()
            .map_err(|e| Error::config(format!("CSV header: {e}")))?
            .iter()
            .map(String::from)
            .collect::<Vec<_>>();
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| Error::config(format!("CSV: {e}")))?;
            rows.push(rec.iter().map(Cell::from_csv).collect::<Result<Vec<_>>>()?);
        }
        Ok(Table { columns, rows })
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::to_json).collect())).collect();
        serde_json::to_string_pretty(&json!({ "columns": self.columns, "rows": rows })).expect("serializes")
    }

    pub fn from_json(s: &str) -> Result<Table> {
        #[derive(serde::Deserialize)]
        struct Raw {
            columns: Vec<String>,
            rows: Vec<Vec<Value>>,
        }
        let raw: Raw = serde_json::from_str(s).map_err(|e| Error::config(format!("table JSON: {e}")))?;
        let rows = raw
            .rows
            .iter()
            .map(|r| {
                if r.len() != raw.columns.len() {
                    return Err(Error::config("row width differs from header"));
                }
                r.iter().map(Cell::from_json).collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Table { columns: raw.columns, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> Table {
        let mut t = Table::new(&["n", "x", "flag", "opt"]);
        t.push(vec![Cell::Int(0), Cell::Num(0.1), Cell::Bool(true), Cell::Missing]);
        t.push(vec![Cell::Int(-3), Cell::Num(-1.234_567_890_123_456_7e-300), Cell::Bool(false), Cell::Num(2.0)]);
        t
    }

    #[test]
    fn csv_format() {
        let s = sample().to_csv();
        assert!(s.starts_with("n,x,flag,opt\n0,1.0000000000000001e-1,true,—\n"), "{s}");
    }

    #[test]
    fn round_trips() {
        for f in [Format::Csv, Format::Json] {
            assert_eq!(Table::parse(&sample().emit(f), f).unwrap(), sample());
        }
        assert!(Table::from_json(r#"{"columns":["a"],"rows":[[1,2]]}"#).is_err());
        assert!(Table::from_csv("a\nxyz\n").is_err());
    }

    fn arb_cell() -> impl Strategy<Value = Cell> {
        prop_oneof![
            any::<i64>().prop_map(Cell::Int),
            any::<f64>().prop_filter("finite", |x| x.is_finite()).prop_map(Cell::Num),
            any::<bool>().prop_map(Cell::Bool),
            Just(Cell::Missing),
        ]
    }

    proptest! {
        #[test]
        fn emit_parse_identity(rows in prop::collection::vec(prop::collection::vec(arb_cell(), 3), 0..8)) {
            let mut t = Table::new(&["a", "b", "c"]);
            for r in rows {
                t.push(r);
            }
            for f in [Format::Csv, Format::Json] {
                prop_assert_eq!(Table::parse(&t.emit(f), f).unwrap(), t.clone());
            }
        }
    }
}

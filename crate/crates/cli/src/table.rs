use std::io::Write;

use serde_json::{Map, Value};

use crate::args::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) if x.is_nan() => "nan".into(),
            Cell::Float(x) if x.is_infinite() => if *x > 0.0 { "inf" } else { "-inf" }.into(),
            // 17 significant digits round-trip every f64
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Float(x) if x.is_finite() => Value::from(*x),
            // JSON has no non-finite numbers
            Cell::Float(_) => Value::String(self.csv()),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    /// Adds leading columns, filled with the same cells on every row.
    pub fn prepend(&mut self, headers: &[&str], cells: &[Cell]) {
        let mut h: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
        h.append(&mut self.headers);
        self.headers = h;
        for row in &mut self.rows {
            let mut r = cells.to_vec();
            r.append(row);
            *row = r;
        }
    }

    pub fn extend(&mut self, other: Table) {
        debug_assert_eq!(self.headers, other.headers);
        self.rows.extend(other.rows);
    }

    pub fn write(&self, format: Format, out: impl Write) -> Result<(), CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> =
                            self.headers.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                        Value::Object(obj)
                    })
                    .collect();
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &rows).map_err(|e| CliError::Io(e.to_string()))?;
                out.write_all(b"\n")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["site", "value"]);
        t.rows.push(vec![Cell::Int(1), Cell::Float(0.1)]);
        t.rows.push(vec![Cell::Int(2), Cell::Float(f64::INFINITY)]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "site,value\n1,1.0000000000000001e-1\n2,inf\n");
    }

    #[test]
    fn json_layout() {
        let mut t = sample();
        t.prepend(&["d"], &[Cell::Text("log".into())]);
        let mut buf = Vec::new();
        t.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v[0]["d"], "log");
        assert_eq!(v[0]["value"], 0.1);
        assert_eq!(v[1]["value"], "inf");
        let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["d", "site", "value"]);
    }
}

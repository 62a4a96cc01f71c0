use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// A command's result in all three renderings.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// Header and rows; falls back to flattened JSON scalars.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// An identity check failed.
    pub finding: bool,
}

impl Report {
    pub fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), table: None, finding: false }
    }

    pub fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }

    pub fn finding(mut self, failed: bool) -> Self {
        self.finding = failed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let (header, rows) = match &self.table {
                    Some(t) => t.clone(),
                    None => (vec!["key".into(), "value".into()], flatten(&self.json)),
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&header).expect("in-memory write");
                for r in rows {
                    w.write_record(&r).expect("in-memory write");
                }
                w.flush().expect("in-memory flush");
                String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 output")
            }
        }
    }

    pub fn emit(&self, format: Format) {
        let out = std::io::stdout();
        let mut lock = out.lock();
        // a closed pipe is not an error worth reporting
        let _ = lock.write_all(self.render(format).as_bytes());
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `(path, value)` pairs for every leaf of a JSON value.
pub fn flatten(v: &Value) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<Vec<String>>) {
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                walk(x, join(k), out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                walk(x, join(&i.to_string()), out);
            }
        }
        other => out.push(vec![path, scalar(other)]),
    }
}

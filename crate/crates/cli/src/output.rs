use std::io::{self, Write};

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a command hands back for printing.
pub enum Report {
    /// Named fields. `text` overrides the default `key value` rendering.
    Record {
        fields: Vec<(&'static str, Value)>,
        text: Option<String>,
    },
    Table {
        columns: Vec<&'static str>,
        rows: Vec<Vec<Value>>,
        /// Lines printed after the table in text mode only.
        footer: Vec<String>,
        /// Replaces the whole text rendering.
        text: Option<String>,
    },
}

impl Report {
    pub fn record(fields: Vec<(&'static str, Value)>) -> Self {
        Report::Record { fields, text: None }
    }

    pub fn with_text(fields: Vec<(&'static str, Value)>, text: String) -> Self {
        Report::Record {
            fields,
            text: Some(text),
        }
    }

    pub fn table(columns: Vec<&'static str>, rows: Vec<Vec<Value>>) -> Self {
        Report::Table {
            columns,
            rows,
            footer: Vec::new(),
            text: None,
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match (self, format) {
            (Report::Record { text: Some(t), .. }, Format::Text)
            | (Report::Table { text: Some(t), .. }, Format::Text) => out.write_all(t.as_bytes()),
            (Report::Record { fields, .. }, Format::Text) => {
                for (k, v) in fields.iter().filter(|(_, v)| !v.is_null()) {
                    writeln!(out, "{k} {}", plain(v))?;
                }
                Ok(())
            }
            (Report::Record { fields, .. }, Format::Json) => {
                let map: Map<String, Value> =
                    fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(map))?)
            }
            (Report::Record { fields, .. }, Format::Csv) => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(fields.iter().map(|(k, _)| *k))?;
                w.write_record(fields.iter().map(|(_, v)| plain(v)))?;
                w.flush()
            }
            (Report::Table { columns, rows, footer, .. }, Format::Text) => {
                let cells: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(plain).collect()).collect();
                let widths: Vec<usize> = (0..columns.len())
                    .map(|i| cells.iter().map(|r| r[i].len()).chain([columns[i].len()]).max().unwrap_or(0))
                    .collect();
                let line = |items: Vec<&str>| {
                    items
                        .iter()
                        .zip(&widths)
                        .map(|(s, w)| format!("{s:>w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                writeln!(out, "{}", line(columns.clone()))?;
                for r in &cells {
                    writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
                }
                for f in footer {
                    writeln!(out, "{f}")?;
                }
                Ok(())
            }
            (Report::Table { columns, rows, .. }, Format::Json) => {
                let objects: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        Value::Object(columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect())
                    })
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&objects)?)
            }
            (Report::Table { columns, rows, .. }, Format::Csv) => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(columns)?;
                for r in rows {
                    w.write_record(r.iter().map(plain))?;
                }
                w.flush()
            }
        }
    }
}

/// Strings without quotes, everything else as JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::failure::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// A command result in every format it supports.
pub struct Output {
    pub json: Value,
    pub text: String,
    /// Header row first.
    pub csv: Option<Vec<Vec<String>>>,
}

impl Output {
    pub fn new<T: Serialize>(report: &T, text: String) -> Self {
        Output {
            json: serde_json::to_value(report).expect("reports serialize"),
            text,
            csv: None,
        }
    }

    /// Text rendering derived from the JSON tree.
    pub fn flat<T: Serialize>(report: &T) -> Self {
        let json = serde_json::to_value(report).expect("reports serialize");
        let mut text = String::new();
        flatten(&json, "", &mut text);
        Output {
            json,
            text,
            csv: None,
        }
    }

    pub fn with_csv(mut self, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some(rows);
        self
    }

    pub fn render(&self, format: Format, command: &str) -> Result<String, Failure> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.json).expect("json") + "\n"),
            Format::Text => Ok(self.text.clone()),
            Format::Csv => {
                let rows = self.csv.as_ref().ok_or_else(|| {
                    Failure::input(
                        "output",
                        format!("csv output is not available for `{command}`"),
                    )
                })?;
                let mut w = csv::Writer::from_writer(Vec::new());
                for r in rows {
                    w.write_record(r).expect("in-memory write");
                }
                Ok(String::from_utf8(w.into_inner().expect("flush")).expect("utf8"))
            }
        }
    }
}

fn flatten(v: &Value, prefix: &str, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten(x, &key(k), out);
            }
        }
        Value::Array(a)
            if a.iter().any(|x| {
                x.is_object()
                    || x.is_array() && x.as_array().is_some_and(|y| y.iter().any(Value::is_object))
            }) =>
        {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &key(&i.to_string()), out);
            }
        }
        _ => {
            writeln!(out, "{prefix}: {}", scalar(v)).unwrap();
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        _ => v.to_string(),
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn csv_rows(headers: &[&str], rows: &[Vec<String>]) -> Vec<Vec<String>> {
    std::iter::once(headers.iter().map(|h| h.to_string()).collect())
        .chain(rows.iter().cloned())
        .collect()
}

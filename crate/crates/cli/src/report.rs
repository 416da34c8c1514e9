//! Flat key/value reports (analyze, convert, rlc) and their renderings.
//!
//! Text and CSV are produced from the same deserializable struct that JSON
//! serializes, so re-rendering parsed JSON gives back the same text.

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::format::{csv_writer, finish_csv, OutputFormat, Precision};

pub enum Field {
    Num(Option<f64>),
    Text(Option<String>),
}

impl Field {
    fn render(&self, p: Precision, missing: &str) -> String {
        match self {
            Field::Num(Some(v)) => p.render(*v),
            Field::Text(Some(s)) => s.clone(),
            Field::Num(None) | Field::Text(None) => missing.to_string(),
        }
    }
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Num(Some(v))
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        Field::Num(v)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(Some(s.to_string()))
    }
}

impl From<Option<String>> for Field {
    fn from(s: Option<String>) -> Self {
        Field::Text(s)
    }
}

pub trait Report: Serialize + DeserializeOwned {
    /// Ordered fields for the text and CSV views.
    fn fields(&self) -> Vec<(&'static str, Field)>;

    fn render(&self, format: OutputFormat, p: Precision) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let fields = self.fields();
                let width = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                fields
                    .iter()
                    .map(|(k, v)| format!("{k:<width$}  {}\n", v.render(p, "-")))
                    .collect()
            }
            OutputFormat::Csv => {
                let fields = self.fields();
                let mut w = csv_writer(Vec::new());
                w.write_record(fields.iter().map(|(k, _)| *k))
                    .expect("in-memory write");
                w.write_record(fields.iter().map(|(_, v)| v.render(p, "")))
                    .expect("in-memory write");
                finish_csv(w)
            }
        }
    }
}

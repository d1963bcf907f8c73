//! A command result and its three renderings. JSON is authoritative; the
//! CSV table and the text summary are projections of it.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Report {
    pub pass: bool,
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(pass: bool, json: Value) -> Self {
        Report {
            pass,
            json,
            header: Vec::new(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.json)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(w.into_inner()?)
            }
            Format::Text => {
                let mut s = String::new();
                for l in &self.summary {
                    s.push_str(l);
                    s.push('\n');
                }
                if !self.rows.is_empty() {
                    s.push_str(&self.header.join("\t"));
                    s.push('\n');
                    for r in &self.rows {
                        s.push_str(&r.join("\t"));
                        s.push('\n');
                    }
                }
                s.push_str(if self.pass { "pass\n" } else { "FAIL\n" });
                Ok(s.into_bytes())
            }
        }
    }
}

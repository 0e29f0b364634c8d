use std::fmt::Display;

use analysis_core::numbers::parse_rational;
use analysis_core::Rational;
use clap::ValueEnum;

/// A failed command: the message goes to stderr, the code is the exit code.
#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub message: String,
}

impl Fail {
    pub fn usage(message: impl Into<String>) -> Self {
        Fail { code: 2, message: message.into() }
    }
}

/// Library errors are domain errors.
impl<E: std::error::Error> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail { code: 1, message: e.to_string() }
    }
}

pub fn rational(text: &str) -> Result<Rational, Fail> {
    parse_rational(text).map_err(|e| Fail::usage(format!("{text:?}: {e}")))
}

pub fn kv(key: &str, value: impl Display) {
    println!("{key}: {value}");
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Tsv,
}

/// Table printer: aligned text by default, tab-separated with a header
/// under `--format tsv`.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Tsv => {
                println!("{}", self.header.join("\t"));
                for r in &self.rows {
                    println!("{}", r.join("\t"));
                }
            }
            Format::Text => {
                let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
                for r in &self.rows {
                    for (w, c) in widths.iter_mut().zip(r) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    println!("{}", padded.join("  ").trim_end());
                };
                line(self.header.clone());
                for r in &self.rows {
                    line(r.iter().map(String::as_str).collect());
                }
            }
        }
    }
}

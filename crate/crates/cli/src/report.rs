use std::fmt::Write;

use crate::Format;

/// Output of one subcommand.
pub struct Report {
    pub name: &'static str,
    pub csv: String,
    pub json: serde_json::Value,
    pub dot: Option<String>,
    pub summary: String,
    /// First counterexample, if any verification failed.
    pub failure: Option<String>,
}

impl Report {
    pub fn artifact(&self, format: Format) -> Option<String> {
        match format {
            Format::Csv => Some(self.csv.clone()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
                s.push('\n');
                Some(s)
            }
            Format::Dot => self.dot.clone(),
        }
    }
}

/// CSV with the versioned schema line.
pub struct Csv(String);

impl Csv {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Csv(format!("# grigrow {name} v1\n{}\n", columns.join(",")))
    }

    pub fn row(&mut self, cells: &[String]) {
        let quoted: Vec<String> = cells.iter().map(|c| quote(c)).collect();
        let _ = writeln!(self.0, "{}", quoted.join(","));
    }

    pub fn finish(self) -> String {
        self.0
    }
}

fn quote(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

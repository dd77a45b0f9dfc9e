//! Driver reports: pass/fail checks, machine-readable data and a plain
//! text table, written as one JSON and one text file per driver.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// One pass/fail verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Plain text table with aligned columns.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: &str, headers: &[&str]) -> Self {
        Table { title: title.into(), headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let n = self.headers.len();
        let mut width: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate().take(n) {
                width[i] = width[i].max(c.len());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{c:>w$}", w = width[i])).collect();
            parts.join("  ")
        };
        let mut out = format!("{}\n{}\n", self.title, line(&self.headers));
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

/// Everything one driver produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub driver: String,
    pub checks: Vec<Check>,
    pub data: Value,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(driver: &str) -> Self {
        Report { driver: driver.into(), checks: Vec::new(), data: Value::Null, tables: Vec::new(), notes: Vec::new() }
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("== {} ==\n", self.driver);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(&t.render());
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                let _ = writeln!(out, "note: {n}");
            }
        }
        out
    }

    /// Writes `<driver>.json` and `<driver>.txt` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
        let stem = self.driver.replace(' ', "-");
        let json = dir.join(format!("{stem}.json"));
        let text = dir.join(format!("{stem}.txt"));
        std::fs::write(&json, self.to_json()).map_err(|e| io(&json, e))?;
        std::fs::write(&text, self.to_text()).map_err(|e| io(&text, e))?;
        Ok(vec![json, text])
    }
}

pub(crate) fn io(path: &Path, e: std::io::Error) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lists_checks_and_aligns_tables() {
        let mut r = Report::new("demo");
        r.check("one", true, "ok");
        r.check("two", false, "bad");
        let mut t = Table::new("rows", &["r", "value"]);
        t.row(vec!["1".into(), "10".into()]);
        r.tables.push(t);
        let text = r.to_text();
        assert!(text.contains("[PASS] one: ok"));
        assert!(text.contains("[FAIL] two: bad"));
        assert!(text.contains("r  value\n1     10\n"));
        assert!(!r.passed());
    }
}

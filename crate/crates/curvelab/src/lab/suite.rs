//! Runs every verification driver and writes the report bundle.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::json;

use crate::error::Result;
use crate::lab::report::io;
use crate::lab::{axis, fibers, formula, oracles, projection, sep, ExperimentConfig, Report};

type Driver = fn(&ExperimentConfig) -> Result<Report>;

/// Every driver in bundle order.
pub const DRIVERS: [(&str, Driver); 13] = [
    ("farey", oracles::verify_farey),
    ("twists", oracles::verify_twists),
    ("projection-diameter", projection::verify_projection_diameter),
    ("behrstock", projection::verify_behrstock),
    ("fibers", fibers::verify_fibers),
    ("labels", sep::verify_labels),
    ("overlap", sep::verify_overlap),
    ("bilipschitz", sep::verify_bilipschitz),
    ("axis-build", axis::verify_axis),
    ("formula", formula::verify_formula),
    ("axis-diverge", axis::verify_divergence),
    ("axis-contract", axis::verify_contraction),
    ("axis-chain", axis::verify_chain),
];

/// Reports of a full run, in bundle order.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub reports: Vec<Report>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    pub fn failures(&self) -> Vec<(String, String)> {
        self.reports
            .iter()
            .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| (r.driver.clone(), c.name.clone())))
            .collect()
    }

    pub fn report(&self, driver: &str) -> Option<&Report> {
        self.reports.iter().find(|r| r.driver == driver)
    }

    /// One line per check, then the overall verdict.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            for c in &r.checks {
                let _ = writeln!(out, "[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, r.driver, c.name);
            }
        }
        let failed = self.failures().len();
        let _ = writeln!(out, "{}: {failed} failing checks", if failed == 0 { "ALL PASS" } else { "FAILURES" });
        out
    }

    pub fn summary_json(&self) -> String {
        let drivers: Vec<_> = self
            .reports
            .iter()
            .map(|r| json!({"driver": r.driver, "passed": r.passed(), "checks": r.checks}))
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({"passed": self.passed(), "drivers": drivers})).expect("summary serializes");
        s.push('\n');
        s
    }

    /// Writes every report plus `summary.json`, `summary.txt` and the
    /// configuration. The output location is left out of the bundle.
    pub fn write(&self, dir: &Path, cfg: &ExperimentConfig) -> Result<Vec<PathBuf>> {
        let cfg = ExperimentConfig { out: None, ..cfg.clone() };
        let mut paths = Vec::new();
        for r in &self.reports {
            paths.extend(r.write(dir)?);
        }
        for (name, text) in [
            ("summary.json", self.summary_json()),
            ("summary.txt", self.summary_text()),
            ("config.toml", cfg.to_toml()),
        ] {
            let p = dir.join(name);
            std::fs::write(&p, text).map_err(|e| io(&p, e))?;
            paths.push(p);
        }
        Ok(paths)
    }
}

/// Runs the named drivers in parallel; results keep the requested order.
pub fn run_drivers(cfg: &ExperimentConfig, names: &[&str]) -> Result<SuiteOutcome> {
    let chosen: Vec<Driver> = names
        .iter()
        .map(|n| {
            DRIVERS
                .iter()
                .find(|(d, _)| d == n)
                .map(|(_, f)| *f)
                .ok_or_else(|| crate::error::Error::Parse(format!("unknown driver {n}")))
        })
        .collect::<Result<_>>()?;
    let reports = chosen.into_par_iter().map(|f| f(cfg)).collect::<Result<Vec<_>>>()?;
    Ok(SuiteOutcome { reports })
}

/// Every driver with the given configuration. Surface settings are
/// ignored because the drivers fix their own surfaces.
pub fn run_suite(cfg: &ExperimentConfig) -> Result<SuiteOutcome> {
    let mut cfg = cfg.clone();
    cfg.surface = None;
    let names: Vec<&str> = DRIVERS.iter().map(|(n, _)| *n).collect();
    run_drivers(&cfg, &names)
}

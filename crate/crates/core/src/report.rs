//! Structured pass/fail reports for structure checks.

use serde::Serialize;

/// One checked condition with its measured residual and verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub condition: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// A list of checked conditions; passes only if every entry passes.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
}

impl Report {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    /// Record a condition: passes when `residual <= tolerance`.
    pub fn check(&mut self, condition: &str, residual: f64, tolerance: f64) {
        self.entries.push(ReportEntry {
            condition: condition.to_string(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual <= tolerance,
        });
    }

    /// Record a condition with an externally decided verdict.
    pub fn check_flag(&mut self, condition: &str, residual: f64, tolerance: f64, pass: bool) {
        self.entries.push(ReportEntry {
            condition: condition.to_string(),
            residual,
            tolerance,
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn worst_residual(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.residual)
            .fold(0.0, f64::max)
    }
}

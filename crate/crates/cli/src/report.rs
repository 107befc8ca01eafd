//! JSON report emitted by the static check commands.

use serde::Serialize;

use vortexpatch_core::{Disk, Moments, StabilityReport, TheoremBound};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

impl Check {
    /// `lhs <= rhs + slack`.
    pub fn le(name: &str, lhs: f64, rhs: f64, slack: f64) -> Check {
        Check {
            name: name.to_string(),
            lhs,
            rhs,
            margin: rhs - lhs,
            pass: lhs <= rhs + slack,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub kind: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moments: Option<Moments>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_fit_disk: Option<Disk>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma1_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<StabilityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prelim_lhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prelim_rhs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
}

impl Report {
    pub fn new(kind: &'static str) -> Report {
        Report {
            kind,
            pass: true,
            checks: Vec::new(),
            moments: None,
            best_fit_disk: None,
            lemma1_gap: None,
            stability: None,
            prelim_lhs: None,
            prelim_rhs: None,
            theorem: None,
            q: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

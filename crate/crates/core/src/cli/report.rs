use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::residue::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Theorems,
    Boundary,
    Commutators,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Md,
}

/// Resolved verification settings, echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: Suite,
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub config: RunConfig,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, mut checks: Vec<CheckReport>) -> Report {
        checks.sort_by(|a, b| (&a.id, a.n).cmp(&(&b.id, b.n)));
        let pass = checks.iter().filter(|c| c.passed()).count();
        let summary = Summary {
            pass,
            fail: checks.len() - pass,
        };
        Report {
            version: 1,
            config,
            checks,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> crate::error::Result<Report> {
        serde_json::from_str(text).map_err(|e| crate::error::Error::Parse(format!("report: {e}")))
    }

    pub fn to_markdown(&self) -> String {
        let c = &self.config;
        let mut s = String::new();
        let _ = writeln!(s, "# Verification report\n");
        let _ = writeln!(
            s,
            "suite `{:?}`, n = {}, m = {}, trials = {}, seed = {}\n",
            c.suite, c.n, c.m, c.trials, c.seed
        );
        let _ = writeln!(s, "| id | n | trials | status | computed | expected |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for k in &self.checks {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | `{}` | `{}` |",
                k.id, k.n, k.trials, k.status, k.computed, k.expected
            );
        }
        let _ = writeln!(s, "\n**{} passed, {} failed**", self.summary.pass, self.summary.fail);
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Md => self.to_markdown(),
        }
    }
}

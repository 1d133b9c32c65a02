use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
        }
    }
}

/// Outcome of one exact check over several trials.
///
/// `computed` and `expected` are the renderings for the first failing trial,
/// or for trial 0 when every trial passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub n: usize,
    pub trials: usize,
    pub status: Status,
    pub computed: String,
    pub expected: String,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Per-trial outcome used to assemble a [`CheckReport`].
pub struct TrialOutcome {
    pub ok: bool,
    pub computed: String,
    pub expected: String,
}

pub fn summarize(id: &str, n: usize, outcomes: Vec<TrialOutcome>) -> CheckReport {
    let trials = outcomes.len();
    let shown = outcomes.iter().position(|o| !o.ok).unwrap_or(0);
    let status = if outcomes.iter().all(|o| o.ok) {
        Status::Pass
    } else {
        Status::Fail
    };
    let (computed, expected) = outcomes
        .into_iter()
        .nth(shown)
        .map(|o| (o.computed, o.expected))
        .unwrap_or_default();
    CheckReport {
        id: id.to_string(),
        n,
        trials,
        status,
        computed,
        expected,
    }
}

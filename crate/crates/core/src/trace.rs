use serde::{Deserialize, Serialize};

/// Best-so-far value after `reads` function reads.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub reads: u64,
    pub best_value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Solved,
    BudgetExhausted,
    StabilityHalt,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Solved => "solved",
            RunStatus::BudgetExhausted => "budget_exhausted",
            RunStatus::StabilityHalt => "stability_halt",
        }
    }
}

/// Outcome of one seeded run of one solver on one objective.
///
/// `samples` is strictly increasing in reads and monotone in best value
/// (non-increasing for minimization).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub algorithm: String,
    pub objective: String,
    pub seed: u64,
    pub samples: Vec<Sample>,
    pub status: RunStatus,
    pub solved_at_reads: Option<u64>,
    pub reads_used: u64,
    pub best_value: f64,
    pub best_position: Vec<f64>,
    pub target: Option<f64>,
    /// Solver configuration used for the run.
    pub config: serde_json::Value,
}

impl RunTrace {
    pub fn is_solved(&self) -> bool {
        self.solved_at_reads.is_some()
    }

    /// Whether the run had reached its target within `reads` reads.
    pub fn solved_within(&self, reads: u64) -> bool {
        self.solved_at_reads.is_some_and(|r| r <= reads)
    }
}

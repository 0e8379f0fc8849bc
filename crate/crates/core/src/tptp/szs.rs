//! SZS status values and output lines.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SzsStatus {
    Theorem,
    ContradictoryAxioms,
    CounterSatisfiable,
    GaveUp,
    Timeout,
    Unsatisfiable,
    Satisfiable,
    Error,
}

impl SzsStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SzsStatus::Theorem => "Theorem",
            SzsStatus::ContradictoryAxioms => "ContradictoryAxioms",
            SzsStatus::CounterSatisfiable => "CounterSatisfiable",
            SzsStatus::GaveUp => "GaveUp",
            SzsStatus::Timeout => "Timeout",
            SzsStatus::Unsatisfiable => "Unsatisfiable",
            SzsStatus::Satisfiable => "Satisfiable",
            SzsStatus::Error => "Error",
        }
    }

    /// Process exit code for a run ending in this status.
    pub fn exit_code(self) -> i32 {
        match self {
            SzsStatus::Theorem
            | SzsStatus::Unsatisfiable
            | SzsStatus::ContradictoryAxioms
            | SzsStatus::CounterSatisfiable
            | SzsStatus::Satisfiable => 0,
            SzsStatus::GaveUp | SzsStatus::Timeout => 1,
            SzsStatus::Error => 2,
        }
    }

    /// A refutation was found.
    pub fn is_refutation(self) -> bool {
        matches!(
            self,
            SzsStatus::Theorem | SzsStatus::Unsatisfiable | SzsStatus::ContradictoryAxioms
        )
    }
}

impl fmt::Display for SzsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn status_line(status: SzsStatus, problem: &str) -> String {
    format!("% SZS status {status} for {problem}")
}

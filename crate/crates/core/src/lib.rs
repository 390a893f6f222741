//! Certifying decomposition toolkit: given a graph G and a pattern
//! (an apex-forest or a wheel), produce either an explicit minor model of the
//! pattern in G or a rooted tree-decomposition of G within a guaranteed bag
//! bound. Every certificate is independently checkable; brute-force oracles
//! cover desk-scale ground truth.

pub mod apex_forest;
pub mod certificates;
pub mod graph;
pub mod io;
pub mod menger;
pub mod oracles;
pub mod wheel;

pub use certificates::{MinorModel, PatternSpec, RootedTreeDecomposition, Verdict};
pub use graph::{ContractionTrace, Graph, Separation, VertexId};

use serde::{Deserialize, Serialize};

/// Errors surfaced to callers. Violated internal invariants panic instead:
/// they signal bugs, not bad inputs.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The input breaks a documented precondition.
    #[error("input error: {0}")]
    Input(String),
    /// The input is beyond a configured brute-force size limit.
    #[error("size limit exceeded: {0}")]
    Limit(String),
    /// Malformed textual input.
    #[error("parse error at {at}: {msg}")]
    Parse { at: String, msg: String },
    /// The algorithm reached a configuration its case analysis does not
    /// cover. Reported rather than guessed around; carries enough detail
    /// to reproduce.
    #[error("uncovered case: {0}")]
    Uncovered(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(at: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse { at: at.into(), msg: msg.into() }
    }
}

/// Result of a decomposition run: exactly one of a width certificate or a
/// minor certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum DecomposeOutcome {
    Decomposition(RootedTreeDecomposition),
    Minor(MinorModel),
}

impl DecomposeOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            DecomposeOutcome::Decomposition(_) => "decomposition",
            DecomposeOutcome::Minor(_) => "minor",
        }
    }
}

/// Bag-size guarantee for the wheel decomposer: max(k, 3k/2 - 3), taken in
/// integers. The integer division matches the guarantee for every k >= 3
/// because bag sizes are integral.
pub fn wheel_bag_bound(k: u32) -> usize {
    (k as usize).max((3 * k as usize) / 2 - 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bag_bound_values() {
        assert_eq!(wheel_bag_bound(3), 3);
        assert_eq!(wheel_bag_bound(4), 4);
        assert_eq!(wheel_bag_bound(5), 5);
        assert_eq!(wheel_bag_bound(6), 6);
        assert_eq!(wheel_bag_bound(7), 7);
        assert_eq!(wheel_bag_bound(8), 9);
        assert_eq!(wheel_bag_bound(9), 10);
        assert_eq!(wheel_bag_bound(10), 12);
    }
}

// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::ring_metrics::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("topology would have {requested} nodes, above the configured cap of {cap}")]
    Size { requested: u128, cap: u64 },

    /// Remaining distance is below one level sweep; only short links apply.
    #[error("distance {dist} is below m = {m}; route with short links only")]
    ShortOnly { dist: u64, m: u64 },

    #[error("distance {dist} is not a multiple of m = {m}; endpoint levels differ")]
    LevelMismatch { dist: u64, m: u64 },

    #[error("route {source_node} -> {target} exceeded {max_hops} hops")]
    NonTermination {
        source_node: NodeId,
        target: NodeId,
        max_hops: usize,
    },

    #[error("no edge {from} -> {to} in topology")]
    MissingEdge { from: NodeId, to: NodeId },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("edge {from} -> {to} carries no load; congestion ratio is undefined")]
    UndefinedPi { from: NodeId, to: NodeId },

    #[error(
        "exhaustive enumeration needs {needed} route evaluations, budget is {budget}; \
         fall back to sampling (e.g. {suggested_samples} samples with seed {seed})"
    )]
    BudgetExceeded {
        needed: u128,
        budget: u64,
        suggested_samples: u64,
        seed: u64,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

// SPDX-License-Identifier: Apache-2.0

//! Exhaustive verification: hop statistics, phase structure, exact edge
//! loads and the congestion ratio π, and a breadth-first shortest-path
//! oracle.

mod bfs;
mod compare;
mod exact;
mod load;
mod span;
mod stats;
mod sweep;

pub use bfs::bfs_shortest_paths;
pub use compare::{
    analyze, compare_strategies, greedy_detours, Analysis, Comparison, Detour, DetourSummary,
};
pub use exact::Exact;
pub use load::{edge_load_profile, is_excluded, EdgeLoad, LoadProfile};
pub use span::{
    classify_phases, hop_phases, phase_caps, phase_counts, phase_labels, span_contains,
};
pub use stats::{all_pairs_stats, sampled_stats, StatsSummary};
pub use sweep::{evaluation_count, AnalysisOptions, DEFAULT_BUDGET};

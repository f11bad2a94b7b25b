// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::analysis::exact::Exact;
use crate::analysis::sweep::{sweep, AnalysisOptions, Sweep};
use crate::ring_metrics::NodeId;
use crate::routing::StrategyConfig;
use crate::topology::{EdgeKind, Family, Topology};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLoad {
    pub from: NodeId,
    pub to: NodeId,
    pub kind: String,
    pub load: Exact,
    pub excluded: bool,
}

/// Expected traversals per edge when every pair routes once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadProfile {
    /// Number of ordered pairs routed (includes `s == t` when requested).
    pub pairs: u64,
    pub include_self_pairs: bool,
    pub loads: Vec<EdgeLoad>,
    /// Edges left out of the ratio: back links of `B_absolute`.
    pub excluded: Vec<(NodeId, NodeId)>,
    pub min_load: Exact,
    pub max_load: Exact,
    /// `max_load / min_load` over eligible edges; `None` if some eligible
    /// edge is never used.
    pub pi: Option<Exact>,
    pub zero_load_edges: Vec<(NodeId, NodeId)>,
    /// Sum of all loads, equal to the expected total hop count.
    pub total: Exact,
}

/// Back links of `B_absolute` are left out of the ratio; they carry no
/// load under hypercubic or congestion-free routing.
pub fn is_excluded(topo: &Topology, kind: EdgeKind) -> bool {
    topo.family() == Family::Absolute && kind == EdgeKind::Back
}

impl LoadProfile {
    pub(crate) fn from_sweep(topo: &Topology, sweep: &Sweep, include_self_pairs: bool) -> Self {
        let d = sweep.denominator;
        let mut loads = Vec::with_capacity(topo.edge_count());
        let mut excluded = Vec::new();
        let mut zero_load_edges = Vec::new();
        let mut eligible: Option<(u128, u128)> = None;
        for ((u, edge), &numer) in topo.edges().zip(sweep.loads.iter()) {
            let skip = is_excluded(topo, edge.kind);
            if skip {
                excluded.push((u, edge.target));
            } else {
                if numer == 0 {
                    zero_load_edges.push((u, edge.target));
                }
                eligible = Some(match eligible {
                    Some((lo, hi)) => (lo.min(numer), hi.max(numer)),
                    None => (numer, numer),
                });
            }
            loads.push(EdgeLoad {
                from: u,
                to: edge.target,
                kind: edge.kind_label(),
                load: Exact::new(numer, d),
                excluded: skip,
            });
        }
        let (lo, hi) = eligible.unwrap_or((0, 0));
        LoadProfile {
            pairs: sweep.load_pairs,
            include_self_pairs,
            loads,
            excluded,
            min_load: Exact::new(lo, d),
            max_load: Exact::new(hi, d),
            pi: (lo > 0).then(|| Exact::new(hi, lo)),
            zero_load_edges,
            total: Exact::new(sweep.loads.iter().sum(), d),
        }
    }
}

/// Exact per-edge loads and the congestion ratio π for `config`.
///
/// Fails with [`Error::UndefinedPi`] when an eligible edge carries no load.
pub fn edge_load_profile(
    topo: &Topology,
    config: &StrategyConfig,
    options: &AnalysisOptions,
) -> Result<LoadProfile> {
    let sweep = sweep(topo, config, options, true)?;
    let profile = LoadProfile::from_sweep(topo, &sweep, options.include_self_pairs);
    if let Some(&(from, to)) = profile.zero_load_edges.first() {
        return Err(Error::UndefinedPi { from, to });
    }
    Ok(profile)
}

// SPDX-License-Identifier: Apache-2.0

use crate::ring_metrics::{Metric, NodeId};
use crate::routing::{default_max_hops, Route, Walker};
use crate::topology::{Family, Topology};
use crate::{Error, Result};

/// Greedy routing under `metric`: always forward to the neighbor closest
/// to `t`, smallest label first on ties.
pub fn greedy_route(topo: &Topology, metric: Metric, s: NodeId, t: NodeId) -> Result<Route> {
    greedy_route_with_cap(topo, metric, s, t, default_max_hops(topo))
}

pub fn greedy_route_with_cap(
    topo: &Topology,
    metric: Metric,
    s: NodeId,
    t: NodeId,
    max_hops: usize,
) -> Result<Route> {
    topo.check_node(s)?;
    topo.check_node(t)?;
    let n = topo.n();
    let mut walk = Walker::new(topo, metric, s, t, max_hops);
    while !walk.arrived() {
        // out_edges is sorted by target, and min_by_key keeps the first minimum
        let next = topo
            .out_edges(walk.at())
            .iter()
            .min_by_key(|e| metric.distance_unchecked(e.target.value(), t.value(), n))
            .ok_or_else(|| {
                Error::InvariantViolation(format!("node {} has no out-edges", walk.at()))
            })?;
        walk.step_to(next.target, None)?;
    }
    walk.finish()
}

/// Greedy routing under the xor metric on `B_xor`.
pub fn xor_greedy(topo: &Topology, s: NodeId, t: NodeId) -> Result<Route> {
    if topo.family() != Family::Xor {
        return Err(Error::Parameter(format!(
            "xor greedy needs the xor family, got {}",
            topo.family().name()
        )));
    }
    greedy_route(topo, Metric::Xor, s, t)
}

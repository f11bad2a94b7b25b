// SPDX-License-Identifier: Apache-2.0

use std::collections::VecDeque;

use crate::ring_metrics::NodeId;
use crate::topology::Topology;
use crate::Result;

/// Unweighted hop distance from `s` to every node; `None` if unreachable.
pub fn bfs_shortest_paths(topo: &Topology, s: NodeId) -> Result<Vec<Option<u32>>> {
    topo.check_node(s)?;
    let mut dist = vec![None; topo.n() as usize];
    let mut queue = VecDeque::new();
    dist[s.index()] = Some(0);
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let next = dist[u.index()].map(|d| d + 1);
        for e in topo.out_edges(u) {
            let slot = &mut dist[e.target.index()];
            if slot.is_none() {
                *slot = next;
                queue.push_back(e.target);
            }
        }
    }
    Ok(dist)
}

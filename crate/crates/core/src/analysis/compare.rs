// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::bfs::bfs_shortest_paths;
use crate::analysis::load::LoadProfile;
use crate::analysis::stats::StatsSummary;
use crate::analysis::sweep::{sweep, AnalysisOptions};
use crate::ring_metrics::{Metric, NodeId};
use crate::routing::{greedy_route_with_cap, Route, Strategy, StrategyConfig};
use crate::topology::Topology;
use crate::{Error, Result};

/// Stats and loads from one exhaustive sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub config: StrategyConfig,
    pub stats: StatsSummary,
    pub load: LoadProfile,
}

pub fn analyze(
    topo: &Topology,
    config: &StrategyConfig,
    options: &AnalysisOptions,
) -> Result<Analysis> {
    let sweep = sweep(topo, config, options, true)?;
    Ok(Analysis {
        config: *config,
        stats: StatsSummary::from_sweep(&sweep)?,
        load: LoadProfile::from_sweep(topo, &sweep, options.include_self_pairs),
    })
}

/// A pair that greedy routes along a path longer than the shortest one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detour {
    pub source: NodeId,
    pub target: NodeId,
    pub greedy_hops: usize,
    pub shortest_hops: u32,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetourSummary {
    pub metric: Metric,
    pub pairs_checked: u64,
    pub pairs_longer_than_shortest: u64,
    /// First such pair in `(source, target)` order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first: Option<Detour>,
}

/// Compares greedy route lengths with breadth-first shortest paths.
pub fn greedy_detours(
    topo: &Topology,
    metric: Metric,
    options: &AnalysisOptions,
) -> Result<DetourSummary> {
    let config = StrategyConfig::greedy(metric);
    config.validate_for(topo)?;
    let cap = config.max_hops_for(topo);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
    let per_source = |s: NodeId| -> Result<(u64, u64, Option<Detour>)> {
        let shortest = bfs_shortest_paths(topo, s)?;
        let (mut checked, mut longer, mut first) = (0, 0, None);
        for t in topo.nodes().filter(|&t| t != s) {
            let best = shortest[t.index()]
                .ok_or_else(|| Error::InvariantViolation(format!("{t} unreachable from {s}")))?;
            let route = greedy_route_with_cap(topo, metric, s, t, cap)?;
            checked += 1;
            if route.len() > best as usize {
                longer += 1;
                if first.is_none() {
                    first = Some(Detour {
                        source: s,
                        target: t,
                        greedy_hops: route.len(),
                        shortest_hops: best,
                        route,
                    });
                }
            }
        }
        Ok((checked, longer, first))
    };
    let per: Vec<(u64, u64, Option<Detour>)> = pool.install(|| {
        topo.nodes()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(per_source)
            .collect::<Result<Vec<_>>>()
    })?;
    let mut out = DetourSummary {
        metric,
        pairs_checked: 0,
        pairs_longer_than_shortest: 0,
        first: None,
    };
    for (checked, longer, first) in per {
        out.pairs_checked += checked;
        out.pairs_longer_than_shortest += longer;
        if out.first.is_none() {
            out.first = first;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub entries: Vec<Analysis>,
    /// Present when at least one entry is greedy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detours: Option<DetourSummary>,
}

/// Side-by-side analysis of several strategies on one topology.
pub fn compare_strategies(
    topo: &Topology,
    configs: &[StrategyConfig],
    options: &AnalysisOptions,
) -> Result<Comparison> {
    for config in configs {
        config.validate_for(topo)?;
    }
    let entries = configs
        .iter()
        .map(|c| analyze(topo, c, options))
        .collect::<Result<Vec<_>>>()?;
    let detours = configs
        .iter()
        .find(|c| c.strategy == Strategy::Greedy)
        .map(|c| greedy_detours(topo, c.metric, options))
        .transpose()?;
    Ok(Comparison { entries, detours })
}

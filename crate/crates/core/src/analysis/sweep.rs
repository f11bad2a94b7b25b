// SPDX-License-Identifier: Apache-2.0

//! Exhaustive all-pairs enumeration shared by stats and load accounting.
//!
//! Work is split by source node. Every accumulator is an integer sum or a
//! max with a total tie-break, so merging in any order gives the same
//! result for any worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::span::{hop_phases, phase_counts};
use crate::ring_metrics::NodeId;
use crate::routing::{
    branch_denominator, branching_factor, route_branches, Route, Strategy, StrategyConfig,
};
use crate::topology::Topology;
use crate::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub workers: usize,
    /// Upper bound on route evaluations for exhaustive enumeration.
    pub budget: u128,
    /// Also route `s == t` (as a full loop under strict-loop strategies)
    /// when accumulating edge loads. Hop statistics never include them.
    pub include_self_pairs: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
            include_self_pairs: false,
        }
    }
}

impl AnalysisOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_self_pairs(mut self, include: bool) -> Self {
        self.include_self_pairs = include;
        self
    }
}

/// Route evaluations an exhaustive sweep would perform.
pub fn evaluation_count(topo: &Topology, config: &StrategyConfig) -> u128 {
    let n = topo.n() as u128;
    let b = branching_factor(topo, config) as u128;
    if b == 1 {
        return n * n;
    }
    let m = topo.params().levels().unwrap_or(1) as u128;
    let per_gap = n / m;
    (0..m).map(|c| n * per_gap * b.pow(c as u32)).sum()
}

#[derive(Debug, Clone)]
pub(crate) struct Witness {
    pub hops: usize,
    pub route: Route,
}

impl Witness {
    // longer wins; among equals the smaller (source, target)
    fn better_than(&self, other: &Witness) -> bool {
        match self.hops.cmp(&other.hops) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => {
                (self.route.source, self.route.target) < (other.route.source, other.route.target)
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Sweep {
    pub denominator: u128,
    pub pairs: u64,
    /// hop count → mass numerator over `denominator`
    pub histogram: BTreeMap<usize, u128>,
    pub phase_max: [Option<usize>; 3],
    pub longest: Option<Witness>,
    /// per edge index, numerator over `denominator`
    pub loads: Vec<u128>,
    pub load_pairs: u64,
}

impl Sweep {
    fn empty(denominator: u128, edges: usize) -> Self {
        Sweep {
            denominator,
            loads: vec![0; edges],
            ..Default::default()
        }
    }

    fn merge(mut self, other: Sweep) -> Sweep {
        self.pairs += other.pairs;
        self.load_pairs += other.load_pairs;
        for (len, mass) in other.histogram {
            *self.histogram.entry(len).or_insert(0) += mass;
        }
        for (mine, theirs) in self.phase_max.iter_mut().zip(other.phase_max) {
            *mine = (*mine).max(theirs);
        }
        self.longest = match (self.longest, other.longest) {
            (Some(a), Some(b)) => Some(if b.better_than(&a) { b } else { a }),
            (a, b) => a.or(b),
        };
        if self.loads.len() < other.loads.len() {
            self.loads.resize(other.loads.len(), 0);
        }
        for (mine, theirs) in self.loads.iter_mut().zip(other.loads) {
            *mine += theirs;
        }
        self
    }

    fn record_loads(&mut self, topo: &Topology, route: &Route, weight: u128) -> Result<()> {
        for hop in &route.hops {
            let idx = topo
                .edge_index(hop.from, hop.to)
                .ok_or(Error::MissingEdge {
                    from: hop.from,
                    to: hop.to,
                })?;
            self.loads[idx] += weight;
        }
        Ok(())
    }
}

fn route_phase_counts(
    topo: &Topology,
    config: &StrategyConfig,
    route: &Route,
) -> Result<[usize; 3]> {
    let mut counts = [0usize; 3];
    if config.strategy == Strategy::Greedy
        && topo.family().is_ring_butterfly()
        && config.metric == topo.family().natural_metric()
    {
        counts = phase_counts(&hop_phases(route, topo)?);
    } else {
        for hop in &route.hops {
            if let Some(phase) = hop.phase {
                counts[phase.index()] += 1;
            }
        }
    }
    Ok(counts)
}

fn sweep_source(
    topo: &Topology,
    config: &StrategyConfig,
    options: &AnalysisOptions,
    want_loads: bool,
    s: NodeId,
    denominator: u128,
) -> Result<Sweep> {
    let mut acc = Sweep::empty(denominator, if want_loads { topo.edge_count() } else { 0 });
    for t in topo.nodes() {
        if s == t {
            if want_loads && options.include_self_pairs {
                for branch in route_branches(topo, config, s, t)? {
                    branch.route.validate(topo)?;
                    acc.record_loads(topo, &branch.route, branch.numerator)?;
                }
                acc.load_pairs += 1;
            }
            continue;
        }
        acc.pairs += 1;
        acc.load_pairs += 1;
        for branch in route_branches(topo, config, s, t)? {
            let route = branch.route;
            route.validate(topo)?;
            let hops = route.len();
            *acc.histogram.entry(hops).or_insert(0) += branch.numerator;
            let counts = route_phase_counts(topo, config, &route)?;
            for (slot, &count) in acc.phase_max.iter_mut().zip(counts.iter()) {
                if count > 0 {
                    *slot = Some(slot.map_or(count, |c| c.max(count)));
                }
            }
            if want_loads {
                acc.record_loads(topo, &route, branch.numerator)?;
            }
            let candidate = Witness { hops, route };
            if acc
                .longest
                .as_ref()
                .is_none_or(|w| candidate.better_than(w))
            {
                acc.longest = Some(candidate);
            }
        }
    }
    Ok(acc)
}

pub(crate) fn sweep(
    topo: &Topology,
    config: &StrategyConfig,
    options: &AnalysisOptions,
    want_loads: bool,
) -> Result<Sweep> {
    config.validate_for(topo)?;
    let needed = evaluation_count(topo, config);
    if needed > options.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: options.budget.min(u64::MAX as u128) as u64,
            suggested_samples: 100_000,
            seed: config.seed,
        });
    }
    let denominator = branch_denominator(topo, config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
    let edges = if want_loads { topo.edge_count() } else { 0 };
    pool.install(|| {
        topo.nodes()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|s| sweep_source(topo, config, options, want_loads, s, denominator))
            .try_reduce(|| Sweep::empty(denominator, edges), |a, b| Ok(a.merge(b)))
    })
}

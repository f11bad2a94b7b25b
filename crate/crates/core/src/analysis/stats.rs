// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::exact::Exact;
use crate::analysis::sweep::{sweep, AnalysisOptions, Sweep};
use crate::ring_metrics::NodeId;
use crate::routing::{pair_rng, route_unchecked, PhaseLabel, RngChooser, Route, StrategyConfig};
use crate::topology::Topology;
use crate::{Error, Result};

/// Route-length distribution over all ordered pairs `s != t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub pairs: u64,
    pub worst: usize,
    pub mean: Exact,
    /// hop count → pair mass (fractional for randomized strategies)
    pub histogram: BTreeMap<usize, Exact>,
    pub per_phase_max: BTreeMap<PhaseLabel, usize>,
    /// First longest route in `(source, target)` order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub longest: Option<Route>,
}

impl StatsSummary {
    pub(crate) fn from_sweep(sweep: &Sweep) -> Result<Self> {
        let d = sweep.denominator;
        let histogram: BTreeMap<usize, Exact> = sweep
            .histogram
            .iter()
            .map(|(&len, &mass)| (len, Exact::new(mass, d)))
            .collect();
        let total_mass: u128 = sweep.histogram.values().sum();
        if total_mass != sweep.pairs as u128 * d {
            return Err(Error::InvariantViolation(format!(
                "histogram mass {total_mass}/{d} differs from {} pairs",
                sweep.pairs
            )));
        }
        let hop_mass: u128 = sweep
            .histogram
            .iter()
            .map(|(&len, &mass)| len as u128 * mass)
            .sum();
        let mean = if sweep.pairs == 0 {
            Exact::zero()
        } else {
            Exact::new(hop_mass, d * sweep.pairs as u128)
        };
        let per_phase_max = [PhaseLabel::I, PhaseLabel::II, PhaseLabel::III]
            .into_iter()
            .zip(sweep.phase_max)
            .filter_map(|(label, max)| max.map(|m| (label, m)))
            .collect();
        Ok(StatsSummary {
            pairs: sweep.pairs,
            worst: histogram.keys().next_back().copied().unwrap_or(0),
            mean,
            histogram,
            per_phase_max,
            longest: sweep.longest.as_ref().map(|w| w.route.clone()),
        })
    }
}

/// Exhaustive statistics for `config` on `topo`. Randomized strategies
/// enumerate every first-phase branch with its exact probability.
pub fn all_pairs_stats(
    topo: &Topology,
    config: &StrategyConfig,
    options: &AnalysisOptions,
) -> Result<StatsSummary> {
    StatsSummary::from_sweep(&sweep(topo, config, options, false)?)
}

/// Monte Carlo fallback for instances beyond the exhaustive budget.
///
/// Sample `i` draws its pair and its branch choices from a stream keyed
/// by `(seed, i)`, so the result does not depend on the worker count.
pub fn sampled_stats(
    topo: &Topology,
    config: &StrategyConfig,
    samples: u64,
    seed: u64,
    options: &AnalysisOptions,
) -> Result<StatsSummary> {
    config.validate_for(topo)?;
    let n = topo.n();
    if n < 2 {
        return Err(Error::Parameter("sampling needs at least two nodes".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers.max(1))
        .build()
        .map_err(|e| Error::Parameter(format!("cannot start worker pool: {e}")))?;
    let one = |i: u64| -> Result<(usize, [usize; 3], Route)> {
        let mut rng = pair_rng(seed, NodeId::new(i), NodeId::new(u64::MAX));
        let s = rng.gen_range(0..n);
        let t = (s + rng.gen_range(1..n)) % n;
        let mut chooser = RngChooser(rng);
        let route = route_unchecked(topo, config, NodeId::new(s), NodeId::new(t), &mut chooser)?;
        route.validate(topo)?;
        let mut phases = [0usize; 3];
        for hop in &route.hops {
            if let Some(p) = hop.phase {
                phases[p.index()] += 1;
            }
        }
        Ok((route.len(), phases, route))
    };
    let results: Vec<(usize, [usize; 3], Route)> = pool.install(|| {
        (0..samples)
            .into_par_iter()
            .map(one)
            .collect::<Result<Vec<_>>>()
    })?;
    let mut acc = Sweep {
        denominator: 1,
        ..Default::default()
    };
    for (len, phases, route) in results {
        acc.pairs += 1;
        *acc.histogram.entry(len).or_insert(0) += 1;
        for (slot, count) in acc.phase_max.iter_mut().zip(phases) {
            if count > 0 {
                *slot = Some(slot.map_or(count, |c| c.max(count)));
            }
        }
        if acc.longest.as_ref().is_none_or(|w| len > w.hops) {
            acc.longest = Some(crate::analysis::sweep::Witness { hops: len, route });
        }
    }
    StatsSummary::from_sweep(&acc)
}

// SPDX-License-Identifier: Apache-2.0

//! Routing strategies over a built [`Topology`].
//!
//! Greedy routing works on every family. Hypercubic and congestion-free
//! routing are defined for the two ring butterflies only; the deterministic
//! congestion-free variant exists for `B_absolute` alone.

mod congestion_free;
pub mod decompose;
mod greedy;
mod hypercubic;

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use congestion_free::{
    congestion_free_absolute, congestion_free_absolute_deterministic,
    congestion_free_absolute_random, congestion_free_clockwise, AbsoluteMode,
};
pub use decompose::{
    balanced_digits, congestion_split, decompose_absolute, decompose_balanced_absolute,
    decompose_clockwise, decompose_xor, DigitDecomposition,
};
pub use greedy::{greedy_route, greedy_route_with_cap, xor_greedy};
pub use hypercubic::{hypercubic_absolute, hypercubic_clockwise};

use crate::ring_metrics::{Distance, Metric, NodeId};
use crate::topology::{EdgeKind, Family, Topology};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PhaseLabel {
    I,
    II,
    III,
}

impl PhaseLabel {
    pub fn index(self) -> usize {
        match self {
            PhaseLabel::I => 0,
            PhaseLabel::II => 1,
            PhaseLabel::III => 2,
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PhaseLabel::I => "I",
            PhaseLabel::II => "II",
            PhaseLabel::III => "III",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hop {
    pub from: NodeId,
    pub to: NodeId,
    /// Role the link played; a merged edge records the tag that was used.
    pub kind: EdgeKind,
    /// Distance from `to` to the target under the strategy's metric.
    pub remaining: Distance,
    /// Set by the strategies that know their own phases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<PhaseLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub source: NodeId,
    pub target: NodeId,
    pub hops: Vec<Hop>,
}

impl Route {
    pub fn empty(source: NodeId, target: NodeId) -> Self {
        Route {
            source,
            target,
            hops: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    /// Source followed by the head of every hop.
    pub fn nodes(&self) -> Vec<NodeId> {
        std::iter::once(self.source)
            .chain(self.hops.iter().map(|h| h.to))
            .collect()
    }

    pub fn end(&self) -> NodeId {
        self.hops.last().map_or(self.source, |h| h.to)
    }

    /// Checks chaining, edge membership and arrival at the target.
    pub fn validate(&self, topo: &Topology) -> Result<()> {
        let mut at = self.source;
        for hop in &self.hops {
            if hop.from != at {
                return Err(Error::InvariantViolation(format!(
                    "route {} -> {}: hop starts at {} but walk is at {at}",
                    self.source, self.target, hop.from
                )));
            }
            match topo.edge(hop.from, hop.to) {
                Some(edge) if edge.has_kind(hop.kind) => {}
                _ => {
                    return Err(Error::MissingEdge {
                        from: hop.from,
                        to: hop.to,
                    })
                }
            }
            at = hop.to;
        }
        if at != self.target {
            return Err(Error::InvariantViolation(format!(
                "route {} -> {} ends at {at}",
                self.source, self.target
            )));
        }
        Ok(())
    }

    pub fn path_string(&self) -> String {
        self.nodes()
            .iter()
            .map(|u| u.to_string())
            .collect::<Vec<_>>()
            .join(" -> ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Greedy,
    Hypercubic,
    CongestionFreeRandom,
    CongestionFreeDeterministic,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Greedy => "greedy",
            Strategy::Hypercubic => "hypercubic",
            Strategy::CongestionFreeRandom => "cf-random",
            Strategy::CongestionFreeDeterministic => "cf-deterministic",
        }
    }

    pub fn is_randomized(self) -> bool {
        self == Strategy::CongestionFreeRandom
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(Strategy::Greedy),
            "hypercubic" => Ok(Strategy::Hypercubic),
            "cf-random" | "congestion-free" | "congestion-free-random" => {
                Ok(Strategy::CongestionFreeRandom)
            }
            "cf-deterministic" | "congestion-free-deterministic" => {
                Ok(Strategy::CongestionFreeDeterministic)
            }
            other => Err(Error::Parameter(format!("unknown strategy '{other}'"))),
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5e_ed0f_ba77_e7f1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyConfig {
    pub strategy: Strategy,
    pub metric: Metric,
    /// Run the full m-hop second phase even when the first phase already
    /// landed on the target. Congestion-free strategies only.
    pub strict_loop: bool,
    pub seed: u64,
    /// Safety cap; `None` means `4m` (or `4b` on Chord).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_hops: Option<usize>,
}

impl StrategyConfig {
    pub fn new(strategy: Strategy, metric: Metric) -> Self {
        StrategyConfig {
            strategy,
            metric,
            strict_loop: false,
            seed: DEFAULT_SEED,
            max_hops: None,
        }
    }

    pub fn greedy(metric: Metric) -> Self {
        Self::new(Strategy::Greedy, metric)
    }

    /// Strategy with the family's natural metric.
    pub fn for_family(strategy: Strategy, family: Family) -> Self {
        Self::new(strategy, family.natural_metric())
    }

    pub fn with_strict_loop(mut self, strict: bool) -> Self {
        self.strict_loop = strict;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn max_hops_for(&self, topo: &Topology) -> usize {
        self.max_hops.unwrap_or_else(|| default_max_hops(topo))
    }

    pub fn validate_for(&self, topo: &Topology) -> Result<()> {
        let family = topo.family();
        let metric_ok = match family {
            Family::Clockwise => self.metric == Metric::Clockwise,
            Family::Absolute => self.metric == Metric::Absolute,
            Family::Xor => self.metric == Metric::Xor,
            Family::ChordClockwise | Family::ChordBidirectional => self.metric != Metric::Xor,
        };
        if !metric_ok {
            return Err(Error::Parameter(format!(
                "metric {} does not apply to family {}",
                self.metric.name(),
                family.name()
            )));
        }
        let strategy_ok = match self.strategy {
            Strategy::Greedy => true,
            Strategy::Hypercubic | Strategy::CongestionFreeRandom => family.is_ring_butterfly(),
            Strategy::CongestionFreeDeterministic => family == Family::Absolute,
        };
        if !strategy_ok {
            return Err(Error::Parameter(format!(
                "strategy {} is not defined on family {}",
                self.strategy,
                family.name()
            )));
        }
        Ok(())
    }
}

pub fn default_max_hops(topo: &Topology) -> usize {
    match *topo.params() {
        crate::TopologyParams::ChordClockwise { b }
        | crate::TopologyParams::ChordBidirectional { b } => 4 * b as usize,
        p => 4 * p.levels().unwrap_or(1) as usize,
    }
}

/// Picks one of `options` first-phase links.
pub trait BranchChooser {
    fn choose(&mut self, options: usize) -> usize;
}

/// Uniform choice from a random source.
pub struct RngChooser<R>(pub R);

impl<R: Rng> BranchChooser for RngChooser<R> {
    fn choose(&mut self, options: usize) -> usize {
        self.0.gen_range(0..options)
    }
}

/// Replays a fixed sequence of choices; used to enumerate all branches.
pub struct ScriptedChooser<'a> {
    choices: &'a [usize],
    next: usize,
}

impl<'a> ScriptedChooser<'a> {
    pub fn new(choices: &'a [usize]) -> Self {
        ScriptedChooser { choices, next: 0 }
    }
}

impl BranchChooser for ScriptedChooser<'_> {
    fn choose(&mut self, options: usize) -> usize {
        let pick = self.choices[self.next];
        debug_assert!(pick < options);
        self.next += 1;
        pick
    }
}

/// Independent random stream for one (seed, source, target) triple.
pub fn pair_rng(seed: u64, s: NodeId, t: NodeId) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&s.value().to_le_bytes());
    key[16..24].copy_from_slice(&t.value().to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Routes one pair with `config`, drawing any random choices from the
/// pair's own stream.
pub fn route(topo: &Topology, config: &StrategyConfig, s: NodeId, t: NodeId) -> Result<Route> {
    config.validate_for(topo)?;
    topo.check_node(s)?;
    topo.check_node(t)?;
    let mut chooser = RngChooser(pair_rng(config.seed, s, t));
    route_unchecked(topo, config, s, t, &mut chooser)
}

pub(crate) fn route_unchecked(
    topo: &Topology,
    config: &StrategyConfig,
    s: NodeId,
    t: NodeId,
    chooser: &mut dyn BranchChooser,
) -> Result<Route> {
    let cap = config.max_hops_for(topo);
    match (config.strategy, topo.family()) {
        (Strategy::Greedy, _) => greedy_route_with_cap(topo, config.metric, s, t, cap),
        (Strategy::Hypercubic, Family::Clockwise) => hypercubic_clockwise(topo, s, t),
        (Strategy::Hypercubic, Family::Absolute) => hypercubic_absolute(topo, s, t),
        (Strategy::CongestionFreeRandom, Family::Clockwise) => {
            congestion_free_clockwise(topo, s, t, config.strict_loop, chooser)
        }
        (Strategy::CongestionFreeRandom, Family::Absolute) => {
            congestion_free_absolute_random(topo, s, t, config.strict_loop, chooser)
        }
        (Strategy::CongestionFreeDeterministic, Family::Absolute) => {
            congestion_free_absolute_deterministic(topo, s, t, config.strict_loop)
        }
        (strategy, family) => Err(Error::Parameter(format!(
            "strategy {strategy} is not defined on family {}",
            family.name()
        ))),
    }
}

/// One branch of a randomized route with weight `numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedRoute {
    pub route: Route,
    pub numerator: u128,
}

/// Links offered at each random first-phase hop (κ or 2k+1); 1 when the
/// strategy is deterministic.
pub fn branching_factor(topo: &Topology, config: &StrategyConfig) -> u64 {
    if config.strategy.is_randomized() {
        topo.params().radix().unwrap_or(1)
    } else {
        1
    }
}

/// Common denominator of all branch weights: `branching^(m-1)`.
pub fn branch_denominator(topo: &Topology, config: &StrategyConfig) -> u128 {
    let b = branching_factor(topo, config) as u128;
    let m = topo.params().levels().unwrap_or(1);
    b.pow(m.saturating_sub(1) as u32)
}

/// Number of first-phase hops the congestion-free strategies take.
pub fn level_gap(topo: &Topology, s: NodeId, t: NodeId) -> u64 {
    let m = topo.params().levels().unwrap_or(1);
    (t.value() + m - s.value() % m) % m
}

/// Every route `config` can produce for `(s, t)`, with exact weights
/// summing to [`branch_denominator`].
pub fn route_branches(
    topo: &Topology,
    config: &StrategyConfig,
    s: NodeId,
    t: NodeId,
) -> Result<Vec<WeightedRoute>> {
    let denominator = branch_denominator(topo, config);
    let b = branching_factor(topo, config);
    if b == 1 || s == t {
        let mut chooser = ScriptedChooser::new(&[]);
        let route = route_unchecked(topo, config, s, t, &mut chooser)?;
        return Ok(vec![WeightedRoute {
            route,
            numerator: denominator,
        }]);
    }
    let c = level_gap(topo, s, t) as u32;
    let count = b.pow(c);
    let numerator = denominator / (b as u128).pow(c);
    let mut choices = vec![0usize; c as usize];
    let mut out = Vec::with_capacity(count as usize);
    for index in 0..count {
        let mut rest = index;
        for slot in choices.iter_mut() {
            *slot = (rest % b) as usize;
            rest /= b;
        }
        let mut chooser = ScriptedChooser::new(&choices);
        let route = route_unchecked(topo, config, s, t, &mut chooser)?;
        out.push(WeightedRoute { route, numerator });
    }
    Ok(out)
}

/// Incrementally builds a route, checking every hop against the topology.
pub(crate) struct Walker<'a> {
    topo: &'a Topology,
    metric: Metric,
    route: Route,
    at: NodeId,
    max_hops: usize,
}

impl<'a> Walker<'a> {
    pub(crate) fn new(
        topo: &'a Topology,
        metric: Metric,
        s: NodeId,
        t: NodeId,
        max_hops: usize,
    ) -> Self {
        Walker {
            topo,
            metric,
            route: Route::empty(s, t),
            at: s,
            max_hops,
        }
    }

    pub(crate) fn at(&self) -> NodeId {
        self.at
    }

    pub(crate) fn arrived(&self) -> bool {
        self.at == self.route.target
    }

    /// Follows the stored edge to `to`, recording its primary kind.
    pub(crate) fn step_to(&mut self, to: NodeId, phase: Option<PhaseLabel>) -> Result<()> {
        let from = self.at;
        let edge = self
            .topo
            .edge(from, to)
            .ok_or(Error::MissingEdge { from, to })?;
        self.push(to, edge.kind, phase)
    }

    /// Follows the digit link with signed ring offset `offset`: the short
    /// link for `+1`, a long link otherwise.
    pub(crate) fn step_by(&mut self, offset: i128, phase: Option<PhaseLabel>) -> Result<()> {
        let n = self.topo.n() as i128;
        let from = self.at;
        let to = NodeId::new((from.value() as i128 + offset).rem_euclid(n) as u64);
        let role = if offset == 1 {
            EdgeKind::Short
        } else {
            EdgeKind::Long
        };
        match self.topo.edge(from, to) {
            Some(edge) if edge.has_kind(role) => self.push(to, role, phase),
            _ => Err(Error::MissingEdge { from, to }),
        }
    }

    fn push(&mut self, to: NodeId, kind: EdgeKind, phase: Option<PhaseLabel>) -> Result<()> {
        if self.route.hops.len() >= self.max_hops {
            return Err(Error::NonTermination {
                source_node: self.route.source,
                target: self.route.target,
                max_hops: self.max_hops,
            });
        }
        let n = self.topo.n();
        self.route.hops.push(Hop {
            from: self.at,
            to,
            kind,
            remaining: self
                .metric
                .distance_unchecked(to.value(), self.route.target.value(), n),
            phase,
        });
        self.at = to;
        Ok(())
    }

    pub(crate) fn finish(self) -> Result<Route> {
        if !self.arrived() {
            return Err(Error::InvariantViolation(format!(
                "route {} -> {} stopped at {}",
                self.route.source, self.route.target, self.at
            )));
        }
        Ok(self.route)
    }
}

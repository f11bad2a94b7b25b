// SPDX-License-Identifier: Apache-2.0

//! Papillon families and Chord baselines as explicit directed graphs.
//!
//! Node `u` of a ring family sits at level `(m-1) - (u mod m)`; every
//! short and long link steps one level down (mod m). The xor family keeps
//! its level in the high prefix `u / λ^m` and steps one level up.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring_metrics::{Metric, NodeId};
use crate::{Error, Result};

/// Default hard cap on the number of nodes a builder will materialize.
pub const DEFAULT_MAX_NODES: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Level(u64);

impl Level {
    pub const fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Level of `u` in a ring family with `m` levels.
pub fn level_ring(u: NodeId, m: u64) -> Level {
    Level((m - 1) - (u.value() % m))
}

/// Level of `u` in the xor family: the high prefix `⌊u / λ^m⌋`.
pub fn level_xor(u: NodeId, lambda: u64, m: u64) -> Level {
    Level(u.value() / lambda.pow(m as u32))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Clockwise,
    Absolute,
    Xor,
    ChordClockwise,
    ChordBidirectional,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Clockwise => "clockwise",
            Family::Absolute => "absolute",
            Family::Xor => "xor",
            Family::ChordClockwise => "chord",
            Family::ChordBidirectional => "chord-bidirectional",
        }
    }

    pub fn is_ring_butterfly(self) -> bool {
        matches!(self, Family::Clockwise | Family::Absolute)
    }

    /// The distance function greedy routing uses by default on this family.
    pub fn natural_metric(self) -> Metric {
        match self {
            Family::Clockwise | Family::ChordClockwise => Metric::Clockwise,
            Family::Absolute | Family::ChordBidirectional => Metric::Absolute,
            Family::Xor => Metric::Xor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TopologyParams {
    Clockwise { kappa: u64, m: u64 },
    Absolute { k: u64, m: u64 },
    Xor { lambda: u64, m: u64 },
    ChordClockwise { b: u32 },
    ChordBidirectional { b: u32 },
}

impl TopologyParams {
    pub fn family(&self) -> Family {
        match self {
            TopologyParams::Clockwise { .. } => Family::Clockwise,
            TopologyParams::Absolute { .. } => Family::Absolute,
            TopologyParams::Xor { .. } => Family::Xor,
            TopologyParams::ChordClockwise { .. } => Family::ChordClockwise,
            TopologyParams::ChordBidirectional { .. } => Family::ChordBidirectional,
        }
    }

    /// Number of butterfly levels; `None` for Chord.
    pub fn levels(&self) -> Option<u64> {
        match *self {
            TopologyParams::Clockwise { m, .. }
            | TopologyParams::Absolute { m, .. }
            | TopologyParams::Xor { m, .. } => Some(m),
            _ => None,
        }
    }

    /// Number of long-link digits choices per level: κ, 2k+1 or λ.
    pub fn radix(&self) -> Option<u64> {
        match *self {
            TopologyParams::Clockwise { kappa, .. } => Some(kappa),
            TopologyParams::Absolute { k, .. } => Some(2 * k + 1),
            TopologyParams::Xor { lambda, .. } => Some(lambda),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Parameter(msg));
        match *self {
            TopologyParams::Clockwise { kappa, m } => {
                if kappa < 2 {
                    return bad(format!("kappa must be >= 2, got {kappa}"));
                }
                if m < 1 {
                    return bad("m must be >= 1".into());
                }
            }
            TopologyParams::Absolute { k, m } => {
                if k < 1 {
                    return bad(format!("k must be >= 1, got {k}"));
                }
                if m < 1 {
                    return bad("m must be >= 1".into());
                }
            }
            TopologyParams::Xor { lambda, m } => {
                if lambda < 2 || !lambda.is_power_of_two() {
                    return bad(format!("lambda must be a power of two >= 2, got {lambda}"));
                }
                if m < 1 {
                    return bad("m must be >= 1".into());
                }
            }
            TopologyParams::ChordClockwise { b } | TopologyParams::ChordBidirectional { b } => {
                if b < 2 {
                    return bad(format!("b must be >= 2, got {b}"));
                }
            }
        }
        Ok(())
    }

    /// Node count for these parameters, refusing anything above `cap`.
    pub fn node_count(&self, cap: u64) -> Result<u64> {
        self.validate()?;
        let power = |base: u64, exp: u64| -> Option<u128> {
            let exp = u32::try_from(exp).ok()?;
            (base as u128).checked_pow(exp)
        };
        let requested = match *self {
            TopologyParams::Clockwise { kappa, m } => {
                power(kappa, m).and_then(|p| p.checked_mul(m as u128))
            }
            TopologyParams::Absolute { k, m } => {
                power(2 * k + 1, m).and_then(|p| p.checked_mul(m as u128))
            }
            TopologyParams::Xor { lambda, m } => {
                power(lambda, m).and_then(|p| p.checked_mul(m as u128))
            }
            TopologyParams::ChordClockwise { b } | TopologyParams::ChordBidirectional { b } => {
                power(2, b as u64)
            }
        }
        .unwrap_or(u128::MAX);
        if requested > cap as u128 {
            return Err(Error::Size { requested, cap });
        }
        Ok(requested as u64)
    }
}

impl fmt::Display for TopologyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyParams::Clockwise { kappa, m } => {
                write!(f, "B_clockwise(kappa={kappa}, m={m})")
            }
            TopologyParams::Absolute { k, m } => write!(f, "B_absolute(k={k}, m={m})"),
            TopologyParams::Xor { lambda, m } => write!(f, "B_xor(lambda={lambda}, m={m})"),
            TopologyParams::ChordClockwise { b } => write!(f, "Chord(b={b})"),
            TopologyParams::ChordBidirectional { b } => write!(f, "Chord-bidirectional(b={b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Short,
    Long,
    Back,
    ChordFinger,
}

impl EdgeKind {
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::Short => "short",
            EdgeKind::Long => "long",
            EdgeKind::Back => "back",
            EdgeKind::ChordFinger => "finger",
        }
    }

    // Back wins so load accounting can exclude merged back edges.
    fn precedence(self) -> u8 {
        match self {
            EdgeKind::Back => 3,
            EdgeKind::Short => 2,
            EdgeKind::Long => 1,
            EdgeKind::ChordFinger => 0,
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One stored out-edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub target: NodeId,
    pub kind: EdgeKind,
    /// Second tag when two construction rules produced the same link.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub merged: Option<EdgeKind>,
    /// Signed ring offset (ring families, Chord) or the replaced digit
    /// value (xor family).
    pub label: i64,
}

impl Edge {
    pub fn has_kind(&self, kind: EdgeKind) -> bool {
        self.kind == kind || self.merged == Some(kind)
    }

    /// Kind as printed in edge lists: `back+long` for merged edges.
    pub fn kind_label(&self) -> String {
        match self.merged {
            Some(other) => format!("{}+{}", self.kind, other),
            None => self.kind.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_nodes: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

/// An immutable directed graph over ring labels `0..n`.
#[derive(Debug, Clone, Serialize)]
pub struct Topology {
    params: TopologyParams,
    n: u64,
    adjacency: Vec<Vec<Edge>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
    #[serde(skip)]
    edge_base: Vec<usize>,
}

impl Topology {
    pub fn build(params: TopologyParams, options: &BuildOptions) -> Result<Self> {
        let n = params.node_count(options.max_nodes)?;
        let mut warnings = Vec::new();
        let mut adjacency = Vec::with_capacity(n as usize);
        let mut dropped_loops = 0usize;
        for u in 0..n {
            let (loops, raw): (Vec<Edge>, Vec<Edge>) = raw_edges(&params, n, u)
                .into_iter()
                .partition(|e| e.target.value() == u);
            dropped_loops += loops.len();
            adjacency.push(merge_edges(raw));
        }
        if dropped_loops > 0 {
            warnings.push(format!(
                "{params}: dropped {dropped_loops} self-loop link(s) produced by degenerate parameters"
            ));
        }
        let mut edge_base = Vec::with_capacity(adjacency.len() + 1);
        let mut total = 0;
        for edges in &adjacency {
            edge_base.push(total);
            total += edges.len();
        }
        edge_base.push(total);
        Ok(Topology {
            params,
            n,
            adjacency,
            warnings,
            edge_base,
        })
    }

    pub fn params(&self) -> &TopologyParams {
        &self.params
    }

    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn contains(&self, u: NodeId) -> bool {
        u.value() < self.n
    }

    pub fn check_node(&self, u: NodeId) -> Result<()> {
        if self.contains(u) {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "node {u} out of range for {} with n = {}",
                self.params, self.n
            )))
        }
    }

    /// Out-edges of `u`, sorted by target label.
    pub fn out_edges(&self, u: NodeId) -> &[Edge] {
        &self.adjacency[u.index()]
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<&Edge> {
        let edges = self.out_edges(u);
        edges
            .binary_search_by_key(&v, |e| e.target)
            .ok()
            .map(|i| &edges[i])
    }

    /// Dense index of edge `(u, v)` in `0..edge_count()`.
    pub fn edge_index(&self, u: NodeId, v: NodeId) -> Option<usize> {
        self.out_edges(u)
            .binary_search_by_key(&v, |e| e.target)
            .ok()
            .map(|i| self.edge_base[u.index()] + i)
    }

    pub fn edge_count(&self) -> usize {
        *self.edge_base.last().unwrap_or(&0)
    }

    /// All edges in ascending `(u, v)` order; position equals `edge_index`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, &Edge)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, es)| es.iter().map(move |e| (NodeId::new(u as u64), e)))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.n).map(NodeId::new)
    }

    pub fn level(&self, u: NodeId) -> Option<Level> {
        match *self.params() {
            TopologyParams::Clockwise { m, .. } | TopologyParams::Absolute { m, .. } => {
                Some(level_ring(u, m))
            }
            TopologyParams::Xor { lambda, m } => Some(level_xor(u, lambda, m)),
            _ => None,
        }
    }

    /// Out-degree → number of nodes with that out-degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, u64> {
        let mut hist = BTreeMap::new();
        for edges in &self.adjacency {
            *hist.entry(edges.len()).or_insert(0) += 1;
        }
        hist
    }
}

pub fn build_clockwise(kappa: u64, m: u64) -> Result<Topology> {
    Topology::build(
        TopologyParams::Clockwise { kappa, m },
        &BuildOptions::default(),
    )
}

pub fn build_absolute(k: u64, m: u64) -> Result<Topology> {
    Topology::build(TopologyParams::Absolute { k, m }, &BuildOptions::default())
}

pub fn build_xor(lambda: u64, m: u64) -> Result<Topology> {
    Topology::build(TopologyParams::Xor { lambda, m }, &BuildOptions::default())
}

pub fn build_chord(b: u32, bidirectional: bool) -> Result<Topology> {
    let params = if bidirectional {
        TopologyParams::ChordBidirectional { b }
    } else {
        TopologyParams::ChordClockwise { b }
    };
    Topology::build(params, &BuildOptions::default())
}

fn ring_target(u: u64, offset: i64, n: u64) -> NodeId {
    NodeId::new((u as i128 + offset as i128).rem_euclid(n as i128) as u64)
}

fn raw_edges(params: &TopologyParams, n: u64, u: u64) -> Vec<Edge> {
    let ring = |offset: i64, kind: EdgeKind| Edge {
        target: ring_target(u, offset, n),
        kind,
        merged: None,
        label: offset,
    };
    let short_or_long = |offset: i64| {
        if offset == 1 {
            EdgeKind::Short
        } else {
            EdgeKind::Long
        }
    };
    match *params {
        TopologyParams::Clockwise { kappa, m } => {
            let level = level_ring(NodeId::new(u), m).value();
            let stride = (m * kappa.pow(level as u32)) as i64;
            (0..kappa as i64)
                .map(|i| {
                    let offset = 1 + i * stride;
                    ring(offset, short_or_long(offset))
                })
                .collect()
        }
        TopologyParams::Absolute { k, m } => {
            let level = level_ring(NodeId::new(u), m).value();
            let stride = (m * (2 * k + 1).pow(level as u32)) as i64;
            let k = k as i64;
            let mut edges: Vec<Edge> = (-k..=k)
                .map(|i| {
                    let offset = 1 + i * stride;
                    ring(offset, short_or_long(offset))
                })
                .collect();
            edges.push(ring(1 - m as i64, EdgeKind::Back));
            edges
        }
        TopologyParams::Xor { lambda, m } => {
            let block = lambda.pow(m as u32);
            let level = u / block;
            let y = u % block;
            let place = lambda.pow(level as u32);
            let digit = (y / place) % lambda;
            let prefix = ((level + 1) % m) * block;
            (0..lambda)
                .map(|i| Edge {
                    target: NodeId::new(prefix + y - digit * place + i * place),
                    kind: EdgeKind::Long,
                    merged: None,
                    label: i as i64,
                })
                .collect()
        }
        TopologyParams::ChordClockwise { b } => (0..b)
            .map(|i| ring(1i64 << i, EdgeKind::ChordFinger))
            .collect(),
        TopologyParams::ChordBidirectional { b } => (0..b)
            .flat_map(|i| [1i64 << i, -(1i64 << i)])
            .map(|offset| ring(offset, EdgeKind::ChordFinger))
            .collect(),
    }
}

/// Sorts by target and folds duplicate targets into one edge.
fn merge_edges(mut raw: Vec<Edge>) -> Vec<Edge> {
    raw.sort_by_key(|e| e.target);
    let mut out: Vec<Edge> = Vec::with_capacity(raw.len());
    for e in raw {
        match out.last_mut() {
            Some(last) if last.target == e.target => {
                if e.kind == last.kind {
                    continue;
                }
                let (keep, other) = if e.kind.precedence() > last.kind.precedence() {
                    (e, *last)
                } else {
                    (*last, e)
                };
                *last = Edge {
                    merged: Some(other.kind),
                    ..keep
                };
            }
            _ => out.push(e),
        }
    }
    out
}

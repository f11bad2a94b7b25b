// SPDX-License-Identifier: Apache-2.0

//! Versioned analysis reports.
//!
//! JSON is the canonical form. Keys (schema version 1):
//!
//! - `schema_version`, `tool`, `version`, `command`
//! - `params`: topology parameters, tagged by `family`
//! - `topology`: `n`, `edges`, `levels`, `degree_histogram`, `warnings`
//! - `include_self_pairs`: whether `s == t` routes count toward loads
//! - `entries[]`: `config`, `mode` (`exhaustive` or `sampled`), `samples`,
//!   `stats`, `load` (digest), `checks[]`
//! - `detours`: greedy routes longer than the shortest path, if compared
//! - `passed`: conjunction of every check
//!
//! Rationals are strings `"p/q"`. The CSV form flattens the histogram and
//! per-edge load tables under the header `section,strategy,hops,from,to,kind,value`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::{Analysis, DetourSummary, EdgeLoad, Exact, LoadProfile, StatsSummary};
use crate::ring_metrics::NodeId;
use crate::routing::{Strategy, StrategyConfig};
use crate::topology::{Topology, TopologyParams};
use crate::Result;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySummary {
    pub n: u64,
    pub edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<u64>,
    pub degree_histogram: BTreeMap<usize, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl TopologySummary {
    pub fn of(topo: &Topology) -> Self {
        TopologySummary {
            n: topo.n(),
            edges: topo.edge_count(),
            levels: topo.params().levels(),
            degree_histogram: topo.degree_histogram(),
            warnings: topo.warnings().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadDigest {
    pub pairs: u64,
    pub pi: Option<Exact>,
    pub min_load: Exact,
    pub max_load: Exact,
    pub total: Exact,
    pub excluded: Vec<(NodeId, NodeId)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zero_load_edges: Vec<(NodeId, NodeId)>,
}

impl From<&LoadProfile> for LoadDigest {
    fn from(p: &LoadProfile) -> Self {
        LoadDigest {
            pairs: p.pairs,
            pi: p.pi,
            min_load: p.min_load,
            max_load: p.max_load,
            total: p.total,
            excluded: p.excluded.clone(),
            zero_load_edges: p.zero_load_edges.clone(),
        }
    }
}

/// One bound compared against an observed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub bound: String,
    pub observed: String,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, bound: impl ToString, observed: impl ToString, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            bound: bound.to_string(),
            observed: observed.to_string(),
            passed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub config: StrategyConfig,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    pub stats: StatsSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub load: Option<LoadDigest>,
    pub checks: Vec<Check>,
    /// Full per-edge loads; CSV only.
    #[serde(skip)]
    pub edge_loads: Vec<EdgeLoad>,
}

impl ReportEntry {
    pub fn exhaustive(topo: &Topology, analysis: Analysis) -> Self {
        let mut entry = ReportEntry {
            config: analysis.config,
            mode: Mode::Exhaustive,
            samples: None,
            stats: analysis.stats,
            load: Some(LoadDigest::from(&analysis.load)),
            checks: Vec::new(),
            edge_loads: analysis.load.loads,
        };
        entry.checks = bound_checks(topo, &entry);
        entry
    }

    pub fn sampled(
        topo: &Topology,
        config: StrategyConfig,
        samples: u64,
        stats: StatsSummary,
    ) -> Self {
        let mut entry = ReportEntry {
            config,
            mode: Mode::Sampled,
            samples: Some(samples),
            stats,
            load: None,
            checks: Vec::new(),
            edge_loads: Vec::new(),
        };
        entry.checks = bound_checks(topo, &entry);
        entry
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Hop-count and congestion bounds that apply to this entry's strategy
/// and family. Means are only checked on exhaustive runs; the congestion
/// ratio only for randomized congestion-free routing in strict-loop mode
/// with self pairs included.
pub fn bound_checks(topo: &Topology, entry: &ReportEntry) -> Vec<Check> {
    let config = &entry.config;
    let stats = &entry.stats;
    let exhaustive = entry.mode == Mode::Exhaustive;
    let natural = config.metric == topo.family().natural_metric();
    let mut checks = Vec::new();
    let worst = stats.worst as u64;
    match (*topo.params(), config.strategy) {
        (
            TopologyParams::Clockwise { m, .. } | TopologyParams::Absolute { m, .. },
            Strategy::Greedy,
        ) if natural => {
            checks.push(Check::new(
                "worst <= 3m-2",
                3 * m - 2,
                worst,
                worst <= 3 * m - 2,
            ));
            if exhaustive {
                let bound = Exact::integer(2 * m as u128 - 1);
                checks.push(Check::new(
                    "mean < 2m-1",
                    bound,
                    stats.mean,
                    stats.mean < bound,
                ));
            }
        }
        (TopologyParams::Clockwise { m, .. } | TopologyParams::Absolute { m, .. }, strategy)
            if strategy != Strategy::Greedy =>
        {
            checks.push(Check::new("worst <= 2m-1", 2 * m - 1, worst, worst < 2 * m));
            if exhaustive && strategy == Strategy::Hypercubic {
                let bound = Exact::new(3 * m as u128, 2);
                checks.push(Check::new(
                    "mean <= 1.5m",
                    bound,
                    stats.mean,
                    stats.mean <= bound,
                ));
            }
            // The uniform-usage argument needs every residue, including s' == t.
            let full_universe = |l: &&LoadDigest| l.pairs == topo.n() * topo.n();
            if strategy == Strategy::CongestionFreeRandom && config.strict_loop {
                if let Some(load) = entry.load.as_ref().filter(full_universe) {
                    let one = Exact::integer(1);
                    let observed = load.pi.map_or("undefined".to_string(), |p| p.to_string());
                    checks.push(Check::new("pi == 1", one, observed, load.pi == Some(one)));
                }
            }
        }
        (TopologyParams::Xor { m, .. }, Strategy::Greedy) => {
            checks.push(Check::new("worst <= 2m-1", 2 * m - 1, worst, worst < 2 * m));
            if exhaustive {
                let bound = Exact::new(3 * m as u128, 2);
                checks.push(Check::new(
                    "mean <= 1.5m",
                    bound,
                    stats.mean,
                    stats.mean <= bound,
                ));
            }
        }
        (TopologyParams::ChordBidirectional { b }, Strategy::Greedy)
            if config.metric == crate::Metric::Absolute && exhaustive =>
        {
            let bound = (b / 2) as u64;
            checks.push(Check::new(
                "worst == floor(b/2)",
                bound,
                worst,
                worst == bound,
            ));
        }
        _ => {}
    }
    checks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub command: String,
    pub params: TopologyParams,
    pub topology: TopologySummary,
    pub include_self_pairs: bool,
    pub entries: Vec<ReportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detours: Option<DetourSummary>,
    pub passed: bool,
}

impl Report {
    pub fn new(
        command: &str,
        topo: &Topology,
        include_self_pairs: bool,
        entries: Vec<ReportEntry>,
        detours: Option<DetourSummary>,
    ) -> Self {
        let passed = entries.iter().all(ReportEntry::passed);
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params: *topo.params(),
            topology: TopologySummary::of(topo),
            include_self_pairs,
            entries,
            detours,
            passed,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = (&StrategyConfig, &Check)> {
        self.entries.iter().flat_map(|e| {
            e.checks
                .iter()
                .filter(|c| !c.passed)
                .map(move |c| (&e.config, c))
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "strategy", "hops", "from", "to", "kind", "value"])?;
        for entry in &self.entries {
            let strategy = entry.config.strategy.name();
            for (hops, mass) in &entry.stats.histogram {
                w.write_record([
                    "histogram",
                    strategy,
                    &hops.to_string(),
                    "",
                    "",
                    "",
                    &mass.to_string(),
                ])?;
            }
            for load in &entry.edge_loads {
                let kind = if load.excluded {
                    format!("{} (excluded)", load.kind)
                } else {
                    load.kind.clone()
                };
                w.write_record([
                    "load",
                    strategy,
                    "",
                    &load.from.to_string(),
                    &load.to.to_string(),
                    &kind,
                    &load.load.to_string(),
                ])?;
            }
        }
        let bytes = w
            .into_inner()
            .map_err(|e| std::io::Error::other(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let t = &self.topology;
        writeln!(
            out,
            "{} {} {}: {} nodes, {} edges",
            self.tool, self.version, self.params, t.n, t.edges
        )
        .unwrap();
        for warning in &t.warnings {
            writeln!(out, "warning: {warning}").unwrap();
        }
        for e in &self.entries {
            let c = &e.config;
            writeln!(
                out,
                "\n{} (metric {}, strict_loop {}, seed {:#x})",
                c.strategy,
                c.metric.name(),
                c.strict_loop,
                c.seed
            )
            .unwrap();
            let s = &e.stats;
            let mode = match e.mode {
                Mode::Exhaustive => "all pairs".to_string(),
                Mode::Sampled => format!("{} samples", e.samples.unwrap_or(0)),
            };
            writeln!(
                out,
                "  {mode}: {} routes, worst {}, mean {} (~{:.4})",
                s.pairs,
                s.worst,
                s.mean,
                s.mean.to_f64()
            )
            .unwrap();
            let hist: Vec<String> = s
                .histogram
                .iter()
                .map(|(h, m)| format!("{h}:{m}"))
                .collect();
            writeln!(out, "  histogram {}", hist.join(" ")).unwrap();
            if !s.per_phase_max.is_empty() {
                let phases: Vec<String> = s
                    .per_phase_max
                    .iter()
                    .map(|(p, n)| format!("{p}={n}"))
                    .collect();
                writeln!(out, "  max hops per phase {}", phases.join(" ")).unwrap();
            }
            if let Some(route) = &s.longest {
                writeln!(out, "  longest {}", route.path_string()).unwrap();
            }
            if let Some(load) = &e.load {
                let pi = load.pi.map_or("undefined".to_string(), |p| p.to_string());
                writeln!(
                    out,
                    "  load over {} pairs: min {} max {} pi {} ({} excluded edges)",
                    load.pairs,
                    load.min_load,
                    load.max_load,
                    pi,
                    load.excluded.len()
                )
                .unwrap();
            }
            for check in &e.checks {
                let verdict = if check.passed { "ok" } else { "FAILED" };
                writeln!(
                    out,
                    "  check {}: bound {}, observed {} ... {verdict}",
                    check.name, check.bound, check.observed
                )
                .unwrap();
            }
        }
        if let Some(d) = &self.detours {
            writeln!(
                out,
                "\ngreedy ({}) longer than shortest path on {} of {} pairs",
                d.metric.name(),
                d.pairs_longer_than_shortest,
                d.pairs_checked
            )
            .unwrap();
            if let Some(first) = &d.first {
                writeln!(
                    out,
                    "  e.g. {} -> {}: greedy {} hops, shortest {} ({})",
                    first.source,
                    first.target,
                    first.greedy_hops,
                    first.shortest_hops,
                    first.route.path_string()
                )
                .unwrap();
            }
        }
        writeln!(
            out,
            "\n{}",
            if self.passed {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        )
        .unwrap();
        out
    }
}

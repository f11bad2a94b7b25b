// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::ring_metrics::NodeId;
use crate::topology::{Edge, EdgeKind, Topology, TopologyParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::Parameter(format!(
                "unknown graph format {other:?} (expected edgelist, dot or json)"
            ))),
        }
    }
}

/// Which edges to export. An edge matches if any of its tags is selected,
/// so a merged `back+long` edge matches both `back` and `long`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeFilter {
    kinds: Option<BTreeSet<&'static str>>,
}

impl EdgeFilter {
    pub fn all() -> Self {
        EdgeFilter { kinds: None }
    }

    pub fn kinds(kinds: impl IntoIterator<Item = EdgeKind>) -> Self {
        EdgeFilter {
            kinds: Some(kinds.into_iter().map(EdgeKind::name).collect()),
        }
    }

    pub fn matches(&self, edge: &Edge) -> bool {
        match &self.kinds {
            None => true,
            Some(set) => {
                set.contains(edge.kind.name())
                    || edge.merged.is_some_and(|k| set.contains(k.name()))
            }
        }
    }
}

impl FromStr for EdgeFilter {
    type Err = Error;

    /// Comma-separated kind names; empty input selects nothing.
    fn from_str(s: &str) -> Result<Self> {
        let mut kinds = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            kinds.push(match part {
                "short" => EdgeKind::Short,
                "long" => EdgeKind::Long,
                "back" => EdgeKind::Back,
                "finger" => EdgeKind::ChordFinger,
                other => {
                    return Err(Error::Parameter(format!(
                        "unknown edge kind {other:?} (expected short, long, back or finger)"
                    )))
                }
            });
        }
        Ok(EdgeFilter::kinds(kinds))
    }
}

#[derive(Serialize)]
struct TopologyDoc<'a> {
    params: &'a TopologyParams,
    n: u64,
    adjacency: Vec<Vec<&'a Edge>>,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    warnings: &'a [String],
}

/// Renders the selected edges of `topo`. Output depends only on the
/// topology and the filter.
pub fn export_graph(topo: &Topology, format: GraphFormat, filter: &EdgeFilter) -> Result<String> {
    let selected = || topo.edges().filter(|(_, e)| filter.matches(e));
    let mut out = String::new();
    match format {
        GraphFormat::EdgeList => {
            let mut any = false;
            for (u, e) in selected() {
                any = true;
                writeln!(out, "{} {} {}", u, e.target, e.kind_label()).unwrap();
            }
            if !any {
                writeln!(
                    out,
                    "# {}: no edges selected (columns: u v kind)",
                    topo.params()
                )
                .unwrap();
            }
        }
        GraphFormat::Dot => {
            writeln!(out, "digraph papillon {{").unwrap();
            writeln!(out, "  label=\"{}\";", topo.params()).unwrap();
            for u in topo.nodes() {
                writeln!(out, "  {u};").unwrap();
            }
            for (u, e) in selected() {
                writeln!(
                    out,
                    "  {} -> {} [kind=\"{}\"];",
                    u,
                    e.target,
                    e.kind_label()
                )
                .unwrap();
            }
            writeln!(out, "}}").unwrap();
        }
        GraphFormat::Json => {
            let adjacency = topo
                .nodes()
                .map(|u: NodeId| {
                    topo.out_edges(u)
                        .iter()
                        .filter(|e| filter.matches(e))
                        .collect()
                })
                .collect();
            let doc = TopologyDoc {
                params: topo.params(),
                n: topo.n(),
                adjacency,
                warnings: topo.warnings(),
            };
            out = serde_json::to_string_pretty(&doc)?;
            out.push('\n');
        }
    }
    Ok(out)
}

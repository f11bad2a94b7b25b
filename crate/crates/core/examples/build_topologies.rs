// SPDX-License-Identifier: Apache-2.0

//! Builds one instance of every family and prints sizes, degrees and the
//! out-edges of node 0.
//!
//! ```bash
//! cargo run -p papillon --example build_topologies
//! ```

use papillon::{build_absolute, build_chord, build_clockwise, build_xor, NodeId, Topology};

fn describe(topo: &Topology) {
    println!(
        "{}: n = {}, edges = {}",
        topo.params(),
        topo.n(),
        topo.edge_count()
    );
    for (degree, nodes) in topo.degree_histogram() {
        println!("  out-degree {degree}: {nodes} nodes");
    }
    let zero = NodeId::new(0);
    let level = topo.level(zero).map_or("-".to_string(), |l| l.to_string());
    let edges: Vec<String> = topo
        .out_edges(zero)
        .iter()
        .map(|e| format!("{}({})", e.target, e.kind_label()))
        .collect();
    println!("  node 0 (level {level}) -> {}", edges.join(" "));
    for w in topo.warnings() {
        println!("  warning: {w}");
    }
}

fn main() -> papillon::Result<()> {
    describe(&build_clockwise(2, 2)?);
    describe(&build_clockwise(3, 3)?);
    describe(&build_absolute(1, 2)?);
    describe(&build_xor(2, 3)?);
    describe(&build_chord(4, false)?);
    describe(&build_chord(4, true)?);
    // one level: every long link wraps back onto its source
    describe(&build_clockwise(2, 1)?);
    Ok(())
}

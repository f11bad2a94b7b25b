// SPDX-License-Identifier: Apache-2.0

//! Edge list, DOT and JSON renderings, plus the same through the CLI
//! entry point.
//!
//! ```bash
//! cargo run -p papillon --example export_graph
//! ```

use papillon::build_absolute;
use papillon::cli::{export_graph, run_cli, EdgeFilter, GraphFormat};

fn main() -> papillon::Result<()> {
    let topo = build_absolute(1, 2)?;
    let edges = export_graph(&topo, GraphFormat::EdgeList, &EdgeFilter::all())?;
    println!("edge list ({} lines), first five:", edges.lines().count());
    for line in edges.lines().take(5) {
        println!("  {line}");
    }
    let backs = export_graph(&topo, GraphFormat::EdgeList, &"back".parse()?)?;
    println!("back edges: {}", backs.lines().count());
    let dot = export_graph(&topo, GraphFormat::Dot, &EdgeFilter::all())?;
    println!("dot: {} bytes", dot.len());

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(
        [
            "papillon", "export", "--family", "xor", "--lambda", "2", "-m", "2", "--format", "dot",
        ],
        &mut out,
        &mut err,
    );
    println!("cli exit {code}:\n{}", String::from_utf8_lossy(&out));
    Ok(())
}

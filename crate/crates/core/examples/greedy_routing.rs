// SPDX-License-Identifier: Apache-2.0

//! Greedy routing on the ring butterflies, with each hop's phase.
//!
//! ```bash
//! cargo run -p papillon --example greedy_routing
//! ```

use papillon::analysis::{all_pairs_stats, hop_phases, AnalysisOptions};
use papillon::{build_absolute, build_clockwise, greedy_route, Metric, NodeId, StrategyConfig};

fn main() -> papillon::Result<()> {
    let cw = build_clockwise(2, 3)?;
    for (s, t) in [(0, 23), (2, 20), (1, 16)] {
        let route = greedy_route(&cw, Metric::Clockwise, NodeId::new(s), NodeId::new(t))?;
        let phases: Vec<String> = hop_phases(&route, &cw)?
            .iter()
            .map(|p| p.to_string())
            .collect();
        println!(
            "{}: {} [{}]",
            cw.params(),
            route.path_string(),
            phases.join(" ")
        );
    }

    let abs = build_absolute(1, 2)?;
    let route = greedy_route(&abs, Metric::Absolute, NodeId::new(0), NodeId::new(9))?;
    println!("{}: {}", abs.params(), route.path_string());

    let options = AnalysisOptions::default();
    for topo in [&cw, &abs] {
        let config = StrategyConfig::for_family(papillon::Strategy::Greedy, topo.family());
        let stats = all_pairs_stats(topo, &config, &options)?;
        println!(
            "{}: worst {} hops, mean {} over {} pairs",
            topo.params(),
            stats.worst,
            stats.mean,
            stats.pairs
        );
    }
    Ok(())
}

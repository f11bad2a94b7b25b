// SPDX-License-Identifier: Apache-2.0

//! All strategies side by side on one topology, plus a pair where greedy
//! is beaten by the shortest path.
//!
//! ```bash
//! cargo run -p papillon --example compare_strategies
//! ```

use papillon::analysis::{compare_strategies, AnalysisOptions};
use papillon::{build_absolute, build_clockwise, Strategy, StrategyConfig, Topology};

fn show(topo: &Topology, strategies: &[Strategy]) -> papillon::Result<()> {
    let configs: Vec<StrategyConfig> = strategies
        .iter()
        .map(|&s| {
            StrategyConfig::for_family(s, topo.family()).with_strict_loop(s != Strategy::Greedy)
        })
        .collect();
    let options = AnalysisOptions::default().with_self_pairs(true);
    let cmp = compare_strategies(topo, &configs, &options)?;
    println!("{}", topo.params());
    for entry in &cmp.entries {
        println!(
            "  {:<16} worst {:>2}  mean {:<10} pi {}",
            entry.config.strategy.to_string(),
            entry.stats.worst,
            entry.stats.mean.to_string(),
            entry.load.pi.map_or("undefined".into(), |p| p.to_string())
        );
    }
    if let Some(detours) = &cmp.detours {
        println!(
            "  greedy is longer than the shortest path on {} of {} pairs",
            detours.pairs_longer_than_shortest, detours.pairs_checked
        );
        if let Some(d) = &detours.first {
            println!(
                "  e.g. {} -> {}: {} hops vs {} ({})",
                d.source,
                d.target,
                d.greedy_hops,
                d.shortest_hops,
                d.route.path_string()
            );
        }
    }
    Ok(())
}

fn main() -> papillon::Result<()> {
    show(
        &build_clockwise(2, 3)?,
        &[
            Strategy::Greedy,
            Strategy::Hypercubic,
            Strategy::CongestionFreeRandom,
        ],
    )?;
    show(
        &build_absolute(1, 2)?,
        &[
            Strategy::Greedy,
            Strategy::Hypercubic,
            Strategy::CongestionFreeRandom,
            Strategy::CongestionFreeDeterministic,
        ],
    )
}

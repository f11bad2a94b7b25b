// SPDX-License-Identifier: Apache-2.0

//! Congestion-free routing: every branch of a randomized route with its
//! exact probability, and the resulting edge-load ratio.
//!
//! ```bash
//! cargo run -p papillon --example congestion_free
//! ```

use papillon::analysis::{edge_load_profile, AnalysisOptions, Exact};
use papillon::routing::branch_denominator;
use papillon::{build_absolute, build_clockwise, route_branches, NodeId, Strategy, StrategyConfig};

fn main() -> papillon::Result<()> {
    let cw = build_clockwise(2, 2)?;
    let random = StrategyConfig::for_family(Strategy::CongestionFreeRandom, cw.family())
        .with_strict_loop(true);
    let denom = branch_denominator(&cw, &random);
    for branch in route_branches(&cw, &random, NodeId::new(0), NodeId::new(7))? {
        println!(
            "0 -> 7 w.p. {}: {}",
            Exact::new(branch.numerator, denom),
            branch.route.path_string()
        );
    }

    // Self pairs route a full loop in strict mode; they complete the
    // uniform usage of the digit links.
    for include_self_pairs in [false, true] {
        let options = AnalysisOptions::default().with_self_pairs(include_self_pairs);
        let load = edge_load_profile(&cw, &random, &options)?;
        println!(
            "{} strict, self pairs {include_self_pairs}: pi = {}",
            cw.params(),
            load.pi.map_or("undefined".into(), |p| p.to_string())
        );
    }

    let abs = build_absolute(1, 2)?;
    let options = AnalysisOptions::default().with_self_pairs(true);
    for strategy in [
        Strategy::CongestionFreeRandom,
        Strategy::CongestionFreeDeterministic,
    ] {
        let config = StrategyConfig::for_family(strategy, abs.family()).with_strict_loop(true);
        let load = edge_load_profile(&abs, &config, &options)?;
        println!(
            "{} {strategy}: pi = {} over {} edges ({} back edges excluded)",
            abs.params(),
            load.pi.map_or("undefined".into(), |p| p.to_string()),
            load.loads.len() - load.excluded.len(),
            load.excluded.len()
        );
    }
    Ok(())
}

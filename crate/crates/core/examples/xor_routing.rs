// SPDX-License-Identifier: Apache-2.0

//! Greedy routing by Hamming distance on the xor butterfly.
//!
//! ```bash
//! cargo run -p papillon --example xor_routing
//! ```

use papillon::analysis::{all_pairs_stats, AnalysisOptions};
use papillon::{build_xor, delta_xor, xor_greedy, Metric, NodeId, StrategyConfig};

fn main() -> papillon::Result<()> {
    let topo = build_xor(2, 2)?;
    for (s, t) in [(0, 7), (0, 4), (3, 6)] {
        let (s, t) = (NodeId::new(s), NodeId::new(t));
        let route = xor_greedy(&topo, s, t)?;
        println!(
            "{} (xor distance {}): {}",
            topo.params(),
            delta_xor(s, t),
            route.path_string()
        );
    }
    for (lambda, m) in [(2, 2), (4, 2), (2, 3)] {
        let topo = build_xor(lambda, m)?;
        let stats = all_pairs_stats(
            &topo,
            &StrategyConfig::greedy(Metric::Xor),
            &AnalysisOptions::default(),
        )?;
        println!(
            "{}: worst {}, mean {}",
            topo.params(),
            stats.worst,
            stats.mean
        );
    }
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

//! Greedy routing on Chord rings of 2^b nodes.
//!
//! ```bash
//! cargo run -p papillon --example chord_baseline
//! ```

use papillon::analysis::{all_pairs_stats, AnalysisOptions};
use papillon::{build_chord, Metric, StrategyConfig};

fn main() -> papillon::Result<()> {
    let options = AnalysisOptions::default();
    for b in [4, 6, 8, 10] {
        let one_way = build_chord(b, false)?;
        let both = build_chord(b, true)?;
        let cw = all_pairs_stats(
            &one_way,
            &StrategyConfig::greedy(Metric::Clockwise),
            &options,
        )?;
        let abs = all_pairs_stats(&both, &StrategyConfig::greedy(Metric::Absolute), &options)?;
        println!(
            "b = {b:>2}: clockwise fingers worst {} mean {:.3}; bidirectional worst {} mean {:.3}",
            cw.worst,
            cw.mean.to_f64(),
            abs.worst,
            abs.mean.to_f64()
        );
    }
    Ok(())
}

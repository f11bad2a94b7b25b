// SPDX-License-Identifier: Apache-2.0

//! Hypercubic routing: level alignment with short links, then one digit
//! of the remaining distance per hop.
//!
//! ```bash
//! cargo run -p papillon --example hypercubic_routing
//! ```

use papillon::analysis::{edge_load_profile, AnalysisOptions};
use papillon::routing::{decompose_balanced_absolute, decompose_clockwise};
use papillon::{
    build_absolute, build_clockwise, hypercubic_absolute, hypercubic_clockwise, NodeId, Strategy,
    StrategyConfig,
};

fn main() -> papillon::Result<()> {
    let cw = build_clockwise(2, 2)?;
    let d = decompose_clockwise(7, 2, 2)?;
    println!(
        "distance 7 on {}: c = {}, digits {:?}",
        cw.params(),
        d.c,
        d.digits
    );
    let route = hypercubic_clockwise(&cw, NodeId::new(0), NodeId::new(7))?;
    println!("  {}", route.path_string());

    let abs = build_absolute(1, 2)?;
    let d = decompose_balanced_absolute(16, 1, 2, abs.n())?;
    println!("distance 16 on {}: digits {:?}", abs.params(), d.digits);
    let route = hypercubic_absolute(&abs, NodeId::new(0), NodeId::new(16))?;
    println!("  {}", route.path_string());

    // Phase I only uses short links, so loads are uneven.
    let config = StrategyConfig::for_family(Strategy::Hypercubic, cw.family());
    let load = edge_load_profile(&cw, &config, &AnalysisOptions::default())?;
    println!(
        "{} hypercubic: min load {}, max load {}, pi {}",
        cw.params(),
        load.min_load,
        load.max_load,
        load.pi.map_or("undefined".into(), |p| p.to_string())
    );
    Ok(())
}

// SPDX-License-Identifier: Apache-2.0

//! Butterfly networks laid out on a ring, as explicit graphs.
//!
//! The crate builds the three Papillon families (`B_clockwise`,
//! `B_absolute`, `B_xor`) and the Chord baselines as explicit directed
//! graphs, routes over them with greedy, hypercubic and congestion-free
//! strategies, and checks hop-count and edge-load bounds by exhaustive
//! all-pairs enumeration with exact rational arithmetic.
//!
//! ```
//! use papillon::{build_clockwise, greedy_route, Metric, NodeId};
//!
//! let topo = build_clockwise(2, 2).unwrap();
//! let route = greedy_route(&topo, Metric::Clockwise, NodeId::new(0), NodeId::new(7)).unwrap();
//! assert_eq!(route.path_string(), "0 -> 5 -> 6 -> 7");
//! ```

#![forbid(unsafe_code)]

pub mod analysis;
pub mod cli;
mod error;
pub mod ring_metrics;
pub mod routing;
pub mod topology;

pub use error::{Error, Result};
pub use ring_metrics::{delta_absolute, delta_clockwise, delta_xor, Distance, Metric, NodeId};
pub use routing::{
    greedy_route, hypercubic_absolute, hypercubic_clockwise, route, route_branches, xor_greedy,
    PhaseLabel, Route, Strategy, StrategyConfig,
};
pub use topology::{
    build_absolute, build_chord, build_clockwise, build_xor, BuildOptions, Edge, EdgeKind, Family,
    Level, Topology, TopologyParams,
};

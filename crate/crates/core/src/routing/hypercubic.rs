// SPDX-License-Identifier: Apache-2.0

//! Two-phase digit-fixing routes on the ring butterflies.
//!
//! Phase I walks short links until the current level equals the target's.
//! Phase II takes exactly `m` hops; at node `u` it travels
//! `1 + d_{ℓ(u)}·radix^{ℓ(u)}·m`, which zeroes one digit per level.

use crate::ring_metrics::{Metric, NodeId};
use crate::routing::decompose::{decompose_balanced_absolute, decompose_clockwise};
use crate::routing::{default_max_hops, PhaseLabel, Route, Walker};
use crate::topology::{level_ring, Topology, TopologyParams};
use crate::{Error, Result};

pub(crate) fn clockwise_params(topo: &Topology) -> Result<(u64, u64)> {
    match *topo.params() {
        TopologyParams::Clockwise { kappa, m } => Ok((kappa, m)),
        _ => Err(Error::Parameter(format!(
            "{} is not a clockwise butterfly",
            topo.params()
        ))),
    }
}

pub(crate) fn absolute_params(topo: &Topology) -> Result<(u64, u64)> {
    match *topo.params() {
        TopologyParams::Absolute { k, m } => Ok((k, m)),
        _ => Err(Error::Parameter(format!(
            "{} is not an absolute butterfly",
            topo.params()
        ))),
    }
}

/// Runs `m` digit-fixing hops; `digits[ℓ]` is consumed at level `ℓ`.
pub(crate) fn fix_digits(
    walk: &mut Walker<'_>,
    digits: &[i64],
    radix: u64,
    m: u64,
    phase: PhaseLabel,
) -> Result<()> {
    for _ in 0..m {
        let level = level_ring(walk.at(), m).value();
        let stride = m as i128 * (radix as i128).pow(level as u32);
        walk.step_by(1 + digits[level as usize] as i128 * stride, Some(phase))?;
    }
    Ok(())
}

pub fn hypercubic_clockwise(topo: &Topology, s: NodeId, t: NodeId) -> Result<Route> {
    let (kappa, m) = clockwise_params(topo)?;
    topo.check_node(s)?;
    topo.check_node(t)?;
    let n = topo.n();
    let mut walk = Walker::new(topo, Metric::Clockwise, s, t, default_max_hops(topo));
    let dist = Metric::Clockwise.distance_unchecked(s.value(), t.value(), n);
    if dist < m {
        for _ in 0..dist {
            walk.step_by(1, Some(PhaseLabel::I))?;
        }
        return walk.finish();
    }
    let dd = decompose_clockwise(dist, kappa, m)?;
    for _ in 0..dd.c {
        walk.step_by(1, Some(PhaseLabel::I))?;
    }
    fix_digits(&mut walk, &dd.digits, kappa, m, PhaseLabel::II)?;
    walk.finish()
}

pub fn hypercubic_absolute(topo: &Topology, s: NodeId, t: NodeId) -> Result<Route> {
    let (k, m) = absolute_params(topo)?;
    topo.check_node(s)?;
    topo.check_node(t)?;
    let n = topo.n();
    let mut walk = Walker::new(topo, Metric::Absolute, s, t, default_max_hops(topo));
    let c = (t.value() + m - s.value() % m) % m;
    for _ in 0..c {
        walk.step_by(1, Some(PhaseLabel::I))?;
    }
    if walk.arrived() {
        return walk.finish();
    }
    let rest = Metric::Clockwise.distance_unchecked(walk.at().value(), t.value(), n);
    let dd = decompose_balanced_absolute(rest, k, m, n)?;
    fix_digits(&mut walk, &dd.digits, 2 * k + 1, m, PhaseLabel::II)?;
    walk.finish()
}

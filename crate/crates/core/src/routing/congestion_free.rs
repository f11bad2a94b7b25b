// SPDX-License-Identifier: Apache-2.0

//! Congestion-free routing.
//!
//! The first phase takes `c = (t - s) mod m` hops that do not depend on
//! the target's digits (random variants) or split each digit in two
//! (deterministic variant), and the second phase is the hypercubic digit
//! fix. Only the final first-phase hop can land on a node with the target's
//! level, so the target is never passed through mid-phase.

use serde::{Deserialize, Serialize};

use crate::ring_metrics::{Metric, NodeId};
use crate::routing::decompose::{
    congestion_split, decompose_absolute, decompose_balanced_absolute, decompose_clockwise,
};
use crate::routing::hypercubic::{absolute_params, clockwise_params, fix_digits};
use crate::routing::{default_max_hops, level_gap, BranchChooser, PhaseLabel, Route, Walker};
use crate::topology::{level_ring, Topology};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsoluteMode {
    Random,
    Deterministic,
}

fn random_phase_one(
    walk: &mut Walker<'_>,
    c: u64,
    m: u64,
    radix: u64,
    digit_min: i64,
    chooser: &mut dyn BranchChooser,
) -> Result<()> {
    for hop in 0..c {
        let level = level_ring(walk.at(), m).value();
        let stride = m as i128 * (radix as i128).pow(level as u32);
        let digit = digit_min + chooser.choose(radix as usize) as i64;
        walk.step_by(1 + digit as i128 * stride, Some(PhaseLabel::I))?;
        if walk.arrived() && hop + 1 < c {
            return Err(Error::InvariantViolation(format!(
                "first phase reached the target after {} of {c} hops",
                hop + 1
            )));
        }
    }
    Ok(())
}

/// Random first phase over the κ links, then the hypercubic second phase.
///
/// With `strict_loop`, a first phase that lands on `t` is followed by the
/// full loop of maximal long links (remaining distance read as `n`). The
/// same holds for `s == t`, which then routes once around the butterfly.
pub fn congestion_free_clockwise(
    topo: &Topology,
    s: NodeId,
    t: NodeId,
    strict_loop: bool,
    chooser: &mut dyn BranchChooser,
) -> Result<Route> {
    let (kappa, m) = clockwise_params(topo)?;
    topo.check_node(s)?;
    topo.check_node(t)?;
    if s == t && !strict_loop {
        return Ok(Route::empty(s, t));
    }
    let n = topo.n();
    let mut walk = Walker::new(topo, Metric::Clockwise, s, t, default_max_hops(topo));
    random_phase_one(&mut walk, level_gap(topo, s, t), m, kappa, 0, chooser)?;
    let rest = match Metric::Clockwise.distance_unchecked(walk.at().value(), t.value(), n) {
        0 if !strict_loop => return walk.finish(),
        0 => n,
        d => d,
    };
    let dd = decompose_clockwise(rest, kappa, m)?;
    debug_assert_eq!(dd.c, 0);
    fix_digits(&mut walk, &dd.digits, kappa, m, PhaseLabel::II)?;
    walk.finish()
}

/// Random first phase over the `2k+1` digit links (never the back link).
pub fn congestion_free_absolute_random(
    topo: &Topology,
    s: NodeId,
    t: NodeId,
    strict_loop: bool,
    chooser: &mut dyn BranchChooser,
) -> Result<Route> {
    let (k, m) = absolute_params(topo)?;
    topo.check_node(s)?;
    topo.check_node(t)?;
    if s == t && !strict_loop {
        return Ok(Route::empty(s, t));
    }
    let n = topo.n();
    let mut walk = Walker::new(topo, Metric::Absolute, s, t, default_max_hops(topo));
    random_phase_one(
        &mut walk,
        level_gap(topo, s, t),
        m,
        2 * k + 1,
        -(k as i64),
        chooser,
    )?;
    if walk.arrived() && !strict_loop {
        return walk.finish();
    }
    let rest = Metric::Clockwise.distance_unchecked(walk.at().value(), t.value(), n);
    let dd = decompose_balanced_absolute(rest, k, m, n)?;
    fix_digits(&mut walk, &dd.digits, 2 * k + 1, m, PhaseLabel::II)?;
    walk.finish()
}

/// Deterministic variant: each first-phase hop at level `ℓ` covers
/// `⌊(k + d_ℓ)/2⌋` of digit `d_ℓ`, and the second phase fixes the rest.
pub fn congestion_free_absolute_deterministic(
    topo: &Topology,
    s: NodeId,
    t: NodeId,
    strict_loop: bool,
) -> Result<Route> {
    let (k, m) = absolute_params(topo)?;
    topo.check_node(s)?;
    topo.check_node(t)?;
    if s == t && !strict_loop {
        return Ok(Route::empty(s, t));
    }
    let n = topo.n();
    let radix = 2 * k + 1;
    let dist = Metric::Clockwise.distance_unchecked(s.value(), t.value(), n);
    let dd = decompose_absolute(dist, k, m)?;
    let mut residual = dd.digits.clone();
    let mut walk = Walker::new(topo, Metric::Absolute, s, t, default_max_hops(topo));
    for hop in 0..dd.c {
        let level = level_ring(walk.at(), m).value() as usize;
        let (first, second) = congestion_split(residual[level], k as i64);
        residual[level] = second;
        let stride = m as i128 * (radix as i128).pow(level as u32);
        walk.step_by(1 + first as i128 * stride, Some(PhaseLabel::I))?;
        if walk.arrived() && hop + 1 < dd.c {
            return Err(Error::InvariantViolation(format!(
                "first phase reached the target after {} of {} hops",
                hop + 1,
                dd.c
            )));
        }
    }
    if walk.arrived() && !strict_loop {
        return walk.finish();
    }
    fix_digits(&mut walk, &residual, radix, m, PhaseLabel::II)?;
    walk.finish()
}

pub fn congestion_free_absolute(
    topo: &Topology,
    s: NodeId,
    t: NodeId,
    mode: AbsoluteMode,
    strict_loop: bool,
    chooser: &mut dyn BranchChooser,
) -> Result<Route> {
    match mode {
        AbsoluteMode::Random => congestion_free_absolute_random(topo, s, t, strict_loop, chooser),
        AbsoluteMode::Deterministic => {
            congestion_free_absolute_deterministic(topo, s, t, strict_loop)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::{hypercubic_absolute, ScriptedChooser};
    use crate::topology::{build_absolute, build_clockwise, EdgeKind};

    fn id(v: u64) -> NodeId {
        NodeId::new(v)
    }

    fn path(route: &Route) -> Vec<u64> {
        route.nodes().iter().map(|u| u.value()).collect()
    }

    #[test]
    fn clockwise_both_first_hops_reach_seven() {
        let t = build_clockwise(2, 2).unwrap();
        let a = congestion_free_clockwise(&t, id(0), id(7), false, &mut ScriptedChooser::new(&[0]))
            .unwrap();
        let b = congestion_free_clockwise(&t, id(0), id(7), false, &mut ScriptedChooser::new(&[1]))
            .unwrap();
        assert_eq!(path(&a)[..2], [0, 1]);
        assert_eq!(path(&b)[..2], [0, 5]);
        assert_eq!((a.len(), b.len()), (3, 3));
        a.validate(&t).unwrap();
        b.validate(&t).unwrap();
    }

    #[test]
    fn clockwise_strict_loop_uses_maximal_links() {
        let t = build_clockwise(2, 2).unwrap();
        // 0 -> 1 with first hop to 1 lands on the target after c = 1 hop
        let lax =
            congestion_free_clockwise(&t, id(0), id(1), false, &mut ScriptedChooser::new(&[0]))
                .unwrap();
        assert_eq!(path(&lax), vec![0, 1]);
        let strict =
            congestion_free_clockwise(&t, id(0), id(1), true, &mut ScriptedChooser::new(&[0]))
                .unwrap();
        assert_eq!(strict.len(), 3);
        assert!(strict.hops[1..].iter().all(|h| h.kind == EdgeKind::Long));
        assert_eq!(strict.end(), id(1));
    }

    #[test]
    fn deterministic_matches_hypercubic_when_levels_agree() {
        let t = build_absolute(1, 2).unwrap();
        for s in [0u64, 2, 4, 6] {
            for target in [0u64, 4, 8, 10, 16] {
                if s == target {
                    continue;
                }
                let det =
                    congestion_free_absolute_deterministic(&t, id(s), id(target), false).unwrap();
                let hyp = hypercubic_absolute(&t, id(s), id(target)).unwrap();
                assert_eq!(path(&det), path(&hyp));
            }
        }
    }

    #[test]
    fn random_absolute_branches_complete() {
        let t = build_absolute(1, 2).unwrap();
        for pick in 0..3 {
            let r = congestion_free_absolute(
                &t,
                id(0),
                id(9),
                AbsoluteMode::Random,
                true,
                &mut ScriptedChooser::new(&[pick]),
            )
            .unwrap();
            r.validate(&t).unwrap();
            assert_eq!(r.len(), 3);
            assert!(r.hops.iter().all(|h| h.kind != EdgeKind::Back));
        }
    }
}

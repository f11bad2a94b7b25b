// SPDX-License-Identifier: Apache-2.0

//! SPAN sets and the three-phase view of greedy routes.
//!
//! `SPAN(u)` holds the targets that the digit links from `u` downward can
//! still reach without another full sweep over the levels. For
//! `B_clockwise` it is `{v : δ_cw(u, v) < m·κ^(ℓ(u)+1)}`; for `B_absolute`
//! it is every `v` with `δ_abs(u, v) = |c + m·Σ_{i ≤ ℓ(u)} (2k+1)^i d_i|`.

use crate::ring_metrics::{Metric, NodeId};
use crate::routing::{balanced_digits, PhaseLabel, Route};
use crate::topology::{level_ring, Topology, TopologyParams};
use crate::{Error, Result};

pub fn span_contains(topo: &Topology, u: NodeId, v: NodeId) -> Result<bool> {
    topo.check_node(u)?;
    topo.check_node(v)?;
    let n = topo.n();
    match *topo.params() {
        TopologyParams::Clockwise { kappa, m } => {
            let level = level_ring(u, m).value();
            let bound = m as u128 * (kappa as u128).pow(level as u32 + 1);
            let dist = Metric::Clockwise.distance_unchecked(u.value(), v.value(), n);
            Ok((dist as u128) < bound)
        }
        TopologyParams::Absolute { k, m } => {
            let level = level_ring(u, m).value();
            let dist = Metric::Absolute.distance_unchecked(u.value(), v.value(), n);
            // c = dist mod m is forced; the quotient must fit in ℓ(u)+1
            // balanced digits
            let (_, carry) = balanced_digits((dist / m) as i128, 2 * k + 1, level as usize + 1);
            Ok(carry == 0)
        }
        _ => Err(Error::Parameter(format!(
            "SPAN is defined for the ring butterflies only, not {}",
            topo.params()
        ))),
    }
}

fn ring_levels(topo: &Topology) -> Result<u64> {
    match *topo.params() {
        TopologyParams::Clockwise { m, .. } | TopologyParams::Absolute { m, .. } => Ok(m),
        _ => Err(Error::Parameter(format!(
            "phase classification needs a ring butterfly, not {}",
            topo.params()
        ))),
    }
}

/// Per-phase caps `[m-1, m, m-1]` for phases I, II, III.
pub fn phase_caps(m: u64) -> [usize; 3] {
    [m as usize - 1, m as usize, m as usize - 1]
}

/// Phase of the origin of every hop, without any ordering check.
pub fn hop_phases(route: &Route, topo: &Topology) -> Result<Vec<PhaseLabel>> {
    let m = ring_levels(topo)?;
    let metric = topo.family().natural_metric();
    let t = route.target;
    route
        .hops
        .iter()
        .map(|hop| {
            Ok(if !span_contains(topo, hop.from, t)? {
                PhaseLabel::I
            } else if metric.distance_unchecked(hop.from.value(), t.value(), topo.n()) >= m {
                PhaseLabel::II
            } else {
                PhaseLabel::III
            })
        })
        .collect()
}

/// Labels the origin of every hop of a greedy route with its phase.
///
/// Fails if a label ever moves backwards (III before II, II before I).
pub fn phase_labels(route: &Route, topo: &Topology) -> Result<Vec<PhaseLabel>> {
    let labels = hop_phases(route, topo)?;
    if let Some(i) = labels.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::InvariantViolation(format!(
            "route {}: phase {} follows phase {} at node {}",
            route.path_string(),
            labels[i + 1],
            labels[i],
            route.hops[i + 1].from
        )));
    }
    Ok(labels)
}

/// Hop count per phase, indexed by [`PhaseLabel::index`].
pub fn phase_counts(labels: &[PhaseLabel]) -> [usize; 3] {
    let mut counts = [0usize; 3];
    for label in labels {
        counts[label.index()] += 1;
    }
    counts
}

/// [`phase_labels`] plus the caps m-1 / m / m-1 on each phase.
pub fn classify_phases(route: &Route, topo: &Topology) -> Result<Vec<PhaseLabel>> {
    let labels = phase_labels(route, topo)?;
    let caps = phase_caps(ring_levels(topo)?);
    let counts = phase_counts(&labels);
    for (phase, (&count, &cap)) in [PhaseLabel::I, PhaseLabel::II, PhaseLabel::III]
        .iter()
        .zip(counts.iter().zip(caps.iter()))
    {
        if count > cap {
            return Err(Error::InvariantViolation(format!(
                "route {}: phase {phase} took {count} hops, cap is {cap}",
                route.path_string()
            )));
        }
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::greedy_route;
    use crate::topology::{build_absolute, build_clockwise, build_xor};
    use std::collections::BTreeSet;

    fn id(v: u64) -> NodeId {
        NodeId::new(v)
    }

    #[test]
    fn clockwise_span_of_level_zero_node() {
        let t = build_clockwise(2, 2).unwrap();
        let span: Vec<u64> = t
            .nodes()
            .filter(|&v| span_contains(&t, id(1), v).unwrap())
            .map(|v| v.value())
            .collect();
        assert_eq!(span, vec![1, 2, 3, 4]);
    }

    #[test]
    fn top_level_span_is_everything() {
        for topo in [
            build_clockwise(3, 3).unwrap(),
            build_absolute(1, 3).unwrap(),
        ] {
            let m = topo.params().levels().unwrap();
            for u in topo.nodes().filter(|&u| level_ring(u, m).value() == m - 1) {
                assert!(topo.nodes().all(|v| span_contains(&topo, u, v).unwrap()));
                assert!(span_contains(&topo, u, u).unwrap());
            }
        }
    }

    // Enumerates |c + m·Σ (2k+1)^i d_i| over every digit choice.
    fn absolute_span_values(k: i64, m: i64, level: u32) -> BTreeSet<i64> {
        let width = level as usize + 1;
        let radix = 2 * k + 1;
        let combos = radix.pow(width as u32);
        let mut out = BTreeSet::new();
        for c in 0..m {
            for idx in 0..combos {
                let mut rest = idx;
                let mut sum = 0;
                let mut place = 1;
                for _ in 0..width {
                    sum += (rest % radix - k) * place;
                    rest /= radix;
                    place *= radix;
                }
                out.insert((c + m * sum).abs());
            }
        }
        out
    }

    #[test]
    fn absolute_span_matches_enumeration() {
        for (k, m) in [(1u64, 2u64), (2, 2), (1, 3)] {
            let topo = build_absolute(k, m).unwrap();
            let n = topo.n();
            for u in topo.nodes() {
                let level = level_ring(u, m).value() as u32;
                let values = absolute_span_values(k as i64, m as i64, level);
                for v in topo.nodes() {
                    let dist = Metric::Absolute.distance_unchecked(u.value(), v.value(), n);
                    assert_eq!(
                        span_contains(&topo, u, v).unwrap(),
                        values.contains(&(dist as i64)),
                        "k={k} m={m} u={u} v={v}"
                    );
                }
            }
        }
    }

    #[test]
    fn greedy_route_phases() {
        let t = build_clockwise(2, 2).unwrap();
        let r = greedy_route(&t, Metric::Clockwise, id(0), id(7)).unwrap();
        assert_eq!(
            classify_phases(&r, &t).unwrap(),
            vec![PhaseLabel::II, PhaseLabel::II, PhaseLabel::III]
        );
        let empty = Route::empty(id(3), id(3));
        assert!(classify_phases(&empty, &t).unwrap().is_empty());
    }

    #[test]
    fn outside_span_starts_in_phase_one() {
        let t = build_clockwise(2, 3).unwrap();
        let s = id(2); // level 0, span is 6 positions wide
        let target = id(20);
        assert!(!span_contains(&t, s, target).unwrap());
        let r = greedy_route(&t, Metric::Clockwise, s, target).unwrap();
        assert_eq!(classify_phases(&r, &t).unwrap()[0], PhaseLabel::I);
    }

    // Tie at node 6 (neighbors 1 and 13 both at distance 3) goes to 1;
    // from level 0 the best move still leaves distance m.
    #[test]
    fn absolute_greedy_can_overrun_phase_two() {
        let t = build_absolute(1, 2).unwrap();
        let r = greedy_route(&t, Metric::Absolute, id(6), id(16)).unwrap();
        assert_eq!(r.path_string(), "6 -> 1 -> 0 -> 17 -> 16");
        let labels = phase_labels(&r, &t).unwrap();
        assert_eq!(phase_counts(&labels), [0, 3, 1]);
        assert!(classify_phases(&r, &t).is_err());
    }

    // Node 74 is at level 0 where SPAN reaches distance 5; the target is 6 away.
    #[test]
    fn absolute_greedy_can_leave_span() {
        let t = build_absolute(1, 3).unwrap();
        let r = greedy_route(&t, Metric::Absolute, id(1), id(68)).unwrap();
        assert_eq!(r.path_string(), "1 -> 74 -> 72 -> 70 -> 68");
        assert_eq!(
            hop_phases(&r, &t).unwrap(),
            vec![
                PhaseLabel::II,
                PhaseLabel::I,
                PhaseLabel::II,
                PhaseLabel::III
            ]
        );
        assert!(phase_labels(&r, &t).is_err());
    }

    #[test]
    fn non_ring_family_rejected() {
        let t = build_xor(2, 2).unwrap();
        assert!(span_contains(&t, id(0), id(1)).is_err());
        assert!(classify_phases(&Route::empty(id(0), id(0)), &t).is_err());
    }
}

// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use papillon::routing::{decompose_absolute, decompose_clockwise, decompose_xor};
use papillon::{
    build_absolute, build_clockwise, build_xor, delta_absolute, delta_clockwise, delta_xor, route,
    Metric, NodeId, Strategy as Routing, StrategyConfig, Topology,
};

fn clockwise() -> impl Strategy<Value = Topology> {
    (2u64..=4, 1u64..=3).prop_map(|(kappa, m)| build_clockwise(kappa, m).unwrap())
}

fn absolute() -> impl Strategy<Value = Topology> {
    (1u64..=2, 1u64..=3).prop_map(|(k, m)| build_absolute(k, m).unwrap())
}

proptest! {
    #[test]
    fn ring_metrics_agree(n in 1u64..500, a in 0u64..500, b in 0u64..500) {
        let (u, v) = (NodeId::new(a % n), NodeId::new(b % n));
        let cw = delta_clockwise(u, v, n).unwrap();
        let back = delta_clockwise(v, u, n).unwrap();
        prop_assert_eq!((cw + back) % n, 0);
        prop_assert_eq!(delta_absolute(u, v, n).unwrap(), cw.min(back));
        let differing = (0..64).filter(|i| (u.value() >> i) & 1 != (v.value() >> i) & 1).count();
        prop_assert_eq!(delta_xor(u, v), differing as u64);
        prop_assert_eq!(delta_xor(u, v), delta_xor(v, u));
    }

    #[test]
    fn clockwise_decomposition_rebuilds(kappa in 2u64..=5, m in 1u64..=4, r in any::<u64>()) {
        let n = m * kappa.pow(m as u32);
        let dist = m + r % n;
        let d = decompose_clockwise(dist, kappa, m).unwrap();
        prop_assert!(d.c < m);
        let value: u64 = d.digits.iter().rev().fold(0, |acc, &x| acc * kappa + x as u64);
        prop_assert_eq!(d.c + m + m * value, dist);
    }

    #[test]
    fn absolute_decomposition_is_congruent(k in 1u64..=3, m in 1u64..=3, r in any::<u64>()) {
        let radix = 2 * k + 1;
        let n = m * radix.pow(m as u32);
        let dist = r % n;
        let d = decompose_absolute(dist, k, m).unwrap();
        let value: i128 = d.digits.iter().rev().fold(0, |acc, &x| acc * radix as i128 + x as i128);
        let travel = d.c as i128 + m as i128 + m as i128 * value;
        prop_assert_eq!(travel.rem_euclid(n as i128), dist as i128);
        prop_assert!(d.digits.iter().all(|x| x.unsigned_abs() <= k));
    }

    #[test]
    fn xor_decomposition_rebuilds(lambda in prop::sample::select(vec![2u64, 4, 8]), m in 1u64..=3, x in 0u64..4096) {
        let d = decompose_xor(x, lambda, m);
        prop_assert_eq!(d.xor_value(), x);
    }

    #[test]
    fn greedy_reaches_target_on_clockwise(topo in clockwise(), a in any::<u64>(), b in any::<u64>()) {
        let n = topo.n();
        let (s, t) = (NodeId::new(a % n), NodeId::new(b % n));
        let r = route(&topo, &StrategyConfig::greedy(Metric::Clockwise), s, t).unwrap();
        prop_assert_eq!(r.end(), t);
        prop_assert!(r.validate(&topo).is_ok());
        let m = topo.params().levels().unwrap() as usize;
        prop_assert!(r.len() <= 3 * m - 2 || m == 1);
    }

    #[test]
    fn hypercubic_routes_are_real_paths(topo in absolute(), a in any::<u64>(), b in any::<u64>()) {
        let n = topo.n();
        let (s, t) = (NodeId::new(a % n), NodeId::new(b % n));
        let config = StrategyConfig::for_family(Routing::Hypercubic, topo.family());
        let r = route(&topo, &config, s, t).unwrap();
        prop_assert_eq!(r.end(), t);
        for hop in &r.hops {
            prop_assert!(topo.edge(hop.from, hop.to).is_some());
        }
        let m = topo.params().levels().unwrap() as usize;
        prop_assert!(r.len() < 2 * m);
    }

    #[test]
    fn congestion_free_is_seed_stable(topo in clockwise(), a in any::<u64>(), b in any::<u64>(), seed in any::<u64>()) {
        let n = topo.n();
        let (s, t) = (NodeId::new(a % n), NodeId::new(b % n));
        let config = StrategyConfig::for_family(Routing::CongestionFreeRandom, topo.family())
            .with_seed(seed);
        let first = route(&topo, &config, s, t).unwrap();
        prop_assert_eq!(&first, &route(&topo, &config, s, t).unwrap());
        prop_assert_eq!(first.end(), t);
    }

    #[test]
    fn xor_greedy_reaches_target(lambda in prop::sample::select(vec![2u64, 4]), m in 1u64..=3, a in any::<u64>(), b in any::<u64>()) {
        let topo = build_xor(lambda, m).unwrap();
        let n = topo.n();
        let (s, t) = (NodeId::new(a % n), NodeId::new(b % n));
        let r = route(&topo, &StrategyConfig::greedy(Metric::Xor), s, t).unwrap();
        prop_assert_eq!(r.end(), t);
        prop_assert!(r.len() <= (2 * m - 1).max(1) as usize);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Exit criteria. Every test prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` shows the
//! whole table.

use std::collections::{BTreeSet, VecDeque};

use papillon::analysis::{
    all_pairs_stats, analyze, classify_phases, compare_strategies, sampled_stats, span_contains,
    AnalysisOptions, Exact,
};
use papillon::routing::{decompose_balanced_absolute, decompose_clockwise, decompose_xor};
use papillon::{
    build_absolute, build_chord, build_clockwise, build_xor, delta_clockwise, route, EdgeKind,
    Metric, NodeId, Route, Strategy, StrategyConfig, Topology, TopologyParams,
};

const CLOCKWISE: [(u64, u64); 5] = [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3)];
const ABSOLUTE: [(u64, u64); 3] = [(1, 2), (2, 2), (1, 3)];

fn verdict(criterion: &str, failures: &[String], summary: &str) {
    if failures.is_empty() {
        println!("criterion {criterion}: PASS ({summary})");
    } else {
        println!("criterion {criterion}: FAIL ({summary})");
        for f in failures {
            println!("    {f}");
        }
    }
    assert!(
        failures.is_empty(),
        "criterion {criterion} failed: {failures:#?}"
    );
}

fn options() -> AnalysisOptions {
    AnalysisOptions::default().with_workers(4)
}

fn levels(topo: &Topology) -> u64 {
    topo.params().levels().expect("butterfly family")
}

fn ring_topologies() -> Vec<Topology> {
    CLOCKWISE
        .iter()
        .map(|&(kappa, m)| build_clockwise(kappa, m).unwrap())
        .chain(ABSOLUTE.iter().map(|&(k, m)| build_absolute(k, m).unwrap()))
        .collect()
}

fn all_routes(topo: &Topology, config: &StrategyConfig) -> Vec<Route> {
    let mut out = Vec::new();
    for s in topo.nodes() {
        for t in topo.nodes().filter(|&t| t != s) {
            out.push(route(topo, config, s, t).unwrap());
        }
    }
    out
}

fn greedy_bounds(topo: &Topology, failures: &mut Vec<String>, summary: &mut Vec<String>) {
    let m = levels(topo);
    let config = StrategyConfig::for_family(Strategy::Greedy, topo.family());
    let stats = all_pairs_stats(topo, &config, &options()).unwrap();
    let worst_bound = (3 * m - 2) as usize;
    let mean_bound = Exact::integer(2 * m as u128 - 1);
    summary.push(format!(
        "{} worst {} mean {}",
        topo.params(),
        stats.worst,
        stats.mean
    ));
    if stats.worst > worst_bound {
        failures.push(format!(
            "{}: worst {} > 3m-2 = {worst_bound}; longest {}",
            topo.params(),
            stats.worst,
            stats
                .longest
                .as_ref()
                .map(Route::path_string)
                .unwrap_or_default()
        ));
    }
    if stats.mean >= mean_bound {
        failures.push(format!(
            "{}: mean {} >= 2m-1 = {mean_bound}",
            topo.params(),
            stats.mean
        ));
    }
}

#[test]
fn criterion_1_clockwise_greedy_bounds() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    for (kappa, m) in CLOCKWISE {
        greedy_bounds(
            &build_clockwise(kappa, m).unwrap(),
            &mut failures,
            &mut summary,
        );
    }
    verdict("1", &failures, &summary.join("; "));
}

#[test]
fn criterion_2_absolute_greedy_bounds() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    for (k, m) in ABSOLUTE {
        let topo = build_absolute(k, m).unwrap();
        greedy_bounds(&topo, &mut failures, &mut summary);
        // every route ends at its target below the 4m cap
        let cap = 4 * m as usize;
        let config = StrategyConfig::greedy(Metric::Absolute);
        for r in all_routes(&topo, &config) {
            if r.end() != r.target || r.len() >= cap {
                failures.push(format!(
                    "{}: {} hit the cap",
                    topo.params(),
                    r.path_string()
                ));
            }
        }
    }
    verdict("2", &failures, &summary.join("; "));
}

#[test]
fn criterion_3_hypercubic_bounds() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    for topo in ring_topologies() {
        let m = levels(&topo);
        let config = StrategyConfig::for_family(Strategy::Hypercubic, topo.family());
        let stats = all_pairs_stats(&topo, &config, &options()).unwrap();
        summary.push(format!(
            "{} worst {} mean {}",
            topo.params(),
            stats.worst,
            stats.mean
        ));
        if stats.worst > (2 * m - 1) as usize {
            failures.push(format!("{}: worst {} > 2m-1", topo.params(), stats.worst));
        }
        if stats.mean > Exact::new(3 * m as u128, 2) {
            failures.push(format!("{}: mean {} > 1.5m", topo.params(), stats.mean));
        }
        for r in all_routes(&topo, &config) {
            for hop in &r.hops {
                // independent of Route::validate: look the link up directly
                let offset = (hop.to.value() + topo.n() - hop.from.value()) % topo.n();
                let real = topo.out_edges(hop.from).iter().any(|e| e.target == hop.to);
                if !real {
                    failures.push(format!(
                        "{}: {} -> {} (offset {offset}) is not an edge",
                        topo.params(),
                        hop.from,
                        hop.to
                    ));
                }
                if hop.kind == EdgeKind::Back {
                    failures.push(format!(
                        "{}: {} used a back edge",
                        topo.params(),
                        r.path_string()
                    ));
                }
                let edge = topo.edge(hop.from, hop.to).unwrap();
                if edge.kind == EdgeKind::Back && edge.merged.is_none() {
                    failures.push(format!(
                        "{}: {} used a back-only edge",
                        topo.params(),
                        r.path_string()
                    ));
                }
            }
            if r.end() != r.target {
                failures.push(format!(
                    "{}: {} misses its target",
                    topo.params(),
                    r.path_string()
                ));
            }
        }
    }
    verdict("3", &failures, &summary.join("; "));
}

#[test]
fn criterion_4_clockwise_congestion_ratio() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    let one = Exact::integer(1);
    for (kappa, m) in [(2, 2), (3, 2), (2, 3)] {
        let topo = build_clockwise(kappa, m).unwrap();
        let cf = StrategyConfig::for_family(Strategy::CongestionFreeRandom, topo.family())
            .with_strict_loop(true);
        let full = analyze(&topo, &cf, &options().with_self_pairs(true)).unwrap();
        let distinct = analyze(&topo, &cf, &options()).unwrap();
        let hyper = StrategyConfig::for_family(Strategy::Hypercubic, topo.family());
        let hyper_load = analyze(&topo, &hyper, &options()).unwrap().load;
        let show = |p: Option<Exact>| p.map_or("undefined".to_string(), |p| p.to_string());
        summary.push(format!(
            "{} cf pi {} (s != t only: {}), hypercubic pi {}",
            topo.params(),
            show(full.load.pi),
            show(distinct.load.pi),
            show(hyper_load.pi)
        ));
        if full.load.pi != Some(one) {
            failures.push(format!(
                "{}: congestion-free pi = {}",
                topo.params(),
                show(full.load.pi)
            ));
        }
        match hyper_load.pi {
            Some(p) if p > one => {}
            other => failures.push(format!(
                "{}: hypercubic pi = {}",
                topo.params(),
                show(other)
            )),
        }
    }
    verdict("4", &failures, &summary.join("; "));
}

#[test]
fn criterion_5_absolute_congestion_free() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    let one = Exact::integer(1);
    let show = |p: Option<Exact>| p.map_or("undefined".to_string(), |p| p.to_string());
    for (k, m) in [(1, 2), (1, 3)] {
        let topo = build_absolute(k, m).unwrap();
        let cap = (2 * m - 1) as usize;
        let random = StrategyConfig::for_family(Strategy::CongestionFreeRandom, topo.family())
            .with_strict_loop(true);
        let a = analyze(&topo, &random, &options().with_self_pairs(true)).unwrap();
        if a.stats.worst > cap {
            failures.push(format!(
                "{} random: worst {} > 2m-1",
                topo.params(),
                a.stats.worst
            ));
        }
        if a.load.pi != Some(one) {
            failures.push(format!(
                "{} random: pi = {}",
                topo.params(),
                show(a.load.pi)
            ));
        }
        let back_only = topo
            .edges()
            .filter(|(_, e)| e.kind == EdgeKind::Back)
            .count();
        if a.load.excluded.len() != back_only {
            failures.push(format!(
                "{}: {} excluded edges, expected {back_only}",
                topo.params(),
                a.load.excluded.len()
            ));
        }

        let det = StrategyConfig::for_family(Strategy::CongestionFreeDeterministic, topo.family())
            .with_strict_loop(true);
        let d = analyze(&topo, &det, &options().with_self_pairs(true)).unwrap();
        if d.stats.worst > cap {
            failures.push(format!(
                "{} deterministic: worst {} > 2m-1",
                topo.params(),
                d.stats.worst
            ));
        }
        for r in all_routes(&topo, &det) {
            if r.validate(&topo).is_err() || r.end() != r.target {
                failures.push(format!(
                    "{} deterministic: invalid route {}",
                    topo.params(),
                    r.path_string()
                ));
            }
        }
        let compared = if d.load.pi == Some(one) {
            "equals 1"
        } else {
            "differs from 1"
        };
        summary.push(format!(
            "{} random worst {} pi {}; deterministic worst {} pi {} ({compared}, reported only)",
            topo.params(),
            a.stats.worst,
            show(a.load.pi),
            d.stats.worst,
            show(d.load.pi)
        ));
    }
    verdict("5", &failures, &summary.join("; "));
}

#[test]
fn criterion_6_xor_greedy_bounds() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    for (lambda, m) in [(2, 2), (4, 2), (2, 3)] {
        let topo = build_xor(lambda, m).unwrap();
        let stats =
            all_pairs_stats(&topo, &StrategyConfig::greedy(Metric::Xor), &options()).unwrap();
        summary.push(format!(
            "{} worst {} mean {}",
            topo.params(),
            stats.worst,
            stats.mean
        ));
        if stats.worst > (2 * m - 1) as usize {
            failures.push(format!("{}: worst {} > 2m-1", topo.params(), stats.worst));
        }
        if stats.mean > Exact::new(3 * m as u128, 2) {
            failures.push(format!("{}: mean {} > 1.5m", topo.params(), stats.mean));
        }
    }
    verdict("6", &failures, &summary.join("; "));
}

#[test]
fn criterion_7_chord_bidirectional_worst_case() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    for b in [4u32, 6, 8] {
        let topo = build_chord(b, true).unwrap();
        let stats =
            all_pairs_stats(&topo, &StrategyConfig::greedy(Metric::Absolute), &options()).unwrap();
        summary.push(format!("b={b} worst {}", stats.worst));
        if stats.worst != (b / 2) as usize {
            failures.push(format!(
                "b={b}: worst {} != floor(b/2) = {}",
                stats.worst,
                b / 2
            ));
        }
    }
    verdict("7", &failures, &summary.join("; "));
}

// Plain breadth-first search, kept separate from the library's.
fn hop_distance(topo: &Topology, s: NodeId, t: NodeId) -> Option<usize> {
    let mut seen = vec![None; topo.n() as usize];
    seen[s.index()] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let d = seen[u.index()].unwrap();
        if u == t {
            return Some(d);
        }
        for e in topo.out_edges(u) {
            if seen[e.target.index()].is_none() {
                seen[e.target.index()] = Some(d + 1);
                queue.push_back(e.target);
            }
        }
    }
    None
}

#[test]
fn criterion_8_greedy_is_not_shortest_path() {
    let (mut failures, mut summary) = (Vec::new(), Vec::new());
    let mut witnesses = 0;
    for topo in ring_topologies() {
        let greedy = StrategyConfig::for_family(Strategy::Greedy, topo.family());
        let cmp = compare_strategies(&topo, &[greedy], &options()).unwrap();
        let detours = cmp.detours.expect("greedy entry present");
        if let Some(w) = &detours.first {
            witnesses += 1;
            let shortest = hop_distance(&topo, w.source, w.target).unwrap();
            if w.route.len() <= shortest || w.shortest_hops as usize != shortest {
                failures.push(format!(
                    "{}: witness {} -> {} does not check out",
                    topo.params(),
                    w.source,
                    w.target
                ));
            }
            if summary.is_empty() {
                summary.push(format!(
                    "{}: {} -> {} greedy {} hops vs shortest {} ({})",
                    topo.params(),
                    w.source,
                    w.target,
                    w.greedy_hops,
                    shortest,
                    w.route.path_string()
                ));
            }
        }
    }
    if witnesses == 0 {
        failures.push("no instance has a greedy route longer than the shortest path".into());
    }
    summary.push(format!("{witnesses} instances with a witness"));
    verdict("8", &failures, &summary.join("; "));
}

// SPAN(u) enumerated from its digit form: c + m·Σ_{i ≤ ℓ} radix^i d_i.
fn span_by_enumeration(topo: &Topology, u: NodeId) -> BTreeSet<u64> {
    let n = topo.n() as i64;
    let (m, digit_range): (i64, Vec<i64>) = match *topo.params() {
        TopologyParams::Clockwise { kappa, m } => (m as i64, (0..kappa as i64).collect()),
        TopologyParams::Absolute { k, m } => (m as i64, (-(k as i64)..=k as i64).collect()),
        _ => unreachable!(),
    };
    let radix = digit_range.len() as i64;
    let level = (m - 1) - (u.value() as i64 % m);
    let width = level as u32 + 1;
    let mut out = BTreeSet::new();
    for c in 0..m {
        for combo in 0..radix.pow(width) {
            let mut rest = combo;
            let (mut sum, mut place) = (0i64, 1i64);
            for _ in 0..width {
                sum += digit_range[(rest % radix) as usize] * place;
                rest /= radix;
                place *= radix;
            }
            let travel = c + m * sum;
            match topo.params() {
                TopologyParams::Clockwise { .. } => {
                    if travel < n {
                        out.insert((u.value() as i64 + travel).rem_euclid(n) as u64);
                    }
                }
                _ => {
                    // the absolute distance must equal |travel|
                    for v in [u.value() as i64 + travel, u.value() as i64 - travel] {
                        let v = v.rem_euclid(n);
                        let d = (v - u.value() as i64).rem_euclid(n);
                        if d.min(n - d) == travel.abs() {
                            out.insert(v as u64);
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn criterion_9_property_suites() {
    let mut failures = Vec::new();
    let mut summary = Vec::new();

    // SPAN closed form against enumeration, every instance with n <= 200
    let mut span_instances = 0;
    let mut small: Vec<Topology> = Vec::new();
    for kappa in 2..=7u64 {
        for m in 1..=5u64 {
            if let Ok(t) = Topology::build(
                TopologyParams::Clockwise { kappa, m },
                &papillon::BuildOptions { max_nodes: 200 },
            ) {
                small.push(t);
            }
        }
    }
    for k in 1..=4u64 {
        for m in 1..=4u64 {
            if let Ok(t) = Topology::build(
                TopologyParams::Absolute { k, m },
                &papillon::BuildOptions { max_nodes: 200 },
            ) {
                small.push(t);
            }
        }
    }
    for topo in &small {
        span_instances += 1;
        for u in topo.nodes() {
            let expected = span_by_enumeration(topo, u);
            let got: BTreeSet<u64> = topo
                .nodes()
                .filter(|&v| span_contains(topo, u, v).unwrap())
                .map(|v| v.value())
                .collect();
            if got != expected {
                failures.push(format!(
                    "{}: SPAN({u}) differs from enumeration",
                    topo.params()
                ));
            }
        }
    }
    summary.push(format!("SPAN agrees on {span_instances} instances"));

    // phase labels and caps on every greedy route of the criteria 1-2 matrix
    let mut phase_failures: Vec<String> = Vec::new();
    for topo in ring_topologies() {
        let config = StrategyConfig::for_family(Strategy::Greedy, topo.family());
        let routes = all_routes(&topo, &config);
        let bad: Vec<String> = routes
            .iter()
            .filter_map(|r| classify_phases(r, &topo).err().map(|e| e.to_string()))
            .collect();
        if !bad.is_empty() {
            phase_failures.push(format!(
                "{}: {} of {} routes break phase order or caps, e.g. {}",
                topo.params(),
                bad.len(),
                routes.len(),
                bad[0]
            ));
        }
    }
    summary.push(if phase_failures.is_empty() {
        "phases monotone within caps".to_string()
    } else {
        format!("phase property fails on {} instances", phase_failures.len())
    });
    failures.extend(phase_failures);

    // clockwise greedy strictly shrinks the clockwise distance
    for (kappa, m) in CLOCKWISE {
        let topo = build_clockwise(kappa, m).unwrap();
        for r in all_routes(&topo, &StrategyConfig::greedy(Metric::Clockwise)) {
            let n = topo.n();
            let dists: Vec<u64> = r
                .nodes()
                .iter()
                .map(|&u| delta_clockwise(u, r.target, n).unwrap())
                .collect();
            if dists.windows(2).any(|w| w[1] >= w[0]) {
                failures.push(format!(
                    "{}: {} does not shrink",
                    topo.params(),
                    r.path_string()
                ));
            }
        }
    }
    summary.push("clockwise greedy strictly decreasing".into());

    // decompositions rebuild their input exactly
    for (kappa, m) in [(2u64, 2u64), (3, 2), (2, 3), (4, 3)] {
        let n = m * kappa.pow(m as u32);
        for dist in m..n + m {
            let d = decompose_clockwise(dist, kappa, m).unwrap();
            let mut value = 0u64;
            for (i, &digit) in d.digits.iter().enumerate() {
                value += digit as u64 * kappa.pow(i as u32);
            }
            if d.c + m + m * value != dist || d.digits.iter().any(|&x| x < 0 || x >= kappa as i64) {
                failures.push(format!("clockwise({kappa},{m}) {dist} -> {:?}", d));
            }
        }
    }
    for (k, m) in [(1u64, 2u64), (2, 2), (1, 3)] {
        let radix = 2 * k + 1;
        let n = m * radix.pow(m as u32);
        for dist in (0..=n).step_by(m as usize) {
            let d = decompose_balanced_absolute(dist, k, m, n).unwrap();
            let mut value = 0i128;
            for (i, &digit) in d.digits.iter().enumerate() {
                value += digit as i128 * (radix as i128).pow(i as u32);
            }
            let travel = m as i128 + m as i128 * value;
            if travel.rem_euclid(n as i128) != dist as i128 % n as i128
                || d.digits.iter().any(|&x| x.unsigned_abs() > k)
            {
                failures.push(format!("absolute({k},{m}) {dist} -> {:?}", d));
            }
        }
    }
    for (lambda, m) in [(2u64, 3u64), (4, 2)] {
        for x in 0..(lambda.pow(m as u32) * 4) {
            let d = decompose_xor(x, lambda, m);
            let mut value = d.c;
            for (i, &digit) in d.digits.iter().enumerate() {
                value += digit as u64 * lambda.pow(i as u32);
            }
            if value != x {
                failures.push(format!("xor({lambda},{m}) {x} -> {:?}", d));
            }
        }
    }
    summary.push("decompositions round-trip".into());

    // randomized results: same seed same answer, any worker count
    let topo = build_clockwise(3, 2).unwrap();
    let cf = StrategyConfig::for_family(Strategy::CongestionFreeRandom, topo.family())
        .with_strict_loop(true)
        .with_seed(42);
    let one = analyze(&topo, &cf, &AnalysisOptions::default().with_workers(1)).unwrap();
    let many = analyze(&topo, &cf, &AnalysisOptions::default().with_workers(7)).unwrap();
    if one != many {
        failures.push("exhaustive analysis depends on worker count".into());
    }
    let s1 = sampled_stats(
        &topo,
        &cf,
        500,
        7,
        &AnalysisOptions::default().with_workers(1),
    )
    .unwrap();
    let s2 = sampled_stats(
        &topo,
        &cf,
        500,
        7,
        &AnalysisOptions::default().with_workers(5),
    )
    .unwrap();
    if s1 != s2 {
        failures.push("sampled statistics depend on worker count".into());
    }
    for (s, t) in [(0u64, 17u64), (5, 3), (10, 11)] {
        let (s, t) = (NodeId::new(s), NodeId::new(t));
        let a = route(&topo, &cf, s, t).unwrap();
        let b = route(&topo, &cf, s, t).unwrap();
        if a != b {
            failures.push(format!("route {s} -> {t} not reproducible under one seed"));
        }
    }
    summary.push("randomized results reproducible".into());

    verdict("9", &failures, &summary.join("; "));
}

use bicircular::counting::{
    build_deletion_sequence, enumerate_bases, exact_partition_function,
};
use bicircular::generators::{complete, random_connected};
use bicircular::{
    cycle_orientation_sign, is_basis, occurring_bad_events, parse_edge_list, sample_basis,
    sample_gibbs, sample_lerw, sample_parallel, write_edge_list, ArrowConfig, DirectedCycle,
    EventRule, GibbsParams, Graph, ResamplingTable, Variant,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n, any::<u64>()).prop_flat_map(|(n, seed)| {
        let max_m = n * (n - 1) / 2;
        (n..=max_m).prop_map(move |m| {
            random_connected(n, m, &mut ChaCha8Rng::seed_from_u64(seed))
        })
    })
}

/// Every simple cycle of `g` with at least 3 vertices, one orientation
/// each, starting at its lowest vertex.
fn simple_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > start && !path.contains(&w) {
                path.push(w);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

#[test]
fn signs_are_antisymmetric_on_every_cycle_of_k8() {
    // Signs depend only on vertex ids and relative edge order, which every
    // graph on at most 8 vertices shares with K8.
    let g = complete(8);
    let cycles = simple_cycles(&g);
    assert_eq!(cycles.len(), 8018);
    for c in cycles {
        let fwd = DirectedCycle::new(&g, &c).unwrap();
        let s = cycle_orientation_sign(&g, &fwd).unwrap();
        assert_eq!(s, -cycle_orientation_sign(&g, &fwd.reversed()).unwrap(), "{c:?}");
        for r in 1..c.len() {
            let mut rot = c.clone();
            rot.rotate_left(r);
            let rc = DirectedCycle::new(&g, &rot).unwrap();
            assert_eq!(cycle_orientation_sign(&g, &rc).unwrap(), s);
        }
    }
}

fn components_match(g: &Graph, r: &[usize]) -> bool {
    // breadth-first component sizes, counted independently of the library
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for &e in r {
        let (u, v) = g.edge(e);
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let (mut verts, mut degree_sum) = (0, 0);
        let mut queue = vec![s];
        seen[s] = true;
        while let Some(u) = queue.pop() {
            verts += 1;
            degree_sum += adj[u].len();
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push(w);
                }
            }
        }
        if degree_sum != 2 * verts {
            return false;
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn is_basis_matches_component_counts(g in graph_strategy(8), mask in any::<u64>()) {
        let r: Vec<usize> = (0..g.m()).filter(|e| mask >> e & 1 == 1).collect();
        let expected = r.len() == g.n() && components_match(&g, &r);
        prop_assert_eq!(is_basis(&g, &r), expected);
    }

    #[test]
    fn edge_list_round_trip(g in graph_strategy(9)) {
        let c = g.canonicalized();
        prop_assert_eq!(parse_edge_list(&write_edge_list(&c)).unwrap(), c);
    }

    #[test]
    fn bad_events_are_vertex_disjoint(g in graph_strategy(9), picks in prop::collection::vec(any::<usize>(), 9)) {
        let heads: Vec<usize> = (0..g.n()).map(|v| g.neighbors(v)[picks[v] % g.degree(v)]).collect();
        let sigma = ArrowConfig::new(&g, heads).unwrap();
        let mut table = ResamplingTable::new(picks[0] as u64, g.n());
        let params = GibbsParams::new(0.5, 0.5).unwrap();
        for events in [
            occurring_bad_events(&g, &sigma, EventRule::Orientation),
            occurring_bad_events(&g, &sigma, EventRule::Gibbs(params, &mut table)),
        ] {
            let mut used = vec![false; g.n()];
            for e in &events {
                for &v in e.vertices() {
                    prop_assert!(!used[v]);
                    used[v] = true;
                }
            }
        }
    }

    #[test]
    fn engines_agree_on_shared_tables(g in graph_strategy(8), seed in any::<u64>()) {
        let mut a = ResamplingTable::new(seed, g.n());
        let mut b = ResamplingTable::new(seed, g.n());
        let p = sample_parallel(&g, &mut a, Variant::Orientation).unwrap();
        let s = sample_lerw(&g, &mut b, Variant::Orientation).unwrap();
        prop_assert_eq!(&p, &s);
        prop_assert_eq!(a.frontier(), b.frontier());
        prop_assert!(is_basis(&g, s.basis().unwrap().edge_ids()));
        prop_assert_eq!(s.steps, g.n() as u64 + s.resampled);
    }

    #[test]
    fn gibbs_outputs_have_no_rejected_two_cycles(g in graph_strategy(10), seed in any::<u64>(), gamma in 0.05f64..=1.0) {
        let r = sample_gibbs(&g, GibbsParams::new(0.0, gamma).unwrap(), seed).unwrap();
        prop_assert_eq!(r.arrows.cycle_counts().0, 0);
        let kept = sample_gibbs(&g, GibbsParams::new(1.0, 1.0).unwrap(), seed).unwrap();
        prop_assert_eq!(kept.resampled, 0);
    }

    #[test]
    fn sampling_is_deterministic(g in graph_strategy(10), seed in any::<u64>()) {
        prop_assert_eq!(sample_basis(&g, seed).unwrap(), sample_basis(&g, seed).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn partition_function_identities(g in graph_strategy(7)) {
        let z11 = exact_partition_function(&g, 1.0, 1.0).unwrap();
        prop_assert_eq!(z11, g.degree_product());
        let z = exact_partition_function(&g, 0.0, 0.5).unwrap();
        prop_assert_eq!(z, enumerate_bases(&g).unwrap().len() as f64);
    }

    #[test]
    fn cycle_counts_are_bounded(g in graph_strategy(7), picks in prop::collection::vec(any::<usize>(), 7)) {
        let heads: Vec<usize> = (0..g.n()).map(|v| g.neighbors(v)[picks[v] % g.degree(v)]).collect();
        let (two, long) = ArrowConfig::new(&g, heads).unwrap().cycle_counts();
        prop_assert!(two <= g.n() / 2 && long <= g.n() / 3);
        prop_assert!(two + long >= 1);
    }

    #[test]
    fn deletion_ratios_respect_exchange_bound(g in graph_strategy(7)) {
        let seq = build_deletion_sequence(&g).unwrap();
        prop_assert!(is_basis(&g, &seq.base_edges));
        let mut product = 1.0;
        for k in 0..seq.removal_order.len() {
            let (gi, _) = g.spanning_subgraph(&seq.prefix_edges(&g, k));
            let (gj, _) = g.spanning_subgraph(&seq.prefix_edges(&g, k + 1));
            let ni = enumerate_bases(&gi).unwrap().len() as f64;
            let nj = enumerate_bases(&gj).unwrap().len() as f64;
            prop_assert!(ni <= (g.n() as f64 + 1.0) * nj);
            prop_assert!(nj / ni >= 1.0 / (2.0 * g.n() as f64));
            product *= nj / ni;
        }
        let total = enumerate_bases(&g).unwrap().len() as f64;
        prop_assert!((product * total - 1.0).abs() < 1e-9);
    }
}

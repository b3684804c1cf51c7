use pathcert::canonical::{canonicalize, random_partition};
use pathcert::discharge::{apply_rules, decompose_blocks, q, RuleSet};
use pathcert::graph::{gen_random_regular, read_edge_list, write_edge_list, Graph};
use pathcert::moves::{
    apply_move, eliminate_singletons, find_basic_move, find_compound_move, Focus,
};
use pathcert::oracle::{exact_pi_p, max_linear_forest, OracleConfig};
use pathcert::partition::{
    classify_edges, classify_vertices, validate_partition, PartitionJson, VClass,
};
use proptest::prelude::*;

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..n * 3).prop_map(move |pairs| {
            let edges: std::collections::BTreeSet<(usize, usize)> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

fn regular() -> impl Strategy<Value = (Graph, u64)> {
    (5usize..=6, 7usize..40, any::<u64>()).prop_filter_map("nd odd", |(d, n, seed)| {
        gen_random_regular(n, d, seed).ok().map(|g| (g, seed))
    })
}

fn class() -> impl Strategy<Value = VClass> {
    prop_oneof![
        Just(VClass::V2a),
        Just(VClass::V2b),
        Just(VClass::V3),
        Just(VClass::V4),
        Just(VClass::V5)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in any_graph(30)) {
        let text = write_edge_list(&g);
        prop_assert_eq!(read_edge_list(&text).unwrap(), g.clone());
        prop_assert_eq!(write_edge_list(&read_edge_list(&text).unwrap()), text);
    }

    #[test]
    fn partition_json_round_trip((g, seed) in regular()) {
        let p = random_partition(&g, seed);
        let j = serde_json::to_string(&PartitionJson::from_partition(&p)).unwrap();
        let back: PartitionJson = serde_json::from_str(&j).unwrap();
        let q = back.into_partition(g.n());
        prop_assert!(validate_partition(&g, &q).is_empty());
        prop_assert_eq!(q.normalized(), p.normalized());
        prop_assert_eq!(p.normalized().normalized(), p.normalized());
    }

    #[test]
    fn moves_are_valid_and_improving((g, seed) in regular()) {
        let mut p = random_partition(&g, seed);
        loop {
            let m = match find_basic_move(&g, &p) {
                Some(m) => Some(m),
                None => eliminate_singletons(&g, &p).unwrap(),
            };
            let Some(m) = m else { break };
            let next = apply_move(&g, &p, &m).unwrap();
            prop_assert!(validate_partition(&g, &next).is_empty());
            prop_assert!(next.potential() < p.potential());
            prop_assert_eq!(next.potential(), m.phi_after);
            p = next;
        }
    }

    #[test]
    fn depth_one_matches_basic((g, seed) in regular()) {
        let p = random_partition(&g, seed);
        if let Ok(ec) = classify_edges(&g, &p) {
            let vc = classify_vertices(&g, &p, &ec);
            let c = find_compound_move(&g, &p, &ec, &vc, 1, &Focus::All);
            prop_assert_eq!(c.is_some(), find_basic_move(&g, &p).is_some());
        }
    }

    #[test]
    fn ledger_conserves_points((g, seed) in regular()) {
        let r = canonicalize(&g, random_partition(&g, seed), 2).unwrap();
        let p = &r.final_partition;
        let ec = classify_edges(&g, p).unwrap();
        let vc = classify_vertices(&g, p, &ec);
        for rs in [RuleSet::D5, RuleSet::D6] {
            let l = apply_rules(&g, p, &ec, &vc, rs).unwrap();
            prop_assert_eq!(l.total(), q(g.n() as i64, 1));
            for t in &l.transfers {
                prop_assert!(t.amount > q(0, 1));
            }
        }
    }

    #[test]
    fn blocks_cover_v2_runs(inner in proptest::collection::vec(class(), 0..20)) {
        let mut seq = vec![VClass::V1];
        seq.extend(inner);
        seq.push(VClass::V1);
        if let Ok(blocks) = decompose_blocks(&seq) {
            let xs: Vec<usize> = blocks.iter().flat_map(|b| b.x.clone()).collect();
            let v2: Vec<usize> = (0..seq.len()).filter(|&i| seq[i].is_v2()).collect();
            prop_assert_eq!(xs, v2);
            let mut last = 0;
            for b in &blocks {
                prop_assert!(!b.x.is_empty());
                prop_assert!(b.x[0] > last);
                last = *b.x.iter().chain(&b.p).max().unwrap();
                prop_assert!(b.p.iter().all(|&i| seq[i] != VClass::V5 && !seq[i].is_v2()));
                prop_assert!((1..=4).contains(&b.kind));
            }
            for b in &blocks[..blocks.len().saturating_sub(1)] {
                let tail: Vec<VClass> = b.p.iter().map(|&i| seq[i]).collect();
                prop_assert!(tail == [VClass::V3] || tail == [VClass::V4, VClass::V4]);
            }
        }
    }

    #[test]
    fn oracles_agree(g in any_graph(9)) {
        let r = exact_pi_p(&g, &OracleConfig::default()).unwrap();
        let f = max_linear_forest(&g, u64::MAX).unwrap();
        prop_assert_eq!(r.pi_p, g.n() - f.edges);
        prop_assert!(validate_partition(&g, &r.witness).is_empty());
        prop_assert_eq!(r.witness.len(), r.pi_p);
        if let Ok(h) = canonicalize(&g, random_partition(&g, 0), 3) {
            prop_assert!(h.components >= r.pi_p);
        }
    }
}

use pathcert::canonical::{
    canonicalize, initial_partition, random_partition, solve, SolveOptions, DEFAULT_DEPTH,
};
use pathcert::discharge::{q, RuleSet};
use pathcert::graph::{
    contains_k6, gen_disjoint_cliques, gen_hub_blobs, gen_random_regular, Graph,
};
use pathcert::moves::{find_basic_move, Focus};
use pathcert::partition::{
    classify_edges, classify_vertices, validate_partition, EdgeClass, Kind, VClass,
};

fn hub_union(seed: u64) -> Graph {
    let g = gen_hub_blobs(6, 8 + (seed % 4) as usize, seed).unwrap();
    g.disjoint_union(&gen_hub_blobs(6, 9, seed + 100).unwrap())
}

#[test]
fn path_ends_and_internals_d6() {
    let mut paths = 0;
    for seed in 0..40 {
        let g = hub_union(seed);
        let s = solve(
            &g,
            &SolveOptions {
                seed,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(s.certificate.verdict, "{}", s.certificate.summary());
        for c in s.report.final_partition.components() {
            match c.kind {
                Kind::Path => {
                    paths += 1;
                    let ends = [c.vertices[0], *c.vertices.last().unwrap()];
                    assert_eq!(s.ledger.sum_over(ends), q(26, 3));
                    let inner = s
                        .ledger
                        .sum_over(c.vertices[1..c.len() - 1].iter().copied());
                    assert!(inner >= q(-5, 3));
                }
                Kind::Cycle => assert!(s.ledger.sum_over(c.vertices.iter().copied()) >= q(7, 1)),
                Kind::Singleton => panic!("singleton survived"),
            }
        }
    }
    assert!(paths >= 40);
}

#[test]
fn path_ends_d5() {
    let mut paths = 0;
    for seed in 0..60u64 {
        let g = gen_random_regular(16 + 2 * (seed as usize % 20), 5, seed).unwrap();
        if contains_k6(&g).is_some() {
            continue;
        }
        let s = solve(
            &g,
            &SolveOptions {
                seed,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(s.ruleset, RuleSet::D5);
        assert!(s.certificate.verdict);
        assert!(s.audit.passed(), "{:?}", s.audit.violations);
        for c in s
            .report
            .final_partition
            .components()
            .iter()
            .filter(|c| c.kind == Kind::Path)
        {
            paths += 1;
            let ends = [c.vertices[0], *c.vertices.last().unwrap()];
            assert_eq!(s.ledger.sum_over(ends), q(22, 3));
        }
    }
    assert!(paths > 0);
}

#[test]
fn canonical_consequences_hold() {
    for seed in 0..30 {
        let g = if seed % 2 == 0 {
            hub_union(seed)
        } else {
            gen_random_regular(60, 6, seed).unwrap()
        };
        let start = random_partition(&g, seed);
        let before = start.len();
        let r = canonicalize(&g, start, DEFAULT_DEPTH).unwrap();
        let p = &r.final_partition;
        assert!(validate_partition(&g, p).is_empty());
        assert!(p.len() <= before);
        assert_eq!(p.singleton_count(), 0);
        let ec = classify_edges(&g, p).expect("no edge between two cycles");
        let vc = classify_vertices(&g, p, &ec);
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if ec.labels()[i] == EdgeClass::Free {
                assert!(
                    !(vc.class[u] == VClass::V1 && vc.class[v] == VClass::V1),
                    "free V1 edge {u}-{v}"
                );
            }
        }
        assert!(find_basic_move(&g, p).is_none());
        assert!(
            pathcert::moves::find_compound_move(&g, p, &ec, &vc, DEFAULT_DEPTH, &Focus::All)
                .is_none()
        );
        let again = canonicalize(&g, p.clone(), DEFAULT_DEPTH).unwrap();
        assert_eq!(again.trace_len, 0);
        assert!(r
            .trace
            .windows(2)
            .all(|w| w[0].phi_after == w[1].phi_before));
        assert!(r.trace.iter().all(|t| t.phi_after < t.phi_before));
    }
}

#[test]
fn cliques_are_tight() {
    for k in [1, 3, 10] {
        let g = gen_disjoint_cliques(6, k, 7);
        let r = canonicalize(&g, initial_partition(&g, 1), DEFAULT_DEPTH).unwrap();
        assert_eq!(r.components, k);
        assert_eq!(r.cycles, k);
        let s = solve(&g, &SolveOptions::default()).unwrap();
        assert!(s.certificate.totals.iter().all(|t| t.total == q(7, 1)));
        assert_eq!(s.certificate.components, g.n() / 7);
    }
}

#[test]
fn solve_is_deterministic() {
    let g = gen_random_regular(140, 6, 4).unwrap();
    let a = solve(
        &g,
        &SolveOptions {
            seed: 3,
            ..Default::default()
        },
    )
    .unwrap();
    let b = solve(
        &g,
        &SolveOptions {
            seed: 3,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(a.report.final_partition, b.report.final_partition);
    assert_eq!(a.report.trace, b.report.trace);
    assert_eq!(a.certificate, b.certificate);
}

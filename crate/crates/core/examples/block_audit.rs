//! Audit vertex and block floors on graphs whose canonical partitions keep
//! many paths: disjoint unions of hub-of-blobs graphs.
//!
//! cargo run --release --example block_audit -- [instances]

use pathcert::canonical::{solve, SolveOptions};
use pathcert::discharge::{audit_with_reading, Kind4Reading};
use pathcert::graph::{gen_hub_blobs, gen_pendant_cliques, Graph};
use pathcert::partition::{classify_edges, classify_vertices};
use std::collections::BTreeMap;

fn instance(seed: u64) -> Graph {
    if seed % 2 == 1 {
        return gen_pendant_cliques(6, 1 + (seed % 7) as usize, seed).unwrap();
    }
    let mut g = gen_hub_blobs(6, 7 + (seed % 6) as usize, seed).unwrap();
    for k in 1..=(seed % 4) {
        g = g.disjoint_union(
            &gen_hub_blobs(6, 7 + ((seed + k) % 5) as usize, seed * 31 + k).unwrap(),
        );
    }
    g
}

fn main() {
    let count: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(200);
    let (mut blocks, mut failed, mut escalated) = (0, 0, 0);
    let mut by_check = BTreeMap::new();
    let mut broad = 0;
    let mut rules = BTreeMap::new();
    let mut kinds = BTreeMap::new();
    for seed in 0..count {
        let g = instance(seed);
        let s = solve(
            &g,
            &SolveOptions {
                seed,
                ..Default::default()
            },
        )
        .unwrap();
        if !s.certificate.verdict {
            failed += 1;
            println!("seed {seed}: {}", s.certificate.summary());
        }
        escalated += s.escalated as usize;
        blocks += s.audit.blocks;
        for v in &s.audit.violations {
            *by_check.entry(format!("{:?}", v.check)).or_insert(0) += 1;
            if by_check[&format!("{:?}", v.check)] <= 3 {
                println!("seed {seed}: {v:?}");
            }
        }
        for (r, k) in &s.certificate.rule_counts {
            *rules.entry(r.clone()).or_insert(0) += k;
        }
        let p = &s.report.final_partition;
        let ec = classify_edges(&g, p).unwrap();
        let vc = classify_vertices(&g, p, &ec);
        for c in p.components() {
            let classes: Vec<_> = c.vertices.iter().map(|&v| vc.class[v]).collect();
            if let Ok(bs) = pathcert::discharge::decompose_blocks(&classes) {
                for b in bs {
                    *kinds.entry(b.kind).or_insert(0) += 1;
                }
            }
        }
        broad += audit_with_reading(&g, p, &vc, &s.ledger, Kind4Reading::Broad)
            .violations
            .len();
    }
    println!("{count} instances, {blocks} blocks, {failed} certificate failures, {escalated} escalations");
    println!("rule transfers: {rules:?}; block kinds: {kinds:?}");
    println!("violations (narrow): {by_check:?}; broad reading: {broad}");
}

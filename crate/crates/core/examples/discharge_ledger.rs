//! Run the transfer rules by hand on a small partition and print the
//! ledger: a triangle fed by twelve three-vertex paths.

use pathcert::discharge::{apply_rules, certify, fmt_q, RuleSet};
use pathcert::graph::Graph;
use pathcert::partition::{classify_edges, classify_vertices, PathPartition};

fn main() {
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    let mut paths = Vec::new();
    for i in 0..12 {
        let b = 3 + 3 * i;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b + 1, i % 3)]);
        paths.push(vec![b, b + 1, b + 2]);
    }
    let g = Graph::new(39, edges).unwrap();
    let p = PathPartition::from_sequences(39, paths, vec![vec![0, 1, 2]]);
    let ec = classify_edges(&g, &p).unwrap();
    let vc = classify_vertices(&g, &p, &ec);
    let ledger = apply_rules(&g, &p, &ec, &vc, RuleSet::D6).unwrap();
    for t in ledger.transfers.iter().take(4) {
        println!(
            "{:?}: {} -> {} amount {}",
            t.rule,
            t.from,
            t.to,
            fmt_q(&t.amount)
        );
    }
    println!(
        "... {} transfers, ledger total {}",
        ledger.transfers.len(),
        fmt_q(&ledger.total())
    );
    let cert = certify(&g, &p, &ledger, RuleSet::D6);
    for t in &cert.totals {
        if t.size == 3 && t.component == p.comp_of(0) {
            println!("triangle total {}", fmt_q(&t.total));
        }
    }
}

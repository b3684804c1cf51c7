//! Disjoint copies of K7 meet the n/7 bound exactly: every component ends
//! as a 7-cycle holding exactly 7 points.

use pathcert::canonical::{solve, SolveOptions};
use pathcert::discharge::q;
use pathcert::graph::gen_disjoint_cliques;

fn main() {
    for k in [1, 5, 20, 50] {
        let g = gen_disjoint_cliques(6, k, k as u64);
        let s = solve(&g, &SolveOptions::default()).expect("6-regular input");
        let exact = s.certificate.totals.iter().all(|t| t.total == q(7, 1));
        println!(
            "k={k:<3} n={:<4} components={:<3} n/7={:<3} all totals 7: {exact}",
            g.n(),
            s.certificate.components,
            g.n() / 7
        );
    }
}

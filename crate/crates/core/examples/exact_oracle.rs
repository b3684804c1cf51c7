//! Exact path partition numbers of small 6-regular graphs, with the
//! heuristic count and the independent linear-forest check beside them.

use pathcert::canonical::{canonicalize, initial_partition, DEFAULT_DEPTH};
use pathcert::graph::{gen_disjoint_cliques, gen_random_regular, petersen, Graph};
use pathcert::oracle::{exact_pi_p, max_linear_forest, OracleConfig};

fn show(name: &str, g: &Graph) {
    let r = exact_pi_p(g, &OracleConfig::default()).unwrap();
    let f = max_linear_forest(g, u64::MAX).unwrap();
    let h = canonicalize(g, initial_partition(g, 0), DEFAULT_DEPTH).unwrap();
    println!(
        "{name:<12} n={:<3} pi_p={} forest={} heuristic={} witness={:?}",
        g.n(),
        r.pi_p,
        g.n() - f.edges,
        h.components,
        r.witness
            .components()
            .iter()
            .map(|c| &c.vertices)
            .collect::<Vec<_>>()
    );
}

fn main() {
    show("K7", &gen_disjoint_cliques(6, 1, 0));
    show("2 x K7", &gen_disjoint_cliques(6, 2, 0));
    show("Petersen", &petersen());
    for seed in 0..3 {
        show(
            &format!("random/{seed}"),
            &gen_random_regular(10, 6, seed).unwrap(),
        );
    }
}

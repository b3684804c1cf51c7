//! Degree five: random K6-free 5-regular graphs against the 3n/19 bound.

use pathcert::canonical::{solve, SolveOptions};
use pathcert::graph::{contains_k6, gen_random_regular};

fn main() {
    for (i, n) in [20, 60, 150, 500].into_iter().enumerate() {
        let mut seed = i as u64;
        let g = loop {
            let g = gen_random_regular(n, 5, seed).expect("n even");
            if contains_k6(&g).is_none() {
                break g;
            }
            seed += 1000;
        };
        let s = solve(
            &g,
            &SolveOptions {
                seed,
                ..Default::default()
            },
        )
        .expect("K6-free");
        println!("n={n:<4} seed={seed:<5} {}", s.certificate.summary());
    }
}

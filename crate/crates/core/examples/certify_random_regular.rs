//! Solve seeded random regular graphs and print one line per instance.
//!
//! cargo run --release --example certify_random_regular -- [d] [n...]

use pathcert::canonical::{solve, SolveOptions};
use pathcert::graph::gen_random_regular;
use std::time::Instant;

fn main() {
    let args: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let d = args.first().copied().unwrap_or(6);
    let sizes = if args.len() > 1 {
        args[1..].to_vec()
    } else {
        vec![14, 70, 350, 1000]
    };
    for n in sizes {
        for seed in 0..3 {
            let g = match gen_random_regular(n, d, seed) {
                Ok(g) => g,
                Err(e) => {
                    println!("n={n} seed={seed}: {e}");
                    continue;
                }
            };
            let t = Instant::now();
            match solve(
                &g,
                &SolveOptions {
                    seed,
                    ..Default::default()
                },
            ) {
                Ok(s) => println!(
                    "n={n:<5} seed={seed} {} audit={} moves={} {:.2?}",
                    s.certificate.summary(),
                    s.audit.violations.len(),
                    s.report.trace_len,
                    t.elapsed()
                ),
                Err(e) => println!("n={n} seed={seed}: {e}"),
            }
        }
    }
}

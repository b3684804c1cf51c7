//! Canonicalize from a scrambled partition and print every accepted move
//! with the potential before and after.

use pathcert::canonical::{canonicalize, random_partition, DEFAULT_DEPTH};
use pathcert::graph::gen_random_regular;

fn main() {
    let g = gen_random_regular(40, 6, 11).unwrap();
    let p = random_partition(&g, 3);
    println!("start: {} components, potential {}", p.len(), p.potential());
    let r = canonicalize(&g, p, DEFAULT_DEPTH).unwrap();
    for t in &r.trace {
        let prims: Vec<String> = t.primitives.iter().map(|x| x.to_string()).collect();
        println!(
            "{:>3} {:<9} {} -> {}  {}",
            t.step,
            t.kind,
            t.phi_before,
            t.phi_after,
            prims.join(" ")
        );
    }
    println!("end: {} components, {} cycles", r.components, r.cycles);
}

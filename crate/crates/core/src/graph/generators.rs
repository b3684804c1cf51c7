//! Instance generators. All randomness goes through a seeded ChaCha stream,
//! so equal seeds give bit-identical graphs.

use super::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("n*d = {n}*{d} is odd, no {d}-regular graph exists")]
    OddDegreeSum { n: usize, d: usize },
    #[error("n = {n} is too small for degree {d} (need n >= d+1)")]
    TooSmall { n: usize, d: usize },
    #[error("gave up after {0} restarts")]
    BudgetExhausted(usize),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

fn shuffled_labels(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// `k` vertex-disjoint copies of the complete graph on `d+1` vertices,
/// with labels shuffled by `seed`.
pub fn gen_disjoint_cliques(d: usize, k: usize, seed: u64) -> Graph {
    let s = d + 1;
    let n = k * s;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perm = shuffled_labels(n, &mut rng);
    let mut edges = Vec::with_capacity(k * s * d / 2);
    for c in 0..k {
        for i in 0..s {
            for j in i + 1..s {
                edges.push((perm[c * s + i], perm[c * s + j]));
            }
        }
    }
    Graph::new(n, edges).expect("cliques are simple")
}

pub fn gen_random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    gen_random_regular_with_budget(n, d, seed, 10 * n.max(1))
}

/// Random simple `d`-regular graph on `n` vertices.
///
/// Stubs are paired one at a time, each new pair drawn uniformly among the
/// remaining stubs and rejected if it would create a loop or a repeated
/// edge. When no admissible pair is left the whole pairing restarts.
/// Dense requests are served by sampling the complement.
pub fn gen_random_regular_with_budget(
    n: usize,
    d: usize,
    seed: u64,
    restarts: usize,
) -> Result<Graph, GenError> {
    if (n * d) % 2 == 1 {
        return Err(GenError::OddDegreeSum { n, d });
    }
    if n < d + 1 {
        return Err(GenError::TooSmall { n, d });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dc = n - 1 - d;
    if dc < d {
        let h = pairing(n, dc, &mut rng, restarts)?;
        return Ok(h.complement());
    }
    pairing(n, d, &mut rng, restarts)
}

fn pairing(n: usize, d: usize, rng: &mut ChaCha8Rng, restarts: usize) -> Result<Graph, GenError> {
    if d == 0 {
        return Ok(Graph::empty(n));
    }
    for _ in 0..restarts.max(1) {
        if let Some(edges) = try_pairing(n, d, rng) {
            return Ok(Graph::new(n, edges).expect("pairing produced a simple graph"));
        }
    }
    Err(GenError::BudgetExhausted(restarts))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let mut edges = Vec::with_capacity(n * d / 2);
    let ok = |adj: &Vec<Vec<usize>>, u: usize, v: usize| u != v && !adj[u].contains(&v);
    while !stubs.is_empty() {
        let mut found = None;
        for _ in 0..64 {
            let i = rng.gen_range(0..stubs.len());
            let j = rng.gen_range(0..stubs.len());
            if i != j && ok(&adj, stubs[i], stubs[j]) {
                found = Some((i, j));
                break;
            }
        }
        if found.is_none() {
            let mut all = Vec::new();
            for i in 0..stubs.len() {
                for j in i + 1..stubs.len() {
                    if ok(&adj, stubs[i], stubs[j]) {
                        all.push((i, j));
                    }
                }
            }
            if all.is_empty() {
                return None;
            }
            found = Some(all[rng.gen_range(0..all.len())]);
        }
        let (i, j) = found?;
        let (u, v) = (stubs[i], stubs[j]);
        adj[u].push(v);
        adj[v].push(u);
        edges.push((u, v));
        let (hi, lo) = (i.max(j), i.min(j));
        stubs.swap_remove(hi);
        stubs.swap_remove(lo);
    }
    Some(edges)
}

/// Circulant graph: `i ~ i ± s (mod n)` for every offset `s`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph, GenError> {
    let mut edges = Vec::new();
    for &s in offsets {
        if s == 0 || s > n / 2 {
            return Err(GenError::Invalid(format!("offset {s} for n = {n}")));
        }
        for i in 0..n {
            let j = (i + s) % n;
            let e = (i.min(j), i.max(j));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    Graph::new(n, edges).map_err(|e| GenError::Invalid(e.to_string()))
}

/// `K_{d,d}` with sides `0..d` and `d..2d`.
pub fn complete_bipartite(d: usize) -> Graph {
    let edges = (0..d).flat_map(|u| (d..2 * d).map(move |v| (u, v)));
    Graph::new(2 * d, edges).expect("bipartite graph is simple")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, edges).expect("Petersen graph is simple")
}

/// A `d`-regular graph (d even) with a cut vertex splitting it into `d/2`
/// pieces: a hub joined to both ends of a deleted edge in each of `d/2`
/// random `d`-regular blobs on `blob` vertices. No Hamiltonian path exists
/// once `d >= 6`.
pub fn gen_hub_blobs(d: usize, blob: usize, seed: u64) -> Result<Graph, GenError> {
    if d % 2 == 1 || d < 2 {
        return Err(GenError::Invalid(format!(
            "hub-of-blobs needs even d, got {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut next = 1;
    for _ in 0..d / 2 {
        let g = gen_random_regular(blob, d, rng.gen())?;
        let cut = g.edges()[rng.gen_range(0..g.m())];
        for &(u, v) in g.edges() {
            if (u, v) != cut {
                edges.push((u + next, v + next));
            }
        }
        edges.push((0, cut.0 + next));
        edges.push((0, cut.1 + next));
        next += blob;
    }
    let g = Graph::new(next, edges).expect("blobs are disjoint");
    let perm = shuffled_labels(next, &mut rng);
    Ok(g.relabel(&perm))
}

/// `m` copies of `K_d`, each clique vertex matched to its own vertex of a
/// random `(d-1)`-regular core on `d * m` vertices. The result is
/// `d`-regular on `2 * d * m` vertices and tends to keep short cycles.
pub fn gen_pendant_cliques(d: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = d * m;
    let core = gen_random_regular(c, d - 1, rng.gen())?;
    let mut edges: Vec<(usize, usize)> = core.edges().to_vec();
    for k in 0..m {
        let base = c + k * d;
        for i in 0..d {
            for j in i + 1..d {
                edges.push((base + i, base + j));
            }
            edges.push((k * d + i, base + i));
        }
    }
    let g = Graph::new(2 * c, edges).expect("cliques and core are disjoint");
    let perm = shuffled_labels(2 * c, &mut rng);
    Ok(g.relabel(&perm))
}

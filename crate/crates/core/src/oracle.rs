//! Exact path partition numbers for small graphs.
//!
//! [`exact_pi_p`] runs a dynamic program over vertex subsets: first which
//! subsets span a path (and where it can end), then the fewest paths
//! covering each subset. [`max_linear_forest`] is an unrelated branch and
//! bound over edges; since a partition into `k` paths uses `n - k` edges,
//! the two must agree.

use crate::discharge::RuleSet;
use crate::graph::Graph;
use crate::partition::{PartitionJson, PathPartition};
use serde::Serialize;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest n handled by the subset DP.
    pub cap: usize,
    /// Work units (submask visits or search nodes) before giving up.
    pub budget: u64,
    /// Bytes the DP tables may take.
    pub memory_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            budget: 200_000_000,
            memory_limit: 1 << 28,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub pi_p: usize,
    #[serde(serialize_with = "ser_witness")]
    pub witness: PathPartition,
    pub explored: u64,
}

fn ser_witness<S: serde::Serializer>(p: &PathPartition, s: S) -> Result<S::Ok, S::Error> {
    PartitionJson::from_partition(p).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown: budget exhausted after {explored} steps")]
    Unknown { explored: u64 },
    #[error("n = {n} exceeds the oracle cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("tables need {need} bytes, limit is {limit}")]
    Memory { need: usize, limit: usize },
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

/// `ends[s]`: vertices at which some path spanning exactly `s` ends.
fn path_ends(adj: &[u32], n: usize) -> Vec<u32> {
    let mut ends = vec![0u32; 1 << n];
    for s in 1u32..1 << n {
        if s.count_ones() == 1 {
            ends[s as usize] = s;
            continue;
        }
        let mut rest = s;
        let mut e = 0;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if ends[(s & !(1 << v)) as usize] & adj[v as usize] != 0 {
                e |= 1 << v;
            }
        }
        ends[s as usize] = e;
    }
    ends
}

/// Lexicographically smallest vertex sequence of a path spanning `s`.
fn smallest_path(adj: &[u32], ends: &[u32], s: u32) -> Vec<usize> {
    let mut v = ends[s as usize].trailing_zeros();
    let mut rest = s & !(1 << v);
    let mut out = vec![v as usize];
    while rest != 0 {
        v = (ends[rest as usize] & adj[v as usize]).trailing_zeros();
        rest &= !(1 << v);
        out.push(v as usize);
    }
    out
}

/// Minimum number of vertex-disjoint paths covering `g`, with a witness.
///
/// Up to `cfg.cap` vertices this is the subset DP; beyond it the edge
/// branch and bound takes over. Either way an exhausted budget is reported
/// as [`OracleError::Unknown`], never as a number.
pub fn exact_pi_p(g: &Graph, cfg: &OracleConfig) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n == 0 {
        return Ok(OracleResult {
            pi_p: 0,
            witness: PathPartition::singletons(0),
            explored: 0,
        });
    }
    if n > cfg.cap || n > 31 {
        if n > 64 {
            return Err(OracleError::TooLarge { n, cap: cfg.cap });
        }
        return max_linear_forest(g, cfg.budget).map(|f| OracleResult {
            pi_p: n - f.edges,
            witness: f.witness,
            explored: f.explored,
        });
    }
    let need = (1usize << n) * (std::mem::size_of::<u32>() + 1);
    if need > cfg.memory_limit {
        return Err(OracleError::Memory {
            need,
            limit: cfg.memory_limit,
        });
    }
    let adj = masks(g);
    let ends = path_ends(&adj, n);
    let full = (1u32 << n) - 1;
    let mut cover = vec![u8::MAX; 1 << n];
    cover[0] = 0;
    let mut explored = 0u64;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        // Subsets of `s` that contain its lowest vertex.
        let mut t = rest;
        let mut best = u8::MAX;
        loop {
            explored += 1;
            let piece = t | low;
            if ends[piece as usize] != 0 {
                best = best.min(cover[(s & !piece) as usize].saturating_add(1));
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
        cover[s as usize] = best;
        if explored > cfg.budget {
            return Err(OracleError::Unknown { explored });
        }
    }
    let mut paths = Vec::new();
    let mut s = full;
    while s != 0 {
        let low = s & s.wrapping_neg();
        let rest = s & !low;
        let want = cover[s as usize] - 1;
        let pick = submasks(rest)
            .map(|t| t | low)
            .filter(|&piece| ends[piece as usize] != 0 && cover[(s & !piece) as usize] == want)
            .map(|piece| (sorted_bits(piece), piece))
            .min()
            .expect("cover value has a witness")
            .1;
        paths.push(smallest_path(&adj, &ends, pick));
        s &= !pick;
    }
    Ok(OracleResult {
        pi_p: cover[full as usize] as usize,
        witness: PathPartition::from_sequences(n, paths, vec![]),
        explored,
    })
}

fn submasks(m: u32) -> impl Iterator<Item = u32> {
    let mut t = Some(m);
    std::iter::from_fn(move || {
        let cur = t?;
        t = (cur != 0).then(|| (cur - 1) & m);
        Some(cur)
    })
}

fn sorted_bits(m: u32) -> Vec<u32> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForest {
    pub edges: usize,
    pub witness: PathPartition,
    pub explored: u64,
}

struct Bnb<'g> {
    g: &'g Graph,
    deg: Vec<u8>,
    parent: Vec<usize>,
    chosen: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    explored: u64,
    budget: u64,
}

impl Bnb<'_> {
    fn root(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Edges `i..` can add at most half the spare degree they touch.
    fn upper(&self, i: usize) -> usize {
        let mut spare = vec![0u8; self.g.n()];
        for &(u, v) in &self.g.edges()[i..] {
            if self.deg[u] < 2 && self.deg[v] < 2 {
                spare[u] += 1;
                spare[v] += 1;
            }
        }
        let room: usize = (0..self.g.n())
            .map(|v| spare[v].min(2 - self.deg[v]) as usize)
            .sum();
        (self.chosen.len() + room / 2).min(self.g.n() - 1)
    }

    fn go(&mut self, i: usize) -> Result<(), OracleError> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(OracleError::Unknown {
                explored: self.explored,
            });
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() + 1 == self.g.n() || i == self.g.m() || self.upper(i) <= self.best.len()
        {
            return Ok(());
        }
        let (u, v) = self.g.edges()[i];
        let (ru, rv) = (self.root(u), self.root(v));
        if self.deg[u] < 2 && self.deg[v] < 2 && ru != rv {
            self.deg[u] += 1;
            self.deg[v] += 1;
            self.parent[ru] = rv;
            self.chosen.push((u, v));
            self.go(i + 1)?;
            self.chosen.pop();
            self.parent[ru] = ru;
            self.deg[u] -= 1;
            self.deg[v] -= 1;
        }
        self.go(i + 1)
    }
}

/// Largest edge set of `g` whose components are paths, found by branch
/// and bound over the sorted edge list.
pub fn max_linear_forest(g: &Graph, budget: u64) -> Result<LinearForest, OracleError> {
    let n = g.n();
    let mut b = Bnb {
        g,
        deg: vec![0; n],
        parent: (0..n).collect(),
        chosen: Vec::new(),
        best: Vec::new(),
        explored: 0,
        budget,
    };
    b.go(0)?;
    let witness = forest_to_partition(n, &b.best);
    Ok(LinearForest {
        edges: b.best.len(),
        witness,
        explored: b.explored,
    })
}

fn forest_to_partition(n: usize, edges: &[(usize, usize)]) -> PathPartition {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for s in 0..n {
        if seen[s] || adj[s].len() == 2 {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut cur = s;
        while let Some(&u) = adj[cur].iter().find(|&&u| !seen[u]) {
            seen[u] = true;
            path.push(u);
            cur = u;
        }
        paths.push(path);
    }
    PathPartition::from_sequences(n, paths, vec![]).normalized()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub n: usize,
    pub d: usize,
    pub pi_p: usize,
    /// `n / (d + 1)`, rounded down.
    pub conjectured: usize,
    /// `n / 7` for d = 6, `3n / 19` for d = 5.
    pub proven: Option<usize>,
    pub holds: bool,
}

/// Compares the exact value with `n / (d + 1)` and, where one is known,
/// the proven bound for the degree.
pub fn bound_check(
    g: &Graph,
    d: usize,
    cfg: &OracleConfig,
) -> Result<(BoundCheck, OracleResult), OracleError> {
    let r = exact_pi_p(g, cfg)?;
    let n = g.n();
    let conjectured = n / (d + 1);
    let proven = RuleSet::for_degree(d).map(|rs| rs.bound(n));
    let holds = r.pi_p <= conjectured && proven.is_none_or(|b| r.pi_p <= b);
    Ok((
        BoundCheck {
            n,
            d,
            pi_p: r.pi_p,
            conjectured,
            proven,
            holds,
        },
        r,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_disjoint_cliques, gen_random_regular, petersen};
    use crate::partition::validate_partition;

    fn both(g: &Graph) -> usize {
        let r = exact_pi_p(g, &OracleConfig::default()).unwrap();
        assert!(validate_partition(g, &r.witness).is_empty());
        assert_eq!(r.witness.len(), r.pi_p);
        let f = max_linear_forest(g, u64::MAX).unwrap();
        assert!(validate_partition(g, &f.witness).is_empty());
        assert_eq!(g.n() - f.edges, r.pi_p);
        r.pi_p
    }

    #[test]
    fn known_values() {
        assert_eq!(both(&gen_disjoint_cliques(6, 1, 0)), 1);
        assert_eq!(both(&gen_disjoint_cliques(6, 2, 5)), 2);
        assert_eq!(both(&petersen()), 1);
        assert_eq!(both(&Graph::empty(5)), 5);
        assert_eq!(both(&Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()), 2);
    }

    #[test]
    fn witness_is_deterministic() {
        let g = gen_random_regular(12, 6, 3).unwrap();
        let a = exact_pi_p(&g, &OracleConfig::default()).unwrap();
        let b = exact_pi_p(&g, &OracleConfig::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.witness.component(0).vertices[0], 0);
    }

    #[test]
    fn budget_gives_unknown() {
        let g = gen_random_regular(14, 6, 1).unwrap();
        let cfg = OracleConfig {
            budget: 1000,
            ..Default::default()
        };
        assert!(matches!(
            exact_pi_p(&g, &cfg),
            Err(OracleError::Unknown { .. })
        ));
        assert!(matches!(
            max_linear_forest(&g, 10),
            Err(OracleError::Unknown { .. })
        ));
        let cfg = OracleConfig {
            memory_limit: 10,
            ..Default::default()
        };
        assert!(matches!(
            exact_pi_p(&g, &cfg),
            Err(OracleError::Memory { .. })
        ));
    }

    #[test]
    fn bound_on_k7() {
        let (b, _) =
            bound_check(&gen_disjoint_cliques(6, 1, 0), 6, &OracleConfig::default()).unwrap();
        assert!(b.holds);
        assert_eq!((b.pi_p, b.conjectured, b.proven), (1, 1, Some(1)));
    }
}

//! Simple undirected graphs with dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Adjacency lists are kept sorted so
//! that edge membership is a binary search and every scan over neighbors
//! visits them in increasing id order (the tie-breaking rule used by the
//! move engine).

mod generators;
mod io;

pub use generators::{
    circulant, complete_bipartite, gen_disjoint_cliques, gen_hub_blobs, gen_pendant_cliques,
    gen_random_regular, gen_random_regular_with_budget, petersen, GenError,
};
pub use io::{read_edge_list, write_edge_list, ParseError, ParseErrorKind};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while assembling a graph from an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a simple graph on `n` vertices. Edges may be given in any
    /// order and orientation; loops, repeats and out-of-range ids are errors.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            list.push(e);
            adj[u].push(v);
            adj[v].push(u);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        Ok(Self {
            n,
            adj,
            edges: list,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The common degree if the graph is regular (and nonempty).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|nb| nb.len() == d).then_some(d)
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(self.n, edges).expect("complement of a simple graph is simple")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::new(self.n + other.n, edges).expect("union of simple graphs is simple")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling by a permutation keeps the graph simple")
    }
}

/// Outcome of checking a graph against a target degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub is_regular: bool,
    pub degree: Option<usize>,
    pub offending_vertices: Vec<usize>,
}

pub fn validate_regular(g: &Graph, d: usize) -> RegularityReport {
    let offending_vertices: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) != d).collect();
    let is_regular = offending_vertices.is_empty();
    RegularityReport {
        is_regular,
        degree: is_regular.then_some(d),
        offending_vertices,
    }
}

/// Finds a clique on `size` vertices, returned in increasing order.
///
/// Every clique containing `v` lies inside the closed neighborhood of `v`,
/// so the search only ever extends with neighbors larger than the current
/// vertex; for bounded degree this is linear in `n`.
pub fn find_clique(g: &Graph, size: usize) -> Option<Vec<usize>> {
    if size == 0 {
        return Some(Vec::new());
    }
    let mut stack = Vec::with_capacity(size);
    for v in 0..g.n() {
        if g.degree(v) + 1 < size {
            continue;
        }
        stack.push(v);
        let cands: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        if extend_clique(g, &mut stack, &cands, size) {
            return Some(stack);
        }
        stack.pop();
    }
    None
}

fn extend_clique(g: &Graph, stack: &mut Vec<usize>, cands: &[usize], size: usize) -> bool {
    if stack.len() == size {
        return true;
    }
    if stack.len() + cands.len() < size {
        return false;
    }
    for (i, &u) in cands.iter().enumerate() {
        let next: Vec<usize> = cands[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(u, w))
            .collect();
        stack.push(u);
        if extend_clique(g, stack, &next, size) {
            return true;
        }
        stack.pop();
    }
    false
}

/// A six-vertex clique, if one exists.
pub fn contains_k6(g: &Graph) -> Option<Vec<usize>> {
    find_clique(g, 6)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn k7_is_six_regular() {
        let r = validate_regular(&complete(7), 6);
        assert!(r.is_regular);
        assert_eq!(r.degree, Some(6));
    }

    #[test]
    fn k7_minus_edge_has_two_offenders() {
        let edges = complete(7)
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != (2, 5))
            .collect::<Vec<_>>();
        let g = Graph::new(7, edges).unwrap();
        let r = validate_regular(&g, 6);
        assert!(!r.is_regular);
        assert_eq!(r.offending_vertices, vec![2, 5]);
        assert_eq!(r.degree, None);
    }

    #[test]
    fn empty_graph_is_vacuously_regular() {
        assert!(validate_regular(&Graph::empty(0), 6).is_regular);
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }

    #[test]
    fn k6_detection() {
        assert_eq!(contains_k6(&complete(6)), Some(vec![0, 1, 2, 3, 4, 5]));
        assert!(contains_k6(&gen_disjoint_cliques(5, 3, 9)).is_some());
        assert!(contains_k6(&petersen()).is_none());
        assert!(contains_k6(&complete(5)).is_none());
    }

    #[test]
    fn complement_round_trips() {
        let g = petersen();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.complement().regular_degree(), Some(6));
    }
}

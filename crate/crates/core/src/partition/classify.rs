use super::{Kind, PathPartition};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Path,
    Cycle,
    Free,
}

/// One label per edge, aligned with [`Graph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    labels: Vec<EdgeClass>,
}

/// An edge joining two distinct cycle components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("edge ({0}, {1}) joins two different cycles")]
pub struct CrossCycleEdge(pub usize, pub usize);

impl EdgeClassification {
    pub fn labels(&self) -> &[EdgeClass] {
        &self.labels
    }

    pub fn label(&self, g: &Graph, u: usize, v: usize) -> Option<EdgeClass> {
        let e = (u.min(v), u.max(v));
        g.edges().binary_search(&e).ok().map(|i| self.labels[i])
    }

    pub fn is_free(&self, g: &Graph, u: usize, v: usize) -> bool {
        self.label(g, u, v) == Some(EdgeClass::Free)
    }

    pub fn count(&self, class: EdgeClass) -> usize {
        self.labels.iter().filter(|&&c| c == class).count()
    }
}

fn edge_class(p: &PathPartition, u: usize, v: usize) -> Result<EdgeClass, CrossCycleEdge> {
    let (cu, cv) = (p.comp_of(u), p.comp_of(v));
    let ku = p.component(cu).kind;
    if cu == cv && ku == Kind::Cycle {
        return Ok(EdgeClass::Cycle);
    }
    if ku == Kind::Cycle && p.component(cv).kind == Kind::Cycle {
        return Err(CrossCycleEdge(u.min(v), u.max(v)));
    }
    if cu == cv && ku == Kind::Path && p.slot(u).pos.abs_diff(p.slot(v).pos) == 1 {
        return Ok(EdgeClass::Path);
    }
    Ok(EdgeClass::Free)
}

/// Labels every edge path, cycle or free. A chord of a cycle is a cycle
/// edge; an edge between two different cycles is an error.
pub fn classify_edges(g: &Graph, p: &PathPartition) -> Result<EdgeClassification, CrossCycleEdge> {
    let labels = g
        .edges()
        .iter()
        .map(|&(u, v)| edge_class(p, u, v))
        .collect::<Result<_, _>>()?;
    Ok(EdgeClassification { labels })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VClass {
    V1,
    V2a,
    V2b,
    V3,
    V4,
    V5,
}

impl VClass {
    pub fn is_v2(self) -> bool {
        matches!(self, VClass::V2a | VClass::V2b)
    }
}

impl fmt::Display for VClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClassification {
    pub class: Vec<VClass>,
    pub moderate: Vec<bool>,
    pub heavy: Vec<bool>,
    pub dangerous: Vec<bool>,
    /// Balanced edges of a V2 vertex to path ends (and singletons).
    pub balanced_to_path: Vec<Vec<usize>>,
    /// Balanced edges of a V2 vertex to cycle vertices.
    pub balanced_to_cycle: Vec<Vec<usize>>,
}

impl VertexClassification {
    pub fn is_v2(&self, v: usize) -> bool {
        self.class[v].is_v2()
    }

    pub fn balanced_count(&self, v: usize) -> usize {
        self.balanced_to_path[v].len() + self.balanced_to_cycle[v].len()
    }

    /// Number of path neighbors of `v` that are in V2.
    pub fn v2_path_neighbors(&self, p: &PathPartition, v: usize) -> usize {
        if p.kind_of(v) != Kind::Path {
            return 0;
        }
        let (a, b) = p.partition_neighbors(v);
        [a, b]
            .into_iter()
            .flatten()
            .filter(|&u| self.is_v2(u))
            .count()
    }
}

/// First-applicable vertex classes plus the moderate, heavy and dangerous
/// flags. Singletons count as V1.
pub fn classify_vertices(
    g: &Graph,
    p: &PathPartition,
    ec: &EdgeClassification,
) -> VertexClassification {
    let n = g.n();
    let mut class = vec![VClass::V5; n];
    let mut v2 = vec![false; n];
    let mut to_path = vec![Vec::new(); n];
    let mut to_cycle = vec![Vec::new(); n];
    let v1: Vec<bool> = (0..n).map(|v| p.is_v1(v)).collect();
    let free_edges = |v: usize| {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| ec.is_free(g, v, u))
    };
    for v in 0..n {
        if v1[v] {
            class[v] = VClass::V1;
            continue;
        }
        for u in free_edges(v).filter(|&u| v1[u]) {
            v2[v] = true;
            if p.kind_of(u) == Kind::Cycle {
                to_cycle[v].push(u);
            } else {
                to_path[v].push(u);
            }
        }
    }
    for v in (0..n).filter(|&v| !v1[v]) {
        let (a, b) = p.partition_neighbors(v);
        let k = [a, b].into_iter().flatten().filter(|&u| v2[u]).count();
        class[v] = match (v2[v], k) {
            (true, 0) => VClass::V2a,
            (true, _) => VClass::V2b,
            (false, 2) => VClass::V3,
            (false, 1) => VClass::V4,
            (false, _) => VClass::V5,
        };
    }
    let moderate: Vec<bool> = (0..n)
        .map(|v| v2[v] && to_path[v].len() + to_cycle[v].len() >= 2 && !to_path[v].is_empty())
        .collect();
    let heavy: Vec<bool> = (0..n).map(|v| v2[v] && to_path[v].len() >= 3).collect();
    let dangerous = (0..n)
        .map(|v| {
            if class[v] != VClass::V3 {
                return false;
            }
            let (a, b) = p.partition_neighbors(v);
            let (a, b) = (a.unwrap(), b.unwrap());
            (heavy[a] && moderate[b]) || (heavy[b] && moderate[a])
        })
        .collect();
    VertexClassification {
        class,
        moderate,
        heavy,
        dangerous,
        balanced_to_path: to_path,
        balanced_to_cycle: to_cycle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_disjoint_cliques;

    #[test]
    fn k7_cycle_has_only_cycle_edges() {
        let g = gen_disjoint_cliques(6, 1, 0);
        let p = PathPartition::from_sequences(7, vec![], vec![(0..7).collect()]);
        let ec = classify_edges(&g, &p).unwrap();
        assert_eq!(ec.count(EdgeClass::Cycle), 21);
        let vc = classify_vertices(&g, &p, &ec);
        assert!(vc.class.iter().all(|&c| c == VClass::V1));
    }

    #[test]
    fn two_k7_cycles() {
        let g = gen_disjoint_cliques(6, 2, 5);
        let mut cycles = vec![vec![], vec![]];
        let mut seen = [false; 14];
        for v in 0..14 {
            if seen[v] {
                continue;
            }
            let c = cycles.iter().position(|c| c.is_empty()).unwrap();
            cycles[c].push(v);
            seen[v] = true;
            for &u in g.neighbors(v) {
                seen[u] = true;
                cycles[c].push(u);
            }
        }
        let p = PathPartition::from_sequences(14, vec![], cycles);
        let ec = classify_edges(&g, &p).unwrap();
        assert_eq!(ec.count(EdgeClass::Cycle), 42);
        assert_eq!(ec.count(EdgeClass::Free), 0);
    }

    #[test]
    fn k7_path_edges() {
        let g = gen_disjoint_cliques(6, 1, 0);
        let p = PathPartition::from_sequences(7, vec![(0..7).collect()], vec![]);
        let ec = classify_edges(&g, &p).unwrap();
        assert_eq!(ec.count(EdgeClass::Path), 6);
        assert_eq!(ec.count(EdgeClass::Free), 15);
    }

    #[test]
    fn cross_cycle_edge_is_an_error() {
        let mut edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)];
        edges.push((2, 3));
        let g = Graph::new(6, edges).unwrap();
        let p = PathPartition::from_sequences(6, vec![], vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(classify_edges(&g, &p), Err(CrossCycleEdge(2, 3)));
    }

    #[test]
    fn middle_of_three_path_is_v2a() {
        // a-b-c plus a separate path d-e, with a free edge b-d.
        let g = Graph::new(5, [(0, 1), (1, 2), (3, 4), (1, 3)]).unwrap();
        let p = PathPartition::from_sequences(5, vec![vec![0, 1, 2], vec![3, 4]], vec![]);
        let ec = classify_edges(&g, &p).unwrap();
        let vc = classify_vertices(&g, &p, &ec);
        assert_eq!(
            vc.class,
            vec![VClass::V1, VClass::V2a, VClass::V1, VClass::V1, VClass::V1]
        );
        assert_eq!(vc.balanced_to_path[1], vec![3]);
    }
}

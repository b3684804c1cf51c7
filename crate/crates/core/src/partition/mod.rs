//! Path partitions: every vertex lies in exactly one path, cycle or
//! singleton component.

mod classify;
mod json;

pub use classify::{
    classify_edges, classify_vertices, CrossCycleEdge, EdgeClass, EdgeClassification, VClass,
    VertexClassification,
};
pub use json::PartitionJson;

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Path,
    Cycle,
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub kind: Kind,
    pub vertices: Vec<usize>,
}

impl Component {
    /// A path of one vertex is a singleton.
    pub fn path(vertices: Vec<usize>) -> Self {
        let kind = if vertices.len() == 1 {
            Kind::Singleton
        } else {
            Kind::Path
        };
        Self { kind, vertices }
    }

    pub fn cycle(vertices: Vec<usize>) -> Self {
        Self {
            kind: Kind::Cycle,
            vertices,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive pairs, including the closing pair of a cycle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        let closing =
            (self.kind == Kind::Cycle && k >= 2).then(|| (self.vertices[k - 1], self.vertices[0]));
        self.vertices
            .windows(2)
            .map(|w| (w[0], w[1]))
            .chain(closing)
    }

    fn normalize(&mut self) {
        let vs = &mut self.vertices;
        match self.kind {
            Kind::Path => {
                if vs.first() > vs.last() {
                    vs.reverse();
                }
            }
            Kind::Cycle => {
                if let Some(i) = (0..vs.len()).min_by_key(|&i| vs[i]) {
                    vs.rotate_left(i);
                    if vs.len() > 2 && vs[vs.len() - 1] < vs[1] {
                        vs[1..].reverse();
                    }
                }
            }
            Kind::Singleton => {}
        }
    }
}

/// Lexicographic canonicality potential: fewer components first, then
/// more cycles, then fewer singletons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Potential {
    pub components: i64,
    pub neg_cycles: i64,
    pub singletons: i64,
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.components, self.neg_cycles, self.singletons
        )
    }
}

/// Where a vertex sits: component index and position inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub comp: usize,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPartition {
    n: usize,
    components: Vec<Component>,
    owner: Vec<Slot>,
}

impl PathPartition {
    /// Assembles a partition without checking it; pair with
    /// [`validate_partition`]. When a vertex is listed twice the owner
    /// index keeps its last occurrence.
    pub fn from_components(n: usize, components: Vec<Component>) -> Self {
        let mut owner = vec![
            Slot {
                comp: usize::MAX,
                pos: 0
            };
            n
        ];
        for (ci, c) in components.iter().enumerate() {
            for (pos, &v) in c.vertices.iter().enumerate() {
                if v < n {
                    owner[v] = Slot { comp: ci, pos };
                }
            }
        }
        Self {
            n,
            components,
            owner,
        }
    }

    pub fn from_sequences(n: usize, paths: Vec<Vec<usize>>, cycles: Vec<Vec<usize>>) -> Self {
        let comps = paths
            .into_iter()
            .map(Component::path)
            .chain(cycles.into_iter().map(Component::cycle))
            .collect();
        Self::from_components(n, comps)
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_sequences(n, (0..n).map(|v| vec![v]).collect(), Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, ci: usize) -> &Component {
        &self.components[ci]
    }

    pub fn slot(&self, v: usize) -> Slot {
        self.owner[v]
    }

    pub fn comp_of(&self, v: usize) -> usize {
        self.owner[v].comp
    }

    pub fn kind_of(&self, v: usize) -> Kind {
        self.components[self.owner[v].comp].kind
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn cycle_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.kind == Kind::Cycle)
            .count()
    }

    pub fn singleton_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.kind == Kind::Singleton)
            .count()
    }

    pub fn path_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.kind == Kind::Path)
            .count()
    }

    pub fn potential(&self) -> Potential {
        Potential {
            components: self.len() as i64,
            neg_cycles: -(self.cycle_count() as i64),
            singletons: self.singleton_count() as i64,
        }
    }

    /// True for the first and last vertex of a path.
    pub fn is_path_end(&self, v: usize) -> bool {
        let s = self.owner[v];
        let c = &self.components[s.comp];
        c.kind == Kind::Path && (s.pos == 0 || s.pos + 1 == c.len())
    }

    /// Ends of paths, singletons and cycle vertices.
    pub fn is_v1(&self, v: usize) -> bool {
        let s = self.owner[v];
        let c = &self.components[s.comp];
        match c.kind {
            Kind::Path => s.pos == 0 || s.pos + 1 == c.len(),
            Kind::Cycle | Kind::Singleton => true,
        }
    }

    /// Path (or cycle) neighbors of `v` inside its component.
    pub fn partition_neighbors(&self, v: usize) -> (Option<usize>, Option<usize>) {
        let s = self.owner[v];
        let c = &self.components[s.comp];
        let k = c.len();
        match c.kind {
            Kind::Singleton => (None, None),
            Kind::Path => (
                (s.pos > 0).then(|| c.vertices[s.pos - 1]),
                (s.pos + 1 < k).then(|| c.vertices[s.pos + 1]),
            ),
            Kind::Cycle => (
                Some(c.vertices[(s.pos + k - 1) % k]),
                Some(c.vertices[(s.pos + 1) % k]),
            ),
        }
    }

    /// Whether `(u, v)` is consecutive in some component.
    pub fn is_partition_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = self.partition_neighbors(u);
        a == Some(v) || b == Some(v)
    }

    /// Canonical ordering: paths start at their smaller end, cycles at
    /// their minimum heading to the smaller neighbor, components sorted.
    pub fn normalized(&self) -> Self {
        let mut comps = self.components.clone();
        for c in &mut comps {
            c.normalize();
        }
        comps.sort();
        Self::from_components(self.n, comps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    VertexMultiplicity {
        vertex: usize,
        count: usize,
    },
    MissingVertex {
        vertex: usize,
    },
    VertexOutOfRange {
        component: usize,
        vertex: usize,
    },
    MissingEdge {
        component: usize,
        u: usize,
        v: usize,
    },
    BadLength {
        component: usize,
        kind: Kind,
        len: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexMultiplicity { vertex, count } => {
                write!(f, "vertex multiplicity: {vertex} appears {count} times")
            }
            Violation::MissingVertex { vertex } => write!(f, "missing vertex {vertex}"),
            Violation::VertexOutOfRange { component, vertex } => {
                write!(f, "component {component}: vertex {vertex} out of range")
            }
            Violation::MissingEdge { component, u, v } => {
                write!(f, "missing edge ({u}, {v}) in component {component}")
            }
            Violation::BadLength {
                component,
                kind,
                len,
            } => {
                write!(f, "component {component}: {kind:?} of length {len}")
            }
        }
    }
}

/// Every violated partition invariant; empty means valid.
pub fn validate_partition(g: &Graph, p: &PathPartition) -> Vec<Violation> {
    let n = g.n();
    let mut out = Vec::new();
    let mut count = vec![0usize; n];
    for (ci, c) in p.components().iter().enumerate() {
        let ok_len = match c.kind {
            Kind::Path => c.len() >= 2,
            Kind::Cycle => c.len() >= 3,
            Kind::Singleton => c.len() == 1,
        };
        if !ok_len {
            out.push(Violation::BadLength {
                component: ci,
                kind: c.kind,
                len: c.len(),
            });
        }
        for &v in &c.vertices {
            if v < n {
                count[v] += 1;
            } else {
                out.push(Violation::VertexOutOfRange {
                    component: ci,
                    vertex: v,
                });
            }
        }
        for (u, v) in c.edges() {
            if !g.has_edge(u, v) {
                out.push(Violation::MissingEdge {
                    component: ci,
                    u,
                    v,
                });
            }
        }
    }
    for (v, &k) in count.iter().enumerate() {
        match k {
            0 => out.push(Violation::MissingVertex { vertex: v }),
            1 => {}
            _ => out.push(Violation::VertexMultiplicity {
                vertex: v,
                count: k,
            }),
        }
    }
    if p.n() != n {
        out.push(Violation::MissingVertex {
            vertex: p.n().min(n),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_disjoint_cliques;

    fn k7() -> Graph {
        gen_disjoint_cliques(6, 1, 0)
    }

    #[test]
    fn hamiltonian_path_on_k7_is_valid() {
        let p = PathPartition::from_sequences(7, vec![vec![3, 1, 4, 0, 5, 2, 6]], vec![]);
        assert!(validate_partition(&k7(), &p).is_empty());
        assert_eq!(
            p.potential(),
            Potential {
                components: 1,
                neg_cycles: 0,
                singletons: 0
            }
        );
    }

    #[test]
    fn duplicated_vertex_is_reported() {
        let p = PathPartition::from_sequences(7, vec![vec![0, 1, 2, 3], vec![3, 4, 5, 6]], vec![]);
        let v = validate_partition(&k7(), &p);
        assert_eq!(
            v,
            vec![Violation::VertexMultiplicity {
                vertex: 3,
                count: 2
            }]
        );
        assert!(v[0].to_string().starts_with("vertex multiplicity"));
    }

    #[test]
    fn non_edge_is_reported() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = PathPartition::from_sequences(4, vec![vec![0, 2, 1, 3]], vec![]);
        let v = validate_partition(&g, &p);
        assert!(v.contains(&Violation::MissingEdge {
            component: 0,
            u: 0,
            v: 2
        }));
        assert!(v.contains(&Violation::MissingEdge {
            component: 0,
            u: 1,
            v: 3
        }));
    }

    #[test]
    fn short_cycle_and_missing_vertex() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        let p = PathPartition::from_components(
            3,
            vec![Component {
                kind: Kind::Cycle,
                vertices: vec![0, 1],
            }],
        );
        let v = validate_partition(&g, &p);
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::BadLength { len: 2, .. })));
        assert!(v.contains(&Violation::MissingVertex { vertex: 2 }));
    }

    #[test]
    fn normalization() {
        let p = PathPartition::from_sequences(7, vec![vec![6, 2, 5]], vec![vec![4, 1, 3, 0]]);
        let q = p.normalized();
        assert_eq!(q.component(0).vertices, vec![5, 2, 6]);
        assert_eq!(q.component(1).vertices, vec![0, 3, 1, 4]);
    }
}

use super::{Move, MoveKind, Primitive};
use crate::graph::Graph;
use crate::partition::{Kind, PathPartition};

/// Successor of a cycle vertex in stored order.
fn cycle_succ(p: &PathPartition, v: usize) -> usize {
    p.partition_neighbors(v)
        .1
        .expect("cycle vertex has a successor")
}

/// One-link move across a V1-V1 edge that is not a partition edge.
///
/// Component-reducing links (join two paths, absorb a singleton, open a
/// cycle and join it, merge two cycles) are preferred over closing a path
/// into a cycle. Scan order is lowest vertex, then lowest neighbor.
pub fn find_basic_move(g: &Graph, p: &PathPartition) -> Option<Move> {
    let before = p.potential();
    let build = |primitives: Vec<Primitive>| {
        let q = super::apply_primitives(g, p, &primitives).expect("basic move replays");
        Move {
            kind: MoveKind::Basic,
            primitives,
            phi_before: before,
            phi_after: q.potential(),
        }
    };
    for v in 0..g.n() {
        if !p.is_v1(v) {
            continue;
        }
        for &u in g.neighbors(v) {
            if u < v || !p.is_v1(u) || p.comp_of(u) == p.comp_of(v) {
                continue;
            }
            let mut prims = Vec::with_capacity(3);
            if p.kind_of(v) == Kind::Cycle {
                prims.push(Primitive::Open {
                    a: v,
                    b: cycle_succ(p, v),
                });
            }
            if p.kind_of(u) == Kind::Cycle {
                prims.push(Primitive::Open {
                    a: u,
                    b: cycle_succ(p, u),
                });
            }
            prims.push(Primitive::Join { a: v, b: u });
            return Some(build(prims));
        }
    }
    for c in p.components() {
        if c.kind == Kind::Path && c.len() >= 3 {
            let (a, b) = (c.vertices[0], c.vertices[c.len() - 1]);
            if g.has_edge(a, b) {
                let (a, b) = (a.min(b), a.max(b));
                return Some(build(vec![Primitive::Close { a, b }]));
            }
        }
    }
    None
}

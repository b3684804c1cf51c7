use super::compound::extend_links;
use super::overlay::Overlay;
use super::{Move, MoveKind};
use crate::graph::Graph;
use crate::partition::{EdgeClassification, Kind, PathPartition, VertexClassification};

/// Links allowed after the derived partition is formed.
const RELINKS: usize = 3;

/// A way to reach a derived partition: one more component, the same
/// cycles, and two new path ends that were V2 vertices.
struct Seed {
    heavy: bool,
    splits: [(usize, usize); 2],
    join: Option<(usize, usize)>,
}

fn seeds(
    g: &Graph,
    p: &PathPartition,
    ec: &EdgeClassification,
    vc: &VertexClassification,
) -> Vec<Seed> {
    let mut out = Vec::new();
    let v2_path_nbrs = |v: usize| {
        let (a, b) = if p.kind_of(v) == Kind::Path {
            p.partition_neighbors(v)
        } else {
            (None, None)
        };
        [a, b].into_iter().flatten().filter(|&x| vc.is_v2(x))
    };
    for &(u, v) in g.edges() {
        if vc.is_v2(u) && vc.is_v2(v) && p.kind_of(u) == Kind::Path && p.is_partition_edge(u, v) {
            out.push(Seed {
                heavy: vc.heavy[u] || vc.heavy[v],
                splits: [(u, v), (u, v)],
                join: None,
            });
        }
    }
    for &(w, u) in g.edges() {
        if !ec.is_free(g, w, u) {
            continue;
        }
        for x1 in v2_path_nbrs(w) {
            for x2 in v2_path_nbrs(u) {
                out.push(Seed {
                    heavy: vc.heavy[x1] || vc.heavy[x2],
                    splits: [(x1, w), (u, x2)],
                    join: Some((w, u)),
                });
            }
        }
    }
    out
}

/// Searches for a derived partition followed by at most three links that
/// together beat the current potential.
///
/// Derived partitions come from cutting one path edge between two V2
/// vertices, or from cutting beside V2 vertices `x1` and `x2` at both ends
/// of a free edge `w u` and joining `w` to `u`. Seeds with a heavy new end
/// are tried first.
pub fn find_derived_move(
    g: &Graph,
    p: &PathPartition,
    ec: &EdgeClassification,
    vc: &VertexClassification,
) -> Option<Move> {
    let base = p.potential();
    let all = seeds(g, p, ec, vc);
    let root = Overlay::new(p);
    for pass in [true, false] {
        for s in all.iter().filter(|s| s.heavy == pass) {
            let mut o = root.clone();
            let ok = if let Some((w, u)) = s.join {
                o.split(s.splits[0].0, s.splits[0].1)
                    && o.split(s.splits[1].0, s.splits[1].1)
                    && o.join(w, u)
            } else {
                o.split(s.splits[0].0, s.splits[0].1)
            };
            if !ok || o.components() != base.components + 1 || o.cycles() != -base.neg_cycles {
                continue;
            }
            if let Some(hit) = extend_links(g, &o, base, RELINKS) {
                return Some(Move {
                    kind: MoveKind::Derived,
                    phi_before: base,
                    phi_after: hit.potential(),
                    primitives: hit.prims,
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{apply_move, find_basic_move};
    use crate::partition::{classify_edges, classify_vertices, validate_partition};

    #[test]
    fn cycles_only_has_no_move() {
        let g = crate::graph::gen_disjoint_cliques(6, 2, 3);
        let mut seen = [false; 14];
        let mut cycles = Vec::new();
        for v in 0..14 {
            if !seen[v] {
                let mut c = vec![v];
                c.extend(g.neighbors(v));
                for &x in &c {
                    seen[x] = true;
                }
                cycles.push(c);
            }
        }
        let p = PathPartition::from_sequences(14, vec![], cycles);
        let ec = classify_edges(&g, &p).unwrap();
        let vc = classify_vertices(&g, &p, &ec);
        assert!(find_derived_move(&g, &p, &ec, &vc).is_none());
    }

    #[test]
    fn four_paths_become_three() {
        // P1 = 0-1, P2 = 2-3-4-5-6, P3 = 7-8-9-10-11, P4 = 12-13.
        // Balanced 0~3, free 4~9 between the V3 vertices, balanced 10~12.
        let mut edges = vec![
            (0, 1),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (7, 8),
            (8, 9),
            (9, 10),
            (10, 11),
            (12, 13),
        ];
        edges.extend([(0, 3), (4, 9), (10, 12), (5, 2), (8, 11)]);
        let g = Graph::new(14, edges).unwrap();
        let p = PathPartition::from_sequences(
            14,
            vec![
                vec![0, 1],
                vec![2, 3, 4, 5, 6],
                vec![7, 8, 9, 10, 11],
                vec![12, 13],
            ],
            vec![],
        );
        assert!(find_basic_move(&g, &p).is_none());
        let ec = classify_edges(&g, &p).unwrap();
        let vc = classify_vertices(&g, &p, &ec);
        assert_eq!(vc.class[4], crate::partition::VClass::V3);
        assert_eq!(vc.class[9], crate::partition::VClass::V3);
        let m = find_derived_move(&g, &p, &ec, &vc).unwrap();
        let q = apply_move(&g, &p, &m).unwrap();
        assert!(validate_partition(&g, &q).is_empty());
        assert_eq!(q.len(), 3);
    }
}

use super::overlay::Overlay;
use super::{Move, MoveKind, Potential};
use crate::graph::Graph;
use crate::partition::{EdgeClassification, PathPartition, VertexClassification};

/// Vertices allowed to seed the first step of a compound search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Focus {
    All,
    Only(Vec<bool>),
}

impl Focus {
    pub fn from_vertices(n: usize, vs: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; n];
        for v in vs {
            mask[v] = true;
        }
        Focus::Only(mask)
    }

    pub fn contains(&self, v: usize) -> bool {
        match self {
            Focus::All => true,
            Focus::Only(m) => m[v],
        }
    }
}

/// Whether `left` more steps, none of which lowers the component count by
/// more than one, can still take `o` strictly below `base`.
pub(crate) fn reachable(o: &Overlay, base: Potential, left: usize) -> bool {
    reachable_from(o.potential(), base, left)
}

fn reachable_from(phi: Potential, base: Potential, left: usize) -> bool {
    let best = phi.components - left as i64;
    if best != base.components {
        return best < base.components;
    }
    // Every remaining step must then be a join: cycles cannot grow.
    phi.neg_cycles < base.neg_cycles
        || (phi.neg_cycles == base.neg_cycles
            && phi.singletons.saturating_sub(2 * left as i64) < base.singletons)
}

/// Whether a split followed by `left - 1` steps could still succeed. New
/// singletons are ignored, which only makes the answer more permissive.
fn split_may_pay(o: &Overlay, base: Potential, left: usize) -> bool {
    let mut phi = o.potential();
    phi.components += 1;
    left > 1 && reachable_from(phi, base, left - 1)
}

/// Depth-bounded extension of `o` by links that touch a rewritten path end.
pub(crate) fn extend_links<'a>(
    g: &Graph,
    o: &Overlay<'a>,
    base: Potential,
    left: usize,
) -> Option<Overlay<'a>> {
    if o.potential() < base {
        return Some(o.clone());
    }
    if left == 0 || !reachable(o, base, left) {
        return None;
    }
    for a in o.fresh_ends() {
        for &b in g.neighbors(a) {
            if !o.is_v1(b) || (left == 1 && !o.link_potential(a, b).is_some_and(|phi| phi < base)) {
                continue;
            }
            for t in o.links(a, b) {
                if let Some(hit) = extend_links(g, &t, base, left - 1) {
                    return Some(hit);
                }
            }
        }
    }
    None
}

struct Search<'g, 'p> {
    g: &'g Graph,
    p: &'p PathPartition,
    vc: &'g VertexClassification,
    focus: &'g Focus,
    base: Potential,
}

impl<'g, 'p> Search<'g, 'p> {
    fn step(&self, o: &Overlay<'p>, used: usize, limit: usize) -> Option<Overlay<'p>> {
        if used > 0 && o.potential() < self.base {
            return Some(o.clone());
        }
        let left = limit - used;
        if left == 0 || !reachable(o, self.base, left) {
            return None;
        }
        let recurse = |t: Overlay<'p>| self.step(&t, used + 1, limit);
        let split_ok = split_may_pay(o, self.base, left);
        if used == 0 {
            for v in (0..self.g.n()).filter(|&v| self.focus.contains(v)) {
                if self.p.is_v1(v) {
                    for &u in self.g.neighbors(v) {
                        if o.is_v1(u) {
                            if let Some(hit) = o.links(v, u).into_iter().find_map(recurse) {
                                return Some(hit);
                            }
                        }
                    }
                } else if self.vc.is_v2(v) && split_ok {
                    let (a, b) = o.partition_neighbors(v);
                    for x in [a, b].into_iter().flatten() {
                        let mut t = o.clone();
                        if t.split(v, x) {
                            if let Some(hit) = recurse(t) {
                                return Some(hit);
                            }
                        }
                    }
                }
            }
            return None;
        }
        let fresh = o.fresh_ends();
        for &a in &fresh {
            for &b in self.g.neighbors(a) {
                if !o.is_v1(b) {
                    continue;
                }
                if left == 1 && !o.link_potential(a, b).is_some_and(|phi| phi < self.base) {
                    continue;
                }
                if let Some(hit) = o.links(a, b).into_iter().find_map(recurse) {
                    return Some(hit);
                }
            }
        }
        if !split_ok {
            return None;
        }
        for &a in &fresh {
            for &y in self.g.neighbors(a) {
                if o.is_v1(y) {
                    continue;
                }
                let (x1, x2) = o.partition_neighbors(y);
                for x in [x1, x2].into_iter().flatten() {
                    let mut t = o.clone();
                    if t.split(y, x) {
                        if let Some(hit) = recurse(t) {
                            return Some(hit);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Iterative-deepening search over sequences of at most `depth` steps.
///
/// A step is a split of a path edge or a link (join or close, opening a
/// cycle first when needed; the open is part of the same step). The first
/// step is a link out of a focused V1 vertex or a split beside a focused V2
/// vertex; later steps start at a rewritten path end or one of its
/// neighbors. With `depth == 1` this finds a move exactly when
/// [`super::find_basic_move`] does.
pub fn find_compound_move(
    g: &Graph,
    p: &PathPartition,
    _ec: &EdgeClassification,
    vc: &VertexClassification,
    depth: usize,
    focus: &Focus,
) -> Option<Move> {
    let s = Search {
        g,
        p,
        vc,
        focus,
        base: p.potential(),
    };
    let root = Overlay::new(p);
    (1..=depth).find_map(|limit| {
        s.step(&root, 0, limit).map(|o| Move {
            kind: MoveKind::Compound,
            phi_before: s.base,
            phi_after: o.potential(),
            primitives: o.prims,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{apply_move, find_basic_move};
    use crate::partition::{classify_edges, classify_vertices, validate_partition};

    #[test]
    fn no_free_edges_no_move() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let p = PathPartition::from_sequences(4, vec![vec![0, 1, 2, 3]], vec![]);
        let ec = classify_edges(&g, &p).unwrap();
        let vc = classify_vertices(&g, &p, &ec);
        for d in 1..=5 {
            assert!(find_compound_move(&g, &p, &ec, &vc, d, &Focus::All).is_none());
        }
    }

    #[test]
    fn rotation_then_join() {
        // path 0-1-2-3 with chord 0-2; path 4-5 with edge 1-4.
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (0, 2), (4, 5), (1, 4)]).unwrap();
        let p = PathPartition::from_sequences(6, vec![vec![0, 1, 2, 3], vec![4, 5]], vec![]);
        let ec = classify_edges(&g, &p).unwrap();
        let vc = classify_vertices(&g, &p, &ec);
        assert!(find_basic_move(&g, &p).is_none());
        let m = find_compound_move(&g, &p, &ec, &vc, 3, &Focus::All).unwrap();
        let q = apply_move(&g, &p, &m).unwrap();
        assert!(validate_partition(&g, &q).is_empty());
        assert_eq!(q.len(), 1);
    }
}

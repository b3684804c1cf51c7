use super::overlay::Overlay;
use super::{Move, MoveKind};
use crate::graph::Graph;
use crate::partition::{Kind, PathPartition};
use std::collections::VecDeque;
use thiserror::Error;

/// The shifting process closed without an improving move. On a regular
/// graph with no basic move available this cannot happen.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("singleton {vertex}: shifting closed after {explored} states with no improving move")]
pub struct SingletonExhausted {
    pub vertex: usize,
    pub explored: usize,
}

/// Removes the lowest-numbered singleton.
///
/// The singleton `v` is first linked to any neighbor in V1, or attached
/// to a neighbor `y` inside a path of four or more vertices after cutting
/// that path at `y`. Failing both, `v` takes the middle of a three-vertex
/// path `x y z` and pushes `x` out as the new singleton; the search runs
/// breadth-first over such shifts.
pub fn eliminate_singletons(
    g: &Graph,
    p: &PathPartition,
) -> Result<Option<Move>, SingletonExhausted> {
    let Some(start) = p
        .components()
        .iter()
        .filter(|c| c.kind == Kind::Singleton)
        .map(|c| c.vertices[0])
        .min()
    else {
        return Ok(None);
    };
    let base = p.potential();
    let finish = |o: Overlay| Move {
        kind: MoveKind::Singleton,
        phi_before: base,
        phi_after: o.potential(),
        primitives: o.prims,
    };
    let mut seen = vec![false; g.n()];
    seen[start] = true;
    let mut queue = VecDeque::from([(Overlay::new(p), start)]);
    let mut explored = 0;
    while let Some((o, s)) = queue.pop_front() {
        explored += 1;
        for &y in g.neighbors(s) {
            if o.is_v1(y) {
                if let Some(best) = o.links(s, y).into_iter().find(|x| x.potential() < base) {
                    return Ok(Some(finish(best)));
                }
            }
        }
        for &y in g.neighbors(s) {
            if o.is_v1(y) || o.comp_len(y) < 4 {
                continue;
            }
            let (a, b) = o.partition_neighbors(y);
            for x in [a, b].into_iter().flatten() {
                let mut t = o.clone();
                if t.split(y, x) && t.join(s, y) && t.potential() < base {
                    return Ok(Some(finish(t)));
                }
            }
        }
        for &y in g.neighbors(s) {
            if o.is_v1(y) || o.comp_len(y) != 3 {
                continue;
            }
            let (a, b) = o.partition_neighbors(y);
            for x in [a, b].into_iter().flatten() {
                if seen[x] {
                    continue;
                }
                let mut t = o.clone();
                if t.split(x, y) && t.join(s, y) {
                    seen[x] = true;
                    queue.push_back((t, x));
                }
            }
        }
    }
    Err(SingletonExhausted {
        vertex: start,
        explored,
    })
}

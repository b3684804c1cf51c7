//! Partition rewirings. A [`Move`] is a short sequence of primitives that
//! strictly lowers the [`Potential`] of the partition it applies to.
//!
//! Four searches produce moves, cheapest first:
//! [`find_basic_move`], [`eliminate_singletons`], [`find_derived_move`] and
//! the bounded [`find_compound_move`].

mod basic;
mod compound;
mod derived;
mod overlay;
mod singleton;

pub use basic::find_basic_move;
pub use compound::{find_compound_move, Focus};
pub use derived::find_derived_move;
pub use singleton::{eliminate_singletons, SingletonExhausted};

pub use crate::partition::Potential;

use crate::graph::Graph;
use crate::partition::{Component, Kind, PathPartition};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Elementary rewirings, named by the vertices they touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Primitive {
    /// Remove the path edge `a b`.
    Split { a: usize, b: usize },
    /// Connect end `a` of one path to end `b` of another.
    Join { a: usize, b: usize },
    /// Connect the two ends of a path of three or more vertices.
    Close { a: usize, b: usize },
    /// Remove the cycle edge `a b`.
    Open { a: usize, b: usize },
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Primitive::Split { a, b } => write!(f, "split({a},{b})"),
            Primitive::Join { a, b } => write!(f, "join({a},{b})"),
            Primitive::Close { a, b } => write!(f, "close({a},{b})"),
            Primitive::Open { a, b } => write!(f, "open({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Basic,
    Singleton,
    Derived,
    Compound,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::Basic => "basic",
            MoveKind::Singleton => "singleton",
            MoveKind::Derived => "derived",
            MoveKind::Compound => "compound",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub primitives: Vec<Primitive>,
    pub phi_before: Potential,
    pub phi_after: Potential,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("primitive {step} ({prim}): {reason}")]
pub struct MoveError {
    pub step: usize,
    pub prim: Primitive,
    pub reason: &'static str,
}

struct Work {
    comps: Vec<Option<Component>>,
    owner: Vec<(usize, usize)>,
}

impl Work {
    fn new(p: &PathPartition) -> Self {
        let comps = p.components().iter().cloned().map(Some).collect();
        let owner = (0..p.n())
            .map(|v| (p.slot(v).comp, p.slot(v).pos))
            .collect();
        Self { comps, owner }
    }

    fn put(&mut self, c: Component) -> usize {
        let ci = self.comps.len();
        for (pos, &v) in c.vertices.iter().enumerate() {
            self.owner[v] = (ci, pos);
        }
        self.comps.push(Some(c));
        ci
    }

    fn take(&mut self, ci: usize) -> Component {
        self.comps[ci].take().expect("live component")
    }

    fn get(&self, v: usize) -> (&Component, usize) {
        let (ci, pos) = self.owner[v];
        (self.comps[ci].as_ref().expect("live component"), pos)
    }

    fn is_end(&self, v: usize) -> bool {
        let (c, pos) = self.get(v);
        c.kind != Kind::Cycle && (pos == 0 || pos + 1 == c.len())
    }

    fn apply(&mut self, g: &Graph, prim: Primitive) -> Result<(), &'static str> {
        match prim {
            Primitive::Split { a, b } => {
                let (c, pa) = self.get(a);
                let (_, pb) = self.get(b);
                if c.kind != Kind::Path
                    || self.owner[a].0 != self.owner[b].0
                    || pa.abs_diff(pb) != 1
                {
                    return Err("not a path edge");
                }
                let cut = pa.max(pb);
                let mut c = self.take(self.owner[a].0);
                let right = c.vertices.split_off(cut);
                self.put(Component::path(c.vertices));
                self.put(Component::path(right));
            }
            Primitive::Open { a, b } => {
                let (c, pa) = self.get(a);
                let (_, pb) = self.get(b);
                let k = c.len();
                if c.kind != Kind::Cycle || self.owner[a].0 != self.owner[b].0 {
                    return Err("not a cycle edge");
                }
                let start = if (pa + 1) % k == pb {
                    pb
                } else if (pb + 1) % k == pa {
                    pa
                } else {
                    return Err("not a cycle edge");
                };
                let mut c = self.take(self.owner[a].0);
                c.vertices.rotate_left(start);
                self.put(Component::path(c.vertices));
            }
            Primitive::Join { a, b } => {
                if !g.has_edge(a, b) {
                    return Err("no such edge");
                }
                if !self.is_end(a) || !self.is_end(b) || self.owner[a].0 == self.owner[b].0 {
                    return Err("not ends of two different paths");
                }
                let (ca, cb) = (self.owner[a].0, self.owner[b].0);
                let mut x = self.take(ca);
                let mut y = self.take(cb);
                if x.vertices.last() != Some(&a) {
                    x.vertices.reverse();
                }
                if y.vertices.first() != Some(&b) {
                    y.vertices.reverse();
                }
                x.vertices.append(&mut y.vertices);
                self.put(Component::path(x.vertices));
            }
            Primitive::Close { a, b } => {
                if !g.has_edge(a, b) {
                    return Err("no such edge");
                }
                let (c, _) = self.get(a);
                let ends = (c.vertices.first().copied(), c.vertices.last().copied());
                if c.kind != Kind::Path
                    || c.len() < 3
                    || (ends != (Some(a), Some(b)) && ends != (Some(b), Some(a)))
                {
                    return Err("not the ends of one path of three or more vertices");
                }
                let c = self.take(self.owner[a].0);
                self.put(Component::cycle(c.vertices));
            }
        }
        Ok(())
    }

    fn finish(self, n: usize) -> PathPartition {
        PathPartition::from_components(n, self.comps.into_iter().flatten().collect())
    }
}

/// Applies primitives in order. Surviving components keep their relative
/// order; rebuilt ones are appended.
pub fn apply_primitives(
    g: &Graph,
    p: &PathPartition,
    prims: &[Primitive],
) -> Result<PathPartition, MoveError> {
    let mut w = Work::new(p);
    for (step, &prim) in prims.iter().enumerate() {
        w.apply(g, prim)
            .map_err(|reason| MoveError { step, prim, reason })?;
    }
    Ok(w.finish(p.n()))
}

pub fn apply_move(g: &Graph, p: &PathPartition, mv: &Move) -> Result<PathPartition, MoveError> {
    apply_primitives(g, p, &mv.primitives)
}

//! Tentative rewirings on top of a base partition. Touched components are
//! rewritten as chains of base segments, so a trial move costs time in the
//! number of primitives rather than in path length.

use super::Primitive;
use crate::partition::{Kind, PathPartition, Potential};

#[derive(Debug, Clone, Copy)]
struct Seg {
    comp: u32,
    lo: u32,
    hi: u32,
    rev: bool,
}

impl Seg {
    fn len(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    fn at(self, p: &PathPartition, t: usize) -> usize {
        let pos = if self.rev {
            self.hi as usize - t
        } else {
            self.lo as usize + t
        };
        p.component(self.comp as usize).vertices[pos]
    }

    fn offset_of(self, comp: usize, pos: usize) -> Option<usize> {
        let (lo, hi) = (self.lo as usize, self.hi as usize);
        (self.comp as usize == comp && lo <= pos && pos <= hi).then(|| {
            if self.rev {
                hi - pos
            } else {
                pos - lo
            }
        })
    }

    /// First part keeps offsets `0..=t`.
    fn cut(self, t: usize) -> (Seg, Seg) {
        let t = t as u32;
        if self.rev {
            (
                Seg {
                    lo: self.hi - t,
                    ..self
                },
                Seg {
                    hi: self.hi - t - 1,
                    ..self
                },
            )
        } else {
            (
                Seg {
                    hi: self.lo + t,
                    ..self
                },
                Seg {
                    lo: self.lo + t + 1,
                    ..self
                },
            )
        }
    }

    fn flipped(self) -> Seg {
        Seg {
            rev: !self.rev,
            ..self
        }
    }
}

#[derive(Debug, Clone)]
struct Chain {
    segs: Vec<Seg>,
    cyclic: bool,
    len: usize,
}

impl Chain {
    fn at(&self, p: &PathPartition, mut idx: usize) -> usize {
        for s in &self.segs {
            if idx < s.len() {
                return s.at(p, idx);
            }
            idx -= s.len();
        }
        unreachable!("chain index out of range")
    }

    fn first(&self, p: &PathPartition) -> usize {
        self.segs[0].at(p, 0)
    }

    fn last(&self, p: &PathPartition) -> usize {
        let s = self.segs[self.segs.len() - 1];
        s.at(p, s.len() - 1)
    }

    fn index_of(&self, comp: usize, pos: usize) -> Option<usize> {
        let mut base = 0;
        for s in &self.segs {
            if let Some(t) = s.offset_of(comp, pos) {
                return Some(base + t);
            }
            base += s.len();
        }
        None
    }

    fn reversed(&self) -> Chain {
        Chain {
            segs: self.segs.iter().rev().map(|s| s.flipped()).collect(),
            cyclic: self.cyclic,
            len: self.len,
        }
    }

    /// Left part holds indices `0..=idx`.
    fn split_after(&self, idx: usize) -> (Chain, Chain) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut base = 0;
        for &s in &self.segs {
            let end = base + s.len();
            if end <= idx + 1 {
                left.push(s);
            } else if base > idx {
                right.push(s);
            } else {
                let (a, b) = s.cut(idx - base);
                left.push(a);
                right.push(b);
            }
            base = end;
        }
        (
            Chain {
                segs: left,
                cyclic: false,
                len: idx + 1,
            },
            Chain {
                segs: right,
                cyclic: false,
                len: self.len - idx - 1,
            },
        )
    }

    fn concat(mut self, other: Chain) -> Chain {
        self.len += other.len;
        self.segs.extend(other.segs);
        self
    }
}

/// Identity of a live component inside an overlay.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CompId {
    Base(usize),
    Chain(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Overlay<'a> {
    p: &'a PathPartition,
    chains: Vec<Chain>,
    touched: Vec<usize>,
    comps: i64,
    cycles: i64,
    singles: i64,
    pub prims: Vec<Primitive>,
}

impl<'a> Overlay<'a> {
    pub fn new(p: &'a PathPartition) -> Self {
        Self {
            p,
            chains: Vec::new(),
            touched: Vec::new(),
            comps: p.len() as i64,
            cycles: p.cycle_count() as i64,
            singles: p.singleton_count() as i64,
            prims: Vec::new(),
        }
    }

    pub fn potential(&self) -> Potential {
        Potential {
            components: self.comps,
            neg_cycles: -self.cycles,
            singletons: self.singles,
        }
    }

    pub fn components(&self) -> i64 {
        self.comps
    }

    pub fn cycles(&self) -> i64 {
        self.cycles
    }

    fn locate(&self, v: usize) -> (CompId, usize) {
        let s = self.p.slot(v);
        if self.touched.contains(&s.comp) {
            for (ci, c) in self.chains.iter().enumerate() {
                if let Some(i) = c.index_of(s.comp, s.pos) {
                    return (CompId::Chain(ci), i);
                }
            }
            unreachable!("touched vertex {v} not in any chain");
        }
        (CompId::Base(s.comp), s.pos)
    }

    fn touch(&mut self, v: usize) -> (usize, usize) {
        let comp = self.p.comp_of(v);
        if !self.touched.contains(&comp) {
            let c = self.p.component(comp);
            self.chains.push(Chain {
                segs: vec![Seg {
                    comp: comp as u32,
                    lo: 0,
                    hi: c.len() as u32 - 1,
                    rev: false,
                }],
                cyclic: c.kind == Kind::Cycle,
                len: c.len(),
            });
            self.touched.push(comp);
        }
        match self.locate(v) {
            (CompId::Chain(ci), i) => (ci, i),
            (CompId::Base(_), _) => unreachable!(),
        }
    }

    pub fn comp_id(&self, v: usize) -> CompId {
        self.locate(v).0
    }

    pub fn comp_len(&self, v: usize) -> usize {
        match self.locate(v).0 {
            CompId::Base(c) => self.p.component(c).len(),
            CompId::Chain(ci) => self.chains[ci].len,
        }
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        match self.locate(v).0 {
            CompId::Base(c) => self.p.component(c).kind == Kind::Cycle,
            CompId::Chain(ci) => self.chains[ci].cyclic,
        }
    }

    /// End of a path, or a singleton.
    pub fn is_end(&self, v: usize) -> bool {
        let (id, i) = self.locate(v);
        let (len, cyclic) = match id {
            CompId::Base(c) => {
                let c = self.p.component(c);
                (c.len(), c.kind == Kind::Cycle)
            }
            CompId::Chain(ci) => (self.chains[ci].len, self.chains[ci].cyclic),
        };
        !cyclic && (i == 0 || i + 1 == len)
    }

    pub fn is_v1(&self, v: usize) -> bool {
        self.is_end(v) || self.on_cycle(v)
    }

    /// Neighbors inside the component (wrapping on cycles).
    pub fn partition_neighbors(&self, v: usize) -> (Option<usize>, Option<usize>) {
        match self.locate(v) {
            (CompId::Base(_), _) => self.p.partition_neighbors(v),
            (CompId::Chain(ci), i) => {
                let c = &self.chains[ci];
                if c.cyclic {
                    (
                        Some(c.at(self.p, (i + c.len - 1) % c.len)),
                        Some(c.at(self.p, (i + 1) % c.len)),
                    )
                } else {
                    (
                        (i > 0).then(|| c.at(self.p, i - 1)),
                        (i + 1 < c.len).then(|| c.at(self.p, i + 1)),
                    )
                }
            }
        }
    }

    pub fn is_partition_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = self.partition_neighbors(u);
        a == Some(v) || b == Some(v)
    }

    /// Ends of rewritten paths, in chain order.
    pub fn fresh_ends(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in self.chains.iter().filter(|c| !c.cyclic) {
            out.push(c.first(self.p));
            if c.len > 1 {
                out.push(c.last(self.p));
            }
        }
        out
    }

    fn count(&mut self, c: &Chain, sign: i64) {
        self.comps += sign;
        if c.cyclic {
            self.cycles += sign;
        } else if c.len == 1 {
            self.singles += sign;
        }
    }

    fn replace(&mut self, ci: usize, new: Vec<Chain>) {
        let old = self.chains.swap_remove(ci);
        self.count(&old, -1);
        for c in new {
            self.count(&c, 1);
            self.chains.push(c);
        }
    }

    pub fn split(&mut self, a: usize, b: usize) -> bool {
        if self.on_cycle(a) || !self.is_partition_edge(a, b) {
            return false;
        }
        let (ci, ia) = self.touch(a);
        let (_, ib) = self.touch(b);
        let (l, r) = self.chains[ci].split_after(ia.min(ib));
        self.replace(ci, vec![l, r]);
        self.prims.push(Primitive::Split { a, b });
        true
    }

    pub fn open(&mut self, a: usize, b: usize) -> bool {
        if !self.on_cycle(a) || !self.is_partition_edge(a, b) {
            return false;
        }
        let (ci, ia) = self.touch(a);
        let (_, ib) = self.touch(b);
        let c = &self.chains[ci];
        let lo = if (ia + 1) % c.len == ib { ia } else { ib };
        let opened = if lo + 1 == c.len {
            Chain {
                cyclic: false,
                ..c.clone()
            }
        } else {
            let (l, r) = c.split_after(lo);
            r.concat(l)
        };
        self.replace(ci, vec![opened]);
        self.prims.push(Primitive::Open { a, b });
        true
    }

    /// Caller guarantees the edge `a b` exists in the graph.
    pub fn join(&mut self, a: usize, b: usize) -> bool {
        if !self.is_end(a) || !self.is_end(b) || self.comp_id(a) == self.comp_id(b) {
            return false;
        }
        let (ca, ia) = self.touch(a);
        let (cb, ib) = self.touch(b);
        let mut x = self.chains[ca].clone();
        let mut y = self.chains[cb].clone();
        if ia == 0 && x.len > 1 {
            x = x.reversed();
        }
        if ib != 0 {
            y = y.reversed();
        }
        let (hi, lo) = (ca.max(cb), ca.min(cb));
        let old_hi = self.chains.swap_remove(hi);
        let old_lo = self.chains.swap_remove(lo);
        self.count(&old_hi, -1);
        self.count(&old_lo, -1);
        let joined = x.concat(y);
        self.count(&joined, 1);
        self.chains.push(joined);
        self.prims.push(Primitive::Join { a, b });
        true
    }

    /// Caller guarantees the edge `a b` exists in the graph.
    pub fn close(&mut self, a: usize, b: usize) -> bool {
        if a == b
            || !self.is_end(a)
            || !self.is_end(b)
            || self.comp_id(a) != self.comp_id(b)
            || self.comp_len(a) < 3
        {
            return false;
        }
        let (ci, _) = self.touch(a);
        let mut c = self.chains[ci].clone();
        c.cyclic = true;
        self.replace(ci, vec![c]);
        self.prims.push(Primitive::Close { a, b });
        true
    }

    /// Potential after one link between `a` and `b`, without building it.
    /// All variants [`Self::links`] would produce share it.
    pub fn link_potential(&self, a: usize, b: usize) -> Option<Potential> {
        if self.is_partition_edge(a, b) {
            return None;
        }
        let mut phi = self.potential();
        if self.comp_id(a) == self.comp_id(b) {
            if !(self.is_end(a) && self.is_end(b)) || a == b || self.comp_len(a) < 3 {
                return None;
            }
            phi.neg_cycles -= 1;
            return Some(phi);
        }
        for v in [a, b] {
            if self.on_cycle(v) {
                phi.neg_cycles += 1;
            } else if !self.is_end(v) {
                return None;
            } else if self.comp_len(v) == 1 {
                phi.singletons -= 1;
            }
        }
        phi.components -= 1;
        Some(phi)
    }

    /// Every way to connect `a` and `b` (both in V1 of this overlay) in
    /// one link: a join, a close, or a join after opening the cycle(s)
    /// they sit on.
    pub fn links(&self, a: usize, b: usize) -> Vec<Overlay<'a>> {
        let mut out = Vec::new();
        if self.is_partition_edge(a, b) {
            return out;
        }
        let same = self.comp_id(a) == self.comp_id(b);
        if same {
            if self.is_end(a) && self.is_end(b) {
                let mut o = self.clone();
                if o.close(a, b) {
                    out.push(o);
                }
            }
            return out;
        }
        let opens = |v: usize| -> Vec<Option<usize>> {
            if self.on_cycle(v) {
                let (x, y) = self.partition_neighbors(v);
                vec![y, x]
            } else if self.is_end(v) {
                vec![None]
            } else {
                vec![]
            }
        };
        for oa in opens(a) {
            for ob in opens(b) {
                let mut o = self.clone();
                if let Some(x) = oa {
                    o.open(a, x);
                }
                if let Some(y) = ob {
                    o.open(b, y);
                }
                if o.join(a, b) {
                    out.push(o);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_disjoint_cliques;
    use crate::moves::apply_primitives;
    use crate::partition::validate_partition;

    fn check(o: &Overlay, p: &PathPartition) {
        let g = gen_disjoint_cliques(6, 2, 0);
        let q = apply_primitives(&g, p, &o.prims).expect("overlay primitives replay");
        assert!(validate_partition(&g, &q).is_empty());
        assert_eq!(q.potential(), o.potential());
        for v in 0..q.n() {
            assert_eq!(
                q.is_path_end(v) || q.kind_of(v) == Kind::Singleton,
                o.is_end(v),
                "v={v}"
            );
            assert_eq!(q.kind_of(v) == Kind::Cycle, o.on_cycle(v));
            let (a, b) = q.partition_neighbors(v);
            let (c, d) = o.partition_neighbors(v);
            let mut x = [a, b];
            let mut y = [c, d];
            x.sort();
            y.sort();
            assert_eq!(x, y, "neighbors of {v}");
        }
    }

    #[test]
    fn overlay_agrees_with_replay() {
        let g = gen_disjoint_cliques(6, 2, 0);
        let mut comp: Vec<Vec<usize>> = vec![vec![], vec![]];
        for v in 0..14 {
            let side = if comp[0].is_empty() || g.has_edge(comp[0][0], v) {
                0
            } else {
                1
            };
            comp[side].push(v);
        }
        let p = PathPartition::from_sequences(14, vec![comp[0].clone()], vec![comp[1].clone()]);
        let (a, b) = (comp[0][2], comp[0][3]);
        let mut o = Overlay::new(&p);
        assert!(o.split(a, b));
        check(&o, &p);
        let (c0, c1) = (comp[1][4], comp[1][5]);
        assert!(o.open(c0, c1));
        check(&o, &p);
        let e = comp[0][0];
        assert!(o.close(e, a));
        check(&o, &p);
        assert!(!o.join(e, b));
        let mut o2 = o.clone();
        assert!(o2.split(comp[0][5], comp[0][4]));
        check(&o2, &p);
        assert!(!o2.join(comp[0][4], b));
        assert!(o2.join(b, comp[0][6]));
        check(&o2, &p);
        assert!(o2.close(comp[0][4], comp[0][5]));
        check(&o2, &p);
        assert_eq!(o2.cycles(), 2);
    }
}

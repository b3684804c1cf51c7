use super::blocks::{decompose_blocks_with, Block, Kind4Reading};
use super::{fmt_q, q, PointLedger, RuleSet, Q};
use crate::graph::Graph;
use crate::partition::{Kind, PathPartition, VClass, VertexClassification};
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Per-class vertex floors.
    ClassFloor,
    /// Dangerous V3 whose free edges all reach V5 or V2a.
    DangerousFloor,
    /// Every block at least -5/3.
    BlockFloor,
    /// Consecutive blocks: first non-negative, pair non-negative, or pair
    /// at least -1 with the second of Kind 4.
    Trichotomy,
    /// A V2 run of length k > 1 holds at least k/3 - 4/3.
    RunBound,
    /// Kind 2 blocks are non-negative.
    Kind2Floor,
    /// Kind 3 blocks hold at least 1/3.
    Kind3Floor,
    /// Non-last tails are one V3 or two V4.
    BlockStructure,
    /// Degree five: internal vertices of a path sum to at least -1.
    InternalFloor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditViolation {
    pub check: Check,
    pub component: usize,
    pub vertices: Vec<usize>,
    pub value: String,
    pub floor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub reading: Kind4Reading,
    pub paths: usize,
    pub blocks: usize,
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Auditor<'a> {
    ledger: &'a PointLedger,
    out: Vec<AuditViolation>,
}

impl Auditor<'_> {
    fn floor(&mut self, check: Check, component: usize, vertices: Vec<usize>, floor: Q) -> Q {
        let value = self.ledger.sum_over(vertices.iter().copied());
        if value < floor {
            self.out.push(AuditViolation {
                check,
                component,
                vertices,
                value: fmt_q(&value),
                floor: fmt_q(&floor),
            });
        }
        value
    }
}

fn class_floor(vc: &VertexClassification, v: usize, rs: RuleSet) -> Option<Q> {
    let c = vc.class[v];
    match rs {
        RuleSet::D6 => match c {
            VClass::V1 => None,
            VClass::V2a | VClass::V2b => {
                let to_paths = vc.balanced_to_path[v].len();
                let mut f = match to_paths {
                    0 => q(-1, 3),
                    1 => q(-2, 3),
                    2 => q(-1, 1),
                    _ => q(-5, 3),
                };
                if c == VClass::V2a && vc.balanced_count(v) == 1 {
                    f = f.max(q(-1, 6));
                }
                Some(f)
            }
            VClass::V3 => Some(q(1, 1)),
            VClass::V4 => Some(q(2, 3)),
            VClass::V5 => Some(Q::zero()),
        },
        RuleSet::D5 => match c {
            VClass::V1 => None,
            VClass::V2a | VClass::V2b => Some(q(-1, 1)),
            VClass::V3 | VClass::V4 => Some(q(1, 1)),
            VClass::V5 => Some(Q::zero()),
        },
    }
}

pub fn audit_block_bounds(
    g: &Graph,
    p: &PathPartition,
    vc: &VertexClassification,
    ledger: &PointLedger,
) -> AuditReport {
    audit_with_reading(g, p, vc, ledger, Kind4Reading::Narrow)
}

/// Checks the vertex, run and block floors that the discharging argument
/// relies on. Under [`RuleSet::D5`] the floors are those of the degree-five
/// argument and block pairs are not examined.
pub fn audit_with_reading(
    g: &Graph,
    p: &PathPartition,
    vc: &VertexClassification,
    ledger: &PointLedger,
    reading: Kind4Reading,
) -> AuditReport {
    let rs = ledger.ruleset;
    let mut a = Auditor {
        ledger,
        out: Vec::new(),
    };
    for v in 0..g.n() {
        if let Some(f) = class_floor(vc, v, rs) {
            a.floor(Check::ClassFloor, p.comp_of(v), vec![v], f);
        }
        if rs == RuleSet::D6 && vc.dangerous[v] {
            let good = g.neighbors(v).iter().all(|&u| {
                p.is_partition_edge(v, u) || matches!(vc.class[u], VClass::V5 | VClass::V2a)
            });
            if good {
                a.floor(Check::DangerousFloor, p.comp_of(v), vec![v], q(5, 3));
            }
        }
    }
    let mut paths = 0;
    let mut nblocks = 0;
    for (ci, c) in p.components().iter().enumerate() {
        if c.kind != Kind::Path {
            continue;
        }
        paths += 1;
        if rs == RuleSet::D5 && c.len() > 2 {
            a.floor(
                Check::InternalFloor,
                ci,
                c.vertices[1..c.len() - 1].to_vec(),
                q(-1, 1),
            );
        }
        let classes: Vec<VClass> = c.vertices.iter().map(|&v| vc.class[v]).collect();
        let blocks = match decompose_blocks_with(&classes, reading) {
            Ok(b) => b,
            Err(e) => {
                a.out.push(AuditViolation {
                    check: Check::BlockStructure,
                    component: ci,
                    vertices: vec![c.vertices[e.position]],
                    value: format!("{:?}", e.tail),
                    floor: "[V3] or [V4, V4]".into(),
                });
                continue;
            }
        };
        nblocks += blocks.len();
        let ids = |pos: &[usize]| pos.iter().map(|&i| c.vertices[i]).collect::<Vec<_>>();
        let members = |b: &Block| ids(&b.x).into_iter().chain(ids(&b.p)).collect::<Vec<_>>();
        let mut totals = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let k = b.x.len();
            if k > 1 {
                a.floor(Check::RunBound, ci, ids(&b.x), q(k as i64 - 4, 3));
            }
            if rs == RuleSet::D5 {
                continue;
            }
            let t = a.floor(Check::BlockFloor, ci, members(b), q(-5, 3));
            match b.kind {
                2 => {
                    a.floor(Check::Kind2Floor, ci, members(b), Q::zero());
                }
                3 => {
                    a.floor(Check::Kind3Floor, ci, members(b), q(1, 3));
                }
                _ => {}
            }
            totals.push(t);
        }
        if rs == RuleSet::D5 {
            continue;
        }
        for i in 1..blocks.len() {
            let (t0, t1) = (&totals[i - 1], &totals[i]);
            let pair = t0 + t1;
            let ok = !t0.is_negative()
                || !pair.is_negative()
                || (pair >= q(-1, 1) && blocks[i].kind == 4);
            if !ok {
                let mut vs = members(&blocks[i - 1]);
                vs.extend(members(&blocks[i]));
                a.out.push(AuditViolation {
                    check: Check::Trichotomy,
                    component: ci,
                    vertices: vs,
                    value: format!("{} then {}", fmt_q(t0), fmt_q(t1)),
                    floor: "B_i >= 0 or pair >= 0 or (pair >= -1 and Kind 4)".into(),
                });
            }
        }
    }
    AuditReport {
        reading,
        paths,
        blocks: nblocks,
        violations: a.out,
    }
}

//! Point redistribution over a partition and the per-component check.
//!
//! Every vertex starts with one point. Vertices pass fractions of points
//! along free edges according to a [`RuleSet`]; if afterwards every
//! component holds at least the threshold, the number of components is at
//! most `n / threshold`. All arithmetic is exact.

mod audit;
mod blocks;
mod certificate;

pub use audit::{audit_block_bounds, audit_with_reading, AuditReport, AuditViolation, Check};
pub use blocks::{decompose_blocks, decompose_blocks_with, Block, BlockError, Kind4Reading};
pub use certificate::{certify, CertViolation, Certificate, ComponentTotal};

use crate::graph::Graph;
use crate::partition::{EdgeClassification, Kind, PathPartition, VClass, VertexClassification};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `"num/den"`, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub(crate) fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

fn ser_qs<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fmt_q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSet {
    /// Degree six: all five rules, threshold 7.
    D6,
    /// Degree five without K6: rules 3 and 4 dropped, cycle transfers
    /// scaled by 4/3, threshold 19/3.
    D5,
}

impl RuleSet {
    pub fn for_degree(d: usize) -> Option<Self> {
        match d {
            6 => Some(RuleSet::D6),
            5 => Some(RuleSet::D5),
            _ => None,
        }
    }

    pub fn degree(self) -> usize {
        match self {
            RuleSet::D6 => 6,
            RuleSet::D5 => 5,
        }
    }

    pub fn threshold(self) -> Q {
        match self {
            RuleSet::D6 => q(7, 1),
            RuleSet::D5 => q(19, 3),
        }
    }

    /// Largest component count a passing certificate allows.
    pub fn bound(self, n: usize) -> usize {
        match self {
            RuleSet::D6 => n / 7,
            RuleSet::D5 => 3 * n / 19,
        }
    }

    /// Rule 1 amount toward a vertex on a cycle of `size` vertices.
    pub fn cycle_amount(self, size: usize) -> Option<Q> {
        if size > 6 {
            return None;
        }
        let base = q(1, size as i64);
        Some(match self {
            RuleSet::D6 => base,
            RuleSet::D5 => base * q(4, 3),
        })
    }

    pub fn amount(self, rule: Rule) -> Option<Q> {
        match (self, rule) {
            (_, Rule::R1) => None,
            (_, Rule::R2) => Some(q(2, 3)),
            (RuleSet::D6, Rule::R3) => Some(q(1, 6)),
            (RuleSet::D6, Rule::R4) => Some(q(1, 12)),
            (RuleSet::D5, Rule::R3 | Rule::R4) => None,
            (_, Rule::R5) => Some(q(1, 4)),
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleSet::D6 => "d6",
            RuleSet::D5 => "d5",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    #[serde(serialize_with = "ser_q")]
    pub amount: Q,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointLedger {
    pub ruleset: RuleSet,
    #[serde(serialize_with = "ser_qs")]
    pub balance: Vec<Q>,
    pub transfers: Vec<Transfer>,
}

impl PointLedger {
    pub fn total(&self) -> Q {
        self.balance.iter().fold(Q::zero(), |acc, b| acc + b)
    }

    pub fn sum_over(&self, vs: impl IntoIterator<Item = usize>) -> Q {
        vs.into_iter()
            .fold(Q::zero(), |acc, v| acc + &self.balance[v])
    }

    pub fn rule_counts(&self) -> BTreeMap<Rule, usize> {
        let mut m = BTreeMap::new();
        for t in &self.transfers {
            *m.entry(t.rule).or_insert(0) += 1;
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("vertex {0} is a singleton; the rules need a singleton-free partition")]
    Singleton(usize),
}

/// Runs the transfer rules once over every free edge, in increasing order
/// of the giving vertex and then the receiving one.
pub fn apply_rules(
    g: &Graph,
    p: &PathPartition,
    ec: &EdgeClassification,
    vc: &VertexClassification,
    rs: RuleSet,
) -> Result<PointLedger, DischargeError> {
    if let Some(c) = p.components().iter().find(|c| c.kind == Kind::Singleton) {
        return Err(DischargeError::Singleton(c.vertices[0]));
    }
    let n = g.n();
    let mut balance = vec![Q::one(); n];
    let mut transfers = Vec::new();
    for v in 0..n {
        let cv = vc.class[v];
        if cv == VClass::V1 || cv == VClass::V3 {
            continue;
        }
        let one_v2_nbr = vc.v2_path_neighbors(p, v) == 1;
        for &u in g.neighbors(v) {
            if !ec.is_free(g, v, u) {
                continue;
            }
            let cu = vc.class[u];
            let hit = match cv {
                VClass::V2a | VClass::V2b if cu == VClass::V1 => {
                    if p.kind_of(u) == Kind::Cycle {
                        rs.cycle_amount(p.component(p.comp_of(u)).len())
                            .map(|a| (a, Rule::R1))
                    } else {
                        rs.amount(Rule::R2).map(|a| (a, Rule::R2))
                    }
                }
                VClass::V2a if vc.dangerous[u] => rs.amount(Rule::R3).map(|a| (a, Rule::R3)),
                VClass::V2b | VClass::V4 if vc.dangerous[u] && one_v2_nbr => {
                    rs.amount(Rule::R4).map(|a| (a, Rule::R4))
                }
                VClass::V5 if cu != VClass::V5 => rs.amount(Rule::R5).map(|a| (a, Rule::R5)),
                _ => None,
            };
            if let Some((amount, rule)) = hit {
                balance[v] -= &amount;
                balance[u] += &amount;
                transfers.push(Transfer {
                    from: v,
                    to: u,
                    amount,
                    rule,
                });
            }
        }
    }
    Ok(PointLedger {
        ruleset: rs,
        balance,
        transfers,
    })
}

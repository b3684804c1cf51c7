use super::{fmt_q, ser_q, PointLedger, RuleSet, Transfer, Q};
use crate::graph::Graph;
use crate::partition::{Kind, PathPartition};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentTotal {
    pub component: usize,
    pub kind: Kind,
    pub size: usize,
    #[serde(serialize_with = "ser_q")]
    pub total: Q,
}

/// A component below the threshold, with every transfer that crossed
/// its boundary or stayed inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertViolation {
    pub component: usize,
    #[serde(serialize_with = "ser_q")]
    pub total: Q,
    pub transfers: Vec<Transfer>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub ruleset: RuleSet,
    pub n: usize,
    #[serde(serialize_with = "ser_q")]
    pub threshold: Q,
    pub components: usize,
    pub bound: usize,
    #[serde(serialize_with = "ser_q")]
    pub ledger_sum: Q,
    pub verdict: bool,
    pub rule_counts: BTreeMap<String, usize>,
    pub totals: Vec<ComponentTotal>,
    pub violations: Vec<CertViolation>,
}

impl Certificate {
    pub fn min_total(&self) -> Option<&Q> {
        self.totals.iter().map(|t| &t.total).min()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} components (bound {}), min total {}, {}",
            self.ruleset,
            self.components,
            self.bound,
            self.min_total().map(fmt_q).unwrap_or_else(|| "-".into()),
            if self.verdict { "pass" } else { "FAIL" }
        )
    }
}

/// Sums balances per component and compares them with the threshold. A
/// pass also requires the component count to respect the implied bound.
pub fn certify(_g: &Graph, p: &PathPartition, ledger: &PointLedger, rs: RuleSet) -> Certificate {
    let threshold = rs.threshold();
    let totals: Vec<ComponentTotal> = p
        .components()
        .iter()
        .enumerate()
        .map(|(ci, c)| ComponentTotal {
            component: ci,
            kind: c.kind,
            size: c.len(),
            total: ledger.sum_over(c.vertices.iter().copied()),
        })
        .collect();
    let violations: Vec<CertViolation> = totals
        .iter()
        .filter(|t| t.total < threshold)
        .map(|t| CertViolation {
            component: t.component,
            total: t.total.clone(),
            transfers: ledger
                .transfers
                .iter()
                .filter(|x| p.comp_of(x.from) == t.component || p.comp_of(x.to) == t.component)
                .cloned()
                .collect(),
        })
        .collect();
    let bound = rs.bound(p.n());
    let rule_counts = ledger
        .rule_counts()
        .into_iter()
        .map(|(r, k)| (format!("{r:?}"), k))
        .collect();
    Certificate {
        ruleset: rs,
        n: p.n(),
        threshold,
        components: p.len(),
        bound,
        ledger_sum: ledger.total(),
        verdict: violations.is_empty() && p.len() <= bound,
        rule_counts,
        totals,
        violations,
    }
}

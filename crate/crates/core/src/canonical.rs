//! Initial partitions, the move loop, and the end-to-end solve pipeline.

use crate::discharge::{
    apply_rules, audit_block_bounds, certify, AuditReport, Certificate, DischargeError,
    PointLedger, RuleSet,
};
use crate::graph::{contains_k6, Graph};
use crate::moves::{
    apply_move, eliminate_singletons, find_basic_move, find_compound_move, find_derived_move,
    Focus, Move, MoveKind, Potential, Primitive, SingletonExhausted,
};
use crate::partition::{
    classify_edges, classify_vertices, CrossCycleEdge, PartitionJson, PathPartition,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};
use thiserror::Error;

pub const DEFAULT_DEPTH: usize = 4;

fn unused_degree(g: &Graph, used: &[bool], v: usize) -> usize {
    g.neighbors(v).iter().filter(|&&u| !used[u]).count()
}

fn next_step(g: &Graph, used: &[bool], v: usize) -> Option<usize> {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|&u| !used[u])
        .min_by_key(|&u| (unused_degree(g, used, u), u))
}

/// Greedy path growth. Start vertices are visited in a seeded order; each
/// path is extended at both ends, always toward the unused neighbor with
/// the fewest unused neighbors of its own (lowest id on ties).
pub fn initial_partition(g: &Graph, seed: u64) -> PathPartition {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut used = vec![false; n];
    let mut paths = Vec::new();
    for s in order {
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut path = VecDeque::from([s]);
        while let Some(u) = next_step(g, &used, *path.back().unwrap()) {
            used[u] = true;
            path.push_back(u);
        }
        while let Some(u) = next_step(g, &used, *path.front().unwrap()) {
            used[u] = true;
            path.push_front(u);
        }
        paths.push(path.into());
    }
    PathPartition::from_sequences(n, paths, vec![])
}

/// An arbitrary valid partition: random walks of random length, some
/// closed into cycles when their ends are adjacent. Meant for fuzzing.
pub fn random_partition(g: &Graph, seed: u64) -> PathPartition {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut used = vec![false; n];
    let (mut paths, mut cycles) = (Vec::new(), Vec::new());
    for s in order {
        if used[s] {
            continue;
        }
        used[s] = true;
        let target = rng.gen_range(1..=n.min(12));
        let mut path = vec![s];
        while path.len() < target {
            let last = *path.last().unwrap();
            let free: Vec<usize> = g
                .neighbors(last)
                .iter()
                .copied()
                .filter(|&u| !used[u])
                .collect();
            let Some(&u) = free.choose(&mut rng) else {
                break;
            };
            used[u] = true;
            path.push(u);
        }
        if path.len() >= 3 && g.has_edge(path[0], *path.last().unwrap()) && rng.gen_bool(0.5) {
            cycles.push(path);
        } else {
            paths.push(path);
        }
    }
    PathPartition::from_sequences(n, paths, cycles)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub step: usize,
    pub kind: MoveKind,
    pub primitives: Vec<Primitive>,
    pub phi_before: Potential,
    pub phi_after: Potential,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub partition: PartitionJson,
    pub components: usize,
    pub cycles: usize,
    pub move_counts: BTreeMap<MoveKind, usize>,
    pub trace_len: usize,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_ms")]
    pub wall_time: Option<Duration>,
    #[serde(skip)]
    pub final_partition: PathPartition,
    #[serde(skip)]
    pub trace: Vec<TraceEntry>,
}

fn ser_ms<S: serde::Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
    match d {
        Some(d) => s.serialize_f64(d.as_secs_f64() * 1000.0),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error(transparent)]
    Singleton(#[from] SingletonExhausted),
    #[error("edge {0:?} joins two cycles with no basic move available")]
    CrossCycle((usize, usize)),
}

impl From<CrossCycleEdge> for CanonError {
    fn from(e: CrossCycleEdge) -> Self {
        CanonError::CrossCycle((e.0, e.1))
    }
}

struct Driver<'g> {
    g: &'g Graph,
    p: PathPartition,
    trace: Vec<TraceEntry>,
}

impl Driver<'_> {
    fn accept(&mut self, m: Move) {
        let q = apply_move(self.g, &self.p, &m).expect("search produced an inapplicable move");
        debug_assert!(q.potential() < self.p.potential());
        self.trace.push(TraceEntry {
            step: self.trace.len(),
            kind: m.kind,
            primitives: m.primitives,
            phi_before: m.phi_before,
            phi_after: m.phi_after,
        });
        self.p = q;
    }

    /// One move, cheapest search first. `extra` is a further compound
    /// search tried after the global one.
    fn next(
        &self,
        depth: usize,
        extra: Option<(usize, &Focus)>,
    ) -> Result<Option<Move>, CanonError> {
        let (g, p) = (self.g, &self.p);
        if let Some(m) = find_basic_move(g, p) {
            return Ok(Some(m));
        }
        if let Some(m) = eliminate_singletons(g, p)? {
            return Ok(Some(m));
        }
        let ec = classify_edges(g, p)?;
        let vc = classify_vertices(g, p, &ec);
        if let Some(m) = find_derived_move(g, p, &ec, &vc) {
            return Ok(Some(m));
        }
        if let Some(m) = find_compound_move(g, p, &ec, &vc, depth, &Focus::All) {
            return Ok(Some(m));
        }
        Ok(extra.and_then(|(d, f)| find_compound_move(g, p, &ec, &vc, d, f)))
    }

    fn run(&mut self, depth: usize, extra: Option<(usize, &Focus)>) -> Result<(), CanonError> {
        while let Some(m) = self.next(depth, extra)? {
            self.accept(m);
        }
        Ok(())
    }

    fn report(self, wall: Duration) -> SolveReport {
        let mut move_counts = BTreeMap::new();
        for t in &self.trace {
            *move_counts.entry(t.kind).or_insert(0) += 1;
        }
        SolveReport {
            partition: PartitionJson::from_partition(&self.p),
            components: self.p.len(),
            cycles: self.p.cycle_count(),
            move_counts,
            trace_len: self.trace.len(),
            wall_time: Some(wall),
            final_partition: self.p,
            trace: self.trace,
        }
    }
}

/// Applies the first available move until none applies. The compound
/// search runs over all vertices with at most `depth` steps.
pub fn canonicalize(g: &Graph, p: PathPartition, depth: usize) -> Result<SolveReport, CanonError> {
    let t = Instant::now();
    let mut d = Driver {
        g,
        p,
        trace: Vec::new(),
    };
    d.run(depth, None)?;
    Ok(d.report(t.elapsed()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub seed: u64,
    pub depth: usize,
    /// Skip the deeper retry after a failed certificate.
    pub no_escalation: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            depth: DEFAULT_DEPTH,
            no_escalation: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph is not regular")]
    NotRegular,
    #[error("degree {0} is not supported (need 5 or 6)")]
    UnsupportedDegree(usize),
    #[error("5-regular graph contains K6 on {0:?}; the 19/3 bound needs a K6-free graph")]
    ContainsK6(Vec<usize>),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Discharge(#[from] DischargeError),
}

#[derive(Debug, Clone)]
pub struct Solved {
    pub ruleset: RuleSet,
    pub report: SolveReport,
    pub ledger: PointLedger,
    pub certificate: Certificate,
    pub audit: AuditReport,
    /// Whether the deeper retry ran.
    pub escalated: bool,
}

pub fn ruleset_for(g: &Graph) -> Result<RuleSet, SolveError> {
    let d = g.regular_degree().ok_or(SolveError::NotRegular)?;
    let rs = RuleSet::for_degree(d).ok_or(SolveError::UnsupportedDegree(d))?;
    if rs == RuleSet::D5 {
        if let Some(k) = contains_k6(g) {
            return Err(SolveError::ContainsK6(k));
        }
    }
    Ok(rs)
}

fn discharge(
    g: &Graph,
    p: &PathPartition,
    rs: RuleSet,
) -> Result<(PointLedger, Certificate, AuditReport), SolveError> {
    let ec = classify_edges(g, p).map_err(CanonError::from)?;
    let vc = classify_vertices(g, p, &ec);
    let ledger = apply_rules(g, p, &ec, &vc, rs)?;
    let cert = certify(g, p, &ledger, rs);
    let audit = audit_block_bounds(g, p, &vc, &ledger);
    Ok((ledger, cert, audit))
}

/// Vertices within two free-edge hops of the given components.
fn neighborhood(g: &Graph, p: &PathPartition, comps: &[usize]) -> Focus {
    let mut dist = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for &c in comps {
        for &v in &p.component(c).vertices {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == 2 {
            continue;
        }
        for &u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    Focus::from_vertices(g.n(), (0..g.n()).filter(|&v| dist[v] != usize::MAX))
}

/// Infers the rule set from the degree, builds an initial partition,
/// canonicalizes, discharges and certifies. A failed certificate triggers
/// one retry with compound depth raised by two around the failing
/// components.
pub fn solve(g: &Graph, opts: &SolveOptions) -> Result<Solved, SolveError> {
    let rs = ruleset_for(g)?;
    solve_from(g, initial_partition(g, opts.seed), rs, opts)
}

pub fn solve_from(
    g: &Graph,
    p: PathPartition,
    rs: RuleSet,
    opts: &SolveOptions,
) -> Result<Solved, SolveError> {
    let t = Instant::now();
    let mut d = Driver {
        g,
        p,
        trace: Vec::new(),
    };
    d.run(opts.depth, None)?;
    let (mut ledger, mut certificate, mut audit) = discharge(g, &d.p, rs)?;
    let mut escalated = false;
    if !certificate.verdict && !opts.no_escalation {
        escalated = true;
        let bad: Vec<usize> = certificate.violations.iter().map(|v| v.component).collect();
        let focus = if bad.is_empty() {
            Focus::All
        } else {
            neighborhood(g, &d.p, &bad)
        };
        d.run(opts.depth, Some((opts.depth + 2, &focus)))?;
        (ledger, certificate, audit) = discharge(g, &d.p, rs)?;
    }
    Ok(Solved {
        ruleset: rs,
        report: d.report(t.elapsed()),
        ledger,
        certificate,
        audit,
        escalated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_disjoint_cliques, gen_random_regular};
    use crate::partition::{validate_partition, Kind};

    fn k7() -> Graph {
        gen_disjoint_cliques(6, 1, 0)
    }

    #[test]
    fn greedy_on_cliques() {
        let p = initial_partition(&k7(), 3);
        assert_eq!(p.len(), 1);
        assert_eq!(p.component(0).len(), 7);
        let two = gen_disjoint_cliques(6, 2, 1);
        let p = initial_partition(&two, 9);
        assert_eq!(p.len(), 2);
        assert!(p.components().iter().all(|c| c.len() == 7));
        assert_eq!(initial_partition(&Graph::empty(4), 0).singleton_count(), 4);
    }

    #[test]
    fn k7_closes_to_a_cycle() {
        let g = k7();
        let r = canonicalize(&g, initial_partition(&g, 0), DEFAULT_DEPTH).unwrap();
        assert_eq!(r.components, 1);
        assert_eq!(r.final_partition.component(0).kind, Kind::Cycle);
    }

    #[test]
    fn idempotent() {
        let g = gen_random_regular(70, 6, 5).unwrap();
        let r = canonicalize(&g, random_partition(&g, 2), DEFAULT_DEPTH).unwrap();
        assert!(validate_partition(&g, &r.final_partition).is_empty());
        let again = canonicalize(&g, r.final_partition.clone(), DEFAULT_DEPTH).unwrap();
        assert_eq!(again.trace_len, 0);
        assert!(r
            .trace
            .windows(2)
            .all(|w| w[1].phi_before == w[0].phi_after));
    }

    #[test]
    fn random_partitions_are_valid() {
        let g = gen_random_regular(30, 6, 1).unwrap();
        for s in 0..20 {
            assert!(validate_partition(&g, &random_partition(&g, s)).is_empty());
        }
    }

    #[test]
    fn solve_cliques_passes() {
        let g = gen_disjoint_cliques(6, 5, 4);
        let s = solve(&g, &SolveOptions::default()).unwrap();
        assert!(s.certificate.verdict);
        assert_eq!(s.certificate.components, 5);
        assert!(!s.escalated);
    }

    #[test]
    fn k6_refused() {
        let g = gen_disjoint_cliques(5, 2, 0);
        assert!(matches!(
            solve(&g, &SolveOptions::default()),
            Err(SolveError::ContainsK6(_))
        ));
    }
}

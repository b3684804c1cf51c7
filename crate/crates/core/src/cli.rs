//! The `pathcert` command line: `gen`, `solve`, `certify`, `audit` and
//! `oracle`.
//!
//! Exit codes: 0 pass, 1 certificate (or bound) failure, 2 invalid input,
//! 3 oracle budget exhausted.

use crate::canonical::{
    initial_partition, ruleset_for, solve_from, SolveError, SolveOptions, SolveReport, Solved,
    DEFAULT_DEPTH,
};
use crate::discharge::{
    apply_rules, audit_with_reading, certify, AuditReport, Certificate, Kind4Reading, RuleSet,
};
use crate::graph::{
    gen_disjoint_cliques, gen_hub_blobs, gen_pendant_cliques, gen_random_regular, read_edge_list,
    write_edge_list, Graph,
};
use crate::oracle::{bound_check, OracleConfig, OracleError, DEFAULT_CAP};
use crate::partition::{
    classify_edges, classify_vertices, validate_partition, PartitionJson, PathPartition,
};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// Environment variable holding the batch thread count.
pub const THREADS_ENV: &str = "PATHCERT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "pathcert",
    version,
    about = "Path partitions of regular graphs with exact certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Canonicalize, discharge and certify.
    Solve(SolveArgs),
    /// Certify a given partition without moving it.
    Certify(CertifyArgs),
    /// Check vertex and block floors of a solved (or given) partition.
    Audit(AuditArgs),
    /// Exact path partition number and bound checks for small graphs.
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("family").required(true).args(["cliques", "random", "hub", "pendant"])))]
pub struct GenArgs {
    /// k disjoint copies of K_{d+1}.
    #[arg(long)]
    pub cliques: bool,
    /// Uniform-style random d-regular graph on n vertices.
    #[arg(long)]
    pub random: bool,
    /// Hub vertex joined to d/2 random blobs of `--blob` vertices.
    #[arg(long)]
    pub hub: bool,
    /// k copies of K_d hanging off a random (d-1)-regular core.
    #[arg(long)]
    pub pendant: bool,
    #[arg(long, default_value_t = 6)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 9)]
    pub blob: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleSetArg {
    D5,
    D6,
}

impl From<RuleSetArg> for RuleSet {
    fn from(r: RuleSetArg) -> Self {
        match r {
            RuleSetArg::D5 => RuleSet::D5,
            RuleSetArg::D6 => RuleSet::D6,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Edge-list file, or `-` for stdin.
    #[arg(required_unless_present = "batch")]
    pub input: Option<PathBuf>,
    /// File listing one edge-list path per line, solved in parallel.
    #[arg(long, conflicts_with = "input")]
    pub batch: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    /// Seed for the initial partition's start order.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use this rule set instead of the one the degree selects.
    #[arg(long, value_enum)]
    pub ruleset: Option<RuleSetArg>,
    #[arg(long)]
    pub json: bool,
    /// Include wall time in JSON output.
    #[arg(long)]
    pub timings: bool,
    /// Write the final partition here as JSON.
    #[arg(long)]
    pub partition_out: Option<PathBuf>,
    /// Directory for reproducer bundles of failed certificates.
    #[arg(long, default_value = "pathcert-repro")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    pub input: PathBuf,
    /// Partition JSON.
    pub partition: PathBuf,
    #[arg(long, value_enum)]
    pub ruleset: Option<RuleSetArg>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Narrow,
    Broad,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    pub input: PathBuf,
    /// Audit this partition instead of solving.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "narrow")]
    pub reading: ReadingArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub input: PathBuf,
    /// Largest n for the subset DP; larger graphs use branch and bound.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, default_value_t = OracleConfig::default().budget)]
    pub budget: u64,
    #[arg(long)]
    pub json: bool,
    /// Directory for counterexample artifacts.
    #[arg(long, default_value = "pathcert-counterexample")]
    pub out: PathBuf,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

macro_rules! say {
    ($w:expr, $($t:tt)*) => {{
        let _ = writeln!($w, $($t)*);
    }};
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    match cli.command {
        Command::Gen(a) => cmd_gen(&a, &mut io),
        Command::Solve(a) if a.batch.is_some() => cmd_batch(&a, &mut io),
        Command::Solve(a) => cmd_solve(&a, &mut io),
        Command::Certify(a) => cmd_certify(&a, &mut io),
        Command::Audit(a) => cmd_audit(&a, &mut io),
        Command::Oracle(a) => cmd_oracle(&a, &mut io),
    }
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    let mut buf = Vec::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_end(&mut buf).map(|_| ())
    } else {
        fs::File::open(path)
            .and_then(|mut f| f.read_to_end(&mut buf))
            .map(|_| ())
    };
    res.map_err(|e| format!("{}: {e}", path.display()))?;
    read_edge_list(&buf).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_partition(path: &Path, g: &Graph) -> Result<PathPartition, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let pj: PartitionJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let p = pj.into_partition(g.n());
    let bad = validate_partition(g, &p);
    if let Some(v) = bad.first() {
        return Err(format!("{}: {v}", path.display()));
    }
    Ok(p)
}

fn json_line<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("output types serialize") + "\n"
}

fn json_pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("output types serialize") + "\n"
}

fn cmd_gen(a: &GenArgs, io: &mut Io) -> i32 {
    let g = if a.cliques {
        Ok(gen_disjoint_cliques(a.d, a.k, a.seed))
    } else if a.random {
        match a.n {
            Some(n) => gen_random_regular(n, a.d, a.seed),
            None => {
                say!(io.err, "gen --random needs --n");
                return EXIT_INVALID;
            }
        }
    } else if a.hub {
        gen_hub_blobs(a.d, a.blob, a.seed)
    } else {
        gen_pendant_cliques(a.d, a.k, a.seed)
    };
    let g = match g {
        Ok(g) => g,
        Err(e) => {
            say!(io.err, "gen: {e}");
            return EXIT_INVALID;
        }
    };
    let bytes = write_edge_list(&g);
    match &a.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &bytes) {
                say!(io.err, "{}: {e}", path.display());
                return EXIT_INVALID;
            }
            say!(io.out, "n={} m={} seed={}", g.n(), g.m(), a.seed);
        }
        None => {
            let _ = io.out.write_all(&bytes);
            say!(io.err, "n={} m={} seed={}", g.n(), g.m(), a.seed);
        }
    }
    EXIT_PASS
}

#[derive(Serialize)]
struct SolveOutput<'a> {
    input: String,
    n: usize,
    m: usize,
    escalated: bool,
    report: &'a SolveReport,
    certificate: &'a Certificate,
    audit: &'a AuditReport,
}

enum Outcome {
    Solved(Box<Solved>),
    Invalid(String),
}

fn solve_one(g: &Graph, a: &SolveArgs) -> Outcome {
    let rs = match a.ruleset {
        Some(r) => RuleSet::from(r),
        None => match ruleset_for(g) {
            Ok(rs) => rs,
            Err(SolveError::ContainsK6(k)) => {
                return Outcome::Invalid(format!(
                    "refusing: 5-regular graph contains K6 on {k:?}; the degree-five bound assumes no K6"
                ))
            }
            Err(e) => return Outcome::Invalid(e.to_string()),
        },
    };
    let opts = SolveOptions {
        seed: a.seed,
        depth: a.depth,
        no_escalation: false,
    };
    match solve_from(g, initial_partition(g, a.seed), rs, &opts) {
        Ok(mut s) => {
            if !a.timings {
                s.report.wall_time = None;
            }
            Outcome::Solved(Box::new(s))
        }
        Err(e) => Outcome::Invalid(e.to_string()),
    }
}

fn describe(name: &str, g: &Graph, s: &Solved) -> String {
    let moves: Vec<String> = s
        .report
        .move_counts
        .iter()
        .map(|(k, c)| format!("{k} {c}"))
        .collect();
    format!(
        "{name}: n={} m={}\n  partition: {} components ({} cycles), moves: {}\n  certificate: {}\n  audit: {} violations over {} blocks{}\n",
        g.n(),
        g.m(),
        s.report.components,
        s.report.cycles,
        if moves.is_empty() { "none".into() } else { moves.join(", ") },
        s.certificate.summary(),
        s.audit.violations.len(),
        s.audit.blocks,
        if s.escalated { " (after deeper search)" } else { "" },
    )
}

/// Writes graph, partition, ledger, move trace and certificate.
pub fn write_bundle(dir: &Path, g: &Graph, s: &Solved) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("graph.txt"), write_edge_list(g))?;
    fs::write(dir.join("partition.json"), json_pretty(&s.report.partition))?;
    fs::write(dir.join("ledger.json"), json_pretty(&s.ledger))?;
    fs::write(dir.join("certificate.json"), json_pretty(&s.certificate))?;
    let trace: String = s.report.trace.iter().map(json_line).collect();
    fs::write(dir.join("trace.jsonl"), trace)
}

fn finish(name: &str, g: &Graph, s: &Solved, a: &SolveArgs, io: &mut Io) -> i32 {
    if a.json {
        let o = SolveOutput {
            input: name.into(),
            n: g.n(),
            m: g.m(),
            escalated: s.escalated,
            report: &s.report,
            certificate: &s.certificate,
            audit: &s.audit,
        };
        let _ = io.out.write_all(json_pretty(&o).as_bytes());
    } else {
        let _ = io.out.write_all(describe(name, g, s).as_bytes());
    }
    if let Some(path) = &a.partition_out {
        if let Err(e) = fs::write(path, json_pretty(&s.report.partition)) {
            say!(io.err, "{}: {e}", path.display());
        }
    }
    if s.certificate.verdict {
        return EXIT_PASS;
    }
    let stem = Path::new(name)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or("stdin".into());
    let dir = a.out.join(stem);
    match write_bundle(&dir, g, s) {
        Ok(()) => say!(
            io.err,
            "certificate failed; reproducer written to {}",
            dir.display()
        ),
        Err(e) => say!(
            io.err,
            "certificate failed; could not write reproducer: {e}"
        ),
    }
    EXIT_FAIL
}

fn cmd_solve(a: &SolveArgs, io: &mut Io) -> i32 {
    let path = a.input.as_deref().expect("clap requires input");
    let g = match load_graph(path) {
        Ok(g) => g,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    match solve_one(&g, a) {
        Outcome::Solved(s) => finish(&path.display().to_string(), &g, &s, a, io),
        Outcome::Invalid(e) => {
            say!(io.err, "{e}");
            EXIT_INVALID
        }
    }
}

fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|t| t.parse().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

fn cmd_batch(a: &SolveArgs, io: &mut Io) -> i32 {
    let manifest = a.batch.as_deref().expect("batch mode");
    let text = match fs::read_to_string(manifest) {
        Ok(t) => t,
        Err(e) => {
            say!(io.err, "{}: {e}", manifest.display());
            return EXIT_INVALID;
        }
    };
    let base = manifest.parent().unwrap_or(Path::new("."));
    let entries: Vec<PathBuf> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect();
    let results: Vec<(i32, Vec<u8>, Vec<u8>)> = thread_pool().install(|| {
        entries
            .par_iter()
            .map(|path| {
                let (mut out, mut err) = (Vec::new(), Vec::new());
                let mut local = Io {
                    out: &mut out,
                    err: &mut err,
                };
                let code = match load_graph(path) {
                    Ok(g) => match solve_one(&g, a) {
                        Outcome::Solved(s) => {
                            finish(&path.display().to_string(), &g, &s, a, &mut local)
                        }
                        Outcome::Invalid(e) => {
                            say!(local.err, "{}: {e}", path.display());
                            EXIT_INVALID
                        }
                    },
                    Err(e) => {
                        say!(local.err, "{e}");
                        EXIT_INVALID
                    }
                };
                (code, out, err)
            })
            .collect()
    });
    let mut worst = EXIT_PASS;
    let mut passed = 0;
    for (code, out, err) in &results {
        let _ = io.out.write_all(out);
        let _ = io.err.write_all(err);
        worst = worst.max(*code);
        passed += (*code == EXIT_PASS) as usize;
    }
    say!(io.err, "batch: {passed}/{} passed", results.len());
    worst
}

fn cmd_certify(a: &CertifyArgs, io: &mut Io) -> i32 {
    let loaded =
        load_graph(&a.input).and_then(|g| load_partition(&a.partition, &g).map(|p| (g, p)));
    let (g, p) = match loaded {
        Ok(x) => x,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let rs = match a
        .ruleset
        .map(RuleSet::from)
        .ok_or(())
        .or_else(|_| ruleset_for(&g))
    {
        Ok(rs) => rs,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let ec = match classify_edges(&g, &p) {
        Ok(ec) => ec,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let vc = classify_vertices(&g, &p, &ec);
    let ledger = match apply_rules(&g, &p, &ec, &vc, rs) {
        Ok(l) => l,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let cert = certify(&g, &p, &ledger, rs);
    if a.json {
        let _ = io.out.write_all(json_pretty(&cert).as_bytes());
    } else {
        say!(io.out, "{}", cert.summary());
        for v in &cert.violations {
            say!(
                io.out,
                "  component {} total {}",
                v.component,
                crate::discharge::fmt_q(&v.total)
            );
        }
    }
    if cert.verdict {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn cmd_audit(a: &AuditArgs, io: &mut Io) -> i32 {
    let g = match load_graph(&a.input) {
        Ok(g) => g,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let rs = match ruleset_for(&g) {
        Ok(rs) => rs,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let p = match &a.partition {
        Some(path) => match load_partition(path, &g) {
            Ok(p) => p,
            Err(e) => {
                say!(io.err, "{e}");
                return EXIT_INVALID;
            }
        },
        None => {
            let opts = SolveOptions {
                seed: a.seed,
                depth: a.depth,
                no_escalation: false,
            };
            match solve_from(&g, initial_partition(&g, a.seed), rs, &opts) {
                Ok(s) => s.report.final_partition,
                Err(e) => {
                    say!(io.err, "{e}");
                    return EXIT_INVALID;
                }
            }
        }
    };
    let reading = match a.reading {
        ReadingArg::Narrow => Kind4Reading::Narrow,
        ReadingArg::Broad => Kind4Reading::Broad,
    };
    let report = classify_edges(&g, &p)
        .map_err(|e| e.to_string())
        .and_then(|ec| {
            let vc = classify_vertices(&g, &p, &ec);
            apply_rules(&g, &p, &ec, &vc, rs)
                .map(|l| audit_with_reading(&g, &p, &vc, &l, reading))
                .map_err(|e| e.to_string())
        });
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    if a.json {
        let _ = io.out.write_all(json_pretty(&report).as_bytes());
    } else {
        say!(
            io.out,
            "audit ({}): {} paths, {} blocks, {} violations",
            if reading == Kind4Reading::Narrow {
                "narrow"
            } else {
                "broad"
            },
            report.paths,
            report.blocks,
            report.violations.len()
        );
        for v in &report.violations {
            say!(
                io.out,
                "  {:?} component {} at {:?}: {} < {}",
                v.check,
                v.component,
                v.vertices,
                v.value,
                v.floor
            );
        }
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[derive(Serialize)]
struct OracleOutput {
    n: usize,
    d: Option<usize>,
    pi_p: usize,
    heuristic: usize,
    explored: u64,
    conjectured: Option<usize>,
    proven: Option<usize>,
    holds: Option<bool>,
    witness: PartitionJson,
}

fn cmd_oracle(a: &OracleArgs, io: &mut Io) -> i32 {
    let g = match load_graph(&a.input) {
        Ok(g) => g,
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let cfg = OracleConfig {
        cap: a.cap,
        budget: a.budget,
        ..Default::default()
    };
    let d = g.regular_degree();
    let res = match d {
        Some(d) => bound_check(&g, d, &cfg).map(|(b, r)| (Some(b), r)),
        None => crate::oracle::exact_pi_p(&g, &cfg).map(|r| (None, r)),
    };
    let (check, r) = match res {
        Ok(x) => x,
        Err(OracleError::Unknown { explored }) => {
            say!(
                io.out,
                "pi_p=unknown (budget exhausted after {explored} steps)"
            );
            return EXIT_UNKNOWN;
        }
        Err(e) => {
            say!(io.err, "{e}");
            return EXIT_INVALID;
        }
    };
    let heuristic =
        match crate::canonical::canonicalize(&g, initial_partition(&g, 0), DEFAULT_DEPTH) {
            Ok(rep) => rep.components,
            Err(e) => {
                say!(io.err, "{e}");
                return EXIT_INVALID;
            }
        };
    let o = OracleOutput {
        n: g.n(),
        d,
        pi_p: r.pi_p,
        heuristic,
        explored: r.explored,
        conjectured: check.as_ref().map(|c| c.conjectured),
        proven: check.as_ref().and_then(|c| c.proven),
        holds: check.as_ref().map(|c| c.holds),
        witness: PartitionJson::from_partition(&r.witness),
    };
    if a.json {
        let _ = io.out.write_all(json_pretty(&o).as_bytes());
    } else {
        say!(
            io.out,
            "pi_p={} heuristic={} explored={}",
            o.pi_p,
            o.heuristic,
            o.explored
        );
        if let Some(c) = &check {
            let proven = c
                .proven
                .map(|b| format!(", proven bound {b}"))
                .unwrap_or_default();
            say!(
                io.out,
                "n/(d+1) bound {}{proven}: {}",
                c.conjectured,
                if c.holds { "holds" } else { "VIOLATED" }
            );
        }
    }
    if check.is_some_and(|c| !c.holds) {
        let dir = &a.out;
        let written = fs::create_dir_all(dir)
            .and_then(|_| fs::write(dir.join("graph.txt"), write_edge_list(&g)))
            .and_then(|_| fs::write(dir.join("witness.json"), json_pretty(&o)));
        match written {
            Ok(()) => say!(io.err, "counterexample written to {}", dir.display()),
            Err(e) => say!(io.err, "could not write counterexample: {e}"),
        }
        return EXIT_FAIL;
    }
    EXIT_PASS
}

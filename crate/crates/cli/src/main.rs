use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use lmriv::analyzer::{scan_corpus, ReportOptions, ScanEntry};
use lmriv::census::{
    admissible_partitions, coefficient_b, partition_ratio_check, ratio_check, spanning_tree_count,
    unicyclic_spanning_count, CensusLimits,
};
use lmriv::generate::{all_graphs, connected_graphs, MAX_GENERATED_ORDER};
use lmriv::laplacian::{lm_direct, lm_subdivision, lm_tu};
use lmriv::matching::matching_polynomial;
use lmriv::poly::{format_decimal, isolate_real_roots, RootSet};
use lmriv::verify::{run_suite, Suite};
use lmriv::{parse_graph6, write_graph6, Error, Graph, IntPoly};

mod exit {
    pub const INVARIANT: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const DISCOVERY: u8 = 3;
    pub const SIZE_CAP: u8 = 4;

    /// Keep the more serious of two exit codes.
    pub fn worst(a: u8, b: u8) -> u8 {
        let rank = |c| match c {
            0 => 0,
            DISCOVERY => 1,
            INVARIANT => 2,
            INPUT => 3,
            _ => 4,
        };
        if rank(b) > rank(a) {
            b
        } else {
            a
        }
    }
}

#[derive(Parser)]
#[command(name = "lmriv", version, about = "Laplacian matching polynomials and their root variation under edge addition")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest edge count for exhaustive edge-subset enumeration (at most 63).
    #[arg(long, global = true, default_value_t = CensusLimits::default().max_edges)]
    max_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Matching,
    Laplacian,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Roots,
    Census,
    Partitions,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Roots => Suite::Roots,
            SuiteArg::Census => Suite::Census,
            SuiteArg::Partitions => Suite::Partitions,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(clap::Args)]
struct Graphs {
    /// graph6 records; read from --file or standard input when absent.
    graphs: Vec<String>,
    /// File with one graph6 record per line.
    #[arg(long, short)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of M(G, x) or LM(G, x), lowest power first.
    Poly {
        #[command(flatten)]
        input: Graphs,
        #[arg(long, value_enum, default_value = "laplacian")]
        kind: Kind,
    },
    /// Certified roots of LM(G, x), largest first.
    Roots {
        #[command(flatten)]
        input: Graphs,
        /// Largest enclosure width, e.g. 1e-12 or 1/1024.
        #[arg(long, default_value = "1e-12")]
        width: String,
    },
    /// Run an invariant suite over a corpus.
    Verify {
        /// graph6 corpus; standard input when absent or "-".
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Variation reports for every non-edge of every connected graph.
    Scan {
        corpus: Option<PathBuf>,
        #[arg(long, default_value = "1e-12")]
        width: String,
    },
    /// TU-subgraph coefficient b_i with spanning-tree and unicyclic counts.
    Census {
        #[command(flatten)]
        input: Graphs,
        /// Coefficient index, 1 <= i <= n (default n).
        #[arg(long, short)]
        i: Option<usize>,
    },
    /// Spanning-tree versus unicyclic-spanning-subgraph ratio.
    Ratio {
        #[command(flatten)]
        input: Graphs,
        /// Also report the ratio of every admissible partition for every non-edge.
        #[arg(long)]
        partitions: bool,
    },
    /// All graphs of one order up to isomorphism, as graph6.
    Gen {
        order: usize,
        /// Include disconnected graphs.
        #[arg(long)]
        all: bool,
    },
}

struct Out {
    w: BufWriter<io::Stdout>,
}

impl Out {
    fn emit(&mut self, v: &Value) -> io::Result<()> {
        writeln!(self.w, "{v}")
    }

    fn line(&mut self, s: &str) -> io::Result<()> {
        writeln!(self.w, "{s}")
    }
}

/// JSON number when it fits in 64 bits, decimal string otherwise.
fn big(x: &BigInt) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))
}

fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SizeCapExceeded { .. } | Error::TooLarge { .. } => exit::SIZE_CAP,
        Error::Inconsistency(_) | Error::RouteDisagreement { .. } | Error::NotDivisible(_) => exit::INVARIANT,
        _ => exit::INPUT,
    }
}

/// Accepts `p/q`, decimals and exponent notation such as `1e-12`.
fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((n, d)) = s.split_once('/') {
        let (n, d): (BigInt, BigInt) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
        return (!d.is_zero()).then(|| BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.trim_start_matches(['-', '+']).is_empty() && frac.is_empty() {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let exp = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if exp >= 0 {
        BigRational::from_integer(digits * ten.pow(exp as u32))
    } else {
        BigRational::new(digits, ten.pow(exp.unsigned_abs()))
    })
}

fn parse_width(s: &str) -> Result<BigRational, String> {
    match parse_rational(s) {
        Some(w) if w.is_positive() => Ok(w),
        _ => Err(format!("--width must be a positive number, got {s:?}")),
    }
}

/// Decimal places resolvable at `width`: the largest `d` with `10^-d >= width`.
fn digits_for(width: &BigRational) -> usize {
    let mut d = 0;
    let mut step = BigRational::from_integer(1.into());
    let ten = BigRational::from_integer(10.into());
    while &step / &ten >= *width && d < 60 {
        step /= &ten;
        d += 1;
    }
    d.max(1)
}

/// Fewest digits, starting from nine, that keep distinct roots visibly
/// distinct, but never more than the width supports.
fn rendering_digits(roots: &RootSet, width: &BigRational) -> usize {
    let cap = digits_for(width);
    let mut d = cap.min(9);
    while d < cap {
        let values: Vec<String> = roots.roots.iter().map(|r| format_decimal(&r.midpoint(), d)).collect();
        if values.windows(2).all(|w| w[0] != w[1]) {
            break;
        }
        d += 1;
    }
    d
}

fn read_source(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Numbered non-blank records.
fn records(input: &Graphs) -> io::Result<Vec<(usize, String)>> {
    if !input.graphs.is_empty() {
        return Ok(input.graphs.iter().cloned().enumerate().map(|(k, g)| (k + 1, g)).collect());
    }
    let text = read_source(input.file.as_ref())?;
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| (k + 1, l.trim().to_string()))
        .collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("lmriv: cannot start {jobs} worker threads: {e}");
            return ExitCode::from(exit::INPUT);
        }
    }
    let limits = CensusLimits { max_edges: cli.max_size };
    let mut out = Out { w: BufWriter::new(io::stdout()) };
    let result = match &cli.command {
        Command::Poly { input, kind } => per_graph(input, &mut out, |g| cmd_poly(g, *kind, &limits)),
        Command::Roots { input, width } => match parse_width(width) {
            Ok(w) => per_graph(input, &mut out, |g| cmd_roots(g, &w)),
            Err(msg) => Err(usage(msg)),
        },
        Command::Verify { corpus, suite } => cmd_verify(corpus.as_ref(), (*suite).into(), &limits, &mut out),
        Command::Scan { corpus, width } => match parse_width(width) {
            Ok(w) => cmd_scan(corpus.as_ref(), w, &mut out),
            Err(msg) => Err(usage(msg)),
        },
        Command::Census { input, i } => per_graph(input, &mut out, |g| cmd_census(g, *i, &limits)),
        Command::Ratio { input, partitions } => per_graph(input, &mut out, |g| cmd_ratio(g, *partitions, &limits)),
        Command::Gen { order, all } => cmd_gen(*order, *all, &mut out),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lmriv: {e}");
            exit::INPUT
        }
    };
    if let Err(e) = out.w.flush() {
        eprintln!("lmriv: {e}");
        return ExitCode::from(exit::INPUT);
    }
    ExitCode::from(code)
}

fn usage(msg: String) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidInput, msg)
}

/// Run `f` on every record, emitting its JSON line; errors go to standard
/// error and determine the exit code, and processing continues.
fn per_graph(
    input: &Graphs,
    out: &mut Out,
    f: impl Fn(&Graph) -> Result<(Value, u8), Error> + Sync,
) -> io::Result<u8> {
    let recs = records(input)?;
    let results: Vec<(usize, Result<(Value, u8), Error>)> = recs
        .par_iter()
        .map(|(line, text)| (*line, parse_graph6(text).and_then(|g| f(&g))))
        .collect();
    let mut code = 0;
    for (line, r) in results {
        match r {
            Ok((v, c)) => {
                out.emit(&v)?;
                code = exit::worst(code, c);
            }
            Err(e) => {
                eprintln!("lmriv: record {line}: {e}");
                code = exit::worst(code, exit_code(&e));
            }
        }
    }
    Ok(code)
}

fn coefficients(p: &IntPoly) -> Value {
    bigs(p.coeffs())
}

fn cmd_poly(g: &Graph, kind: Kind, limits: &CensusLimits) -> Result<(Value, u8), Error> {
    let graph = write_graph6(g);
    match kind {
        Kind::Matching => {
            let m = matching_polynomial(g);
            let v = json!({"graph": graph, "kind": "matching", "degree": g.n(), "coefficients": coefficients(&m)});
            Ok((v, 0))
        }
        Kind::Laplacian => {
            let direct = lm_direct(g);
            let subdivision = lm_subdivision(g)?;
            let mut routes = serde_json::Map::new();
            routes.insert("subdivision".into(), json!(subdivision.poly == direct.poly));
            let mut agree = subdivision.poly == direct.poly;
            match lm_tu(g, limits) {
                Ok(tu) => {
                    agree &= tu.poly == direct.poly;
                    routes.insert("tu-census".into(), json!(tu.poly == direct.poly));
                }
                Err(Error::SizeCapExceeded { .. }) => {
                    routes.insert("tu-census".into(), json!("skipped"));
                }
                Err(e) => return Err(e),
            }
            let v = json!({
                "graph": graph,
                "kind": "laplacian",
                "degree": g.n(),
                "coefficients": coefficients(&direct.poly),
                "b": bigs(&direct.b_coefficients()),
                "routes": routes,
                "routes_agree": agree,
            });
            if !agree {
                eprintln!("lmriv: {graph}: routes disagree");
            }
            Ok((v, if agree { 0 } else { exit::INVARIANT }))
        }
    }
}

fn cmd_roots(g: &Graph, width: &BigRational) -> Result<(Value, u8), Error> {
    let lm = lm_direct(g);
    let roots = isolate_real_roots(&lm.poly).refined(&lm.poly, width)?;
    let real = roots.is_real_rooted();
    let digits = rendering_digits(&roots, width);
    let v = json!({
        "graph": write_graph6(g),
        "degree": g.n(),
        "width": width.to_string(),
        "real_rooted": real,
        "roots": roots.decimals(digits),
    });
    Ok((v, if real { 0 } else { exit::INVARIANT }))
}

fn cmd_census(g: &Graph, i: Option<usize>, limits: &CensusLimits) -> Result<(Value, u8), Error> {
    let i = i.unwrap_or(g.n());
    let b = coefficient_b(g, i, limits)?;
    let trees = spanning_tree_count(g);
    let unicyclic = unicyclic_spanning_count(g, limits)?;
    let metrics = g.structural_metrics();
    let ratio = match ratio_check(g, limits) {
        Ok(r) => json!({"holds": r.holds, "tight": r.tight}),
        Err(Error::Domain(msg)) => json!({"error": msg}),
        Err(e) => return Err(e),
    };
    let v = json!({
        "graph": write_graph6(g),
        "i": i,
        "b_i": big(&b),
        "spanning_trees": big(&trees),
        "unicyclic_spanning": big(&unicyclic),
        "girth": metrics.girth,
        "cycle_dim": metrics.cycle_space_dim,
        "ratio_check": ratio,
    });
    let failed = ratio.get("holds") == Some(&Value::Bool(false));
    Ok((v, if failed { exit::INVARIANT } else { 0 }))
}

fn cmd_ratio(g: &Graph, partitions: bool, limits: &CensusLimits) -> Result<(Value, u8), Error> {
    let r = ratio_check(g, limits)?;
    let mut v = json!({
        "graph": write_graph6(g),
        "spanning_trees": big(&r.trees),
        "unicyclic_spanning": big(&r.unicyclic),
        "girth": r.girth,
        "cycle_dim": r.cycle_dim,
        "ratio": r.ratio().to_string(),
        "holds": r.holds,
        "tight": r.tight,
    });
    if partitions {
        let parts = admissible_partitions(g);
        let mut rows = Vec::new();
        for e in g.non_edges() {
            for pi in &parts {
                let pr = partition_ratio_check(g, e, pi, limits)?;
                rows.push(json!({
                    "edge": [e.0, e.1],
                    "blocks": pi.block_lists(),
                    "type": pr.kind,
                    "ratio": pr.ratio.to_string(),
                    "exceeds_one": pr.holds,
                }));
            }
        }
        v["partitions"] = Value::Array(rows);
        v["girth_ratio_exceeds_one"] = json!(r.girth > r.cycle_dim);
    }
    Ok((v, if r.holds { 0 } else { exit::INVARIANT }))
}

fn corpus_lines(corpus: Option<&PathBuf>) -> io::Result<Vec<String>> {
    Ok(read_source(corpus)?.lines().map(str::to_string).collect())
}

fn cmd_verify(corpus: Option<&PathBuf>, suite: Suite, limits: &CensusLimits, out: &mut Out) -> io::Result<u8> {
    let lines = corpus_lines(corpus)?;
    let mut graphs = Vec::new();
    let mut bad = false;
    for (k, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_graph6(line.trim()) {
            Ok(g) => graphs.push(g),
            Err(e) => {
                eprintln!("lmriv: line {}: {e}", k + 1);
                bad = true;
            }
        }
    }
    if bad {
        return Ok(exit::INPUT);
    }
    let results: Vec<_> = graphs.par_iter().map(|g| run_suite(g, suite, limits)).collect();
    let mut failures = 0;
    let mut code = 0;
    for r in results {
        match r {
            Ok(fs) => {
                for f in fs {
                    failures += 1;
                    out.emit(&json!({"graph": f.graph, "suite": suite.name(), "invariant": f.invariant, "detail": f.detail}))?;
                }
            }
            Err(e) => {
                eprintln!("lmriv: {e}");
                code = exit::worst(code, exit_code(&e));
            }
        }
    }
    if failures > 0 {
        code = exit::worst(code, exit::INVARIANT);
    }
    out.emit(&json!({"summary": {"suite": suite.name(), "graphs": graphs.len(), "failures": failures, "passed": code == 0}}))?;
    Ok(code)
}

fn cmd_scan(corpus: Option<&PathBuf>, width: BigRational, out: &mut Out) -> io::Result<u8> {
    let lines = corpus_lines(corpus)?;
    let digits = digits_for(&width).min(9);
    let (entries, summary) = scan_corpus(&lines, &ReportOptions { width, digits });
    for entry in &entries {
        match entry {
            ScanEntry::Malformed { line, error } => eprintln!("lmriv: line {line}: {error}"),
            ScanEntry::Skipped { line, graph, .. } => eprintln!("lmriv: line {line}: {graph} is not connected, skipped"),
            ScanEntry::Failed { line, graph, error } => eprintln!("lmriv: line {line}: {graph}: {error}"),
            ScanEntry::Report(r) if r.two_place => {
                eprintln!("lmriv: two-place variation at {} + {:?}: potential discovery", r.graph, r.edge)
            }
            _ => {}
        }
        out.line(&serde_json::to_string(entry).map_err(io::Error::other)?)?;
    }
    out.emit(&json!({"summary": summary}))?;
    let mut code = 0;
    if summary.two_place > 0 {
        code = exit::DISCOVERY;
    }
    if summary.one_place > 0 || summary.failed > 0 {
        code = exit::worst(code, exit::INVARIANT);
    }
    Ok(code)
}

fn cmd_gen(order: usize, all: bool, out: &mut Out) -> io::Result<u8> {
    if order == 0 || order > MAX_GENERATED_ORDER {
        return Err(usage(format!("order must be in 1..={MAX_GENERATED_ORDER}")));
    }
    let graphs = if all { all_graphs(order) } else { connected_graphs(order) };
    for g in graphs.map_err(|e| usage(e.to_string()))? {
        out.line(&write_graph6(&g))?;
    }
    Ok(0)
}

//! Root variation of `LM(G)` under adding a non-edge `e = {v_i, v_j}`.
//!
//! Verdicts are exact polynomial identities. Root enclosures are used only
//! for the interlacing certificate and for the decimal deltas in reports.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{parse_graph6, write_graph6};
use crate::laplacian::lm_direct;
use crate::poly::{format_decimal, isolate_real_roots, multiplicities_on, refine_root, IntPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ObstructionTag {
    #[serde(rename = "TREE")]
    Tree,
    #[serde(rename = "DEGSUM_LE_3")]
    DegSumLe3,
    #[serde(rename = "BOTH_DEG_2")]
    BothDeg2,
    #[serde(rename = "DEG1_GIRTH_RATIO")]
    Deg1GirthRatio,
    #[serde(rename = "GIRTH_RATIO_7_6")]
    GirthRatio76,
}

impl ObstructionTag {
    pub fn name(self) -> &'static str {
        match self {
            ObstructionTag::Tree => "TREE",
            ObstructionTag::DegSumLe3 => "DEGSUM_LE_3",
            ObstructionTag::BothDeg2 => "BOTH_DEG_2",
            ObstructionTag::Deg1GirthRatio => "DEG1_GIRTH_RATIO",
            ObstructionTag::GirthRatio76 => "GIRTH_RATIO_7_6",
        }
    }
}

/// A theorem whose hypotheses hold for `(G, e)`, with the quantities that
/// triggered it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub tag: ObstructionTag,
    pub witness: BTreeMap<&'static str, usize>,
}

fn check_pair(g: &Graph, (u, v): (usize, usize)) -> Result<()> {
    if u >= g.n() || v >= g.n() || u == v || g.has_edge(u, v) {
        return Err(Error::NotANonEdge(u, v));
    }
    Ok(())
}

/// `(2x - d_i - d_j - 4) LM(G) == (2x - d_i - d_j) LM(G + e)`.
pub fn one_place_identity(lm_g: &IntPoly, lm_ge: &IntPoly, di: usize, dj: usize) -> bool {
    let s = (di + dj) as i64;
    let left = IntPoly::from_i64s(&[-s - 4, 2]) * lm_g;
    let right = IntPoly::from_i64s(&[-s, 2]) * lm_ge;
    left == right
}

/// `x^2 - (d_i + d_j + 1) x + d_i d_j`.
pub fn two_place_quadratic(di: usize, dj: usize) -> IntPoly {
    IntPoly::from_i64s(&[(di * dj) as i64, -((di + dj + 1) as i64), 1])
}

/// `LM(G, x) Q(x - 1) == LM(G + e, x) Q(x)`.
pub fn two_place_identity(lm_g: &IntPoly, lm_ge: &IntPoly, di: usize, dj: usize) -> bool {
    let q = two_place_quadratic(di, dj);
    let shifted = q.shift_argument(&BigInt::from(1));
    lm_g * &shifted == lm_ge * &q
}

/// The two-place identity at `x = 0`: `b_n (d_i + 1)(d_j + 1) = b~_n d_i d_j`,
/// with signs as in `LM(0) = (-1)^n b_n`.
pub fn quotient_relation(lm_g: &IntPoly, lm_ge: &IntPoly, di: usize, dj: usize) -> bool {
    let q = two_place_quadratic(di, dj);
    let at_minus_one = q.eval(&BigInt::from(-1));
    let at_zero = q.eval(&BigInt::zero());
    lm_g.coeff(0) * at_minus_one == lm_ge.coeff(0) * at_zero
}

pub fn detect_one_place(g: &Graph, e: (usize, usize)) -> Result<bool> {
    check_pair(g, e)?;
    let ge = g.add_edge(e.0, e.1)?;
    Ok(one_place_identity(&lm_direct(g).poly, &lm_direct(&ge).poly, g.degree(e.0), g.degree(e.1)))
}

pub fn detect_two_place(g: &Graph, e: (usize, usize)) -> Result<bool> {
    check_pair(g, e)?;
    let ge = g.add_edge(e.0, e.1)?;
    Ok(two_place_identity(&lm_direct(g).poly, &lm_direct(&ge).poly, g.degree(e.0), g.degree(e.1)))
}

/// Every obstruction whose hypotheses hold for `(g, e)`, in tag order.
pub fn applicable_obstructions(g: &Graph, (u, v): (usize, usize)) -> Vec<Obstruction> {
    let (di, dj) = (g.degree(u), g.degree(v));
    let metrics = g.structural_metrics();
    let mut out = Vec::new();
    let mut push = |tag, witness: &[(&'static str, usize)]| {
        out.push(Obstruction { tag, witness: witness.iter().copied().collect() });
    };
    if metrics.is_tree {
        push(ObstructionTag::Tree, &[("n", g.n()), ("m", g.m())]);
    }
    if di + dj <= 3 {
        push(ObstructionTag::DegSumLe3, &[("d_i", di), ("d_j", dj)]);
    }
    if di == 2 && dj == 2 {
        push(ObstructionTag::BothDeg2, &[("d_i", di), ("d_j", dj)]);
    }
    if let Some((girth, c)) = metrics.girth_and_dim() {
        if (di == 1 || dj == 1) && metrics.girth_ratio_exceeds(1, 1) {
            push(ObstructionTag::Deg1GirthRatio, &[("d_i", di), ("d_j", dj), ("g", girth), ("c", c)]);
        }
        if metrics.girth_ratio_exceeds(7, 6) {
            push(ObstructionTag::GirthRatio76, &[("g", girth), ("c", c)]);
        }
    }
    out
}

/// Knobs for root rendering in reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportOptions {
    /// Certified enclosure width before decimals are taken.
    pub width: BigRational,
    /// Decimal places in renderings.
    pub digits: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { width: BigRational::new(1.into(), BigInt::from(10).pow(12)), digits: 9 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariationReport {
    pub graph: String,
    pub edge: (usize, usize),
    pub degrees: (usize, usize),
    /// `lambda_i(G + e) - lambda_i(G)`, `i = 1..n`.
    pub deltas: Vec<String>,
    pub interlacing_ok: bool,
    /// `lambda_1(G + e) > lambda_1(G)` and it is a simple root.
    pub largest_root_increases: bool,
    pub sum_increment: i64,
    pub one_place: bool,
    pub two_place: bool,
    pub obstructions: Vec<Obstruction>,
    /// L-infinity distance from `deltas` to the nearest integral pattern.
    pub near_miss: Option<String>,
}

impl VariationReport {
    pub fn obstructed(&self) -> bool {
        !self.obstructions.is_empty()
    }
}

/// Exact comparison data for the roots of `LM(G)` and `LM(G + e)`: both
/// root lists expressed as indices into one descending list of isolated
/// distinct roots of `sqfree(LM(G) LM(G + e))`, so equal indices mean equal
/// roots.
struct MergedRoots {
    enclosures: Vec<crate::poly::IsolatedRoot>,
    before: Vec<usize>,
    after: Vec<usize>,
    after_mult: Vec<usize>,
}

impl MergedRoots {
    fn new(p: &IntPoly, q: &IntPoly) -> Self {
        let joint = (p * q).squarefree_part();
        let enclosures = isolate_real_roots(&joint).roots;
        let expand = |m: Vec<usize>| -> Vec<usize> {
            m.iter().enumerate().flat_map(|(k, &c)| std::iter::repeat_n(k, c)).collect()
        };
        let after_mult = multiplicities_on(q, &enclosures);
        MergedRoots {
            before: expand(multiplicities_on(p, &enclosures)),
            after: expand(after_mult.clone()),
            after_mult,
            enclosures,
        }
    }

    /// `lambda_i(G + e) >= lambda_i(G) >= lambda_{i+1}(G + e)` for all `i`;
    /// a smaller index is a larger root.
    fn interlaces(&self) -> bool {
        self.before.len() == self.after.len()
            && (0..self.before.len()).all(|i| {
                self.after[i] <= self.before[i]
                    && self.after.get(i + 1).is_none_or(|&next| self.before[i] <= next)
            })
    }

    fn largest_increases(&self) -> bool {
        match (self.after.first(), self.before.first()) {
            (Some(&a), Some(&b)) => a < b && self.after_mult[a] == 1,
            _ => false,
        }
    }
}

/// Exact interlacing verdict for `p = LM(G)` and `q = LM(G + e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterlacingCertificate {
    /// `lambda_i(G + e) >= lambda_i(G) >= lambda_{i+1}(G + e)` for all `i`.
    pub interlaces: bool,
    /// `lambda_1(G + e) > lambda_1(G)`, and it is a simple root.
    pub largest_root_increases: bool,
}

pub fn certify_interlacing(p: &IntPoly, q: &IntPoly) -> InterlacingCertificate {
    let merged = MergedRoots::new(p, q);
    InterlacingCertificate { interlaces: merged.interlaces(), largest_root_increases: merged.largest_increases() }
}

fn near_miss(deltas: &[BigRational]) -> Option<BigRational> {
    if deltas.is_empty() {
        return None;
    }
    let dist = |pattern: &dyn Fn(usize) -> i64| {
        deltas
            .iter()
            .enumerate()
            .map(|(i, d)| (d - BigRational::from_integer(pattern(i).into())).abs())
            .max()
            .expect("nonempty")
    };
    let mut best = dist(&|i| if i == 0 { 2 } else { 0 });
    for k in 1..deltas.len() {
        best = best.min(dist(&|i| i64::from(i == 0 || i == k)));
    }
    Some(best)
}

/// Full report for one `(G, e)`. Fails with an inconsistency error if the
/// interlacing chain is violated.
pub fn variation_report(g: &Graph, e: (usize, usize), opts: &ReportOptions) -> Result<VariationReport> {
    check_pair(g, e)?;
    if !g.is_connected() {
        return Err(Error::Domain(format!("{} is not connected", write_graph6(g))));
    }
    let ge = g.add_edge(e.0, e.1)?;
    let (lm_g, lm_ge) = (lm_direct(g), lm_direct(&ge));
    let (di, dj) = (g.degree(e.0), g.degree(e.1));
    let name = write_graph6(g);

    let merged = MergedRoots::new(&lm_g.poly, &lm_ge.poly);
    let interlacing_ok = merged.interlaces();
    if !interlacing_ok {
        return Err(Error::Inconsistency(format!(
            "roots of LM({name} + {{{}, {}}}) do not interlace those of LM({name})",
            e.0, e.1
        )));
    }
    let joint = (&lm_g.poly * &lm_ge.poly).squarefree_part();
    let points: Vec<BigRational> = merged
        .enclosures
        .iter()
        .map(|r| refine_root(&joint, r, &opts.width).map(|r| r.midpoint()))
        .collect::<Result<_>>()?;
    let deltas: Vec<BigRational> =
        merged.after.iter().zip(&merged.before).map(|(&a, &b)| &points[a] - &points[b]).collect();

    let sum_increment = lm_ge.b(1) - lm_g.b(1);
    let two_place = two_place_identity(&lm_g.poly, &lm_ge.poly, di, dj);
    if two_place && !quotient_relation(&lm_g.poly, &lm_ge.poly, di, dj) {
        return Err(Error::Inconsistency(format!(
            "two-place identity holds for {name} + {{{}, {}}} but the constant terms disagree",
            e.0, e.1
        )));
    }
    Ok(VariationReport {
        graph: name,
        edge: e,
        degrees: (di, dj),
        deltas: deltas.iter().map(|d| format_decimal(d, opts.digits)).collect(),
        interlacing_ok,
        largest_root_increases: merged.largest_increases(),
        sum_increment: i64::try_from(&sum_increment)
            .map_err(|_| Error::Inconsistency(format!("sum increment {sum_increment} out of range")))?,
        one_place: one_place_identity(&lm_g.poly, &lm_ge.poly, di, dj),
        two_place,
        obstructions: applicable_obstructions(g, e),
        near_miss: near_miss(&deltas).map(|d| format_decimal(&d, opts.digits)),
    })
}

/// One corpus line's outcome, in input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanEntry {
    Report(VariationReport),
    Skipped { line: usize, graph: String, reason: String },
    Malformed { line: usize, error: String },
    Failed { line: usize, graph: String, error: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub graphs: usize,
    pub skipped: usize,
    pub malformed: Vec<usize>,
    pub failed: usize,
    pub reports: usize,
    pub one_place: usize,
    pub two_place: usize,
    /// `(graph, edge)` of every two-place hit.
    pub two_place_hits: Vec<(String, (usize, usize))>,
    /// Falses backed by an applicable obstruction theorem.
    pub theorem_covered: usize,
    /// Falses with no applicable obstruction: observed, not proved.
    pub observed_only: usize,
    pub min_near_miss: Option<String>,
}

/// Reports for every connected graph and every non-edge, in order of input
/// line and then lexicographic non-edge. Blank lines are ignored;
/// disconnected graphs are skipped and malformed lines recorded, and the
/// scan carries on. Work items run in parallel on the current rayon pool.
pub fn scan_corpus<S: AsRef<str> + Sync>(lines: &[S], opts: &ReportOptions) -> (Vec<ScanEntry>, ScanSummary) {
    enum Item {
        Pair(usize, Graph, (usize, usize)),
        Done(ScanEntry),
    }
    let mut summary = ScanSummary::default();
    let mut items = Vec::new();
    for (k, line) in lines.iter().enumerate() {
        let line_no = k + 1;
        let text = line.as_ref().trim();
        if text.is_empty() {
            continue;
        }
        match parse_graph6(text) {
            Err(err) => {
                summary.malformed.push(line_no);
                items.push(Item::Done(ScanEntry::Malformed { line: line_no, error: err.to_string() }));
            }
            Ok(g) if !g.is_connected() => {
                summary.skipped += 1;
                items.push(Item::Done(ScanEntry::Skipped {
                    line: line_no,
                    graph: write_graph6(&g),
                    reason: "not connected".into(),
                }));
            }
            Ok(g) => {
                summary.graphs += 1;
                for e in g.non_edges() {
                    items.push(Item::Pair(line_no, g.clone(), e));
                }
            }
        }
    }
    let entries: Vec<ScanEntry> = items
        .into_par_iter()
        .map(|item| match item {
            Item::Done(entry) => entry,
            Item::Pair(line, g, e) => match variation_report(&g, e, opts) {
                Ok(r) => ScanEntry::Report(r),
                Err(err) => ScanEntry::Failed { line, graph: write_graph6(&g), error: err.to_string() },
            },
        })
        .collect();

    let mut min_near: Option<BigRational> = None;
    for entry in &entries {
        match entry {
            ScanEntry::Report(r) => {
                summary.reports += 1;
                summary.one_place += usize::from(r.one_place);
                if r.two_place {
                    summary.two_place += 1;
                    summary.two_place_hits.push((r.graph.clone(), r.edge));
                } else if r.obstructed() {
                    summary.theorem_covered += 1;
                } else {
                    summary.observed_only += 1;
                }
                if let Some(x) = r.near_miss.as_deref().and_then(parse_decimal) {
                    if min_near.as_ref().is_none_or(|m| &x < m) {
                        min_near = Some(x);
                    }
                }
            }
            ScanEntry::Failed { .. } => summary.failed += 1,
            _ => {}
        }
    }
    summary.min_near_miss = min_near.map(|x| format_decimal(&x, opts.digits));
    (entries, summary)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    Some(BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32)))
}

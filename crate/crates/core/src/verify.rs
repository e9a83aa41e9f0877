//! Per-graph invariant suites. Each check that does not hold becomes a
//! [`Failure`] naming the invariant; only size-cap violations abort a suite.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::analyzer::{variation_report, ReportOptions};
use crate::census::{
    admissible_partitions, filtered_weight, partition_ratio_check, ratio_check, spanning_tree_count,
    spanning_trees_enumerated, unicyclic_cycle_lengths, unicyclic_spanning_count, CensusLimits,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::laplacian::{lm_direct, lm_subdivision, lm_tu};
use crate::matching::{heilmann_lieb_holds, matching_counts_oracle, matching_polynomial};
use crate::poly::{isolate_real_roots, SturmChain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Roots,
    Census,
    Partitions,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 4] = [Suite::Identities, Suite::Roots, Suite::Census, Suite::Partitions];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Roots => "roots",
            Suite::Census => "census",
            Suite::Partitions => "partitions",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub invariant: &'static str,
    pub graph: String,
    pub detail: String,
}

struct Checker {
    graph: String,
    failures: Vec<Failure>,
}

impl Checker {
    fn new(g: &Graph) -> Self {
        Checker { graph: write_graph6(g), failures: Vec::new() }
    }

    fn check(&mut self, invariant: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(Failure { invariant, graph: self.graph.clone(), detail: detail() });
        }
    }
}

/// Run `suite` on one graph.
pub fn run_suite(g: &Graph, suite: Suite, limits: &CensusLimits) -> Result<Vec<Failure>> {
    let mut c = Checker::new(g);
    match suite {
        Suite::Identities => identities(g, limits, &mut c)?,
        Suite::Roots => roots(g, &mut c),
        Suite::Census => census(g, limits, &mut c)?,
        Suite::Partitions => partitions(g, limits, &mut c)?,
        Suite::All => {
            for part in Suite::PARTS {
                c.failures.extend(run_suite(g, part, limits)?);
            }
        }
    }
    Ok(c.failures)
}

fn identities(g: &Graph, limits: &CensusLimits, c: &mut Checker) -> Result<()> {
    let direct = lm_direct(g);
    match lm_subdivision(g) {
        Ok(s) => c.check("lm-direct-eq-subdivision", s.poly == direct.poly, || {
            format!("direct {} vs subdivision {}", direct.poly, s.poly)
        }),
        Err(e @ Error::TooLarge { .. }) => return Err(e),
        Err(e) => c.check("lm-direct-eq-subdivision", false, || e.to_string()),
    }
    let tu = lm_tu(g, limits)?;
    c.check("lm-direct-eq-tu", tu.poly == direct.poly, || format!("direct {} vs tu {}", direct.poly, tu.poly));
    c.check("b0-eq-1", direct.b(0).is_one(), || format!("b_0 = {}", direct.b(0)));
    if g.n() >= 1 {
        c.check("b1-eq-2m", direct.b(1) == BigInt::from(2 * g.m()), || format!("b_1 = {}", direct.b(1)));
    }
    let m = matching_polynomial(g);
    let oracle = matching_counts_oracle(g).polynomial();
    c.check("matching-expansion-eq-enumeration", m == oracle, || format!("{m} vs {oracle}"));

    // TU-subgraphs of G + e of size n split by whether they use e, and
    // those avoiding e are exactly the ones of G.
    let b_n = direct.b(g.n());
    for (u, v) in g.non_edges() {
        let ge = g.add_edge(u, v)?;
        let with_e = filtered_weight(&ge, &[(u, v)], &[], limits)?;
        let without_e = filtered_weight(&ge, &[], &[(u, v)], limits)?;
        let total = lm_direct(&ge).b(g.n());
        c.check("tu-split-by-new-edge", &with_e + &without_e == total, || {
            format!("e = {{{u}, {v}}}: {with_e} + {without_e} != {total}")
        });
        c.check("tu-without-new-edge-eq-b_n", without_e == b_n, || {
            format!("e = {{{u}, {v}}}: {without_e} != b_n = {b_n}")
        });
    }
    Ok(())
}

fn roots(g: &Graph, c: &mut Checker) {
    let lm = lm_direct(g);
    let rs = isolate_real_roots(&lm.poly);
    c.check("real-rooted", rs.is_real_rooted(), || {
        format!("{} real roots out of {}", rs.total_multiplicity(), g.n())
    });
    let chain = SturmChain::new(&lm.poly);
    let negative = chain.count_real() - chain.count_at_or_above(&BigRational::zero());
    c.check("roots-nonnegative", negative == 0, || format!("{negative} distinct negative roots"));
    if let Some(ok) = heilmann_lieb_holds(g) {
        c.check("heilmann-lieb", ok, || "a matching root lies outside (-2 sqrt(D-1), 2 sqrt(D-1))".into());
    }
    if !g.is_connected() || g.n() == 0 {
        return;
    }
    let b_n = lm.b(g.n());
    c.check("b_n-zero-iff-tree", b_n.is_zero() == g.is_tree(), || format!("b_n = {b_n}, tree = {}", g.is_tree()));
    if g.n() >= 2 {
        let top = BigRational::from_integer(BigInt::from(g.max_degree() + 1));
        c.check("largest-root-at-least-max-degree-plus-one", chain.count_at_or_above(&top) >= 1, || {
            format!("no root at or above {top}")
        });
        let attained = lm.poly.sign_at(&top).is_eq() && chain.count_above(&top) == 0;
        c.check("largest-root-eq-max-degree-plus-one-iff-star", attained == g.is_star(), || {
            format!("lambda_1 = {top}: {attained}, star: {}", g.is_star())
        });
    }
    let opts = ReportOptions::default();
    for e in g.non_edges() {
        let r = match variation_report(g, e, &opts) {
            Ok(r) => r,
            Err(err) => {
                c.check("interlacing", false, || err.to_string());
                continue;
            }
        };
        let at = format!("e = {{{}, {}}}", e.0, e.1);
        c.check("sum-increment-eq-2", r.sum_increment == 2, || format!("{at}: {}", r.sum_increment));
        c.check("largest-root-strictly-increases", r.largest_root_increases, || at.clone());
        c.check("no-one-place-variation", !r.one_place, || at.clone());
        c.check("obstruction-excludes-two-place", !(r.two_place && r.obstructed()), || at.clone());
    }
}

fn census(g: &Graph, limits: &CensusLimits, c: &mut Checker) -> Result<()> {
    let trees = spanning_tree_count(g);
    let enumerated = spanning_trees_enumerated(g, limits)?;
    c.check("spanning-tree-count-eq-enumeration", trees == enumerated, || format!("{trees} vs {enumerated}"));
    if !g.is_connected() {
        return Ok(());
    }
    if g.is_tree() {
        let h1 = unicyclic_spanning_count(g, limits)?;
        c.check("tree-has-no-unicyclic-spanning-subgraph", h1.is_zero(), || format!("|H1| = {h1}"));
        return Ok(());
    }
    let r = ratio_check(g, limits)?;
    c.check("counting-bound", r.holds, || {
        format!("|T| c = {} < |H1| g = {}", &r.trees * r.cycle_dim, &r.unicyclic * r.girth)
    });
    let lengths = unicyclic_cycle_lengths(g, limits)?;
    let total: usize = lengths.iter().sum();
    c.check("cycle-lengths-at-least-girth", BigInt::from(total) >= &r.unicyclic * r.girth, || {
        format!("sum {total} < |H1| g")
    });
    c.check("cycle-lengths-at-most-pairs", BigInt::from(total) <= &r.trees * r.cycle_dim, || {
        format!("sum {total} > |T| c")
    });
    let all_girth = lengths.iter().all(|&l| l == r.girth);
    c.check("counting-bound-tight-iff-all-cycles-shortest", r.tight == all_girth, || {
        format!("tight = {}, all unicyclic cycles of length g = {all_girth}", r.tight)
    });
    Ok(())
}

/// The partition ratios are bounded below through the counting bound, which
/// gives `> 1` only when `g / c > 1`; graphs outside that range are skipped.
fn partitions(g: &Graph, limits: &CensusLimits, c: &mut Checker) -> Result<()> {
    let metrics = g.structural_metrics();
    if !metrics.is_connected || !metrics.girth_ratio_exceeds(1, 1) {
        return Ok(());
    }
    let parts = admissible_partitions(g);
    for e in g.non_edges() {
        for pi in &parts {
            let r = partition_ratio_check(g, e, pi, limits)?;
            c.check("partition-ratio-exceeds-one", r.holds, || {
                format!("e = {{{}, {}}}, blocks {:?}: {}", e.0, e.1, pi.block_lists(), r.ratio)
            });
        }
    }
    Ok(())
}

//! Matching polynomials `M(G, x) = sum_i (-1)^i phi_i x^(n - 2i)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::{bit, members, Graph, VertexSet};
use crate::poly::{IntPoly, SturmChain};

/// Vertex-expansion evaluator over induced subgraphs of one ambient graph.
/// The cache is keyed by vertex subset and lives for one top-level call.
struct Expansion<'g> {
    g: &'g Graph,
    memo: HashMap<VertexSet, IntPoly>,
}

impl<'g> Expansion<'g> {
    fn new(g: &'g Graph) -> Self {
        Expansion { g, memo: HashMap::new() }
    }

    fn poly(&mut self, set: VertexSet) -> IntPoly {
        if set == 0 {
            return IntPoly::one();
        }
        let comps = self.g.components_within(set);
        if comps.len() == 1 {
            return self.connected(set);
        }
        comps.into_iter().map(|c| self.connected(c)).product()
    }

    fn connected(&mut self, set: VertexSet) -> IntPoly {
        if set.count_ones() == 1 {
            return IntPoly::x();
        }
        if let Some(p) = self.memo.get(&set) {
            return p.clone();
        }
        let v = members(set)
            .max_by_key(|&v| ((self.g.neighbor_set(v) & set).count_ones(), std::cmp::Reverse(v)))
            .expect("nonempty");
        let p = self.expand_at(set, v);
        self.memo.insert(set, p.clone());
        p
    }

    /// `x M(G - v) - sum_{u ~ v} M(G - v - u)` on the subgraph induced by `set`.
    fn expand_at(&mut self, set: VertexSet, v: usize) -> IntPoly {
        let rest = set & !bit(v);
        let mut p = self.poly(rest).mul_x_pow(1);
        for u in members(self.g.neighbor_set(v) & rest) {
            p = &p - &self.poly(rest & !bit(u));
        }
        p
    }
}

/// `M(G, x)` by the vertex expansion, splitting into components and
/// memoising on vertex subsets. Each step expands at a vertex of maximum
/// degree in the current component.
pub fn matching_polynomial(g: &Graph) -> IntPoly {
    Expansion::new(g).poly(g.vertex_set())
}

/// `M(G, x)` with the first expansion step taken at `v`.
pub fn matching_polynomial_at(g: &Graph, v: usize) -> IntPoly {
    assert!(v < g.n(), "vertex out of range");
    Expansion::new(g).expand_at(g.vertex_set(), v)
}

/// Matching counts `phi_0, ..., phi_{n/2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingProfile {
    pub n: usize,
    pub counts: Vec<BigInt>,
}

impl MatchingProfile {
    pub fn count(&self, i: usize) -> BigInt {
        self.counts.get(i).cloned().unwrap_or_default()
    }

    /// `sum_i (-1)^i phi_i x^(n - 2i)`.
    pub fn polynomial(&self) -> IntPoly {
        let mut coeffs = vec![BigInt::zero(); self.n + 1];
        for (i, c) in self.counts.iter().enumerate() {
            coeffs[self.n - 2 * i] = if i % 2 == 0 { c.clone() } else { -c };
        }
        IntPoly::new(coeffs)
    }
}

/// Visit every matching of `g` (including the empty one) by backtracking
/// over the edge list. The callback receives the matching's edges and the
/// set of covered vertices.
pub fn for_each_matching(g: &Graph, mut visit: impl FnMut(&[(usize, usize)], VertexSet)) {
    fn rec(
        edges: &[(usize, usize)],
        from: usize,
        covered: VertexSet,
        chosen: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&[(usize, usize)], VertexSet),
    ) {
        visit(chosen, covered);
        for k in from..edges.len() {
            let (u, v) = edges[k];
            let uv = bit(u) | bit(v);
            if covered & uv == 0 {
                chosen.push((u, v));
                rec(edges, k + 1, covered | uv, chosen, visit);
                chosen.pop();
            }
        }
    }
    let edges = g.edges();
    rec(&edges, 0, 0, &mut Vec::new(), &mut visit);
}

/// Brute-force matching counts; an oracle for [`matching_polynomial`].
pub fn matching_counts_oracle(g: &Graph) -> MatchingProfile {
    let mut counts = vec![BigInt::zero(); g.n() / 2 + 1];
    for_each_matching(g, |m, _| counts[m.len()] += 1);
    MatchingProfile { n: g.n(), counts }
}

/// Certified check that every real root of `M(G, x)` lies strictly inside
/// `(-2 sqrt(D - 1), 2 sqrt(D - 1))`, `D` the maximum degree. Returns `None`
/// when `D < 2`.
///
/// When `4(D - 1)` is not a perfect square the bound is irrational; it is
/// approached from below by dyadic rationals `r < 2 sqrt(D - 1)` and the
/// check succeeds as soon as no root lies in `[r, oo)` or `(-oo, -r]`.
pub fn heilmann_lieb_holds(g: &Graph) -> Option<bool> {
    let d = g.max_degree();
    if d < 2 {
        return None;
    }
    let chain = SturmChain::new(&matching_polynomial(g));
    let four_d = BigInt::from(4 * (d - 1));
    let outside = |r: &BigRational| chain.count_at_or_above(r) + chain.count_at_or_below(&-r);
    let s = four_d.sqrt();
    if &s * &s == four_d {
        return Some(outside(&BigRational::from_integer(s)) == 0);
    }
    for k in [8u32, 16, 32, 64, 128, 256] {
        let scale = BigInt::one() << k;
        let num = (&four_d * &scale * &scale).sqrt();
        if outside(&BigRational::new(num, scale)) == 0 {
            return Some(true);
        }
    }
    Some(false)
}

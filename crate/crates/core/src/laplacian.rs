//! Laplacian matching polynomials
//! `LM(G, x) = sum_M (-1)^|M| prod_{v not covered by M} (x - d(v))`,
//! computed by three independent routes:
//!
//! * [`lm_direct`] sums the defining expression over all matchings;
//! * [`lm_subdivision`] reads it off the matching polynomial of the
//!   subdivision, `M(S(G), x) = x^(m - n) LM(G, x^2)`;
//! * [`lm_tu`] assembles the coefficients `b_i` from weighted counts of
//!   spanning TU-subgraphs (see [`crate::census`]).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::census::{self, CensusLimits};
use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::graph6::write_graph6;
use crate::matching::{for_each_matching, matching_polynomial};
use crate::poly::{isolate_real_roots, IntPoly, RootSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Direct,
    Subdivision,
    TuCensus,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Direct => "direct",
            Route::Subdivision => "subdivision",
            Route::TuCensus => "tu-census",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `LM(G, x) = sum_i (-1)^i b_i x^(n - i)` together with the route that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianMatchingPoly {
    pub poly: IntPoly,
    pub route: Route,
}

impl LaplacianMatchingPoly {
    pub fn n(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// `b_i`, the sign-normalised coefficient of `x^(n - i)`.
    pub fn b(&self, i: usize) -> BigInt {
        let n = self.n();
        if i > n {
            return BigInt::zero();
        }
        let c = self.poly.coeff(n - i);
        if i % 2 == 0 {
            c
        } else {
            -c
        }
    }

    /// `b_0, ..., b_n`.
    pub fn b_coefficients(&self) -> Vec<BigInt> {
        (0..=self.n()).map(|i| self.b(i)).collect()
    }

    pub fn from_b(b: &[BigInt], route: Route) -> Self {
        let n = b.len().saturating_sub(1);
        let coeffs = (0..=n)
            .map(|k| {
                let i = n - k;
                if i % 2 == 0 {
                    b[i].clone()
                } else {
                    -b[i].clone()
                }
            })
            .collect();
        LaplacianMatchingPoly { poly: IntPoly::new(coeffs), route }
    }
}

/// Sum over all matchings of the defining product.
pub fn lm_direct(g: &Graph) -> LaplacianMatchingPoly {
    let factors: Vec<IntPoly> = (0..g.n()).map(|v| IntPoly::x_minus(g.degree(v) as i64)).collect();
    let mut total = IntPoly::zero();
    for_each_matching(g, |m, covered| {
        let term: IntPoly =
            (0..g.n()).filter(|&v| covered & bit(v) == 0).map(|v| factors[v].clone()).product();
        total = if m.len() % 2 == 0 { &total + &term } else { &total - &term };
    });
    LaplacianMatchingPoly { poly: total, route: Route::Direct }
}

/// `LM(G, y)` from `M(S(G), x)`: rescale by `x^(n - m)`, check that only even
/// powers survive, and substitute `x^2 -> y`.
pub fn lm_subdivision(g: &Graph) -> Result<LaplacianMatchingPoly> {
    let s = g.subdivision()?;
    let ms = matching_polynomial(&s);
    let (n, m) = (g.n(), g.m());
    let even = if m >= n {
        ms.div_x_pow(m - n).map_err(|e| {
            Error::Inconsistency(format!("M(S(G)) not divisible by x^(m-n) for {}: {e}", write_graph6(g)))
        })?
    } else {
        ms.mul_x_pow(n - m)
    };
    let coeffs = even.coeffs();
    if let Some(k) = (1..coeffs.len()).step_by(2).find(|&k| !coeffs[k].is_zero()) {
        return Err(Error::Inconsistency(format!(
            "x^(n-m) M(S(G)) has a nonzero odd coefficient at x^{k} for {}",
            write_graph6(g)
        )));
    }
    let poly = IntPoly::new(coeffs.iter().step_by(2).cloned().collect());
    Ok(LaplacianMatchingPoly { poly, route: Route::Subdivision })
}

/// `b_0 = 1` and `b_i` = total weight of spanning TU-subgraphs with `i`
/// edges.
pub fn lm_tu(g: &Graph, limits: &CensusLimits) -> Result<LaplacianMatchingPoly> {
    let b = census::tu_coefficients(g, limits)?;
    Ok(LaplacianMatchingPoly::from_b(&b, Route::TuCensus))
}

fn agree(g: &Graph, a: &LaplacianMatchingPoly, b: &LaplacianMatchingPoly) -> Result<()> {
    if a.poly == b.poly {
        Ok(())
    } else {
        Err(Error::RouteDisagreement {
            graph: write_graph6(g),
            left_route: a.route.name(),
            left: a.poly.to_string(),
            right_route: b.route.name(),
            right: b.poly.to_string(),
        })
    }
}

/// Compute `LM(G)` by the direct and subdivision routes, plus the TU route
/// when `tu` is given, and fail loudly unless they agree.
pub fn lm_cross_checked(g: &Graph, tu: Option<&CensusLimits>) -> Result<LaplacianMatchingPoly> {
    let direct = lm_direct(g);
    agree(g, &direct, &lm_subdivision(g)?)?;
    if let Some(limits) = tu {
        agree(g, &direct, &lm_tu(g, limits)?)?;
    }
    Ok(direct)
}

/// Certified roots `lambda_1 >= ... >= lambda_n` of `LM(G)`.
pub fn lm_roots(g: &Graph) -> Result<RootSet> {
    let lm = lm_direct(g);
    let roots = isolate_real_roots(&lm.poly);
    if !roots.is_real_rooted() {
        return Err(Error::Inconsistency(format!(
            "LM({}) = {} has only {} real roots out of {}",
            write_graph6(g),
            lm.poly,
            roots.total_multiplicity(),
            g.n()
        )));
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::arb_graph;
    use proptest::prelude::*;
    use crate::poly::IsolatedRoot;
    use num_rational::BigRational;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Oracle: expand the defining sum by hand from an explicit matching
    /// list, independent of the backtracker.
    fn by_hand(n: usize, degrees: &[i64], matchings: &[&[(usize, usize)]]) -> IntPoly {
        let mut total = IntPoly::zero();
        for m in matchings {
            let covered: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
            let term: IntPoly =
                (0..n).filter(|v| !covered.contains(v)).map(|v| IntPoly::x_minus(degrees[v])).product();
            total = if m.len() % 2 == 0 { total + term } else { total - term };
        }
        total
    }

    #[test]
    fn hand_expanded_oracles() {
        let k2 = by_hand(2, &[1, 1], &[&[], &[(0, 1)]]);
        assert_eq!(k2, p(&[0, -2, 1]));
        let p3 = by_hand(3, &[1, 2, 1], &[&[], &[(0, 1)], &[(1, 2)]]);
        assert_eq!(p3, p(&[0, 3, -4, 1]));
        let c3 = by_hand(3, &[2, 2, 2], &[&[], &[(0, 1)], &[(1, 2)], &[(0, 2)]]);
        assert_eq!(c3, p(&[-2, 9, -6, 1]));
        let star = by_hand(4, &[3, 1, 1, 1], &[&[], &[(0, 1)], &[(0, 2)], &[(0, 3)]]);
        // x (x - 1)^2 (x - 4)
        assert_eq!(star, p(&[0, -4, 9, -6, 1]));
    }

    #[test]
    fn direct_route_examples() {
        assert_eq!(lm_direct(&Graph::complete(2)).poly, p(&[0, -2, 1]));
        assert_eq!(lm_direct(&Graph::path(3)).poly, p(&[0, 3, -4, 1]));
        assert_eq!(lm_direct(&Graph::cycle(3)).poly, p(&[-2, 9, -6, 1]));
        assert_eq!(lm_direct(&Graph::star(3)).poly, p(&[0, -4, 9, -6, 1]));
        assert_eq!(lm_direct(&Graph::empty(1).unwrap()).poly, IntPoly::x());
    }

    #[test]
    fn subdivision_route_examples() {
        for g in [Graph::complete(2), Graph::cycle(3), Graph::star(3), Graph::complete(4)] {
            let s = lm_subdivision(&g).unwrap();
            assert_eq!(s.poly, lm_direct(&g).poly, "{g:?}");
        }
    }

    #[test]
    fn tu_route_examples() {
        let limits = CensusLimits::default();
        let c3 = lm_tu(&Graph::cycle(3), &limits).unwrap();
        assert_eq!(c3.b_coefficients(), [1, 6, 9, 2].map(BigInt::from).to_vec());
        for n in 3..=8 {
            assert_eq!(lm_tu(&Graph::cycle(n), &limits).unwrap().b(n), BigInt::from(2));
            assert!(lm_tu(&Graph::path(n), &limits).unwrap().b(n).is_zero());
        }
    }

    #[test]
    fn b_coefficients_basic_identities() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)]).unwrap();
        let lm = lm_cross_checked(&g, Some(&CensusLimits::default())).unwrap();
        assert_eq!(lm.b(0), BigInt::from(1));
        assert_eq!(lm.b(1), BigInt::from(2 * g.m()));
    }

    fn contains(r: &IsolatedRoot, x: i64) -> bool {
        let x = BigRational::from_integer(x.into());
        r.lo <= x && x <= r.hi
    }

    #[test]
    fn root_examples() {
        let p3 = lm_roots(&Graph::path(3)).unwrap();
        let lams = p3.expanded();
        assert!(contains(lams[0], 3) && contains(lams[1], 1) && contains(lams[2], 0));

        let star = lm_roots(&Graph::star(3)).unwrap();
        let lams = star.expanded();
        assert_eq!(lams.len(), 4);
        assert!(contains(lams[0], 4) && contains(lams[1], 1) && contains(lams[2], 1));
        assert!(contains(lams[3], 0));

        let c3 = lm_roots(&Graph::cycle(3)).unwrap();
        let approx: Vec<f64> = c3.refined(&lm_direct(&Graph::cycle(3)).poly, &BigRational::new(1.into(), (1u64 << 40).into()))
            .unwrap()
            .roots
            .iter()
            .map(IsolatedRoot::approx)
            .collect();
        let want = [2.0 + 3f64.sqrt(), 2.0, 2.0 - 3f64.sqrt()];
        for (a, w) in approx.iter().zip(want) {
            assert!((a - w).abs() < 1e-9);
        }
    }

    #[test]
    fn disagreement_is_reported() {
        let g = Graph::cycle(3);
        let wrong = LaplacianMatchingPoly { poly: p(&[0, 1]), route: Route::TuCensus };
        let err = agree(&g, &lm_direct(&g), &wrong).unwrap_err();
        assert!(matches!(err, Error::RouteDisagreement { left_route: "direct", right_route: "tu-census", .. }));
    }

    proptest! {
        #[test]
        fn multiplicative_over_disjoint_union(a in arb_graph(5), b in arb_graph(5)) {
            let u = a.disjoint_union(&b).unwrap();
            prop_assert_eq!(lm_direct(&u).poly, lm_direct(&a).poly * lm_direct(&b).poly);
        }

        #[test]
        fn first_coefficient_is_twice_the_size(g in arb_graph(8)) {
            let lm = lm_direct(&g);
            prop_assert_eq!(lm.b(0), BigInt::from(1));
            prop_assert_eq!(lm.b(1), BigInt::from(2 * g.m()));
        }

        #[test]
        fn direct_and_subdivision_agree(g in arb_graph(8)) {
            prop_assert_eq!(lm_subdivision(&g).unwrap().poly, lm_direct(&g).poly);
        }
    }
}

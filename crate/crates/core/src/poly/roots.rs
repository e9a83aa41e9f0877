use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{IntPoly, SturmChain};
use crate::error::{Error, Result};

/// One distinct real root: either the exact rational point `lo == hi`, or
/// the open interval `(lo, hi)` whose endpoints are not roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub multiplicity: usize,
}

impl IsolatedRoot {
    fn point(x: BigRational, multiplicity: usize) -> Self {
        IsolatedRoot { lo: x.clone(), hi: x, multiplicity }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn approx(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// `Less` if this root is certainly below `other`, `Greater` if above;
    /// `None` when the enclosures overlap and nothing can be concluded.
    pub fn compare(&self, other: &IsolatedRoot) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            return Some(self.lo.cmp(&other.lo));
        }
        // Not both exact, so touching enclosures are already strict.
        let below = self.hi <= other.lo;
        let above = other.hi <= self.lo;
        match (below, above) {
            (true, _) => Some(Ordering::Less),
            (_, true) => Some(Ordering::Greater),
            _ => None,
        }
    }
}

/// Distinct real roots of a polynomial, sorted in decreasing order, with
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    pub roots: Vec<IsolatedRoot>,
    /// Degree of the source polynomial.
    pub degree: usize,
}

impl RootSet {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn is_real_rooted(&self) -> bool {
        self.total_multiplicity() == self.degree
    }

    pub fn largest(&self) -> Option<&IsolatedRoot> {
        self.roots.first()
    }

    /// Roots repeated according to multiplicity, largest first
    /// (`lambda_1 >= lambda_2 >= ...`).
    pub fn expanded(&self) -> Vec<&IsolatedRoot> {
        self.roots.iter().flat_map(|r| std::iter::repeat_n(r, r.multiplicity)).collect()
    }

    /// Refine every enclosure of a root of `p` to width at most `width`.
    pub fn refined(&self, p: &IntPoly, width: &BigRational) -> Result<RootSet> {
        let roots =
            self.roots.iter().map(|r| refine_root(p, r, width)).collect::<Result<Vec<_>>>()?;
        Ok(RootSet { roots, degree: self.degree })
    }

    /// Decimal renderings of the (refined) midpoints, largest first.
    pub fn decimals(&self, digits: usize) -> Vec<RenderedRoot> {
        self.roots
            .iter()
            .map(|r| RenderedRoot {
                value: format_decimal(&r.midpoint(), digits),
                multiplicity: r.multiplicity,
                lo: r.lo.to_string(),
                hi: r.hi.to_string(),
            })
            .collect()
    }
}

/// Human-readable root record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RenderedRoot {
    pub value: String,
    pub multiplicity: usize,
    pub lo: String,
    pub hi: String,
}

fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().expect("nonzero").abs();
    let d = p.degree().unwrap();
    let max = p.coeffs()[..d].iter().map(Signed::abs).max().unwrap_or_default();
    BigRational::from_integer(BigInt::from(1)) + BigRational::new(max, lead)
}

enum Found {
    Point(BigRational),
    Open(BigRational, BigRational),
}

struct Isolator<'a> {
    chain: &'a SturmChain,
}

impl Isolator<'_> {
    fn is_root(&self, x: &BigRational) -> bool {
        self.chain.base().sign_at(x).is_eq()
    }

    /// Exactly one root in `(lo, hi]`; shrink until the endpoints are
    /// non-roots or the root is hit exactly.
    fn single(&self, mut lo: BigRational, mut hi: BigRational) -> Found {
        if self.is_root(&hi) {
            return Found::Point(hi);
        }
        while self.is_root(&lo) {
            let mid = (&lo + &hi) / BigInt::from(2);
            if self.chain.count_in(&lo, &mid) == 1 {
                if self.is_root(&mid) {
                    return Found::Point(mid);
                }
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Found::Open(lo, hi)
    }

    fn run(&self, lo: BigRational, hi: BigRational, vlo: usize, vhi: usize, out: &mut Vec<Found>) {
        let count = vlo - vhi;
        match count {
            0 => {}
            1 => out.push(self.single(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigInt::from(2);
                let vmid = self.chain.variations_at(&mid);
                self.run(mid.clone(), hi, vmid, vhi, out);
                self.run(lo, mid, vlo, vmid, out);
            }
        }
    }
}

/// Certified isolation of all real roots of `p` (with multiplicity).
/// Non-real roots are simply absent, so `total_multiplicity() < degree`
/// signals a polynomial that is not real-rooted.
pub fn isolate_real_roots(p: &IntPoly) -> RootSet {
    let degree = p.degree().unwrap_or(0);
    let chain = SturmChain::new(p);
    let base = chain.base();
    if base.degree().unwrap_or(0) == 0 {
        return RootSet { roots: Vec::new(), degree };
    }
    let bound = cauchy_bound(base);
    let lo = -bound.clone();
    let iso = Isolator { chain: &chain };
    let mut found = Vec::new();
    // split at 0 first, so no enclosure contains both signs
    let zero = BigRational::zero();
    let v0 = chain.variations_at(&zero);
    iso.run(zero.clone(), bound.clone(), v0, chain.variations_at(&bound), &mut found);
    iso.run(lo.clone(), zero, chain.variations_at(&lo), v0, &mut found);
    let mut roots: Vec<IsolatedRoot> = found
        .into_iter()
        .map(|f| match f {
            Found::Point(x) => IsolatedRoot::point(x, 0),
            Found::Open(lo, hi) => IsolatedRoot { lo, hi, multiplicity: 0 },
        })
        .collect();
    let mult = multiplicities_on(p, &roots);
    for (r, m) in roots.iter_mut().zip(mult) {
        r.multiplicity = m;
    }
    RootSet { roots, degree }
}

fn vanishes_in(sq: &IntPoly, r: &IsolatedRoot) -> bool {
    if r.is_exact() {
        return sq.sign_at(&r.lo).is_eq();
    }
    let (a, b) = (sq.sign_at(&r.lo), sq.sign_at(&r.hi));
    debug_assert!(a.is_ne() && b.is_ne(), "enclosure endpoint is a root");
    a != b
}

/// Multiplicity of `p` at each enclosed root. The enclosures must isolate
/// the distinct roots of some square-free polynomial whose roots include
/// every root of `p` lying in them. Each pass divides out the square-free
/// part exactly, so a root of multiplicity `k` survives `k` passes.
pub fn multiplicities_on(p: &IntPoly, roots: &[IsolatedRoot]) -> Vec<usize> {
    let mut mult = vec![0; roots.len()];
    if p.is_zero() {
        return mult;
    }
    let mut q = p.normalized();
    while q.degree().unwrap_or(0) > 0 {
        let sq = q.squarefree_part();
        for (m, r) in mult.iter_mut().zip(roots) {
            if vanishes_in(&sq, r) {
                *m += 1;
            }
        }
        q = q.exact_divide(&sq).expect("square-free part divides");
    }
    mult
}

/// Bisect an isolating enclosure of a root of `p` until its width is at
/// most `width`. Exact roots hit during bisection collapse the enclosure to
/// a point.
pub fn refine_root(p: &IntPoly, root: &IsolatedRoot, width: &BigRational) -> Result<IsolatedRoot> {
    if !width.is_positive() {
        return Err(Error::InvalidArgument(format!("refinement width must be positive, got {width}")));
    }
    if root.is_exact() {
        return Ok(root.clone());
    }
    let s = p.squarefree_part();
    let (mut lo, mut hi) = (root.lo.clone(), root.hi.clone());
    let slo = s.sign_at(&lo);
    let shi = s.sign_at(&hi);
    if slo.is_eq() {
        return Ok(IsolatedRoot::point(lo, root.multiplicity));
    }
    if shi.is_eq() {
        return Ok(IsolatedRoot::point(hi, root.multiplicity));
    }
    if slo == shi {
        return Err(Error::InvalidArgument(format!("[{lo}, {hi}] does not bracket a root of {p}")));
    }
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / BigInt::from(2);
        match s.sign_at(&mid) {
            Ordering::Equal => return Ok(IsolatedRoot::point(mid, root.multiplicity)),
            sm if sm == slo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(IsolatedRoot { lo, hi, multiplicity: root.multiplicity })
}

/// Round `x` to `digits` decimals (half away from zero) and drop trailing
/// zeros, keeping at least one fractional digit.
pub fn format_decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (x * BigRational::from_integer(scale)).round().to_integer();
    let neg = scaled.is_negative();
    let mut s = scaled.abs().to_string();
    if s.len() <= digits {
        s = "0".repeat(digits + 1 - s.len()) + &s;
    }
    let (int, frac) = s.split_at(s.len() - digits);
    let frac = frac.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    let sign = if neg { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn c3_polynomial_roots() {
        let f = p(&[-2, 9, -6, 1]);
        let rs = isolate_real_roots(&f);
        assert_eq!(rs.roots.len(), 3);
        assert!(rs.is_real_rooted());
        let approx: Vec<f64> = rs.roots.iter().map(IsolatedRoot::approx).collect();
        // Midpoints of isolating intervals are only coarse; check enclosure.
        let exact = [2.0 + 3f64.sqrt(), 2.0, 2.0 - 3f64.sqrt()];
        for (r, e) in rs.roots.iter().zip(exact) {
            assert!(r.lo.to_f64().unwrap() <= e && e <= r.hi.to_f64().unwrap(), "{approx:?}");
            assert_eq!(r.multiplicity, 1);
        }
        let two = q(2, 1);
        assert!(rs.roots[1].lo <= two && two <= rs.roots[1].hi);
    }

    #[test]
    fn star_polynomial_roots() {
        let rs = isolate_real_roots(&p(&[0, -4, 9, -6, 1]));
        let expect = [(q(4, 1), 1), (q(1, 1), 2), (q(0, 1), 1)];
        assert_eq!(rs.roots.len(), 3);
        for (r, (x, m)) in rs.roots.iter().zip(expect) {
            assert!(r.lo <= x && x <= r.hi);
            assert_eq!(r.multiplicity, m);
        }
        assert_eq!(rs.total_multiplicity(), 4);
    }

    #[test]
    fn no_real_roots() {
        let rs = isolate_real_roots(&p(&[1, 0, 1]));
        assert!(rs.roots.is_empty());
        assert_eq!(rs.total_multiplicity(), 0);
        assert!(!rs.is_real_rooted());
    }

    #[test]
    fn intervals_never_straddle_zero() {
        for f in [p(&[-1, 0, 3, 0, -1, 0, 0, 1]), p(&[0, 1]), p(&[-1, 1]), p(&[1, 1]), p(&[0, -4, 9, -6, 1])] {
            let rs = isolate_real_roots(&f);
            for r in &rs.roots {
                assert!(!(r.lo.is_negative() && r.hi.is_positive()), "{f}: ({}, {})", r.lo, r.hi);
            }
        }
        let x = isolate_real_roots(&p(&[0, 1]));
        assert!(x.roots[0].is_exact() && x.roots[0].lo.is_zero());
    }

    #[test]
    fn refine_examples() {
        let sqrt2 = IsolatedRoot { lo: q(1, 1), hi: q(2, 1), multiplicity: 1 };
        let r = refine_root(&p(&[-2, 0, 1]), &sqrt2, &q(1, 1024)).unwrap();
        assert!(r.width() <= q(1, 1024));
        assert!(r.lo.to_f64().unwrap() < 2f64.sqrt() && 2f64.sqrt() < r.hi.to_f64().unwrap());

        let three = IsolatedRoot { lo: q(2, 1), hi: q(4, 1), multiplicity: 1 };
        let r = refine_root(&p(&[-3, 1]), &three, &q(1, 2)).unwrap();
        assert!(r.lo <= q(3, 1) && q(3, 1) <= r.hi);

        let f = p(&[-2, 9, -6, 1]);
        let top = isolate_real_roots(&f).roots[0].clone();
        let r = refine_root(&f, &top, &q(1, 1_000_000_000_000)).unwrap();
        assert!(r.width() <= q(1, 1_000_000_000_000));
        assert_eq!(format_decimal(&r.midpoint(), 9), "3.732050808");
        // (lo - 2)^2 < 3 < (hi - 2)^2 certifies 2 + sqrt(3) in (lo, hi)
        let sq = |x: &BigRational| (x - q(2, 1)) * (x - q(2, 1));
        assert!(sq(&r.lo) < q(3, 1) && q(3, 1) < sq(&r.hi));
    }

    #[test]
    fn refine_rejects_bad_width() {
        let r = IsolatedRoot { lo: q(1, 1), hi: q(2, 1), multiplicity: 1 };
        assert!(matches!(refine_root(&p(&[-2, 0, 1]), &r, &q(0, 1)), Err(Error::InvalidArgument(_))));
        assert!(matches!(refine_root(&p(&[-2, 0, 1]), &r, &q(-1, 2)), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&q(3, 1), 9), "3.0");
        assert_eq!(format_decimal(&q(1, 4), 9), "0.25");
        assert_eq!(format_decimal(&q(-1, 3), 4), "-0.3333");
        assert_eq!(format_decimal(&q(2, 3), 2), "0.67");
        assert_eq!(format_decimal(&q(0, 1), 0), "0.0");
    }

    #[test]
    fn sturm_count_matches_isolation() {
        let f = p(&[0, 4, -5, 1]); // roots 0, 1, 4
        let rs = isolate_real_roots(&f);
        let chain = SturmChain::new(&f);
        assert_eq!(chain.count_in(&q(-1, 2), &q(9, 2)), rs.roots.len());
    }
}

//! Spanning TU-subgraphs (every component a tree or unicyclic), their
//! weights `2^s * prod |T_i|`, spanning-tree and unicyclic-spanning counts,
//! and the counting inequalities built on them.
//!
//! All enumerations walk edge subsets as `u64` bitmasks in increasing
//! numeric order, so results are deterministic. Exhaustive enumeration is
//! guarded by [`CensusLimits`].

mod partitions;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use partitions::{
    admissible_partitions, partition_ratio_check, AdmissiblePartition, PartitionRatio, PartitionType,
};

/// Caps exhaustive edge-subset enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusLimits {
    pub max_edges: usize,
}

impl Default for CensusLimits {
    fn default() -> Self {
        CensusLimits { max_edges: 24 }
    }
}

impl CensusLimits {
    pub fn check(&self, g: &Graph) -> Result<()> {
        let m = g.m();
        if m > self.max_edges.min(63) {
            return Err(Error::SizeCapExceeded { edges: m, cap: self.max_edges.min(63) });
        }
        Ok(())
    }
}

/// Spanning subgraph given by an edge subset, with its component summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuSubgraph {
    /// Bit `k` set iff the `k`-th edge of [`Graph::edges`] is present.
    pub edges: u64,
    /// Number of unicyclic components.
    pub unicyclic: usize,
    /// Orders of the tree components, isolated vertices included.
    pub tree_orders: Vec<usize>,
    pub weight: BigInt,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n], edges: vec![0; n] }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.edges[ra] += 1;
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.edges[big] += self.edges[small] + 1;
    }
}

/// Classify the spanning subgraph of `g` with edge set `mask` (indices into
/// `edges`). Returns `None` unless every component is a tree or unicyclic.
pub fn classify(n: usize, edges: &[(usize, usize)], mask: u64) -> Option<TuSubgraph> {
    let mut uf = UnionFind::new(n);
    let mut rest = mask;
    while rest != 0 {
        let k = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (a, b) = edges[k];
        uf.add_edge(a, b);
    }
    let mut unicyclic = 0;
    let mut tree_orders = Vec::new();
    for v in 0..n {
        if uf.parent[v] != v {
            continue;
        }
        match uf.edges[v].cmp(&uf.size[v]) {
            std::cmp::Ordering::Greater => return None,
            std::cmp::Ordering::Equal => unicyclic += 1,
            std::cmp::Ordering::Less => tree_orders.push(uf.size[v]),
        }
    }
    let weight = tree_orders.iter().fold(BigInt::one() << unicyclic, |w, &t| w * t);
    Some(TuSubgraph { edges: mask, unicyclic, tree_orders, weight })
}

/// Visit every `k`-element subset of `0..m` as a bitmask, increasing.
fn for_each_k_subset(m: usize, k: usize, mut visit: impl FnMut(u64)) {
    if k > m {
        return;
    }
    if k == 0 {
        visit(0);
        return;
    }
    let limit = 1u128 << m;
    let mut s: u64 = (1u64 << k) - 1;
    loop {
        visit(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s as u128 + c as u128;
        if r >= limit {
            break;
        }
        let r = r as u64;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

/// Spanning TU-subgraphs of `g` with exactly `k` edges.
pub fn tu_subgraphs(g: &Graph, k: usize, limits: &CensusLimits) -> Result<Vec<TuSubgraph>> {
    limits.check(g)?;
    let edges = g.edges();
    let mut out = Vec::new();
    for_each_k_subset(edges.len(), k, |mask| {
        if let Some(h) = classify(g.n(), &edges, mask) {
            out.push(h);
        }
    });
    Ok(out)
}

/// `b_i`: total weight of spanning TU-subgraphs with `i` edges, `1 <= i <= n`.
pub fn coefficient_b(g: &Graph, i: usize, limits: &CensusLimits) -> Result<BigInt> {
    if i == 0 || i > g.n() {
        return Err(Error::InvalidArgument(format!("coefficient index {i} outside 1..={}", g.n())));
    }
    limits.check(g)?;
    let edges = g.edges();
    let mut total = BigInt::zero();
    for_each_k_subset(edges.len(), i, |mask| {
        if let Some(h) = classify(g.n(), &edges, mask) {
            total += h.weight;
        }
    });
    Ok(total)
}

/// `b_0 = 1, b_1, ..., b_n` in one pass over the edge subsets.
pub fn tu_coefficients(g: &Graph, limits: &CensusLimits) -> Result<Vec<BigInt>> {
    limits.check(g)?;
    let n = g.n();
    let edges = g.edges();
    let mut b = vec![BigInt::zero(); n + 1];
    b[0] = BigInt::one();
    for k in 1..=n.min(edges.len()) {
        for_each_k_subset(edges.len(), k, |mask| {
            if let Some(h) = classify(n, &edges, mask) {
                b[k] += h.weight;
            }
        });
    }
    Ok(b)
}

/// `sum omega(H)` over spanning TU-subgraphs with `n` edges that contain
/// every edge of `require` and none of `forbid`.
pub fn filtered_weight(
    g: &Graph,
    require: &[(usize, usize)],
    forbid: &[(usize, usize)],
    limits: &CensusLimits,
) -> Result<BigInt> {
    limits.check(g)?;
    let edges = g.edges();
    let index_mask = |list: &[(usize, usize)]| -> Result<u64> {
        list.iter().try_fold(0u64, |acc, &(u, v)| {
            let key = (u.min(v), u.max(v));
            let k = edges
                .iter()
                .position(|&e| e == key)
                .ok_or_else(|| Error::InvalidArgument(format!("{{{u}, {v}}} is not an edge")))?;
            Ok(acc | 1 << k)
        })
    };
    let need = index_mask(require)?;
    let avoid = index_mask(forbid)?;
    if need & avoid != 0 {
        return Err(Error::InvalidArgument("required and forbidden edge sets intersect".into()));
    }
    let mut total = BigInt::zero();
    for_each_k_subset(edges.len(), g.n(), |mask| {
        if mask & need == need && mask & avoid == 0 {
            if let Some(h) = classify(g.n(), &edges, mask) {
                total += h.weight;
            }
        }
    });
    Ok(total)
}

/// Number of spanning trees by the Matrix-Tree theorem: determinant of the
/// Laplacian with the last row and column removed, by fraction-free
/// (Bareiss) elimination. Zero for disconnected graphs.
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    let n = g.n();
    if n <= 1 {
        return BigInt::from(n);
    }
    let size = n - 1;
    let mut a: Vec<Vec<BigInt>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size {
        if a[k][k].is_zero() {
            match (k + 1..size).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Spanning trees by brute force over `(n - 1)`-edge subsets; an oracle for
/// [`spanning_tree_count`].
pub fn spanning_trees_enumerated(g: &Graph, limits: &CensusLimits) -> Result<BigInt> {
    limits.check(g)?;
    if g.n() == 0 {
        return Ok(BigInt::zero());
    }
    let edges = g.edges();
    let mut count = 0u64;
    for_each_k_subset(edges.len(), g.n() - 1, |mask| {
        if classify(g.n(), &edges, mask).is_some_and(|h| h.unicyclic == 0 && h.tree_orders.len() == 1) {
            count += 1;
        }
    });
    Ok(count.into())
}

fn connected_unicyclic(g: &Graph, limits: &CensusLimits) -> Result<Vec<u64>> {
    limits.check(g)?;
    let edges = g.edges();
    let mut out = Vec::new();
    for_each_k_subset(edges.len(), g.n(), |mask| {
        if classify(g.n(), &edges, mask).is_some_and(|h| h.unicyclic == 1 && h.tree_orders.is_empty()) {
            out.push(mask);
        }
    });
    Ok(out)
}

/// Number of connected unicyclic spanning subgraphs.
pub fn unicyclic_spanning_count(g: &Graph, limits: &CensusLimits) -> Result<BigInt> {
    Ok(connected_unicyclic(g, limits)?.len().into())
}

/// Length of the unique cycle of each connected unicyclic spanning subgraph.
pub fn unicyclic_cycle_lengths(g: &Graph, limits: &CensusLimits) -> Result<Vec<usize>> {
    let edges = g.edges();
    let n = g.n();
    Ok(connected_unicyclic(g, limits)?
        .into_iter()
        .map(|mask| {
            // peel leaves; what survives is the cycle
            let mut deg = vec![0usize; n];
            let chosen: Vec<(usize, usize)> =
                (0..edges.len()).filter(|k| mask >> k & 1 == 1).map(|k| edges[k]).collect();
            for &(a, b) in &chosen {
                deg[a] += 1;
                deg[b] += 1;
            }
            let mut alive = vec![true; n];
            let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
            while let Some(v) = stack.pop() {
                alive[v] = false;
                for &(a, b) in &chosen {
                    let w = if a == v { b } else if b == v { a } else { continue };
                    if alive[w] {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            stack.push(w);
                        }
                    }
                }
            }
            alive.iter().filter(|&&a| a).count()
        })
        .collect())
}

/// Outcome of the spanning-tree versus unicyclic counting inequality
/// `|T(G)| * c(G) >= |H1(G)| * g(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub trees: BigInt,
    pub unicyclic: BigInt,
    pub girth: usize,
    pub cycle_dim: usize,
    pub holds: bool,
    /// `|T| * c == |H1| * g`.
    pub tight: bool,
}

impl RatioCheck {
    /// `|T(G)| / |H1(G)|`.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(self.trees.clone(), self.unicyclic.clone())
    }
}

pub fn ratio_check(g: &Graph, limits: &CensusLimits) -> Result<RatioCheck> {
    let metrics = g.structural_metrics();
    if !metrics.is_connected {
        return Err(Error::Domain("ratio check needs a connected graph".into()));
    }
    let Some((girth, cycle_dim)) = metrics.girth_and_dim() else {
        return Err(Error::Domain("ratio check needs a graph with a cycle (c >= 1)".into()));
    };
    let trees = spanning_tree_count(g);
    let unicyclic = unicyclic_spanning_count(g, limits)?;
    let lhs = &trees * cycle_dim;
    let rhs = &unicyclic * girth;
    Ok(RatioCheck { holds: lhs >= rhs, tight: lhs == rhs, trees, unicyclic, girth, cycle_dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> CensusLimits {
        CensusLimits::default()
    }

    fn c4_chord() -> Graph {
        Graph::cycle(4).add_edge(0, 2).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coefficient_b(&Graph::cycle(3), 1, &lim()).unwrap(), BigInt::from(6));
        assert_eq!(coefficient_b(&Graph::cycle(3), 3, &lim()).unwrap(), BigInt::from(2));
        assert_eq!(coefficient_b(&c4_chord(), 4, &lim()).unwrap(), BigInt::from(10));
        assert!(matches!(coefficient_b(&Graph::cycle(3), 0, &lim()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn single_edge_weight() {
        let g = Graph::cycle(3);
        let hs = tu_subgraphs(&g, 1, &lim()).unwrap();
        assert_eq!(hs.len(), 3);
        for h in hs {
            assert_eq!(h.unicyclic, 0);
            let mut orders = h.tree_orders.clone();
            orders.sort_unstable();
            assert_eq!(orders, vec![1, 2]);
            assert_eq!(h.weight, BigInt::from(2));
        }
    }

    #[test]
    fn spanning_tree_examples() {
        for n in 3..=9 {
            assert_eq!(spanning_tree_count(&Graph::cycle(n)), BigInt::from(n));
        }
        assert_eq!(spanning_tree_count(&Graph::complete(4)), BigInt::from(16));
        assert_eq!(spanning_tree_count(&Graph::complete(6)), BigInt::from(1296));
        assert_eq!(spanning_tree_count(&Graph::star(5)), BigInt::one());
        assert_eq!(spanning_tree_count(&Graph::path(6)), BigInt::one());
        assert_eq!(spanning_tree_count(&Graph::empty(3).unwrap()), BigInt::zero());
        assert_eq!(spanning_tree_count(&c4_chord()), BigInt::from(8));
    }

    #[test]
    fn bareiss_matches_enumeration() {
        for g in crate::generate::connected_graphs(6).unwrap() {
            assert_eq!(spanning_tree_count(&g), spanning_trees_enumerated(&g, &lim()).unwrap());
        }
    }

    #[test]
    fn unicyclic_examples() {
        assert_eq!(unicyclic_spanning_count(&Graph::cycle(6), &lim()).unwrap(), BigInt::one());
        assert_eq!(unicyclic_spanning_count(&Graph::complete(4), &lim()).unwrap(), BigInt::from(15));
        assert_eq!(unicyclic_spanning_count(&Graph::path(5), &lim()).unwrap(), BigInt::zero());
        assert_eq!(unicyclic_spanning_count(&c4_chord(), &lim()).unwrap(), BigInt::from(5));
        let mut lens = unicyclic_cycle_lengths(&Graph::complete(4), &lim()).unwrap();
        lens.sort_unstable();
        assert_eq!(lens, [vec![3; 12], vec![4; 3]].concat());
    }

    #[test]
    fn ratio_examples() {
        let c5 = ratio_check(&Graph::cycle(5), &lim()).unwrap();
        assert!(c5.holds && c5.tight);
        assert_eq!((c5.trees.clone(), c5.unicyclic.clone()), (BigInt::from(5), BigInt::one()));

        let k4 = ratio_check(&Graph::complete(4), &lim()).unwrap();
        assert!(k4.holds && !k4.tight);
        assert_eq!(k4.ratio(), BigRational::new(16.into(), 15.into()));

        let ch = ratio_check(&c4_chord(), &lim()).unwrap();
        assert_eq!((ch.girth, ch.cycle_dim), (3, 2));
        assert!(ch.holds && !ch.tight);

        assert!(matches!(ratio_check(&Graph::path(4), &lim()), Err(Error::Domain(_))));
        let two = Graph::cycle(3).disjoint_union(&Graph::cycle(3)).unwrap();
        assert!(matches!(ratio_check(&two, &lim()), Err(Error::Domain(_))));
    }

    #[test]
    fn filtered_weight_examples() {
        let c3 = Graph::cycle(3);
        assert_eq!(filtered_weight(&c3, &[], &[], &lim()).unwrap(), BigInt::from(2));
        assert!(filtered_weight(&c3, &[], &[(0, 1)], &lim()).unwrap().is_zero());
        assert!(matches!(
            filtered_weight(&c3, &[(0, 1)], &[(1, 0)], &lim()),
            Err(Error::InvalidArgument(_))
        ));

        // triangle 0-1-2, pendant 3 attached to 0 by f; candidate e = {3, 1}
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3)]).unwrap();
        let ge = g.add_edge(1, 3).unwrap();
        let base = filtered_weight(&g, &[], &[], &lim()).unwrap();
        assert_eq!(filtered_weight(&ge, &[(1, 3)], &[(0, 3)], &lim()).unwrap(), base);
        assert_eq!(filtered_weight(&ge, &[(0, 3)], &[(1, 3)], &lim()).unwrap(), base);
    }

    #[test]
    fn size_cap() {
        let tight = CensusLimits { max_edges: 5 };
        assert!(matches!(
            coefficient_b(&Graph::complete(4), 2, &tight),
            Err(Error::SizeCapExceeded { edges: 6, cap: 5 })
        ));
    }

    #[test]
    fn k_subsets_are_complete() {
        let mut seen = Vec::new();
        for_each_k_subset(5, 2, |s| seen.push(s));
        assert_eq!(seen.len(), 10);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        let mut all = 0;
        for_each_k_subset(63, 63, |_| all += 1);
        assert_eq!(all, 1);
    }

    #[test]
    fn coefficients_match_direct_expansion() {
        for g in crate::generate::connected_graphs_up_to(6).unwrap() {
            let lm = crate::laplacian::lm_direct(&g);
            for i in 1..=g.n() {
                assert_eq!(coefficient_b(&g, i, &lim()).unwrap(), lm.b(i), "{g:?}, i = {i}");
            }
        }
    }

    #[test]
    fn new_edge_splits_top_coefficient() {
        for g in crate::generate::connected_graphs_up_to(6).unwrap() {
            let b_n = coefficient_b(&g, g.n(), &lim()).unwrap();
            for (u, v) in g.non_edges() {
                let ge = g.add_edge(u, v).unwrap();
                let with_e = filtered_weight(&ge, &[(u, v)], &[], &lim()).unwrap();
                let without_e = filtered_weight(&ge, &[], &[(u, v)], &lim()).unwrap();
                assert_eq!(without_e, b_n);
                assert_eq!(with_e + without_e, coefficient_b(&ge, g.n(), &lim()).unwrap());
            }
        }
    }
}

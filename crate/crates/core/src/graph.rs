//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Adjacency is stored as one `u128` row per vertex, which caps the order at
//! [`MAX_VERTICES`]. Subdivisions of the graphs this crate works with stay well
//! inside that bound, and the matching-polynomial recursion keys its cache on
//! the same bitmasks.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 128;

/// Vertex subset of a graph with at most [`MAX_VERTICES`] vertices.
pub type VertexSet = u128;

#[inline]
pub(crate) fn bit(v: usize) -> VertexSet {
    1u128 << v
}

/// Iterate the members of a vertex set in increasing order.
pub fn members(mut set: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if set == 0 {
            None
        } else {
            let v = set.trailing_zeros() as usize;
            set &= set - 1;
            Some(v)
        }
    })
}

/// An immutable simple graph. Edit operations return new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { what: "n", got: n, cap: MAX_VERTICES });
        }
        Ok(Graph { adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::EdgeExists(u.min(v), u.max(v)));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path graph")
    }

    /// The cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle graph")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("complete graph")
    }

    /// The star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Set of all vertices.
    pub fn vertex_set(&self) -> VertexSet {
        if self.n() == MAX_VERTICES {
            VertexSet::MAX
        } else {
            bit(self.n()) - 1
        }
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        members(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u] & bit(v) != 0
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() {
            for v in members(self.adj[u] >> u) {
                if v > 0 {
                    out.push((u, u + v));
                }
            }
        }
        out
    }

    /// All unordered pairs `{u, v}`, `u < v`, that are not edges, in
    /// lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// `G + {u, v}`.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.insert_edge(u, v)?;
        Ok(g)
    }

    /// `G - v`; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let keep = self.vertex_set() & !bit(v);
        Ok(self.induced(keep))
    }

    /// Subgraph induced by `set`, relabelled to `0..|set|` preserving order.
    pub fn induced(&self, set: VertexSet) -> Graph {
        let set = set & self.vertex_set();
        let index: Vec<usize> = members(set).collect();
        let mut adj = vec![0; index.len()];
        for (i, &u) in index.iter().enumerate() {
            for (j, &w) in index.iter().enumerate() {
                if self.adj[u] & bit(w) != 0 {
                    adj[i] |= bit(j);
                }
            }
        }
        Graph { adj }
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n() + other.n();
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            g.insert_edge(u, v)?;
        }
        let off = self.n();
        for (u, v) in other.edges() {
            g.insert_edge(u + off, v + off)?;
        }
        Ok(g)
    }

    /// The subdivision `S(G)`: every edge `{a, b}` becomes a path `a - w - b`
    /// through a new vertex `w`. Original vertices keep their labels; the
    /// edge-vertices are appended in [`Graph::edges`] order.
    pub fn subdivision(&self) -> Result<Graph> {
        let edges = self.edges();
        let total = self.n() + edges.len();
        if total > MAX_VERTICES {
            return Err(Error::TooLarge { what: "n + m", got: total, cap: MAX_VERTICES });
        }
        let mut s = Graph::empty(total)?;
        for (k, &(a, b)) in edges.iter().enumerate() {
            let w = self.n() + k;
            s.insert_edge(a, w)?;
            s.insert_edge(b, w)?;
        }
        Ok(s)
    }

    /// Connected components restricted to `within`, each as a vertex set,
    /// ordered by smallest member.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let comp = self.reach(start, within);
            out.push(comp);
            rest &= !comp;
        }
        out
    }

    /// Vertices reachable from `seeds` inside `within`.
    pub fn reach(&self, seeds: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = seeds & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertex_set())
    }

    /// Connectivity; the empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.reach(1, self.vertex_set()) == self.vertex_set()
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        members(set).map(|v| (self.adj[v] & set).count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.is_connected() && self.m() + 1 == self.n()
    }

    /// `K_{1,k}` for some `k >= 1`.
    pub fn is_star(&self) -> bool {
        let n = self.n();
        n >= 2 && self.is_tree() && self.max_degree() == n - 1
    }

    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.is_connected() && (0..self.n()).all(|v| self.degree(v) == 2)
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn structural_metrics(&self) -> StructuralMetrics {
        let component_count = self.components().len();
        let cycle_space_dim = self.m() + component_count - self.n();
        let is_connected = component_count <= 1;
        StructuralMetrics {
            girth: self.girth(),
            cycle_space_dim,
            is_tree: is_connected && self.n() >= 1 && cycle_space_dim == 0,
            is_connected,
            component_count,
        }
    }
}

/// Girth, cycle-space dimension and connectivity summary of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuralMetrics {
    /// `None` for acyclic graphs.
    pub girth: Option<usize>,
    /// `m - n + components`.
    pub cycle_space_dim: usize,
    pub is_tree: bool,
    pub is_connected: bool,
    pub component_count: usize,
}

impl StructuralMetrics {
    /// `(g, c)` when the graph has a cycle.
    pub fn girth_and_dim(&self) -> Option<(usize, usize)> {
        match (self.girth, self.cycle_space_dim) {
            (Some(g), c) if c >= 1 => Some((g, c)),
            _ => None,
        }
    }

    /// Exact test of `g / c > num / den`.
    pub fn girth_ratio_exceeds(&self, num: usize, den: usize) -> bool {
        self.girth_and_dim().is_some_and(|(g, c)| g * den > num * c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::arb_graph;
    use proptest::prelude::*;

    #[test]
    fn metrics_of_small_families() {
        let c5 = Graph::cycle(5).structural_metrics();
        assert_eq!(c5.girth, Some(5));
        assert_eq!(c5.cycle_space_dim, 1);
        assert!(c5.is_connected && !c5.is_tree);

        let p4 = Graph::path(4).structural_metrics();
        assert_eq!(p4.girth, None);
        assert_eq!(p4.cycle_space_dim, 0);
        assert!(p4.is_tree);

        let k4 = Graph::complete(4).structural_metrics();
        assert_eq!(k4.girth_and_dim(), Some((3, 3)));
        assert!(!k4.girth_ratio_exceeds(1, 1));
    }

    #[test]
    fn subdivision_shapes() {
        let p3 = Graph::complete(2).subdivision().unwrap();
        assert_eq!(p3.edges(), vec![(0, 2), (1, 2)]);

        let s = Graph::cycle(3).subdivision().unwrap();
        assert_eq!((s.n(), s.m()), (6, 6));
        assert!(s.is_cycle());

        let spider = Graph::star(3).subdivision().unwrap();
        assert_eq!((spider.n(), spider.m()), (7, 6));
        assert!(spider.is_tree());
        assert_eq!(spider.degree(0), 3);
        assert!((4..7).all(|w| spider.degree(w) == 2));
        assert!((1..4).all(|leaf| spider.degree(leaf) == 1));
    }

    #[test]
    fn subdivision_respects_cap() {
        let big = Graph::complete(16);
        assert!(matches!(big.subdivision(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn delete_vertex_cases() {
        for v in 0..3 {
            assert_eq!(Graph::cycle(3).delete_vertex(v).unwrap(), Graph::complete(2));
        }
        let split = Graph::path(3).delete_vertex(1).unwrap();
        assert_eq!((split.n(), split.m()), (2, 0));
        for v in 0..4 {
            assert_eq!(Graph::complete(4).delete_vertex(v).unwrap(), Graph::cycle(3));
        }
        assert!(matches!(Graph::path(3).delete_vertex(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn add_edge_cases() {
        assert_eq!(Graph::path(3).add_edge(0, 2).unwrap(), Graph::cycle(3));

        let k4_minus = Graph::cycle(4).add_edge(0, 2).unwrap();
        assert_eq!(k4_minus.m(), 5);
        assert_eq!(k4_minus.non_edges(), vec![(1, 3)]);

        let bicyclic = Graph::cycle(5).add_edge(0, 2).unwrap();
        assert_eq!(bicyclic.m(), 6);
        assert_eq!(bicyclic.structural_metrics().cycle_space_dim, 2);

        assert_eq!(Graph::path(3).add_edge(0, 1), Err(Error::EdgeExists(0, 1)));
        assert_eq!(Graph::path(3).add_edge(2, 2), Err(Error::Loop(2)));
    }

    #[test]
    fn non_edge_lists() {
        assert!(Graph::complete(4).non_edges().is_empty());
        assert_eq!(Graph::cycle(4).non_edges(), vec![(0, 2), (1, 3)]);
        assert_eq!(Graph::path(3).non_edges(), vec![(0, 2)]);
    }

    #[test]
    fn star_and_cycle_recognition() {
        assert!(Graph::star(3).is_star());
        assert!(Graph::complete(2).is_star());
        assert!(!Graph::path(4).is_star());
        assert!(!Graph::empty(1).unwrap().is_star());
        assert!(Graph::cycle(6).is_cycle());
        assert!(!Graph::path(6).is_cycle());
    }

    #[test]
    fn girth_of_petersen_like_examples() {
        let k33 = Graph::from_edges(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(k33.girth(), Some(4));
        let two_triangles =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert_eq!(two_triangles.girth(), Some(3));
        assert_eq!(Graph::cycle(7).girth(), Some(7));
    }

    proptest! {
        #[test]
        fn subdivision_shape(g in arb_graph(9)) {
            let s = g.subdivision().unwrap();
            prop_assert_eq!((s.n(), s.m()), (g.n() + g.m(), 2 * g.m()));
            for w in g.n()..s.n() {
                prop_assert_eq!(s.degree(w), 2);
            }
        }

        #[test]
        fn subdivision_doubles_girth(g in arb_graph(9)) {
            let s = g.subdivision().unwrap().structural_metrics();
            prop_assert_eq!(s.girth, g.girth().map(|x| 2 * x));
        }

        #[test]
        fn deleting_a_vertex_splits_at_most_its_degree(g in arb_graph(9), pick in any::<prop::sample::Index>()) {
            let v = pick.index(g.n());
            let before = g.structural_metrics().component_count;
            let after = g.delete_vertex(v).unwrap().structural_metrics().component_count;
            // an isolated vertex takes its component with it
            let floor = before - usize::from(g.degree(v) == 0);
            prop_assert!(after >= floor && after <= before - 1 + g.degree(v).max(1));
        }

        #[test]
        fn cycle_space_dimension(g in arb_graph(9)) {
            let m = g.structural_metrics();
            prop_assert_eq!(m.cycle_space_dim + g.n(), g.m() + m.component_count);
            prop_assert_eq!(m.girth.is_none(), m.cycle_space_dim == 0);
            prop_assert_eq!(m.is_tree, m.is_connected && m.cycle_space_dim == 0 && g.n() > 0);
        }
    }
}

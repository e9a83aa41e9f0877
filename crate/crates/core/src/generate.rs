//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on `n` vertices are produced by attaching a new vertex to every
//! graph on `n - 1` vertices in every possible way and keeping one
//! representative per canonical form. Canonical forms come from colour
//! refinement followed by a branch-and-bound search for the lexicographically
//! smallest graph6 bit string among the orderings compatible with the
//! refined colouring. This is plenty for the orders used by the verification
//! suites (the search is only exponential inside colour classes).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{bit, members, Graph};

/// Largest order accepted by the generators.
pub const MAX_GENERATED_ORDER: usize = 10;

/// Stable colour refinement: returns a colour per vertex such that equal
/// colours are equivalent under 1-dimensional Weisfeiler-Leman, and colour
/// values are themselves isomorphism invariant.
fn refine_colours(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = {
        let mut c = colour.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> =
            sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        colour = next;
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

struct CanonSearch<'a> {
    g: &'a Graph,
    n: usize,
    total_bits: u32,
    /// `cells[k]` = vertices allowed at position `k`.
    cells: Vec<Vec<usize>>,
    order: Vec<usize>,
    used: u128,
    best: Option<(u64, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn search(&mut self, pos: usize, code: u64) {
        if pos == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        let candidates: Vec<usize> =
            self.cells[pos].iter().copied().filter(|&v| self.used & bit(v) == 0).collect();
        for v in candidates {
            let mut c = code;
            for &u in &self.order {
                c = c << 1 | self.g.has_edge(u, v) as u64;
            }
            let len = (pos * (pos + 1) / 2) as u32;
            if let Some((best, _)) = &self.best {
                let shift = self.total_bits - len;
                if c > best >> shift {
                    continue;
                }
            }
            self.order.push(v);
            self.used |= bit(v);
            self.search(pos + 1, c);
            self.used &= !bit(v);
            self.order.pop();
        }
    }
}

/// Canonical relabelling: two graphs are isomorphic iff their canonical
/// forms are equal.
pub fn canonical_form(g: &Graph) -> Graph {
    canonical(g).1
}

fn canonical(g: &Graph) -> ((Vec<usize>, u64), Graph) {
    let n = g.n();
    assert!(n <= MAX_GENERATED_ORDER + 1, "canonical form supports n <= 11");
    let colour = refine_colours(g);
    let mut by_colour: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_colour.entry(colour[v]).or_default().push(v);
    }
    let mut cells = Vec::with_capacity(n);
    let mut profile = Vec::with_capacity(n);
    for (c, vs) in &by_colour {
        for _ in vs {
            cells.push(vs.clone());
            profile.push(*c);
        }
    }
    let mut search = CanonSearch {
        g,
        n,
        total_bits: (n * n.saturating_sub(1) / 2) as u32,
        cells,
        order: Vec::with_capacity(n),
        used: 0,
        best: None,
    };
    search.search(0, 0);
    let (code, order) = search.best.expect("at least one ordering");
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let edges: Vec<(usize, usize)> =
        g.edges().into_iter().map(|(u, v)| (position[u], position[v])).collect();
    let canon = Graph::from_edges(n, &edges).expect("relabelled graph");
    ((profile, code), canon)
}

/// All graphs on exactly `n` vertices, one per isomorphism class, in a
/// deterministic order.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_GENERATED_ORDER {
        return Err(Error::TooLarge { what: "generated order", got: n, cap: MAX_GENERATED_ORDER });
    }
    let mut level = vec![Graph::empty(0)?];
    for k in 1..=n {
        let mut seen: BTreeMap<(usize, (Vec<usize>, u64)), Graph> = BTreeMap::new();
        for g in &level {
            for nbrs in 0u128..(1u128 << (k - 1)) {
                let mut edges = g.edges();
                edges.extend(members(nbrs).map(|u| (u, k - 1)));
                let h = Graph::from_edges(k, &edges)?;
                let (key, canon) = canonical(&h);
                seen.entry((h.m(), key)).or_insert(canon);
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

/// Connected graphs on exactly `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Connected graphs with `1 <= order <= max_n`, by increasing order.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_sequences() {
        // OEIS A000088 and A001349.
        let all = [1, 2, 4, 11, 34, 156];
        let connected = [1, 1, 2, 6, 21, 112];
        for n in 1..=6 {
            let gs = all_graphs(n).unwrap();
            assert_eq!(gs.len(), all[n - 1], "all graphs n={n}");
            assert_eq!(gs.iter().filter(|g| g.is_connected()).count(), connected[n - 1]);
        }
    }

    #[test]
    fn canonical_form_ignores_labelling() {
        let a = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let b = Graph::from_edges(5, &[(3, 0), (0, 4), (4, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let c = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&c));
        assert_ne!(canonical_form(&a), canonical_form(&Graph::complete(5)));
    }
}

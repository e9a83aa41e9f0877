use proptest::prelude::*;

use crate::graph::Graph;

/// Random labelled graph on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Random connected graph with at least one non-edge, and one of its
/// non-edges.
pub fn arb_connected_with_non_edge(max_n: usize) -> impl Strategy<Value = (Graph, (usize, usize))> {
    arb_graph(max_n)
        .prop_filter("connected with a non-edge", |g| g.is_connected() && !g.non_edges().is_empty())
        .prop_flat_map(|g| {
            let count = g.non_edges().len();
            (Just(g), 0..count)
        })
        .prop_map(|(g, k)| {
            let e = g.non_edges()[k];
            (g, e)
        })
}

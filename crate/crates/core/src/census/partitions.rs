use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{spanning_tree_count, unicyclic_spanning_count, CensusLimits};
use crate::error::{Error, Result};
use crate::graph::{bit, members, Graph, VertexSet};

/// Vertex partition whose blocks each induce a connected subgraph with at
/// least one cycle. Blocks are ordered by smallest vertex, i.e. the blocks of
/// the restricted-growth string of the partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissiblePartition {
    pub blocks: Vec<VertexSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PartitionType {
    /// Both endpoints of the candidate edge share a block.
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

impl AdmissiblePartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b & bit(v) != 0)
    }

    pub fn kind(&self, u: usize, v: usize) -> Option<PartitionType> {
        match (self.block_of(u)?, self.block_of(v)?) {
            (a, b) if a == b => Some(PartitionType::TypeI),
            _ => Some(PartitionType::TypeII),
        }
    }

    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&b| members(b).collect()).collect()
    }
}

fn admissible_block(g: &Graph, block: VertexSet) -> bool {
    block.count_ones() >= 3
        && g.reach(block & block.wrapping_neg(), block) == block
        && g.edges_within(block) >= block.count_ones() as usize
}

/// Every block that can still be carved out of `rest` lies inside one of its
/// components and needs as many edges as vertices, so each component must
/// have that many edges too.
fn can_finish(g: &Graph, rest: VertexSet) -> bool {
    g.components_within(rest)
        .into_iter()
        .all(|c| g.edges_within(c) >= c.count_ones() as usize)
}

/// All TU-admissible partitions of `V(G)`. Blocks are chosen in order of
/// their smallest vertex, with the remainder pruned as soon as one of its
/// components cannot be covered by cyclic blocks.
pub fn admissible_partitions(g: &Graph) -> Vec<AdmissiblePartition> {
    fn rec(g: &Graph, rest: VertexSet, blocks: &mut Vec<VertexSet>, out: &mut Vec<AdmissiblePartition>) {
        if rest == 0 {
            out.push(AdmissiblePartition { blocks: blocks.clone() });
            return;
        }
        let v = rest.trailing_zeros() as usize;
        let others = rest & !bit(v);
        // submasks of `others`, smallest first
        let mut sub: VertexSet = 0;
        loop {
            let block = sub | bit(v);
            let remaining = rest & !block;
            if admissible_block(g, block) && can_finish(g, remaining) {
                blocks.push(block);
                rec(g, remaining, blocks, out);
                blocks.pop();
            }
            if sub == others {
                break;
            }
            sub = (sub.wrapping_sub(others)) & others;
        }
    }
    let mut out = Vec::new();
    if g.n() > 0 && can_finish(g, g.vertex_set()) {
        rec(g, g.vertex_set(), &mut Vec::new(), &mut out);
    }
    out
}

/// Ratio attached to one admissible partition and candidate edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRatio {
    pub kind: PartitionType,
    /// Type I: `|T(G_1)| / |H1(G_1)|`; Type II:
    /// `|T(G_1)| / (2|H1(G_1)|) + |T(G_2)| / (2|H1(G_2)|)`.
    pub ratio: BigRational,
    /// `ratio > 1`.
    pub holds: bool,
}

fn block_ratio(g: &Graph, block: VertexSet, limits: &CensusLimits) -> Result<BigRational> {
    let sub = g.induced(block);
    let trees = spanning_tree_count(&sub);
    let unicyclic = unicyclic_spanning_count(&sub, limits)?;
    Ok(BigRational::new(trees, unicyclic))
}

/// Evaluate the Type I / Type II ratio for partition `pi` and candidate
/// edge `{u, v}` of `g`.
pub fn partition_ratio_check(
    g: &Graph,
    (u, v): (usize, usize),
    pi: &AdmissiblePartition,
    limits: &CensusLimits,
) -> Result<PartitionRatio> {
    if u >= g.n() || v >= g.n() || u == v || g.has_edge(u, v) {
        return Err(Error::NotANonEdge(u, v));
    }
    let union = pi.blocks.iter().fold(0, |acc, b| acc | b);
    let disjoint = pi.blocks.iter().map(|b| b.count_ones()).sum::<u32>() == union.count_ones();
    if union != g.vertex_set() || !disjoint || !pi.blocks.iter().all(|&b| admissible_block(g, b)) {
        return Err(Error::InvalidArgument("not a TU-admissible partition of the graph".into()));
    }
    let (bu, bv) = (pi.block_of(u).expect("covered"), pi.block_of(v).expect("covered"));
    let (kind, ratio) = if bu == bv {
        (PartitionType::TypeI, block_ratio(g, pi.blocks[bu], limits)?)
    } else {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let r = block_ratio(g, pi.blocks[bu], limits)? * &half
            + block_ratio(g, pi.blocks[bv], limits)? * &half;
        (PartitionType::TypeII, r)
    };
    let holds = ratio > BigRational::one();
    Ok(PartitionRatio { kind, ratio, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }

    #[test]
    fn partition_examples() {
        let c3 = admissible_partitions(&Graph::cycle(3));
        assert_eq!(c3, vec![AdmissiblePartition { blocks: vec![0b111] }]);
        assert!(admissible_partitions(&Graph::path(5)).is_empty());
        assert!(admissible_partitions(&Graph::star(4)).is_empty());

        let tt = admissible_partitions(&two_triangles());
        assert_eq!(tt.len(), 2);
        assert!(tt.contains(&AdmissiblePartition { blocks: vec![0b111111] }));
        assert!(tt.contains(&AdmissiblePartition { blocks: vec![0b000111, 0b111000] }));
    }

    /// Brute force over all set partitions (restricted growth strings).
    fn all_partitions_oracle(g: &Graph) -> Vec<Vec<VertexSet>> {
        let n = g.n();
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn rec(k: usize, max: usize, rgs: &mut Vec<usize>, g: &Graph, out: &mut Vec<Vec<VertexSet>>) {
            let n = rgs.len();
            if k == n {
                let mut blocks = vec![0; max + 1];
                for (v, &b) in rgs.iter().enumerate() {
                    blocks[b] |= bit(v);
                }
                if blocks.iter().all(|&b| admissible_block(g, b)) {
                    out.push(blocks);
                }
                return;
            }
            for b in 0..=max + 1 {
                rgs[k] = b;
                rec(k + 1, max.max(b), rgs, g, out);
            }
        }
        if n > 0 {
            rgs[0] = 0;
            rec(1, 0, &mut rgs, g, &mut out);
        }
        out
    }

    #[test]
    fn matches_restricted_growth_enumeration() {
        for g in crate::generate::connected_graphs(6).unwrap() {
            let mut ours: Vec<Vec<VertexSet>> =
                admissible_partitions(&g).into_iter().map(|p| p.blocks).collect();
            let mut brute = all_partitions_oracle(&g);
            ours.sort();
            brute.sort();
            assert_eq!(ours, brute, "{g:?}");
        }
    }

    #[test]
    fn ratio_examples() {
        let lim = CensusLimits::default();
        let c5_plus = Graph::cycle(5);
        let whole = AdmissiblePartition { blocks: vec![0b11111] };
        let r = partition_ratio_check(&c5_plus, (0, 2), &whole, &lim).unwrap();
        assert_eq!(r.kind, PartitionType::TypeI);
        assert_eq!(r.ratio, BigRational::from_integer(5.into()));
        assert!(r.holds);

        let tt = two_triangles();
        let split = AdmissiblePartition { blocks: vec![0b000111, 0b111000] };
        let r = partition_ratio_check(&tt, (0, 4), &split, &lim).unwrap();
        assert_eq!(r.kind, PartitionType::TypeII);
        assert_eq!(r.ratio, BigRational::from_integer(3.into()));

        // {0..3} leaves vertex 4 uncovered
        let g = Graph::complete(4).disjoint_union(&Graph::empty(1).unwrap()).unwrap().add_edge(0, 4).unwrap();
        let pi = AdmissiblePartition { blocks: vec![0b01111] };
        assert!(matches!(partition_ratio_check(&g, (1, 4), &pi, &lim), Err(Error::InvalidArgument(_))));
        let k4_only = partition_ratio_check(
            &Graph::complete(4).disjoint_union(&Graph::cycle(3)).unwrap(),
            (0, 4),
            &AdmissiblePartition { blocks: vec![0b0001111, 0b1110000] },
            &lim,
        )
        .unwrap();
        // 16/30 + 3/2
        assert_eq!(k4_only.ratio, BigRational::new(61.into(), 30.into()));

        assert!(matches!(
            partition_ratio_check(&tt, (0, 1), &split, &lim),
            Err(Error::NotANonEdge(0, 1))
        ));
    }

    #[test]
    fn k4_block_ratio() {
        let lim = CensusLimits::default();
        let k4 = Graph::complete(4);
        let r = super::block_ratio(&k4, k4.vertex_set(), &lim).unwrap();
        assert_eq!(r, BigRational::new(16.into(), 15.into()));
    }
}

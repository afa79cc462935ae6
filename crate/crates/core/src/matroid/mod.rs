//! Matroid oracles and the machinery built on them: graphic and hypergraphic
//! matroids, partition rank formulas, k-fold union base packing and the
//! union exchange adjustment.

mod hypergraph;
mod partition;
mod union;

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{EdgeId, Ends, Multigraph, VertexId};

pub use hypergraph::{
    hypergraphic_independent, hypergraphic_rank, hypergraphic_rank_by_partitions, parse_hypergraph,
    union_rank, union_rank_by_packing, union_rank_by_partitions, write_hypergraph, write_partition,
    write_representatives, HyperForest, HyperedgeId, Hypergraph, HypergraphicMatroid,
    Representatives,
};
pub use partition::{
    min_partition_value, partitions, EdgeClassification, Partition, RestrictedGrowth,
};
pub use union::{
    adjust_union, pack_bases, pack_bases_on, Deficiency, PackOutcome, UnionBasisFamily,
    UnionMatroid,
};

/// An independence oracle on the ground set `0..ground_size()`.
pub trait Matroid {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, set: &[usize]) -> bool;

    /// Rank by greedy growth in the given order.
    fn rank(&self, set: &[usize]) -> usize {
        let mut basis = Vec::new();
        for &e in set {
            basis.push(e);
            if !self.is_independent(&basis) {
                basis.pop();
            }
        }
        basis.len()
    }

    fn full_rank(&self) -> usize {
        let all: Vec<usize> = (0..self.ground_size()).collect();
        self.rank(&all)
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        (**self).is_independent(set)
    }

    fn rank(&self, set: &[usize]) -> usize {
        (**self).rank(set)
    }
}

/// Union-find over `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// True iff the edges form a forest: no loop and no cycle.
pub fn graphic_independent<'a>(
    vertices: &BTreeSet<VertexId>,
    edges: impl IntoIterator<Item = &'a Ends>,
) -> bool {
    let index: BTreeMap<VertexId, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut dsu = Dsu::new(index.len());
    edges
        .into_iter()
        .all(|e| match (index.get(&e.0), index.get(&e.1)) {
            (Some(&a), Some(&b)) => dsu.union(a, b),
            _ => false,
        })
}

/// The cycle matroid of a multigraph; element `i` is the `i`-th edge in
/// ascending id order.
#[derive(Debug, Clone)]
pub struct GraphicMatroid {
    num_vertices: usize,
    ids: Vec<EdgeId>,
    ends: Vec<(usize, usize)>,
}

impl GraphicMatroid {
    pub fn new(g: &Multigraph) -> Self {
        let index: BTreeMap<VertexId, usize> = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let (ids, ends) = g
            .edges()
            .map(|(id, e)| (id, (index[&e.0], index[&e.1])))
            .unzip();
        GraphicMatroid {
            num_vertices: index.len(),
            ids,
            ends,
        }
    }

    pub fn edge_id(&self, element: usize) -> EdgeId {
        self.ids[element]
    }

    pub fn element(&self, id: EdgeId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.ids.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut dsu = Dsu::new(self.num_vertices);
        set.iter().all(|&e| {
            let (a, b) = self.ends[e];
            dsu.union(a, b)
        })
    }

    fn rank(&self, set: &[usize]) -> usize {
        let mut dsu = Dsu::new(self.num_vertices);
        set.iter()
            .filter(|&&e| {
                let (a, b) = self.ends[e];
                dsu.union(a, b)
            })
            .count()
    }
}

/// Every subset is independent.
#[derive(Debug, Clone, Copy)]
pub struct FreeMatroid(pub usize);

impl Matroid for FreeMatroid {
    fn ground_size(&self) -> usize {
        self.0
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let distinct: BTreeSet<_> = set.iter().collect();
        distinct.len() == set.len() && set.iter().all(|&e| e < self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graphic_examples() {
        let vs: BTreeSet<VertexId> = (0..3).map(VertexId).collect();
        let ab = Ends::new(VertexId(0), VertexId(1));
        let bc = Ends::new(VertexId(1), VertexId(2));
        let ca = Ends::new(VertexId(2), VertexId(0));
        assert!(graphic_independent(&vs, [&ab, &bc]));
        assert!(!graphic_independent(&vs, [&ab, &bc, &ca]));
        let lp = Ends::new(VertexId(1), VertexId(1));
        assert!(!graphic_independent(&vs, [&lp]));
    }

    #[test]
    fn graphic_matroid_rank() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let m = GraphicMatroid::new(&g);
        assert_eq!(m.full_rank(), 3);
        assert!(!m.is_independent(&[0, 1, 2, 3]));
        assert_eq!(m.element(EdgeId(2)), Some(2));
    }

    /// Downward closure and exchange by full enumeration.
    pub(crate) fn check_axioms<M: Matroid>(m: &M) {
        let n = m.ground_size();
        assert!(n <= 10);
        let members = |mask: u32| -> Vec<usize> { (0..n).filter(|i| mask >> i & 1 == 1).collect() };
        let indep: Vec<bool> = (0u32..1 << n)
            .map(|mask| m.is_independent(&members(mask)))
            .collect();
        assert!(indep[0], "empty set must be independent");
        for mask in 0u32..1 << n {
            if !indep[mask as usize] {
                continue;
            }
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    assert!(indep[(mask & !(1 << i)) as usize], "downward closure");
                }
            }
            for other in 0u32..1 << n {
                if indep[other as usize] && other.count_ones() > mask.count_ones() {
                    let extendable = (0..n).any(|i| {
                        other >> i & 1 == 1 && mask >> i & 1 == 0 && indep[(mask | 1 << i) as usize]
                    });
                    assert!(extendable, "exchange axiom");
                }
            }
        }
    }

    #[test]
    fn graphic_axioms_on_small_multigraphs() {
        let g =
            Multigraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (2, 2)]);
        check_axioms(&GraphicMatroid::new(&g));
        check_axioms(&FreeMatroid(5));
    }
}

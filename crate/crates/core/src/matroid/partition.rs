//! Vertex partitions, enumerated canonically as restricted growth strings.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::VertexId;

/// A partition of a vertex set into nonempty disjoint blocks.
///
/// Blocks are kept ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<BTreeSet<VertexId>>,
}

impl Partition {
    /// Builds a partition from arbitrary blocks; empty blocks are dropped.
    /// Returns `None` if two blocks overlap.
    pub fn new(blocks: impl IntoIterator<Item = BTreeSet<VertexId>>) -> Option<Self> {
        let mut blocks: Vec<_> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        let total: usize = blocks.iter().map(BTreeSet::len).sum();
        let union: BTreeSet<_> = blocks.iter().flatten().collect();
        if union.len() != total {
            return None;
        }
        blocks.sort_by_key(|b| *b.first().unwrap());
        Some(Partition { blocks })
    }

    /// Decodes a restricted growth string over `vertices`: vertex `i` goes
    /// to block `labels[i]`.
    pub fn from_labels(vertices: &[VertexId], labels: &[usize]) -> Self {
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![BTreeSet::new(); count];
        for (&v, &l) in vertices.iter().zip(labels) {
            blocks[l].insert(v);
        }
        Partition::new(blocks).expect("labels define disjoint blocks")
    }

    pub fn discrete(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        Partition::new(vertices.into_iter().map(|v| BTreeSet::from([v]))).unwrap()
    }

    pub fn blocks(&self) -> &[BTreeSet<VertexId>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.blocks.iter().map(BTreeSet::len).sum()
    }

    /// `|V| - |P|`.
    pub fn rank(&self) -> usize {
        self.num_vertices() - self.len()
    }

    pub fn block_of(&self, v: VertexId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&v))
    }

    /// True when every vertex of `edge` lies in one block.
    pub fn is_inner(&self, edge: &[VertexId]) -> bool {
        let mut it = edge.iter().map(|&v| self.block_of(v));
        match it.next() {
            Some(first) => first.is_some() && it.all(|b| b == first),
            None => true,
        }
    }

    pub fn classify<I: Ord + Copy>(
        &self,
        edges: impl IntoIterator<Item = (I, Vec<VertexId>)>,
    ) -> EdgeClassification<I> {
        let mut out = EdgeClassification {
            inner: BTreeSet::new(),
            outer: BTreeSet::new(),
        };
        for (id, ends) in edges {
            if self.is_inner(&ends) {
                out.inner.insert(id);
            } else {
                out.outer.insert(id);
            }
        }
        out
    }
}

/// Edges split into those inside a block and those crossing blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification<I: Ord> {
    pub inner: BTreeSet<I>,
    pub outer: BTreeSet<I>,
}

impl<I: Ord> EdgeClassification<I> {
    pub fn lambda_in(&self) -> usize {
        self.inner.len()
    }

    pub fn lambda_out(&self) -> usize {
        self.outer.len()
    }
}

/// Iterator over all set partitions of `{0..n}` as restricted growth
/// strings, in lexicographic order.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    labels: Vec<usize>,
    // maxima[i] = max(labels[..i]), so labels[i] may grow up to maxima[i] + 1
    maxima: Vec<usize>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            labels: vec![0; n],
            maxima: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.labels.clone();
        let n = self.labels.len();
        // Advance the rightmost position (past 0) that can still grow.
        match (1..n).rev().find(|&i| self.labels[i] <= self.maxima[i]) {
            Some(i) => {
                self.labels[i] += 1;
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxima[j] = self.maxima[j - 1].max(self.labels[j - 1]);
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// All partitions of `vertices`, in restricted-growth order.
pub fn partitions(vertices: &[VertexId]) -> impl Iterator<Item = Partition> + '_ {
    RestrictedGrowth::new(vertices.len())
        .map(move |labels| Partition::from_labels(vertices, &labels))
}

/// Minimum of `k * r(P) + λ^out_P(edges)` over all partitions `P` of
/// `vertices`, with the first minimiser in restricted-growth order.
pub fn min_partition_value<'a>(
    vertices: &[VertexId],
    edges: impl IntoIterator<Item = &'a [VertexId]>,
    k: usize,
) -> (usize, Partition) {
    let index: BTreeMap<VertexId, usize> =
        vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<Vec<usize>> = edges
        .into_iter()
        .map(|e| e.iter().map(|v| index[v]).collect())
        .collect();
    let n = vertices.len();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for labels in RestrictedGrowth::new(n) {
        let blocks = labels.iter().max().map_or(0, |m| m + 1);
        let outer = edges
            .iter()
            .filter(|e| e.iter().any(|&x| labels[x] != labels[e[0]]))
            .count();
        let value = k * (n - blocks) + outer;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, labels));
        }
    }
    let (value, labels) = best.expect("at least one partition");
    (value, Partition::from_labels(vertices, &labels))
}

//! Enumeration and oracle helpers shared by the integration suites.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use treepack::graph::{Multigraph, VertexId};
use treepack::matroid::{HyperedgeId, Hypergraph, RestrictedGrowth};
use treepack::rng::Rng;

/// Vertex subsets of `0..n` of the given sizes, as bitmasks in ascending order.
pub fn subset_masks(n: usize, sizes: &[u32]) -> Vec<u8> {
    (0u8..(1 << n))
        .filter(|m| sizes.contains(&m.count_ones()))
        .collect()
}

fn permute_mask(mask: u8, perm: &[usize]) -> u8 {
    (0..perm.len())
        .filter(|&i| mask >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << perm[i])
}

/// One representative per isomorphism class of multisets of at most
/// `max_len` items drawn from `items` (vertex bitmasks over `0..n`).
///
/// A multiset is kept when its sorted item list is the lexicographic minimum
/// over all vertex permutations.
pub fn iso_classes(n: usize, items: &[u8], max_len: usize) -> Vec<Vec<u8>> {
    let tables: Vec<Vec<u8>> = (0..n)
        .permutations(n)
        .map(|p| {
            (0u8..=u8::MAX >> (8 - n.max(1)))
                .map(|m| permute_mask(m, &p))
                .collect()
        })
        .collect();
    let mut sorted_items = items.to_vec();
    sorted_items.sort_unstable();
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(max_len);
    for len in 0..=max_len {
        for combo in sorted_items
            .iter()
            .copied()
            .combinations_with_replacement(len)
        {
            let canonical = tables.iter().all(|t| {
                image.clear();
                image.extend(combo.iter().map(|&m| t[m as usize]));
                image.sort_unstable();
                combo.as_slice() <= image.as_slice()
            });
            if canonical {
                out.push(combo);
            }
        }
    }
    out
}

/// Endpoints of a two-vertex (or one-vertex, for a loop) mask.
pub fn mask_ends(mask: u8) -> (u32, u32) {
    let a = mask.trailing_zeros();
    let b = 7 - mask.leading_zeros();
    (a, b)
}

pub fn graph_from_masks(n: usize, edges: &[u8]) -> Multigraph {
    let pairs: Vec<(u32, u32)> = edges.iter().map(|&m| mask_ends(m)).collect();
    Multigraph::from_edges(n as u32, &pairs)
}

pub fn hypergraph_from_masks(n: usize, edges: &[u8]) -> Hypergraph {
    let mut h = Hypergraph::new((0..n as u32).map(VertexId));
    for (i, &m) in edges.iter().enumerate() {
        let members: Vec<VertexId> = (0..n as u32)
            .filter(|&v| m >> v & 1 == 1)
            .map(VertexId)
            .collect();
        h.add_hyperedge(HyperedgeId(i as u32), &members).unwrap();
    }
    h
}

/// A multigraph on `0..n` with `m` uniformly drawn edges; each edge is a loop
/// with probability `loop_num / loop_den`.
pub fn random_multigraph(
    rng: &mut Rng,
    n: usize,
    m: usize,
    loop_num: u64,
    loop_den: u64,
) -> Multigraph {
    let mut pairs = Vec::with_capacity(m);
    for _ in 0..m {
        let a = rng.index(n) as u32;
        let b = if n == 1 || rng.chance(loop_num, loop_den) {
            a
        } else {
            let mut b = rng.index(n - 1) as u32;
            if b >= a {
                b += 1;
            }
            b
        };
        pairs.push((a, b));
    }
    Multigraph::from_edges(n as u32, &pairs)
}

/// Number of non-loop edges crossing between blocks of the labelling.
pub fn crossing_edges(g: &Multigraph, label: impl Fn(VertexId) -> usize) -> usize {
    g.edges()
        .filter(|(_, e)| !e.is_loop() && label(e.0) != label(e.1))
        .count()
}

/// Is there a partition `P` of `V` with fewer than `k(|P| - 1)` crossing
/// edges? Exhaustive over restricted-growth strings.
pub fn partition_violates(g: &Multigraph, k: usize) -> bool {
    let vs: Vec<VertexId> = g.vertices().iter().copied().collect();
    let pos = |v: VertexId| vs.binary_search(&v).unwrap();
    RestrictedGrowth::new(vs.len()).any(|labels| {
        let blocks = labels.iter().max().map_or(0, |&m| m + 1);
        crossing_edges(g, |v| labels[pos(v)]) < k * blocks.saturating_sub(1)
    })
}

/// Minimum `x`-`y` cut by enumerating every vertex bipartition.
pub fn brute_min_cut(g: &Multigraph, x: VertexId, y: VertexId) -> usize {
    let vs: Vec<VertexId> = g.vertices().iter().copied().collect();
    let (xi, yi) = (vs.binary_search(&x).unwrap(), vs.binary_search(&y).unwrap());
    let pos = |v: VertexId| vs.binary_search(&v).unwrap();
    (0u32..1 << vs.len())
        .filter(|s| s >> xi & 1 == 1 && s >> yi & 1 == 0)
        .map(|s| crossing_edges(g, |v| (s >> pos(v) & 1) as usize))
        .min()
        .unwrap_or(0)
}

/// Whether removing edge `id` separates its endpoints, by direct search.
pub fn separates(g: &Multigraph, id: treepack::graph::EdgeId) -> bool {
    let ends = g.ends(id).unwrap();
    if ends.is_loop() {
        return false;
    }
    let mut h = g.clone();
    h.remove_edge(id).unwrap();
    !h.components()
        .iter()
        .any(|c| c.contains(&ends.0) && c.contains(&ends.1))
}

/// Every subset of `items`, smallest masks first.
pub fn all_subsets<T: Copy + Ord>(items: &[T]) -> impl Iterator<Item = BTreeSet<T>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x)
            .collect()
    })
}

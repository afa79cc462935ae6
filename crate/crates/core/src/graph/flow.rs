//! Unit-capacity max-flow on undirected multigraphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Multigraph, TerminalSet, VertexId};
use crate::error::{Error, Result};

/// A minimum edge cut: its size and the source side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub size: usize,
    pub side: BTreeSet<VertexId>,
}

/// Residual network of a multigraph, reusable across many s-t queries.
///
/// Each non-loop edge becomes a pair of mutually reverse arcs of capacity one,
/// which models an undirected unit edge exactly.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    index: BTreeMap<VertexId, usize>,
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    head: Vec<usize>,
    cap: Vec<u8>,
}

impl FlowNetwork {
    pub fn new(g: &Multigraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().iter().copied().collect();
        let index: BTreeMap<_, _> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        let mut head = Vec::new();
        for (_, e) in g.edges() {
            if e.is_loop() {
                continue;
            }
            let (a, b) = (index[&e.0], index[&e.1]);
            adj[a].push(head.len());
            head.push(b);
            adj[b].push(head.len());
            head.push(a);
        }
        let cap = vec![1; head.len()];
        FlowNetwork {
            index,
            ids,
            adj,
            head,
            cap,
        }
    }

    /// Minimum s-t cut via shortest augmenting paths.
    pub fn min_cut(&mut self, s: VertexId, t: VertexId) -> Result<Cut> {
        let (Some(&si), Some(&ti)) = (self.index.get(&s), self.index.get(&t)) else {
            return Err(Error::invalid(format!(
                "min_cut endpoints {s}, {t} must both be vertices of the graph"
            )));
        };
        if si == ti {
            return Err(Error::invalid("min_cut needs two distinct vertices"));
        }
        self.cap.iter_mut().for_each(|c| *c = 1);
        let n = self.ids.len();
        let mut flow = 0;
        loop {
            let mut via: Vec<Option<usize>> = vec![None; n];
            let mut seen = vec![false; n];
            seen[si] = true;
            let mut queue = VecDeque::from([si]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &arc in &self.adj[x] {
                    let y = self.head[arc];
                    if self.cap[arc] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = Some(arc);
                        if y == ti {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !seen[ti] {
                let side = (0..n).filter(|&i| seen[i]).map(|i| self.ids[i]).collect();
                return Ok(Cut { size: flow, side });
            }
            let mut y = ti;
            while let Some(arc) = via[y] {
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                y = self.head[arc ^ 1];
            }
            flow += 1;
        }
    }
}

/// Minimum number of edges separating `s` from `t`, with a source side.
/// Loops never count.
pub fn min_cut(g: &Multigraph, s: VertexId, t: VertexId) -> Result<Cut> {
    FlowNetwork::new(g).min_cut(s, t)
}

/// A minimum edge cut separating the terminals.
///
/// Computed as the smallest `min_cut(t0, t)` over the other terminals, with
/// `t0` the smallest terminal. Terminals in different components give 0.
pub fn steiner_min_cut(g: &Multigraph, terminals: &TerminalSet) -> Result<Cut> {
    if terminals.len() < 2 {
        return Err(Error::invalid(
            "steiner connectivity needs at least two terminals",
        ));
    }
    let mut net = FlowNetwork::new(g);
    let root = terminals.first();
    let mut best: Option<Cut> = None;
    for t in terminals.iter().skip(1) {
        let cut = net.min_cut(root, t)?;
        if best.as_ref().is_none_or(|b| cut.size < b.size) {
            best = Some(cut);
        }
    }
    Ok(best.expect("at least one other terminal"))
}

pub fn steiner_connectivity(g: &Multigraph, terminals: &TerminalSet) -> Result<usize> {
    steiner_min_cut(g, terminals).map(|c| c.size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    /// Smallest number of edges whose deletion disconnects s from t, by
    /// trying every edge subset.
    fn brute_min_cut(g: &Multigraph, s: VertexId, t: VertexId) -> usize {
        let ids: Vec<EdgeId> = g.edge_ids().collect();
        let mut best = usize::MAX;
        for mask in 0u32..(1 << ids.len()) {
            let mut h = g.clone();
            for (i, &id) in ids.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    h.remove_edge(id).unwrap();
                }
            }
            let sep = !h
                .components()
                .iter()
                .any(|c| c.contains(&s) && c.contains(&t));
            if sep {
                best = best.min(mask.count_ones() as usize);
            }
        }
        best
    }

    /// Minimum crossing count over vertex bipartitions that split T.
    fn brute_steiner(g: &Multigraph, t: &TerminalSet) -> usize {
        let vs: Vec<VertexId> = g.vertices().iter().copied().collect();
        let mut best = usize::MAX;
        for mask in 1u32..(1 << vs.len()) - 1 {
            let inside = |x: VertexId| {
                let i = vs.iter().position(|&y| y == x).unwrap();
                mask >> i & 1 == 1
            };
            let tin = t.iter().filter(|&x| inside(x)).count();
            if tin == 0 || tin == t.len() {
                continue;
            }
            let crossing = g
                .edges()
                .filter(|(_, e)| inside(e.0) != inside(e.1))
                .count();
            best = best.min(crossing);
        }
        best
    }

    #[test]
    fn parallel_bundle() {
        let g = Multigraph::from_edges(2, &[(0, 1); 5]);
        assert_eq!(min_cut(&g, v(0), v(1)).unwrap().size, 5);
    }

    #[test]
    fn triangle_pair() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(min_cut(&g, v(0), v(1)).unwrap().size, 2);
    }

    #[test]
    fn doubled_triangle_matches_subset_enumeration() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (2, 0)]);
        let expected = brute_min_cut(&g, v(0), v(1));
        assert_eq!(expected, 4);
        let cut = min_cut(&g, v(0), v(1)).unwrap();
        assert_eq!(cut.size, expected);
        assert!(cut.side.contains(&v(0)) && !cut.side.contains(&v(1)));
    }

    #[test]
    fn loops_never_count() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(min_cut(&g, v(0), v(1)).unwrap().size, 1);
    }

    #[test]
    fn rejects_equal_or_unknown_endpoints() {
        let g = Multigraph::from_edges(2, &[(0, 1)]);
        assert!(matches!(
            min_cut(&g, v(0), v(0)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            min_cut(&g, v(0), v(7)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn steiner_examples() {
        let tri = Multigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(
            steiner_connectivity(&tri, &TerminalSet::all(&tri).unwrap()).unwrap(),
            2
        );

        let path = Multigraph::from_edges(3, &[(0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (1, 2)]);
        let t = TerminalSet::new([v(0), v(2)]).unwrap();
        assert_eq!(steiner_connectivity(&path, &t).unwrap(), 3);

        // Star with centre 0 outside T, doubled spokes.
        let star = Multigraph::from_edges(4, &[(0, 1), (0, 1), (0, 2), (0, 2), (0, 3), (0, 3)]);
        let t = TerminalSet::new([v(1), v(2), v(3)]).unwrap();
        let expected = brute_steiner(&star, &t);
        assert_eq!(expected, 2);
        assert_eq!(steiner_connectivity(&star, &t).unwrap(), expected);
    }

    #[test]
    fn steiner_needs_two_terminals() {
        let g = Multigraph::from_edges(2, &[(0, 1)]);
        let t = TerminalSet::new([v(0)]).unwrap();
        assert!(matches!(
            steiner_connectivity(&g, &t),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn disconnected_terminals_give_zero() {
        let g = Multigraph::from_edges(4, &[(0, 1), (2, 3)]);
        let t = TerminalSet::new([v(0), v(2)]).unwrap();
        assert_eq!(steiner_connectivity(&g, &t).unwrap(), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_graph() -> impl Strategy<Value = Multigraph> {
            (2u32..=5).prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n), 0..=10)
                    .prop_map(move |edges| Multigraph::from_edges(n, &edges))
            })
        }

        proptest! {
            #[test]
            fn flow_matches_subset_enumeration(g in small_graph()) {
                let n = g.num_vertices() as u32;
                for s in 0..n {
                    for t in s + 1..n {
                        prop_assert_eq!(
                            min_cut(&g, v(s), v(t)).unwrap().size,
                            brute_min_cut(&g, v(s), v(t))
                        );
                    }
                }
            }

            #[test]
            fn steiner_matches_bipartitions(g in small_graph(), tmask in 0u32..32) {
                let n = g.num_vertices() as u32;
                let mut ts: Vec<VertexId> = (0..n).filter(|i| tmask >> i & 1 == 1).map(v).collect();
                if ts.len() < 2 {
                    ts = vec![v(0), v(n - 1)];
                }
                let t = TerminalSet::new(ts).unwrap();
                prop_assert_eq!(steiner_connectivity(&g, &t).unwrap(), brute_steiner(&g, &t));
            }
        }
    }
}

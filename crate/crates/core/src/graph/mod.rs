//! Multigraphs with stable edge identities, cuts and splitting-off.

mod flow;
mod io;
mod reduce;
mod split;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use flow::{min_cut, steiner_connectivity, steiner_min_cut, Cut, FlowNetwork};
pub use io::{parse_instance, write_instance, Instance};
pub use reduce::{fkk_violation, is_fkk_form, reduce_instance, ReducedForm, Reduction};
pub use split::{isolate_even_nonterminal, mader_split, SplitTrace, TraceStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Endpoints of an edge, stored with the smaller vertex first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ends(pub VertexId, pub VertexId);

impl Ends {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Ends(a, b)
        } else {
            Ends(b, a)
        }
    }

    pub fn is_loop(&self) -> bool {
        self.0 == self.1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite `v`; `v` itself for a loop.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

/// An undirected multigraph. Parallel edges and loops are allowed and edge
/// ids are never reused, even after the edge is deleted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Ends>,
    next_edge_id: u32,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph on vertices `0..n` with edges added in the given order,
    /// receiving ids `0, 1, ...`.
    pub fn from_edges(n: u32, edges: &[(u32, u32)]) -> Self {
        let mut g = Multigraph::new();
        for v in 0..n {
            g.add_vertex(VertexId(v));
        }
        for &(a, b) in edges {
            g.add_edge(VertexId(a), VertexId(b))
                .expect("endpoint out of range");
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        self.vertices.insert(v)
    }

    /// Adds an edge with a fresh id.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<EdgeId> {
        let id = EdgeId(self.next_edge_id);
        self.insert_edge(id, a, b)?;
        Ok(id)
    }

    /// Adds an edge under a caller-chosen id, which must not be in use.
    pub fn insert_edge(&mut self, id: EdgeId, a: VertexId, b: VertexId) -> Result<()> {
        for v in [a, b] {
            if !self.vertices.contains(&v) {
                return Err(Error::invalid(format!("vertex {v} is not in the graph")));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(Error::invalid(format!("edge id {id} is already in use")));
        }
        self.edges.insert(id, Ends::new(a, b));
        self.next_edge_id = self.next_edge_id.max(id.0 + 1);
        Ok(())
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Result<Ends> {
        self.edges
            .remove(&id)
            .ok_or_else(|| Error::invalid(format!("edge {id} is not in the graph")))
    }

    /// Removes a vertex that has no incident edges.
    pub fn remove_isolated(&mut self, v: VertexId) -> Result<()> {
        if !self.vertices.contains(&v) {
            return Err(Error::invalid(format!("vertex {v} is not in the graph")));
        }
        if self.degree(v) != 0 {
            return Err(Error::invalid(format!("vertex {v} is not isolated")));
        }
        self.vertices.remove(&v);
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Ends)> + '_ {
        self.edges.iter().map(|(&id, &ends)| (id, ends))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn ends(&self, id: EdgeId) -> Option<Ends> {
        self.edges.get(&id).copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.next_edge_id)
    }

    pub(crate) fn set_next_edge_id(&mut self, id: EdgeId) {
        self.next_edge_id = id.0;
    }

    /// Degree of `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .map(|e| usize::from(e.0 == v) + usize::from(e.1 == v))
            .sum()
    }

    /// Degree of `v` ignoring loops.
    pub fn loopless_degree(&self, v: VertexId) -> usize {
        self.edges
            .values()
            .filter(|e| !e.is_loop() && e.contains(v))
            .count()
    }

    /// Ids of edges incident to `v`, ascending. A loop appears once.
    pub fn incident(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, e)| e.contains(v))
            .map(|(&id, _)| id)
            .collect()
    }

    /// Distinct neighbours of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.edges
            .values()
            .filter(|e| e.contains(v) && !e.is_loop())
            .map(|e| e.other(v))
            .collect()
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        self.components_without(None)
    }

    fn components_without(&self, skip: Option<EdgeId>) -> Vec<BTreeSet<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for (&id, e) in &self.edges {
            if Some(id) == skip || e.is_loop() {
                continue;
            }
            adj.entry(e.0).or_default().push(e.1);
            adj.entry(e.1).or_default().push(e.0);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.vertices {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in adj.get(&v).into_iter().flatten() {
                    if seen.insert(w) {
                        comp.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when deleting `id` separates its two endpoints.
    pub fn is_cut_edge(&self, id: EdgeId) -> bool {
        let Some(ends) = self.ends(id) else {
            return false;
        };
        if ends.is_loop() {
            return false;
        }
        !self
            .components_without(Some(id))
            .iter()
            .any(|c| c.contains(&ends.0) && c.contains(&ends.1))
    }

    pub fn has_incident_cut_edge(&self, v: VertexId) -> bool {
        self.incident(v).into_iter().any(|e| self.is_cut_edge(e))
    }

    /// Splits `e = uv` and `f = uv'` off at `u`: both are deleted and a fresh
    /// edge `vv'` is added (a loop when `v = v'`).
    pub fn split_off(&mut self, u: VertexId, e: EdgeId, f: EdgeId) -> Result<TraceStep> {
        if e == f {
            return Err(Error::invalid("cannot split an edge with itself"));
        }
        let mut parents = [(e, u, u); 2];
        for (slot, id) in parents.iter_mut().zip([e, f]) {
            let ends = self
                .ends(id)
                .ok_or_else(|| Error::invalid(format!("edge {id} is not in the graph")))?;
            if !ends.contains(u) {
                return Err(Error::invalid(format!("edge {id} is not incident to {u}")));
            }
            if ends.is_loop() {
                return Err(Error::invalid(format!("edge {id} is a loop at {u}")));
            }
            *slot = (id, u, ends.other(u));
        }
        self.remove_edge(e)?;
        self.remove_edge(f)?;
        let child = self.add_edge(parents[0].2, parents[1].2)?;
        Ok(TraceStep::Split {
            center: u,
            parents: parents.map(|(id, _, w)| (id, w)),
            child,
        })
    }
}

/// The terminal set `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalSet(BTreeSet<VertexId>);

impl TerminalSet {
    pub fn new(terminals: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let set: BTreeSet<_> = terminals.into_iter().collect();
        if set.is_empty() {
            return Err(Error::invalid("terminal set must be nonempty"));
        }
        Ok(TerminalSet(set))
    }

    /// Checks that every terminal is a vertex of `g`.
    pub fn for_graph(
        g: &Multigraph,
        terminals: impl IntoIterator<Item = VertexId>,
    ) -> Result<Self> {
        let t = Self::new(terminals)?;
        if let Some(v) = t.0.iter().find(|v| !g.contains_vertex(**v)) {
            return Err(Error::invalid(format!(
                "terminal {v} is not a vertex of the graph"
            )));
        }
        Ok(t)
    }

    pub fn all(g: &Multigraph) -> Result<Self> {
        Self::new(g.vertices().iter().copied())
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> VertexId {
        *self.0.first().expect("terminal set is nonempty")
    }

    pub fn as_set(&self) -> &BTreeSet<VertexId> {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn loop_counts_twice_in_degree() {
        let g = Multigraph::from_edges(2, &[(0, 0), (0, 1)]);
        assert_eq!(g.degree(v(0)), 3);
        assert_eq!(g.loopless_degree(v(0)), 1);
        assert_eq!(g.degree(v(1)), 1);
    }

    #[test]
    fn edge_ids_are_not_reused_after_deletion() {
        let mut g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]);
        g.remove_edge(EdgeId(1)).unwrap();
        assert_eq!(g.add_edge(v(0), v(1)).unwrap(), EdgeId(2));
    }

    #[test]
    fn insert_rejects_unknown_vertex_and_duplicate_id() {
        let mut g = Multigraph::from_edges(2, &[(0, 1)]);
        assert!(g.insert_edge(EdgeId(0), v(0), v(1)).is_err());
        assert!(g.insert_edge(EdgeId(5), v(0), v(9)).is_err());
    }

    #[test]
    fn split_path_at_middle() {
        // a=0, u=1, b=2
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]);
        let step = g.split_off(v(1), EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.ends(EdgeId(2)), Some(Ends(v(0), v(2))));
        assert_eq!(g.degree(v(1)), 0);
        assert!(matches!(
            step,
            TraceStep::Split {
                child: EdgeId(2),
                ..
            }
        ));
    }

    #[test]
    fn split_parallel_pair_makes_loop() {
        let mut g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]);
        g.split_off(v(0), EdgeId(0), EdgeId(1)).unwrap();
        assert!(g.ends(EdgeId(2)).unwrap().is_loop());
        assert_eq!(g.degree(v(1)), 2);
    }

    #[test]
    fn split_in_doubled_triangle_keeps_other_degrees() {
        // u=0; edges 0,1: 0-1 ; 2,3: 1-2 ; 4,5: 0-2
        let mut g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]);
        g.split_off(v(0), EdgeId(0), EdgeId(4)).unwrap();
        assert_eq!(g.degree(v(0)), 2);
        assert_eq!(g.degree(v(1)), 4);
        assert_eq!(g.degree(v(2)), 4);
        let new = g.ends(EdgeId(6)).unwrap();
        assert_eq!(new, Ends(v(1), v(2)));
    }

    #[test]
    fn split_rejects_bad_edges() {
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 0)]);
        assert!(matches!(
            g.split_off(v(0), EdgeId(0), EdgeId(0)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            g.split_off(v(0), EdgeId(0), EdgeId(1)),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            g.split_off(v(0), EdgeId(0), EdgeId(2)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn cut_edges_detected() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert!(g.is_cut_edge(EdgeId(3)));
        assert!(!g.is_cut_edge(EdgeId(0)));
        assert!(g.has_incident_cut_edge(v(2)));
        assert!(!g.has_incident_cut_edge(v(0)));
    }
}

//! Splitting-off at a vertex, and the reversible log of reduction steps.

use std::collections::BTreeMap;

use super::{EdgeId, Ends, FlowNetwork, Multigraph, TerminalSet, VertexId};
use crate::error::{Error, Result};

/// One reversible reduction step. Parent edges are stored as
/// `(edge id, endpoint other than the centre)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    Split {
        center: VertexId,
        parents: [(EdgeId, VertexId); 2],
        child: EdgeId,
    },
    /// A degree-two vertex replaced by a single edge between its neighbours.
    Suppress {
        vertex: VertexId,
        parents: [(EdgeId, VertexId); 2],
        child: EdgeId,
    },
    DeleteEdge {
        edge: EdgeId,
        ends: Ends,
    },
    RemoveIsolated {
        vertex: VertexId,
    },
}

impl TraceStep {
    /// The edge created by this step together with the edges it replaced.
    pub fn child_and_parents(&self) -> Option<(EdgeId, [EdgeId; 2])> {
        match self {
            TraceStep::Split { parents, child, .. }
            | TraceStep::Suppress { parents, child, .. } => {
                Some((*child, [parents[0].0, parents[1].0]))
            }
            _ => None,
        }
    }

    pub fn apply(&self, g: &mut Multigraph) -> Result<()> {
        match *self {
            TraceStep::Split {
                center,
                parents,
                child,
            } => replace_parents(g, center, parents, child),
            TraceStep::Suppress {
                vertex,
                parents,
                child,
            } => {
                replace_parents(g, vertex, parents, child)?;
                g.remove_isolated(vertex)
            }
            TraceStep::DeleteEdge { edge, ends } => {
                if g.ends(edge) != Some(ends) {
                    return Err(Error::invalid(format!("trace mismatch at edge {edge}")));
                }
                g.remove_edge(edge).map(|_| ())
            }
            TraceStep::RemoveIsolated { vertex } => g.remove_isolated(vertex),
        }
    }

    pub fn undo(&self, g: &mut Multigraph) -> Result<()> {
        match *self {
            TraceStep::Split {
                center,
                parents,
                child,
            } => restore_parents(g, center, parents, child),
            TraceStep::Suppress {
                vertex,
                parents,
                child,
            } => {
                g.add_vertex(vertex);
                restore_parents(g, vertex, parents, child)
            }
            TraceStep::DeleteEdge { edge, ends } => g.insert_edge(edge, ends.0, ends.1),
            TraceStep::RemoveIsolated { vertex } => {
                g.add_vertex(vertex);
                Ok(())
            }
        }
    }
}

fn replace_parents(
    g: &mut Multigraph,
    center: VertexId,
    parents: [(EdgeId, VertexId); 2],
    child: EdgeId,
) -> Result<()> {
    for (id, far) in parents {
        if g.ends(id) != Some(Ends::new(center, far)) {
            return Err(Error::invalid(format!("trace mismatch at edge {id}")));
        }
    }
    g.remove_edge(parents[0].0)?;
    g.remove_edge(parents[1].0)?;
    g.insert_edge(child, parents[0].1, parents[1].1)
}

fn restore_parents(
    g: &mut Multigraph,
    center: VertexId,
    parents: [(EdgeId, VertexId); 2],
    child: EdgeId,
) -> Result<()> {
    if g.ends(child) != Some(Ends::new(parents[0].1, parents[1].1)) {
        return Err(Error::invalid(format!("trace mismatch at edge {child}")));
    }
    g.remove_edge(child)?;
    for (id, far) in parents {
        g.insert_edge(id, center, far)?;
    }
    Ok(())
}

/// Ordered log of reduction steps applied to a graph.
///
/// Replaying forward on the original graph reproduces the reduced graph with
/// identical ids; undoing in reverse on the reduced graph restores the
/// original, including its edge-id counter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitTrace {
    start_next_edge_id: EdgeId,
    steps: Vec<TraceStep>,
}

impl SplitTrace {
    pub fn new(original: &Multigraph) -> Self {
        SplitTrace {
            start_next_edge_id: original.next_edge_id(),
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, steps: impl IntoIterator<Item = TraceStep>) {
        self.steps.extend(steps);
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn replay(&self, original: &Multigraph) -> Result<Multigraph> {
        let mut g = original.clone();
        for step in &self.steps {
            step.apply(&mut g)?;
        }
        Ok(g)
    }

    pub fn undo_all(&self, reduced: &Multigraph) -> Result<Multigraph> {
        let mut g = reduced.clone();
        for step in self.steps.iter().rev() {
            step.undo(&mut g)?;
        }
        g.set_next_edge_id(self.start_next_edge_id);
        Ok(g)
    }
}

/// Pairwise min-cut values among all vertices except `skip`.
fn pairwise_cuts(g: &Multigraph, skip: VertexId) -> Result<BTreeMap<(VertexId, VertexId), usize>> {
    let others: Vec<VertexId> = g
        .vertices()
        .iter()
        .copied()
        .filter(|&x| x != skip)
        .collect();
    let mut net = FlowNetwork::new(g);
    let mut out = BTreeMap::new();
    for (i, &x) in others.iter().enumerate() {
        for &y in &others[i + 1..] {
            out.insert((x, y), net.min_cut(x, y)?.size);
        }
    }
    Ok(out)
}

fn preserves_cuts(
    g: &Multigraph,
    baseline: &BTreeMap<(VertexId, VertexId), usize>,
) -> Result<bool> {
    let mut net = FlowNetwork::new(g);
    for (&(x, y), &before) in baseline {
        // Splitting never raises a cut value, so `>=` means unchanged.
        if net.min_cut(x, y)?.size < before {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A pair of edges at `u` whose splitting leaves every min-cut value among
/// the other vertices unchanged.
///
/// Pairs are tried in ascending edge-id order and the first verified pair is
/// returned. Loops at `u` take no part: they never contribute to a cut, so
/// the degree condition is checked on the loopless degree.
pub fn mader_split(g: &Multigraph, u: VertexId) -> Result<(EdgeId, EdgeId)> {
    if !g.contains_vertex(u) {
        return Err(Error::invalid(format!("vertex {u} is not in the graph")));
    }
    let candidates: Vec<EdgeId> = g
        .incident(u)
        .into_iter()
        .filter(|&e| !g.ends(e).is_some_and(|ends| ends.is_loop()))
        .collect();
    if candidates.len() == 3 {
        return Err(Error::precondition(format!("vertex {u} has degree 3")));
    }
    if candidates.len() < 2 {
        return Err(Error::precondition(format!(
            "vertex {u} has fewer than two non-loop edges"
        )));
    }
    if g.has_incident_cut_edge(u) {
        return Err(Error::precondition(format!(
            "vertex {u} is incident with a cut-edge"
        )));
    }
    let baseline = pairwise_cuts(g, u)?;
    for (i, &e) in candidates.iter().enumerate() {
        for &f in &candidates[i + 1..] {
            let mut h = g.clone();
            h.split_off(u, e, f)?;
            if preserves_cuts(&h, &baseline)? {
                return Ok((e, f));
            }
        }
    }
    Err(Error::internal(format!(
        "no admissible split at vertex {u}; min-cut computation is inconsistent"
    )))
}

/// Splits off every edge at an even-degree non-terminal and removes it.
///
/// Loops at `u` are deleted first. Every pairwise min-cut value among the
/// remaining vertices is preserved.
pub fn isolate_even_nonterminal(
    g: &Multigraph,
    terminals: &TerminalSet,
    u: VertexId,
) -> Result<(Multigraph, Vec<TraceStep>)> {
    if !g.contains_vertex(u) {
        return Err(Error::invalid(format!("vertex {u} is not in the graph")));
    }
    if terminals.contains(u) {
        return Err(Error::precondition(format!("vertex {u} is a terminal")));
    }
    if g.degree(u) % 2 == 1 {
        return Err(Error::precondition(format!("vertex {u} has odd degree")));
    }
    if g.has_incident_cut_edge(u) {
        return Err(Error::precondition(format!(
            "vertex {u} is incident with a cut-edge"
        )));
    }
    let mut h = g.clone();
    let mut steps = Vec::new();
    for e in h.incident(u) {
        let ends = h.ends(e).expect("incident edge exists");
        if ends.is_loop() {
            h.remove_edge(e)?;
            steps.push(TraceStep::DeleteEdge { edge: e, ends });
        }
    }
    while h.degree(u) > 0 {
        let (e, f) = mader_split(&h, u)?;
        steps.push(h.split_off(u, e, f)?);
    }
    h.remove_isolated(u)?;
    steps.push(TraceStep::RemoveIsolated { vertex: u });
    Ok((h, steps))
}

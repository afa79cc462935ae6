//! Reduction of a Steiner instance towards the hypergraph-ready form: every
//! non-terminal of degree three with three distinct terminal neighbours.

use super::{
    isolate_even_nonterminal, mader_split, steiner_connectivity, EdgeId, Ends, Multigraph,
    SplitTrace, TerminalSet, TraceStep, VertexId,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedForm {
    /// Non-terminals are independent, each of degree 3 with 3 distinct neighbours.
    Fkk,
    Partial,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Multigraph,
    pub terminals: TerminalSet,
    pub trace: SplitTrace,
    pub form: ReducedForm,
}

/// The first non-terminal that breaks the hypergraph-ready form, with a reason.
pub fn fkk_violation(g: &Multigraph, t: &TerminalSet) -> Option<(VertexId, &'static str)> {
    for &v in g.vertices() {
        if t.contains(v) {
            continue;
        }
        let reason = if g.degree(v) != 3 || g.loopless_degree(v) != 3 {
            "degree is not 3"
        } else if g.neighbors(v).len() != 3 {
            "neighbours are not distinct"
        } else if g.neighbors(v).iter().any(|&w| !t.contains(w)) {
            "adjacent to a non-terminal"
        } else {
            continue;
        };
        return Some((v, reason));
    }
    None
}

pub fn is_fkk_form(g: &Multigraph, t: &TerminalSet) -> bool {
    fkk_violation(g, t).is_none()
}

struct Reducer<'a> {
    g: Multigraph,
    t: &'a TerminalSet,
    threshold: usize,
    trace: SplitTrace,
}

impl Reducer<'_> {
    fn nonterminals(&self) -> Vec<VertexId> {
        self.g
            .vertices()
            .iter()
            .copied()
            .filter(|&v| !self.t.contains(v))
            .collect()
    }

    fn delete(&mut self, edge: EdgeId) -> Result<()> {
        let ends = self.g.remove_edge(edge)?;
        self.trace.push(TraceStep::DeleteEdge { edge, ends });
        Ok(())
    }

    fn deletion_keeps_threshold(&self, edge: EdgeId) -> Result<bool> {
        let mut h = self.g.clone();
        h.remove_edge(edge)?;
        Ok(steiner_connectivity(&h, self.t)? >= self.threshold)
    }

    fn drop_loops(&mut self) -> Result<bool> {
        let loops: Vec<EdgeId> = self
            .g
            .edges()
            .filter(|(_, e)| e.is_loop())
            .map(|(id, _)| id)
            .collect();
        for &id in &loops {
            self.delete(id)?;
        }
        Ok(!loops.is_empty())
    }

    /// Removes components without terminals, edges first.
    fn drop_terminal_free(&mut self) -> Result<bool> {
        let mut changed = false;
        for comp in self.g.components() {
            if comp.iter().any(|&v| self.t.contains(v)) {
                continue;
            }
            let inner: Vec<EdgeId> = self
                .g
                .edges()
                .filter(|(_, e)| comp.contains(&e.0))
                .map(|(id, _)| id)
                .collect();
            for id in inner {
                self.delete(id)?;
            }
            for v in comp {
                self.g.remove_isolated(v)?;
                self.trace.push(TraceStep::RemoveIsolated { vertex: v });
            }
            changed = true;
        }
        Ok(changed)
    }

    fn suppress_degree_two(&mut self) -> Result<bool> {
        for v in self.nonterminals() {
            if self.g.degree(v) != 2 || self.g.loopless_degree(v) != 2 {
                continue;
            }
            let inc = self.g.incident(v);
            let parents = [inc[0], inc[1]].map(|id| (id, self.g.ends(id).unwrap().other(v)));
            self.g.remove_edge(inc[0])?;
            self.g.remove_edge(inc[1])?;
            let child = self.g.add_edge(parents[0].1, parents[1].1)?;
            self.g.remove_isolated(v)?;
            self.trace.push(TraceStep::Suppress {
                vertex: v,
                parents,
                child,
            });
            return Ok(true);
        }
        Ok(false)
    }

    fn isolate_even(&mut self) -> Result<bool> {
        for v in self.nonterminals() {
            let d = self.g.degree(v);
            if d < 4 || d % 2 == 1 || self.g.has_incident_cut_edge(v) {
                continue;
            }
            let (h, steps) = isolate_even_nonterminal(&self.g, self.t, v)?;
            self.g = h;
            self.trace.extend(steps);
            return Ok(true);
        }
        Ok(false)
    }

    fn split_odd(&mut self) -> Result<bool> {
        for v in self.nonterminals() {
            let d = self.g.loopless_degree(v);
            if d < 5 || d.is_multiple_of(2) || self.g.has_incident_cut_edge(v) {
                continue;
            }
            let (e, f) = mader_split(&self.g, v)?;
            let step = self.g.split_off(v, e, f)?;
            self.trace.push(step);
            return Ok(true);
        }
        Ok(false)
    }

    /// Edges between two non-terminals, and parallel edges at a non-terminal.
    fn deletion_candidates(&self) -> Vec<EdgeId> {
        let edges: Vec<(EdgeId, Ends)> = self.g.edges().collect();
        edges
            .iter()
            .filter(|(id, e)| {
                let (a, b) = (self.t.contains(e.0), self.t.contains(e.1));
                if !a && !b {
                    return true;
                }
                (!a || !b) && edges.iter().any(|(other, f)| other != id && f == e)
            })
            .map(|(id, _)| *id)
            .collect()
    }

    fn delete_redundant(&mut self, candidates: Vec<EdgeId>) -> Result<bool> {
        for id in candidates {
            if self.deletion_keeps_threshold(id)? {
                self.delete(id)?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Edges at non-terminals that still break the target form.
    fn offending_edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = Vec::new();
        for v in self.nonterminals() {
            let bad = self.g.loopless_degree(v) != 3
                || self.g.neighbors(v).len() != 3
                || self.g.neighbors(v).iter().any(|&w| !self.t.contains(w))
                || self.g.has_incident_cut_edge(v);
            if bad {
                out.extend(self.g.incident(v));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    fn run(mut self) -> Result<Reduction> {
        loop {
            let progressed = self.drop_loops()?
                || self.drop_terminal_free()?
                || self.suppress_degree_two()?
                || self.isolate_even()?
                || self.split_odd()?
                || {
                    let c = self.deletion_candidates();
                    self.delete_redundant(c)?
                }
                || (!is_fkk_form(&self.g, self.t) && {
                    let c = self.offending_edges();
                    self.delete_redundant(c)?
                });
            if !progressed {
                break;
            }
        }
        let form = if is_fkk_form(&self.g, self.t) {
            ReducedForm::Fkk
        } else {
            ReducedForm::Partial
        };
        Ok(Reduction {
            graph: self.g,
            terminals: self.t.clone(),
            trace: self.trace,
            form,
        })
    }
}

/// Reduces `g` while keeping the Steiner connectivity of `t` at least
/// `threshold`.
///
/// Steps, repeated to a fixpoint: delete loops; drop components without
/// terminals; suppress degree-2 non-terminals; split even-degree
/// non-terminals to isolation; split odd-degree non-terminals down to degree
/// 3; delete non-terminal/non-terminal edges and parallel edges at
/// non-terminals when the threshold survives; finally, if the form is still
/// not reached, try the same deletion on any edge at an offending
/// non-terminal.
pub fn reduce_instance(g: &Multigraph, t: &TerminalSet, threshold: usize) -> Result<Reduction> {
    if let Some(v) = t.iter().find(|&v| !g.contains_vertex(v)) {
        return Err(Error::invalid(format!(
            "terminal {v} is not a vertex of the graph"
        )));
    }
    let conn = steiner_connectivity(g, t)?;
    if conn < threshold {
        return Err(Error::invalid(format!(
            "steiner connectivity {conn} is below the reduction threshold {threshold}"
        )));
    }
    Reducer {
        g: g.clone(),
        t,
        threshold,
        trace: SplitTrace::new(g),
    }
    .run()
}

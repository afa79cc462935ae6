//! Exhaustive packing search for small graphs.
//!
//! Every packing can be shrunk part by part to one made of minimal
//! structures (spanning trees; Steiner trees whose leaves are terminals;
//! inclusion-minimal connectors), so it suffices to enumerate those as edge
//! bitmasks and pick `k` pairwise disjoint ones in ascending order.

use std::collections::BTreeSet;

use super::connector::connector_shape;
use super::{verify_packing, Mode, Packing};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, TerminalSet, VertexId};
use crate::matroid::Dsu;

/// Hard ceiling on the edge count regardless of the configured capacity.
const MAX_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteOutcome {
    Packed(Packing),
    /// No packing of the requested size exists.
    Infeasible,
}

struct Local {
    ids: Vec<EdgeId>,
    pairs: Vec<(usize, usize)>,
    terminal: Vec<bool>,
    incidence: Vec<u32>,
    loops: u32,
}

impl Local {
    fn new(g: &Multigraph, t: &TerminalSet) -> Self {
        let vs: Vec<VertexId> = g.vertices().iter().copied().collect();
        let idx = |v: VertexId| vs.binary_search(&v).unwrap();
        let mut ids = Vec::new();
        let mut pairs = Vec::new();
        let mut incidence = vec![0u32; vs.len()];
        let mut loops = 0u32;
        for (i, (id, e)) in g.edges().enumerate() {
            let (a, b) = (idx(e.0), idx(e.1));
            ids.push(id);
            pairs.push((a, b));
            incidence[a] |= 1 << i;
            incidence[b] |= 1 << i;
            if a == b {
                loops |= 1 << i;
            }
        }
        Local {
            ids,
            pairs,
            terminal: vs.iter().map(|&v| t.contains(v)).collect(),
            incidence,
            loops,
        }
    }

    fn n(&self) -> usize {
        self.terminal.len()
    }

    fn edges_of(&self, mask: u32) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.pairs.len())
            .filter(move |i| mask >> i & 1 == 1)
            .map(|i| self.pairs[i])
    }

    fn degree(&self, mask: u32, v: usize) -> u32 {
        (self.incidence[v] & mask).count_ones()
    }

    /// Acyclic, and connected on the touched vertices.
    fn is_tree(&self, mask: u32) -> bool {
        let mut dsu = Dsu::new(self.n());
        if !self.edges_of(mask).all(|(a, b)| dsu.union(a, b)) {
            return false;
        }
        let touched = (0..self.n()).filter(|&v| self.degree(mask, v) > 0).count();
        mask.count_ones() as usize + 1 == touched
    }

    fn covers_terminals(&self, mask: u32) -> bool {
        (0..self.n()).all(|v| !self.terminal[v] || self.degree(mask, v) > 0)
    }

    fn is_minimal_steiner_tree(&self, mask: u32) -> bool {
        self.covers_terminals(mask)
            && (0..self.n()).all(|v| self.terminal[v] || self.degree(mask, v) != 1)
            && self.is_tree(mask)
    }

    fn is_connector(&self, mask: u32) -> bool {
        if !self.covers_terminals(mask)
            || (0..self.n()).any(|v| !self.terminal[v] && self.degree(mask, v) % 2 == 1)
        {
            return false;
        }
        let pairs: Vec<(usize, usize)> = self.edges_of(mask).collect();
        connector_shape(&self.terminal, &pairs).is_ok()
    }
}

/// Finds `k` pairwise edge-disjoint parts of the given mode, or proves that
/// none exist. Connector parts are recognised exactly (any splitting
/// sequence), so the search is complete for every mode.
pub fn brute_force_pack(
    g: &Multigraph,
    t: &TerminalSet,
    k: usize,
    mode: Mode,
    caps: &Capacity,
) -> Result<BruteOutcome> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    Capacity::check("edge count", g.num_edges(), caps.brute_edges.min(MAX_EDGES))?;
    Capacity::check("k", k, caps.brute_k)?;
    if g.num_vertices() == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    if let Some(v) = t.iter().find(|&v| !g.contains_vertex(v)) {
        return Err(Error::invalid(format!("terminal {v} is not in the graph")));
    }
    let all = TerminalSet::all(g)?;
    let t = if mode == Mode::Spanning { &all } else { t };
    let local = Local::new(g, t);
    let terminals = t.len();
    let m = local.ids.len();

    let mut candidates: Vec<u32> = Vec::new();
    if (mode == Mode::Spanning && local.n() == 1) || (mode != Mode::Spanning && terminals == 1) {
        candidates.push(0);
    } else {
        for mask in 1u32..(1u32 << m) {
            if mask & local.loops != 0 {
                continue;
            }
            let keep = match mode {
                Mode::Spanning => {
                    mask.count_ones() as usize + 1 == local.n() && local.is_tree(mask)
                }
                Mode::Steiner => local.is_minimal_steiner_tree(mask),
                Mode::Connector => local.is_connector(mask),
            };
            if keep {
                candidates.push(mask);
            }
        }
        if mode == Mode::Connector {
            candidates = minimal(candidates);
        }
    }

    let parts = if candidates == [0] {
        Some(vec![0; k])
    } else {
        let required: Vec<usize> = (0..local.n()).filter(|&v| local.terminal[v]).collect();
        let mut chosen = Vec::with_capacity(k);
        search(&local, &candidates, &required, 0, 0, k, &mut chosen).then_some(chosen)
    };
    let Some(parts) = parts else {
        return Ok(BruteOutcome::Infeasible);
    };
    let packing = Packing {
        mode,
        parts: parts
            .iter()
            .map(|&mask| {
                (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| local.ids[i])
                    .collect::<BTreeSet<EdgeId>>()
            })
            .collect(),
    };
    let check = verify_packing(g, t, &packing)?;
    if !check.is_valid() {
        return Err(Error::internal(format!(
            "exhaustive search produced an invalid packing: {check}"
        )));
    }
    Ok(BruteOutcome::Packed(packing))
}

/// Inclusion-minimal members of `masks`.
fn minimal(mut masks: Vec<u32>) -> Vec<u32> {
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut kept: Vec<u32> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&s| s & !m == 0) {
            kept.push(m);
        }
    }
    kept.sort_unstable();
    kept
}

fn search(
    local: &Local,
    candidates: &[u32],
    required: &[usize],
    start: usize,
    used: u32,
    k: usize,
    chosen: &mut Vec<u32>,
) -> bool {
    let remaining = k - chosen.len();
    if remaining == 0 {
        return true;
    }
    // Each remaining part needs an unused edge at every required vertex.
    if required
        .iter()
        .any(|&v| ((local.incidence[v] & !used).count_ones() as usize) < remaining)
    {
        return false;
    }
    for (j, &c) in candidates.iter().enumerate().skip(start) {
        if c & used != 0 {
            continue;
        }
        chosen.push(c);
        if search(local, candidates, required, j + 1, used | c, k, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

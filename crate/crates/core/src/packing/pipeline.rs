//! The packing pipelines: spanning trees through the graphic matroid, and
//! Steiner trees or connectors through reduction, the hypergraphic matroid,
//! decoding and lifting.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{
    brute_force_pack, verify_packing, BruteOutcome, Certificate, Check, Mode, Packing, Thresholds,
};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{
    fkk_violation, reduce_instance, steiner_min_cut, EdgeId, Multigraph, ReducedForm, Reduction,
    TerminalSet, VertexId,
};
use crate::matroid::{
    pack_bases, GraphicMatroid, HyperedgeId, Hypergraph, HypergraphicMatroid, Matroid, PackOutcome,
    Partition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Spanning trees straight from the graphic matroid.
    Direct,
    /// Reduction, hypergraph packing, decoding and lifting.
    Pipeline,
    /// Exhaustive search on the original instance.
    BruteForce,
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub packing: Packing,
    pub route: Route,
    /// Steiner connectivity of the input (absent for spanning trees).
    pub connectivity: Option<usize>,
    pub reduction: Option<Reduction>,
    /// The decoded parts on the reduced graph, before lifting.
    pub pre_lift: Option<Packing>,
    pub check: Check,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Packed(Box<PipelineRun>),
    Certificate(Certificate),
    /// Exhaustive search proved that no packing exists.
    Infeasible,
}

impl Outcome {
    pub fn packed(&self) -> Option<&PipelineRun> {
        match self {
            Outcome::Packed(run) => Some(run),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct PackOptions {
    /// Required Steiner connectivity; defaults to `f(k)` for Steiner trees
    /// and `g(k)` for connectors.
    pub threshold: Option<usize>,
    /// Fall back to exhaustive search when the pipeline cannot conclude;
    /// an instance beyond the brute-force caps is then a capacity error.
    pub brute_fallback: bool,
    pub caps: Capacity,
}

/// `k` edge-disjoint spanning trees, or a partition with
/// `λ^out_P(E) < k(|P| - 1)`.
pub fn pack_spanning_trees(g: &Multigraph, k: usize) -> Result<Outcome> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if g.num_vertices() == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    let vertices: Vec<VertexId> = g.vertices().iter().copied().collect();
    let m = GraphicMatroid::new(g);
    let outcome = pack_bases(&m, k)?;
    let connected = g.is_connected();
    if let (PackOutcome::Bases(family), true) = (&outcome, connected) {
        let packing = Packing {
            mode: Mode::Spanning,
            parts: family
                .parts
                .iter()
                .map(|p| p.iter().map(|&e| m.edge_id(e)).collect())
                .collect(),
        };
        let t = TerminalSet::all(g)?;
        let check = verified(g, &t, &packing)?;
        return Ok(Outcome::Packed(Box::new(PipelineRun {
            packing,
            route: Route::Direct,
            connectivity: None,
            reduction: None,
            pre_lift: None,
            check,
        })));
    }
    // The blocks are the components of the deficiency closure, or of the
    // whole graph when it is disconnected.
    let closure: BTreeSet<usize> = match outcome {
        PackOutcome::Deficient(d) if connected => d.closure,
        _ => (0..m.ground_size()).collect(),
    };
    let mut blocks: Vec<BTreeSet<VertexId>> = Vec::new();
    let mut sub = Multigraph::new();
    for &v in &vertices {
        sub.add_vertex(v);
    }
    for &e in &closure {
        let ends = g.ends(m.edge_id(e)).expect("matroid elements are edges");
        sub.add_edge(ends.0, ends.1)?;
    }
    blocks.extend(sub.components());
    let partition = Partition::new(blocks)
        .ok_or_else(|| Error::internal("components do not form a partition"))?;
    let lambda_out = g
        .edges()
        .filter(|(_, e)| partition.block_of(e.0) != partition.block_of(e.1))
        .count();
    let bound = k * (partition.len() - 1);
    if lambda_out >= bound {
        return Err(Error::internal(format!(
            "deficiency closure gives λ_out = {lambda_out}, not below {bound}"
        )));
    }
    Ok(Outcome::Certificate(Certificate::ViolatingPartition {
        partition,
        lambda_out,
        bound,
    }))
}

/// Where a hyperedge of the Steiner hypergraph came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HyperedgeOrigin {
    /// A terminal-terminal edge.
    Edge(EdgeId),
    /// A non-terminal together with its three edges `(id, terminal end)`.
    Star {
        center: VertexId,
        spokes: [(EdgeId, VertexId); 3],
    },
}

impl HyperedgeOrigin {
    fn edges(&self) -> Vec<EdgeId> {
        match self {
            HyperedgeOrigin::Edge(e) => vec![*e],
            HyperedgeOrigin::Star { spokes, .. } => spokes.iter().map(|s| s.0).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SteinerHypergraph {
    pub hypergraph: Hypergraph,
    pub origins: BTreeMap<HyperedgeId, HyperedgeOrigin>,
}

/// Replaces every non-terminal by a hyperedge on its three neighbours.
/// Terminal-terminal edges come first in id order, then the non-terminals in
/// id order; hyperedge ids count up from 0. Loops are ignored.
pub fn build_steiner_hypergraph(g: &Multigraph, t: &TerminalSet) -> Result<SteinerHypergraph> {
    if let Some((v, reason)) = fkk_violation(g, t) {
        return Err(Error::precondition(format!("non-terminal {v}: {reason}")));
    }
    let mut h = Hypergraph::new(t.iter());
    let mut origins = BTreeMap::new();
    let mut next = 0u32;
    for (id, e) in g.edges() {
        if e.is_loop() || !t.contains(e.0) || !t.contains(e.1) {
            continue;
        }
        h.add_hyperedge(HyperedgeId(next), &[e.0, e.1])?;
        origins.insert(HyperedgeId(next), HyperedgeOrigin::Edge(id));
        next += 1;
    }
    for &v in g.vertices() {
        if t.contains(v) {
            continue;
        }
        let inc = g.incident(v);
        let spokes = [0, 1, 2].map(|i| (inc[i], g.ends(inc[i]).unwrap().other(v)));
        h.add_hyperedge(HyperedgeId(next), &spokes.map(|s| s.1))?;
        origins.insert(
            HyperedgeId(next),
            HyperedgeOrigin::Star { center: v, spokes },
        );
        next += 1;
    }
    Ok(SteinerHypergraph {
        hypergraph: h,
        origins,
    })
}

/// `k` edge-disjoint Steiner trees for `t`.
pub fn pack_steiner_trees(
    g: &Multigraph,
    t: &TerminalSet,
    k: usize,
    opts: &PackOptions,
) -> Result<Outcome> {
    pack_via_hypergraph(g, t, k, Mode::Steiner, opts)
}

/// `k` edge-disjoint T-connectors. Before lifting, every non-terminal has
/// degree 0 or 2 in every part.
pub fn pack_connectors(
    g: &Multigraph,
    t: &TerminalSet,
    k: usize,
    opts: &PackOptions,
) -> Result<Outcome> {
    pack_via_hypergraph(g, t, k, Mode::Connector, opts)
}

fn pack_via_hypergraph(
    g: &Multigraph,
    t: &TerminalSet,
    k: usize,
    mode: Mode,
    opts: &PackOptions,
) -> Result<Outcome> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if t.len() < 2 {
        return Err(Error::invalid("at least two terminals are required"));
    }
    if let Some(v) = t.iter().find(|&v| !g.contains_vertex(v)) {
        return Err(Error::invalid(format!("terminal {v} is not in the graph")));
    }
    let thresholds = Thresholds::new(k);
    let threshold = opts.threshold.unwrap_or(match mode {
        Mode::Connector => thresholds.g_k,
        _ => thresholds.f_k,
    });
    let cut = steiner_min_cut(g, t)?;
    if cut.size < threshold {
        return Ok(Outcome::Certificate(Certificate::CutTooSmall {
            side: cut.side,
            size: cut.size,
            threshold,
        }));
    }
    let conn = cut.size;
    let reduction = reduce_instance(g, t, thresholds.fkk.min(conn))?;

    let reason = if reduction.form == ReducedForm::Fkk {
        match pack_reduced(&reduction, k, mode)? {
            Ok(pre_lift) => {
                let parts = lift(g, &reduction, pre_lift.parts.clone(), mode)?;
                let packing = Packing { mode, parts };
                let check = verified(g, t, &packing)?;
                return Ok(Outcome::Packed(Box::new(PipelineRun {
                    packing,
                    route: Route::Pipeline,
                    connectivity: Some(conn),
                    reduction: Some(reduction),
                    pre_lift: Some(pre_lift),
                    check,
                })));
            }
            Err(reason) if conn >= thresholds.fkk => {
                return Err(Error::internal(format!(
                    "reduced instance has connectivity at least {} but {reason}",
                    thresholds.fkk
                )))
            }
            Err(reason) => reason,
        }
    } else {
        let (v, why) = fkk_violation(&reduction.graph, t).expect("partial form has a violation");
        format!("non-terminal {v}: {why}")
    };

    // A requested fallback that exceeds the caps is a capacity error.
    if opts.brute_fallback {
        return match brute_force_pack(g, t, k, mode, &opts.caps)? {
            BruteOutcome::Packed(packing) => {
                let check = verified(g, t, &packing)?;
                Ok(Outcome::Packed(Box::new(PipelineRun {
                    packing,
                    route: Route::BruteForce,
                    connectivity: Some(conn),
                    reduction: Some(reduction),
                    pre_lift: None,
                    check,
                })))
            }
            BruteOutcome::Infeasible => Ok(Outcome::Infeasible),
        };
    }
    Ok(Outcome::Certificate(Certificate::ReductionIncomplete {
        reduced: Box::new(reduction),
        reason,
    }))
}

/// Packs the hypergraph of a reduced instance and decodes the bases into
/// parts of the reduced graph. `Err` carries why no packing was found.
fn pack_reduced(
    reduction: &Reduction,
    k: usize,
    mode: Mode,
) -> Result<std::result::Result<Packing, String>> {
    let g = &reduction.graph;
    let t = &reduction.terminals;
    let sh = build_steiner_hypergraph(g, t)?;
    let m = HypergraphicMatroid::new(&sh.hypergraph);
    let rank = m.full_rank();
    if rank + 1 != t.len() {
        return Ok(Err(format!(
            "hypergraphic rank {rank} is below |T| - 1 = {}",
            t.len() - 1
        )));
    }
    let family = match pack_bases(&m, k)? {
        PackOutcome::Bases(family) => family,
        PackOutcome::Deficient(d) => {
            return Ok(Err(format!(
                "hypergraph holds {} of the {} base elements needed",
                d.achieved, d.target
            )))
        }
    };
    let mut parts = Vec::with_capacity(k);
    for basis in &family.parts {
        let elements: Vec<usize> = basis.iter().copied().collect();
        let part = match mode {
            Mode::Connector => {
                let reps = m
                    .representatives(&elements)?
                    .ok_or_else(|| Error::internal("a packed basis is dependent"))?;
                decode_connector(&sh, &reps)?
            }
            _ => {
                let edges: BTreeSet<EdgeId> = elements
                    .iter()
                    .flat_map(|&e| sh.origins[&m.hyperedge_id(e)].edges())
                    .collect();
                prune_to_tree(g, t, &edges)
            }
        };
        parts.push(part);
    }
    let packing = Packing { mode, parts };
    let check = verify_packing(g, t, &packing)?;
    match &check {
        Check::Valid { split_verified } if split_verified.is_empty() => Ok(Ok(packing)),
        _ => Err(Error::internal(format!(
            "decoded parts fail verification: {check}"
        ))),
    }
}

/// Each star contributes the two spokes towards its representative pair.
fn decode_connector(
    sh: &SteinerHypergraph,
    reps: &BTreeMap<HyperedgeId, (VertexId, VertexId)>,
) -> Result<BTreeSet<EdgeId>> {
    let mut part = BTreeSet::new();
    for (id, &(a, b)) in reps {
        match &sh.origins[id] {
            HyperedgeOrigin::Edge(e) => {
                part.insert(*e);
            }
            HyperedgeOrigin::Star { spokes, .. } => {
                for end in [a, b] {
                    let spoke = spokes
                        .iter()
                        .find(|s| s.1 == end)
                        .ok_or_else(|| Error::internal("representative outside its hyperedge"))?;
                    part.insert(spoke.0);
                }
            }
        }
    }
    Ok(part)
}

/// Undoes the reduction. A part holding the child of a split takes both
/// parent edges instead; Steiner parts are pruned back to trees.
fn lift(
    original: &Multigraph,
    reduction: &Reduction,
    mut parts: Vec<BTreeSet<EdgeId>>,
    mode: Mode,
) -> Result<Vec<BTreeSet<EdgeId>>> {
    let mut work = reduction.graph.clone();
    for step in reduction.trace.steps().iter().rev() {
        let mut touched = None;
        if let Some((child, parents)) = step.child_and_parents() {
            if let Some(i) = parts.iter().position(|p| p.contains(&child)) {
                parts[i].remove(&child);
                parts[i].extend(parents);
                touched = Some(i);
            }
        }
        step.undo(&mut work)?;
        if let (Some(i), Mode::Steiner) = (touched, mode) {
            parts[i] = prune_to_tree(&work, &reduction.terminals, &parts[i]);
        }
    }
    if work.vertices() != original.vertices() || !work.edges().eq(original.edges()) {
        return Err(Error::internal(
            "undoing the reduction did not restore the input graph",
        ));
    }
    Ok(parts)
}

/// Removes non-terminal leaves, takes the breadth-first tree from the lowest
/// terminal (edges scanned in ascending id order), then removes non-terminal
/// leaves again.
pub(crate) fn prune_to_tree(
    g: &Multigraph,
    t: &TerminalSet,
    part: &BTreeSet<EdgeId>,
) -> BTreeSet<EdgeId> {
    let mut part = part.clone();
    strip_leaves(g, t, &mut part);
    let mut adjacency: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> = BTreeMap::new();
    for &id in &part {
        let e = g.ends(id).expect("part edges exist");
        if e.is_loop() {
            continue;
        }
        adjacency.entry(e.0).or_default().push((id, e.1));
        adjacency.entry(e.1).or_default().push((id, e.0));
    }
    let root = t.first();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut tree = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for &(id, w) in adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            if seen.insert(w) {
                tree.insert(id);
                queue.push_back(w);
            }
        }
    }
    strip_leaves(g, t, &mut tree);
    tree
}

fn strip_leaves(g: &Multigraph, t: &TerminalSet, part: &mut BTreeSet<EdgeId>) {
    loop {
        let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
        for &id in part.iter() {
            let e = g.ends(id).expect("part edges exist");
            *degree.entry(e.0).or_default() += 1;
            *degree.entry(e.1).or_default() += 1;
        }
        let leaf_edge = part.iter().copied().find(|&id| {
            let e = g.ends(id).unwrap();
            [e.0, e.1]
                .iter()
                .any(|&v| !t.contains(v) && degree[&v] == 1)
        });
        match leaf_edge {
            Some(id) => {
                part.remove(&id);
            }
            None => return,
        }
    }
}

fn verified(g: &Multigraph, t: &TerminalSet, packing: &Packing) -> Result<Check> {
    let check = verify_packing(g, t, packing)?;
    if !check.is_valid() {
        return Err(Error::internal(format!(
            "produced packing fails verification: {check}"
        )));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_fkk_form;
    use crate::matroid::partitions;
    use crate::packing::{generate, Model};

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn ids(xs: &[u32]) -> BTreeSet<EdgeId> {
        xs.iter().map(|&i| EdgeId(i)).collect()
    }

    fn with_threshold(threshold: usize) -> PackOptions {
        PackOptions {
            threshold: Some(threshold),
            ..PackOptions::default()
        }
    }

    #[test]
    fn spanning_examples() {
        let doubled = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]);
        let run = pack_spanning_trees(&doubled, 2).unwrap();
        assert_eq!(run.packed().unwrap().packing.k(), 2);

        let k4 = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let run = pack_spanning_trees(&k4, 2).unwrap();
        assert!(run
            .packed()
            .unwrap()
            .packing
            .parts
            .iter()
            .all(|p| p.len() == 3));

        let c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        match pack_spanning_trees(&c4, 2).unwrap() {
            Outcome::Certificate(Certificate::ViolatingPartition {
                partition,
                lambda_out,
                bound,
            }) => {
                assert_eq!(partition.len(), 4);
                assert_eq!((lambda_out, bound), (4, 6));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disconnected_graph_gets_component_certificate() {
        let g = Multigraph::from_edges(4, &[(0, 1), (0, 1), (2, 3), (2, 3)]);
        match pack_spanning_trees(&g, 1).unwrap() {
            Outcome::Certificate(Certificate::ViolatingPartition {
                lambda_out, bound, ..
            }) => {
                assert!(lambda_out < bound);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn hypergraph_of_terminal_graph_is_the_graph() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (1, 2)]);
        let t = TerminalSet::all(&g).unwrap();
        let sh = build_steiner_hypergraph(&g, &t).unwrap();
        assert_eq!(sh.hypergraph.num_hyperedges(), 3);
        assert!(sh.hypergraph.hyperedges().all(|(_, e)| e.len() == 2));
        assert_eq!(
            sh.origins[&HyperedgeId(2)],
            HyperedgeOrigin::Edge(EdgeId(2))
        );
    }

    #[test]
    fn single_star_becomes_a_triple() {
        let g = Multigraph::from_edges(4, &[(3, 0), (3, 1), (3, 2)]);
        let t = TerminalSet::new([v(0), v(1), v(2)]).unwrap();
        let sh = build_steiner_hypergraph(&g, &t).unwrap();
        let all: Vec<_> = sh.hypergraph.hyperedges().collect();
        assert_eq!(all, vec![(HyperedgeId(0), &[v(0), v(1), v(2)][..])]);
    }

    #[test]
    fn tight_bipartite_instance() {
        // n terminals and k(n - 1) non-terminals, each on three terminals.
        let (n, k) = (4u32, 2u32);
        let mut edges = Vec::new();
        for i in 0..k * (n - 1) {
            let c = n + i;
            for j in 0..3 {
                edges.push((c, (i + j) % n));
            }
        }
        let g = Multigraph::from_edges(n + k * (n - 1), &edges);
        let t = TerminalSet::new((0..n).map(v)).unwrap();
        let sh = build_steiner_hypergraph(&g, &t).unwrap();
        assert_eq!(sh.hypergraph.num_hyperedges(), (k * (n - 1)) as usize);
        assert!(sh.hypergraph.hyperedges().all(|(_, e)| e.len() == 3));
    }

    #[test]
    fn hypergraph_requires_ready_form() {
        let g = Multigraph::from_edges(3, &[(2, 0), (2, 1)]);
        let t = TerminalSet::new([v(0), v(1)]).unwrap();
        let err = build_steiner_hypergraph(&g, &t).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("non-terminal 2")));
    }

    #[test]
    fn steiner_on_all_terminals_is_spanning() {
        let g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]);
        let t = TerminalSet::all(&g).unwrap();
        let out = pack_steiner_trees(&g, &t, 2, &with_threshold(4)).unwrap();
        let run = out.packed().unwrap();
        assert_eq!(run.route, Route::Pipeline);
        assert!(run.packing.parts.iter().all(|p| p.len() == 2));
    }

    fn two_star_instance() -> (Multigraph, TerminalSet) {
        // Terminals a..d = 0..3, stars 4 on {a,b,c} and 5 on {b,c,d}.
        let g = Multigraph::from_edges(
            6,
            &[
                (4, 0),
                (4, 1),
                (4, 2),
                (5, 1),
                (5, 2),
                (5, 3),
                (0, 1),
                (0, 3),
                (0, 3),
                (2, 3),
                (0, 2),
            ],
        );
        (g, TerminalSet::new((0..4).map(v)).unwrap())
    }

    #[test]
    fn steiner_tree_on_small_ready_instance() {
        let (g, t) = two_star_instance();
        assert!(is_fkk_form(&g, &t));
        assert!(crate::graph::steiner_connectivity(&g, &t).unwrap() >= 3);
        let out = pack_steiner_trees(&g, &t, 1, &with_threshold(3)).unwrap();
        let run = out.packed().unwrap();
        assert!(run.check.is_valid());
        let brute = brute_force_pack(&g, &t, 1, Mode::Steiner, &Capacity::default()).unwrap();
        assert!(matches!(brute, BruteOutcome::Packed(_)));
    }

    #[test]
    fn connector_keeps_representative_spokes() {
        // Star 3 on {0,1,2} and edge 2-0 (id 3).
        let g = Multigraph::from_edges(4, &[(3, 0), (3, 1), (3, 2), (2, 0)]);
        let t = TerminalSet::new([v(0), v(1), v(2)]).unwrap();
        let out = pack_connectors(&g, &t, 1, &with_threshold(1)).unwrap();
        let run = out.packed().unwrap();
        assert_eq!(run.packing.parts[0], ids(&[0, 1, 3]));
    }

    #[test]
    fn cut_below_threshold_is_certified() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let t = TerminalSet::all(&g).unwrap();
        match pack_steiner_trees(&g, &t, 1, &PackOptions::default()).unwrap() {
            Outcome::Certificate(Certificate::CutTooSmall {
                size, threshold, ..
            }) => {
                assert_eq!((size, threshold), (2, 8));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_tree_in_any_connected_graph() {
        let g =
            Multigraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]);
        let t = TerminalSet::new([v(0), v(2), v(4)]).unwrap();
        let out = pack_steiner_trees(&g, &t, 1, &with_threshold(1)).unwrap();
        assert!(out.packed().unwrap().check.is_valid());
    }

    #[test]
    fn pipelines_reject_bad_input() {
        let g = Multigraph::from_edges(2, &[(0, 1)]);
        let one = TerminalSet::new([v(0)]).unwrap();
        assert!(pack_steiner_trees(&g, &one, 1, &PackOptions::default()).is_err());
        let t = TerminalSet::all(&g).unwrap();
        assert!(pack_connectors(&g, &t, 0, &PackOptions::default()).is_err());
        assert!(pack_spanning_trees(&Multigraph::new(), 1).is_err());
    }

    #[test]
    fn generated_ready_instances_pack() {
        for k in 1..=2 {
            for seed in 0..10 {
                let gen = generate(Model::Fkk, 5, k, seed).unwrap();
                let (g, t) = (&gen.instance.graph, &gen.instance.terminals);
                let opts = with_threshold(3 * k);
                let run = pack_steiner_trees(g, t, k, &opts).unwrap();
                assert!(run.packed().is_some(), "steiner k={k} seed={seed}");
                let run = pack_connectors(g, t, k, &opts).unwrap();
                let run = run.packed().expect("connectors pack");
                let reduced = &run.reduction.as_ref().unwrap().graph;
                for part in &run.pre_lift.as_ref().unwrap().parts {
                    for &u in reduced.vertices() {
                        if !t.contains(u) {
                            let d = part
                                .iter()
                                .filter(|&&e| reduced.ends(e).unwrap().contains(u))
                                .count();
                            assert!(d == 0 || d == 2);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kriesell_instances_pack_through_reduction() {
        for seed in 0..5 {
            let gen = generate(Model::Kriesell, 6, 1, seed).unwrap();
            let (g, t) = (&gen.instance.graph, &gen.instance.terminals);
            let opts = PackOptions {
                brute_fallback: true,
                ..PackOptions::default()
            };
            let out = pack_steiner_trees(g, t, 1, &opts).unwrap();
            assert!(out.packed().is_some(), "seed {seed}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_graph() -> impl Strategy<Value = Multigraph> {
            (
                2u32..=5,
                proptest::collection::vec((0u32..5, 0u32..5), 0..=8),
            )
                .prop_map(|(n, pairs)| {
                    let edges: Vec<(u32, u32)> =
                        pairs.into_iter().map(|(a, b)| (a % n, b % n)).collect();
                    Multigraph::from_edges(n, &edges)
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(128))]

            #[test]
            fn spanning_matches_partition_condition(g in small_graph(), k in 1usize..=2) {
                let vs: Vec<VertexId> = g.vertices().iter().copied().collect();
                let edges: Vec<Vec<VertexId>> = g
                    .edges()
                    .filter(|(_, e)| !e.is_loop())
                    .map(|(_, e)| vec![e.0, e.1])
                    .collect();
                let violated = partitions(&vs).any(|p| {
                    let out = edges.iter().filter(|e| !p.is_inner(e)).count();
                    out < k * (p.len() - 1)
                });
                let out = pack_spanning_trees(&g, k).unwrap();
                prop_assert_eq!(out.packed().is_some(), !violated);
                if let Outcome::Certificate(Certificate::ViolatingPartition { partition, lambda_out, bound }) = &out {
                    let real = edges.iter().filter(|e| !partition.is_inner(e)).count();
                    prop_assert_eq!(real, *lambda_out);
                    prop_assert!(lambda_out < bound);
                }
                let brute = brute_force_pack(&g, &TerminalSet::all(&g).unwrap(), k, Mode::Spanning, &Capacity::default()).unwrap();
                prop_assert_eq!(matches!(brute, BruteOutcome::Packed(_)), !violated);
            }
        }
    }
}

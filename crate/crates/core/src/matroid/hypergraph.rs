//! Hypergraphs with edges of size two and three, and their hypergraphic
//! matroid.
//!
//! A set of hyperedges is independent when each member can be represented
//! by a pair of its own vertices so that the pairs form a forest. The
//! independence test keeps such a representation and inserts hyperedges one
//! at a time; when the new hyperedge closes a cycle with every choice of
//! pair, a breadth-first search over representative reassignments looks for
//! a shortest chain of swaps that frees a pair.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use super::{min_partition_value, pack_bases_on, Dsu, Matroid, Partition};
use crate::error::{Error, Result};
use crate::graph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HyperedgeId(pub u32);

impl fmt::Display for HyperedgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Chosen vertex pair for each hyperedge of an independent set.
pub type Representatives = BTreeMap<HyperedgeId, (VertexId, VertexId)>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Hypergraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<HyperedgeId, Vec<VertexId>>,
}

impl Hypergraph {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        Hypergraph {
            vertices: vertices.into_iter().collect(),
            edges: BTreeMap::new(),
        }
    }

    /// Adds a hyperedge on 2 or 3 distinct vertices.
    pub fn add_hyperedge(&mut self, id: HyperedgeId, members: &[VertexId]) -> Result<()> {
        let set: BTreeSet<VertexId> = members.iter().copied().collect();
        if set.len() != members.len() || !(2..=3).contains(&set.len()) {
            return Err(Error::invalid(format!(
                "hyperedge {id} must have 2 or 3 distinct vertices"
            )));
        }
        if let Some(v) = set.iter().find(|v| !self.vertices.contains(v)) {
            return Err(Error::invalid(format!(
                "hyperedge {id} uses unknown vertex {v}"
            )));
        }
        if self.edges.contains_key(&id) {
            return Err(Error::invalid(format!("duplicate hyperedge id {id}")));
        }
        self.edges.insert(id, set.into_iter().collect());
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn hyperedges(&self) -> impl Iterator<Item = (HyperedgeId, &[VertexId])> + '_ {
        self.edges.iter().map(|(&id, vs)| (id, vs.as_slice()))
    }

    pub fn hyperedge(&self, id: HyperedgeId) -> Option<&[VertexId]> {
        self.edges.get(&id).map(Vec::as_slice)
    }

    pub fn ids(&self) -> impl Iterator<Item = HyperedgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn num_hyperedges(&self) -> usize {
        self.edges.len()
    }

    fn check_ids<'a>(&self, ids: impl IntoIterator<Item = &'a HyperedgeId>) -> Result<()> {
        for id in ids {
            if !self.edges.contains_key(id) {
                return Err(Error::invalid(format!("unknown hyperedge {id}")));
            }
        }
        Ok(())
    }
}

/// An independent set of hyperedges together with a forest representation.
#[derive(Debug, Clone)]
pub struct HyperForest<'h> {
    h: &'h Hypergraph,
    vertices: Vec<VertexId>,
    reps: BTreeMap<HyperedgeId, (usize, usize)>,
}

type Candidate = (HyperedgeId, (usize, usize));

impl<'h> HyperForest<'h> {
    pub fn new(h: &'h Hypergraph) -> Self {
        HyperForest {
            h,
            vertices: h.vertices.iter().copied().collect(),
            reps: BTreeMap::new(),
        }
    }

    fn local(&self, v: VertexId) -> usize {
        self.vertices
            .binary_search(&v)
            .expect("hyperedge vertex in vertex set")
    }

    fn pairs(&self, id: HyperedgeId) -> Vec<(usize, usize)> {
        let vs: Vec<usize> = self.h.edges[&id].iter().map(|&v| self.local(v)).collect();
        let mut out = Vec::new();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.push((vs[i], vs[j]));
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains(&self, id: HyperedgeId) -> bool {
        self.reps.contains_key(&id)
    }

    pub fn representatives(&self) -> Representatives {
        self.reps
            .iter()
            .map(|(&id, &(a, b))| (id, (self.vertices[a], self.vertices[b])))
            .collect()
    }

    /// Forest adjacency: neighbour and the hyperedge represented by the edge.
    fn adjacency(&self) -> Vec<Vec<(usize, HyperedgeId)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (&id, &(a, b)) in &self.reps {
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        adj
    }

    fn components(adj: &[Vec<(usize, HyperedgeId)>]) -> Vec<usize> {
        let mut comp = vec![usize::MAX; adj.len()];
        for start in 0..adj.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = start;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &(y, _) in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = start;
                        stack.push(y);
                    }
                }
            }
        }
        comp
    }

    /// Hyperedges whose representatives lie on the forest path from `a` to `b`.
    fn path(adj: &[Vec<(usize, HyperedgeId)>], a: usize, b: usize) -> Vec<HyperedgeId> {
        let mut via: Vec<Option<(usize, HyperedgeId)>> = vec![None; adj.len()];
        let mut seen = vec![false; adj.len()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for &(y, id) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, id));
                    queue.push_back(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut x = b;
        while let Some((prev, id)) = via[x] {
            out.push(id);
            x = prev;
        }
        out.reverse();
        out
    }

    /// Inserts `id` if the enlarged set stays independent, possibly
    /// reassigning representatives of earlier members. Returns whether the
    /// insertion succeeded; on failure the forest is unchanged.
    pub fn try_insert(&mut self, id: HyperedgeId) -> Result<bool> {
        self.h.check_ids([&id])?;
        if self.reps.contains_key(&id) {
            return Err(Error::invalid(format!(
                "hyperedge {id} is already in the forest"
            )));
        }
        let adj = self.adjacency();
        let comp = Self::components(&adj);

        let mut parent: BTreeMap<Candidate, Option<Candidate>> = BTreeMap::new();
        let mut displaced: BTreeSet<HyperedgeId> = BTreeSet::new();
        let mut queue: VecDeque<Candidate> = VecDeque::new();
        for pair in self.pairs(id) {
            parent.insert((id, pair), None);
            queue.push_back((id, pair));
        }
        while let Some(x) = queue.pop_front() {
            let (_, (a, b)) = x;
            if comp[a] != comp[b] {
                let mut node = Some(x);
                while let Some((hid, pair)) = node {
                    self.reps.insert(hid, pair);
                    node = parent[&(hid, pair)];
                }
                self.check_forest()?;
                return Ok(true);
            }
            for y in Self::path(&adj, a, b) {
                if !displaced.insert(y) {
                    continue;
                }
                let current = self.reps[&y];
                for alt in self.pairs(y) {
                    if alt != current && !parent.contains_key(&(y, alt)) {
                        parent.insert((y, alt), Some(x));
                        queue.push_back((y, alt));
                    }
                }
            }
        }
        Ok(false)
    }

    fn check_forest(&self) -> Result<()> {
        let mut dsu = Dsu::new(self.vertices.len());
        if self.reps.values().all(|&(a, b)| dsu.union(a, b)) {
            Ok(())
        } else {
            Err(Error::internal(
                "representative exchange produced a cycle; augmenting path was not shortest",
            ))
        }
    }
}

/// The forest witness for `set`, or `None` when it is dependent.
pub fn hypergraphic_independent(
    h: &Hypergraph,
    set: &BTreeSet<HyperedgeId>,
) -> Result<Option<Representatives>> {
    h.check_ids(set)?;
    let mut forest = HyperForest::new(h);
    for &id in set {
        if !forest.try_insert(id)? {
            return Ok(None);
        }
    }
    Ok(Some(forest.representatives()))
}

/// Rank by greedy growth in ascending id order.
pub fn hypergraphic_rank(h: &Hypergraph, set: &BTreeSet<HyperedgeId>) -> Result<usize> {
    h.check_ids(set)?;
    let mut forest = HyperForest::new(h);
    for &id in set {
        forest.try_insert(id)?;
    }
    Ok(forest.len())
}

fn members<'a>(
    h: &'a Hypergraph,
    set: &'a BTreeSet<HyperedgeId>,
) -> impl Iterator<Item = &'a [VertexId]> {
    set.iter().map(move |id| h.edges[id].as_slice())
}

/// `min_P r(P) + λ^out_P(set)`, with the first minimising partition.
pub fn hypergraphic_rank_by_partitions(
    h: &Hypergraph,
    set: &BTreeSet<HyperedgeId>,
) -> Result<(usize, Partition)> {
    union_rank_by_partitions(h, set, 1)
}

/// `min_P k·r(P) + λ^out_P(set)`, with the first minimising partition.
pub fn union_rank_by_partitions(
    h: &Hypergraph,
    set: &BTreeSet<HyperedgeId>,
    k: usize,
) -> Result<(usize, Partition)> {
    h.check_ids(set)?;
    let vs: Vec<VertexId> = h.vertices.iter().copied().collect();
    Ok(min_partition_value(&vs, members(h, set), k))
}

/// Size of a maximum union-independent subset found by base packing.
pub fn union_rank_by_packing(
    h: &Hypergraph,
    set: &BTreeSet<HyperedgeId>,
    k: usize,
) -> Result<usize> {
    h.check_ids(set)?;
    let m = HypergraphicMatroid::new(h);
    let elements: Vec<usize> = set.iter().map(|&id| m.element(id).unwrap()).collect();
    Ok(pack_bases_on(&m, &elements, k)?.size())
}

/// Partition enumeration on up to 8 vertices, base packing beyond.
pub fn union_rank(h: &Hypergraph, set: &BTreeSet<HyperedgeId>, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if h.vertices.len() <= 8 {
        Ok(union_rank_by_partitions(h, set, k)?.0)
    } else {
        union_rank_by_packing(h, set, k)
    }
}

/// The hypergraphic matroid; element `i` is the `i`-th hyperedge by id.
#[derive(Debug, Clone)]
pub struct HypergraphicMatroid {
    h: Hypergraph,
    ids: Vec<HyperedgeId>,
}

impl HypergraphicMatroid {
    pub fn new(h: &Hypergraph) -> Self {
        HypergraphicMatroid {
            h: h.clone(),
            ids: h.ids().collect(),
        }
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn hyperedge_id(&self, element: usize) -> HyperedgeId {
        self.ids[element]
    }

    pub fn element(&self, id: HyperedgeId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn representatives(&self, set: &[usize]) -> Result<Option<Representatives>> {
        let ids = set.iter().map(|&e| self.ids[e]).collect();
        hypergraphic_independent(&self.h, &ids)
    }
}

impl Matroid for HypergraphicMatroid {
    fn ground_size(&self) -> usize {
        self.ids.len()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let mut forest = HyperForest::new(&self.h);
        set.iter()
            .all(|&e| forest.try_insert(self.ids[e]).expect("element in range"))
    }

    fn rank(&self, set: &[usize]) -> usize {
        let mut forest = HyperForest::new(&self.h);
        for &e in set {
            forest.try_insert(self.ids[e]).expect("element in range");
        }
        forest.len()
    }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<u32> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("{what} '{tok}' is not a nonnegative integer")))
}

/// Parses `hypergraph <n> <m>`, optional `v <id>` lines (default `0..n`) and
/// `h <id> <v1> <v2> [v3]` lines. `#` starts a comment line.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut header = None;
    let mut declared = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks[0] {
            "hypergraph" if header.is_none() && toks.len() == 3 => {
                header = Some((
                    number(toks.get(1).copied(), line, "n")?,
                    number(toks.get(2).copied(), line, "m")?,
                ));
            }
            _ if header.is_none() => {
                return Err(Error::parse(
                    line,
                    "expected 'hypergraph <n> <m>' header first",
                ))
            }
            "v" if toks.len() == 2 => {
                declared.push((line, number(Some(toks[1]), line, "vertex id")?))
            }
            "h" if (4..=5).contains(&toks.len()) => {
                let id = number(Some(toks[1]), line, "hyperedge id")?;
                let vs = toks[2..]
                    .iter()
                    .map(|t| number(Some(t), line, "vertex").map(VertexId))
                    .collect::<Result<Vec<_>>>()?;
                edges.push((line, id, vs));
            }
            _ => return Err(Error::parse(line, format!("malformed line '{s}'"))),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(1, "missing 'hypergraph <n> <m>' header"))?;
    let mut h = if declared.is_empty() {
        Hypergraph::new((0..n).map(VertexId))
    } else {
        let mut h = Hypergraph::new([]);
        for &(line, v) in &declared {
            if !h.vertices.insert(VertexId(v)) {
                return Err(Error::parse(line, format!("duplicate vertex {v}")));
            }
        }
        if declared.len() != n as usize {
            return Err(Error::parse(1, format!("header declares {n} vertices")));
        }
        h
    };
    for (line, id, vs) in &edges {
        h.add_hyperedge(HyperedgeId(*id), vs)
            .map_err(|e| Error::parse(*line, e.to_string()))?;
    }
    if edges.len() != m as usize {
        return Err(Error::parse(1, format!("header declares {m} hyperedges")));
    }
    Ok(h)
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "hypergraph {} {}", h.vertices.len(), h.edges.len()).unwrap();
    for v in &h.vertices {
        writeln!(out, "v {v}").unwrap();
    }
    for (id, vs) in &h.edges {
        write!(out, "h {id}").unwrap();
        for v in vs {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// One `rep <hyperedge> <u> <v>` line per hyperedge.
pub fn write_representatives(reps: &Representatives) -> String {
    reps.iter()
        .map(|(id, (a, b))| format!("rep {id} {a} {b}\n"))
        .collect()
}

/// One `block <v>...` line per block.
pub fn write_partition(p: &Partition) -> String {
    p.blocks()
        .iter()
        .map(|b| {
            let vs: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            format!("block {}\n", vs.join(" "))
        })
        .collect()
}

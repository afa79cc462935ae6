//! Independent verification of packings against the host graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::connector::{connector_shape, Defect, Shape};
use super::{Mode, Packing};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Ends, Multigraph, TerminalSet, VertexId};
use crate::matroid::Dsu;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    /// The edge already belongs to an earlier part.
    Overlap(EdgeId),
    Loop(EdgeId),
    Cycle,
    Disconnected,
    MissingTerminal(VertexId),
    /// A spanning part misses this vertex.
    MissingVertex(VertexId),
    OddDegree(VertexId),
    /// Every way of splitting off the non-terminals disconnects the terminals.
    NoSplitting,
    UnverifiedConnectorShape,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Overlap(e) => write!(f, "disjointness: edge {e} is used twice"),
            Reason::Loop(e) => write!(f, "contains loop {e}"),
            Reason::Cycle => f.write_str("not a tree: contains a cycle"),
            Reason::Disconnected => f.write_str("not connected"),
            Reason::MissingTerminal(v) => write!(f, "terminal {v} is not covered"),
            Reason::MissingVertex(v) => write!(f, "vertex {v} is not spanned"),
            Reason::OddDegree(v) => write!(f, "non-terminal {v} has odd degree"),
            Reason::NoSplitting => {
                f.write_str("no splitting sequence yields a connected graph on T")
            }
            Reason::UnverifiedConnectorShape => f.write_str("unverified connector shape"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    /// Every part is valid. For connectors, `split_verified` lists the parts
    /// with a non-terminal of degree 4 or more, accepted only after an
    /// explicit splitting sequence was found.
    Valid {
        split_verified: Vec<usize>,
    },
    Violation {
        part: usize,
        reason: Reason,
    },
}

impl Check {
    pub fn is_valid(&self) -> bool {
        matches!(self, Check::Valid { .. })
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Valid { split_verified } if split_verified.is_empty() => f.write_str("ok"),
            Check::Valid { split_verified } => {
                let parts: Vec<String> =
                    split_verified.iter().map(|p| (p + 1).to_string()).collect();
                write!(f, "ok (split-verified parts {})", parts.join(","))
            }
            Check::Violation { part, reason } => write!(f, "part {}: {reason}", part + 1),
        }
    }
}

/// Checks disjointness and the per-mode shape of every part, reporting the
/// first failure. Parts are indexed from 0.
pub fn verify_packing(g: &Multigraph, t: &TerminalSet, p: &Packing) -> Result<Check> {
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (i, part) in p.parts.iter().enumerate() {
        for &id in part {
            if g.ends(id).is_none() {
                return Err(Error::invalid(format!("edge {id} is not in the graph")));
            }
            if owner.insert(id, i).is_some() {
                return Ok(Check::Violation {
                    part: i,
                    reason: Reason::Overlap(id),
                });
            }
        }
    }
    if let Some(v) = t.iter().find(|&v| !g.contains_vertex(v)) {
        return Err(Error::invalid(format!("terminal {v} is not in the graph")));
    }
    let mut split_verified = Vec::new();
    for (i, part) in p.parts.iter().enumerate() {
        let edges: Vec<(EdgeId, Ends)> = part.iter().map(|&id| (id, g.ends(id).unwrap())).collect();
        let outcome = match p.mode {
            Mode::Spanning => check_spanning(g, &edges),
            Mode::Steiner => check_steiner(t, &edges),
            Mode::Connector => check_connector(t, &edges),
        };
        match outcome {
            Ok(Shape::Canonical) => {}
            Ok(Shape::Split) => split_verified.push(i),
            Err(reason) => return Ok(Check::Violation { part: i, reason }),
        }
    }
    Ok(Check::Valid { split_verified })
}

/// Dense indexing of the vertices touched by `edges` plus `extra`.
fn local(
    edges: &[(EdgeId, Ends)],
    extra: impl IntoIterator<Item = VertexId>,
) -> (Vec<VertexId>, Vec<(usize, usize)>) {
    let mut vs: BTreeSet<VertexId> = extra.into_iter().collect();
    for (_, e) in edges {
        vs.insert(e.0);
        vs.insert(e.1);
    }
    let vs: Vec<VertexId> = vs.into_iter().collect();
    let idx = |v: VertexId| vs.binary_search(&v).unwrap();
    let pairs = edges.iter().map(|(_, e)| (idx(e.0), idx(e.1))).collect();
    (vs, pairs)
}

/// Acyclic and connected on its vertex set.
fn check_tree(n: usize, pairs: &[(usize, usize)]) -> Result<(), Reason> {
    let mut dsu = Dsu::new(n);
    for &(a, b) in pairs {
        if !dsu.union(a, b) {
            return Err(Reason::Cycle);
        }
    }
    if n > 0 && pairs.len() != n - 1 {
        return Err(Reason::Disconnected);
    }
    Ok(())
}

fn check_spanning(g: &Multigraph, edges: &[(EdgeId, Ends)]) -> Result<Shape, Reason> {
    if let Some((id, _)) = edges.iter().find(|(_, e)| e.is_loop()) {
        return Err(Reason::Loop(*id));
    }
    let (vs, pairs) = local(edges, g.vertices().iter().copied());
    check_tree(vs.len(), &pairs).map_err(|r| match r {
        Reason::Disconnected if g.num_vertices() > 1 => edges_miss(g, edges).unwrap_or(r),
        r => r,
    })?;
    Ok(Shape::Canonical)
}

fn edges_miss(g: &Multigraph, edges: &[(EdgeId, Ends)]) -> Option<Reason> {
    g.vertices()
        .iter()
        .find(|&&v| !edges.iter().any(|(_, e)| e.contains(v)))
        .map(|&v| Reason::MissingVertex(v))
}

fn missing_terminal(t: &TerminalSet, edges: &[(EdgeId, Ends)]) -> Option<Reason> {
    if t.len() < 2 {
        return None;
    }
    t.iter()
        .find(|&v| !edges.iter().any(|(_, e)| e.contains(v)))
        .map(Reason::MissingTerminal)
}

fn check_steiner(t: &TerminalSet, edges: &[(EdgeId, Ends)]) -> Result<Shape, Reason> {
    if let Some((id, _)) = edges.iter().find(|(_, e)| e.is_loop()) {
        return Err(Reason::Loop(*id));
    }
    if let Some(r) = missing_terminal(t, edges) {
        return Err(r);
    }
    let (vs, pairs) = local(edges, t.iter());
    check_tree(vs.len(), &pairs)?;
    Ok(Shape::Canonical)
}

fn check_connector(t: &TerminalSet, edges: &[(EdgeId, Ends)]) -> Result<Shape, Reason> {
    if let Some((id, _)) = edges.iter().find(|(_, e)| e.is_loop()) {
        return Err(Reason::Loop(*id));
    }
    let (vs, pairs) = local(edges, t.iter());
    let terminal: Vec<bool> = vs.iter().map(|&v| t.contains(v)).collect();
    connector_shape(&terminal, &pairs).map_err(|d| match d {
        Defect::MissingTerminal(v) => Reason::MissingTerminal(vs[v]),
        Defect::OddDegree(v) => Reason::OddDegree(vs[v]),
        Defect::Disconnected => Reason::Disconnected,
        Defect::NoSplitting => Reason::NoSplitting,
        Defect::Unverified => Reason::UnverifiedConnectorShape,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(xs: &[u32]) -> BTreeSet<EdgeId> {
        xs.iter().map(|&i| EdgeId(i)).collect()
    }

    fn doubled_triangle() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)])
    }

    #[test]
    fn valid_spanning_packing() {
        let g = doubled_triangle();
        let t = TerminalSet::all(&g).unwrap();
        let p = Packing {
            mode: Mode::Spanning,
            parts: vec![ids(&[0, 2]), ids(&[1, 4])],
        };
        assert_eq!(
            verify_packing(&g, &t, &p).unwrap(),
            Check::Valid {
                split_verified: vec![]
            }
        );
    }

    #[test]
    fn shared_edge_is_a_disjointness_violation() {
        let g = doubled_triangle();
        let t = TerminalSet::all(&g).unwrap();
        let p = Packing {
            mode: Mode::Spanning,
            parts: vec![ids(&[0, 2]), ids(&[0, 4])],
        };
        assert_eq!(
            verify_packing(&g, &t, &p).unwrap(),
            Check::Violation {
                part: 1,
                reason: Reason::Overlap(EdgeId(0))
            }
        );
    }

    #[test]
    fn steiner_cycle_is_not_a_tree() {
        let g = doubled_triangle();
        let t = TerminalSet::all(&g).unwrap();
        let p = Packing {
            mode: Mode::Steiner,
            parts: vec![ids(&[0, 2, 4])],
        };
        assert_eq!(
            verify_packing(&g, &t, &p).unwrap(),
            Check::Violation {
                part: 0,
                reason: Reason::Cycle
            }
        );
    }

    #[test]
    fn spanning_part_must_cover_every_vertex() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let t = TerminalSet::all(&g).unwrap();
        let p = Packing {
            mode: Mode::Spanning,
            parts: vec![ids(&[0, 1])],
        };
        assert_eq!(
            verify_packing(&g, &t, &p).unwrap(),
            Check::Violation {
                part: 0,
                reason: Reason::MissingVertex(VertexId(3))
            }
        );
    }

    #[test]
    fn connector_shapes() {
        // Terminals 0..3, non-terminal 4 adjacent to all of them, plus edge 1-2.
        let g = Multigraph::from_edges(5, &[(4, 0), (4, 1), (4, 2), (4, 3), (1, 2)]);
        let t = TerminalSet::new((0..4).map(VertexId)).unwrap();
        let p = Packing {
            mode: Mode::Connector,
            parts: vec![ids(&[0, 1, 2, 3, 4])],
        };
        assert_eq!(
            verify_packing(&g, &t, &p).unwrap(),
            Check::Valid {
                split_verified: vec![0]
            }
        );
        let p = Packing {
            mode: Mode::Connector,
            parts: vec![ids(&[0, 1, 2, 3])],
        };
        assert_eq!(
            verify_packing(&g, &t, &p).unwrap(),
            Check::Violation {
                part: 0,
                reason: Reason::NoSplitting
            }
        );
        let p = Packing {
            mode: Mode::Connector,
            parts: vec![ids(&[0, 1, 4])],
        };
        assert!(matches!(
            verify_packing(&g, &t, &p).unwrap(),
            Check::Violation {
                reason: Reason::MissingTerminal(VertexId(3)),
                ..
            }
        ));
    }

    #[test]
    fn unknown_edges_are_rejected() {
        let g = doubled_triangle();
        let t = TerminalSet::all(&g).unwrap();
        let p = Packing {
            mode: Mode::Steiner,
            parts: vec![ids(&[9])],
        };
        assert!(matches!(
            verify_packing(&g, &t, &p),
            Err(Error::InvalidArgument(_))
        ));
    }
}

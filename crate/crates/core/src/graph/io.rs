//! Line-based instance format.
//!
//! ```text
//! # comment
//! graph <n> <m>
//! v <id>            (optional; without any, vertices are 0..n)
//! t <id>            (terminal; without any, every vertex is a terminal)
//! e <edge-id> <u> <v>
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{EdgeId, Multigraph, TerminalSet, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Multigraph,
    pub terminals: TerminalSet,
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<u32> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("{what} '{tok}' is not a nonnegative integer")))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(u32, u32)> = None;
    let mut declared: Vec<(usize, u32)> = Vec::new();
    let mut terms: Vec<(usize, u32)> = Vec::new();
    let mut edges: Vec<(usize, u32, u32, u32)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut toks = s.split_whitespace();
        let kind = toks.next().unwrap();
        let expected_fields = match kind {
            "graph" => {
                if header.is_some() {
                    return Err(Error::parse(line, "duplicate graph header"));
                }
                header = Some((
                    number(toks.next(), line, "n")?,
                    number(toks.next(), line, "m")?,
                ));
                2
            }
            _ if header.is_none() => {
                return Err(Error::parse(line, "expected 'graph <n> <m>' header first"))
            }
            "v" => {
                declared.push((line, number(toks.next(), line, "vertex id")?));
                1
            }
            "t" => {
                terms.push((line, number(toks.next(), line, "terminal id")?));
                1
            }
            "e" => {
                let id = number(toks.next(), line, "edge id")?;
                let a = number(toks.next(), line, "endpoint")?;
                let b = number(toks.next(), line, "endpoint")?;
                edges.push((line, id, a, b));
                3
            }
            other => return Err(Error::parse(line, format!("unknown record '{other}'"))),
        };
        if toks.next().is_some() {
            return Err(Error::parse(
                line,
                format!("'{kind}' takes exactly {expected_fields} field(s)"),
            ));
        }
    }

    let (n, m) = header.ok_or_else(|| Error::parse(1, "missing 'graph <n> <m>' header"))?;
    let mut g = Multigraph::new();
    if declared.is_empty() {
        (0..n).for_each(|v| {
            g.add_vertex(VertexId(v));
        });
    } else {
        for &(line, v) in &declared {
            if !g.add_vertex(VertexId(v)) {
                return Err(Error::parse(line, format!("duplicate vertex {v}")));
            }
        }
        if declared.len() != n as usize {
            return Err(Error::parse(
                declared.last().unwrap().0,
                format!(
                    "header declares {n} vertices but {} were listed",
                    declared.len()
                ),
            ));
        }
    }
    if g.num_vertices() == 0 {
        return Err(Error::parse(1, "graph has no vertices"));
    }

    let mut seen = BTreeSet::new();
    for &(line, id, a, b) in &edges {
        if !seen.insert(id) {
            return Err(Error::parse(line, format!("duplicate edge id {id}")));
        }
        for x in [a, b] {
            if !g.contains_vertex(VertexId(x)) {
                return Err(Error::parse(line, format!("unknown vertex {x}")));
            }
        }
        g.insert_edge(EdgeId(id), VertexId(a), VertexId(b))
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    if edges.len() != m as usize {
        return Err(Error::parse(
            edges.last().map_or(1, |e| e.0),
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }

    let terminals = if terms.is_empty() {
        TerminalSet::all(&g)?
    } else {
        let mut set = BTreeSet::new();
        for &(line, t) in &terms {
            if !g.contains_vertex(VertexId(t)) {
                return Err(Error::parse(line, format!("unknown terminal {t}")));
            }
            if !set.insert(VertexId(t)) {
                return Err(Error::parse(line, format!("duplicate terminal {t}")));
            }
        }
        TerminalSet::new(set)?
    };
    Ok(Instance {
        graph: g,
        terminals,
    })
}

/// Canonical text form: header, every vertex, every terminal, edges by id.
/// Each entry of `comments` becomes a leading `# ` line.
pub fn write_instance(inst: &Instance, comments: &[String]) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(out, "graph {} {}", g.num_vertices(), g.num_edges()).unwrap();
    for v in g.vertices() {
        writeln!(out, "v {v}").unwrap();
    }
    for t in inst.terminals.iter() {
        writeln!(out, "t {t}").unwrap();
    }
    for (id, e) in g.edges() {
        writeln!(out, "e {id} {} {}", e.0, e.1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_instance() {
        let inst =
            parse_instance("# tri\ngraph 3 3\nt 0\nt 2\ne 0 0 1\ne 1 1 2\ne 5 2 0\n").unwrap();
        assert_eq!(inst.graph.num_vertices(), 3);
        assert_eq!(inst.graph.next_edge_id(), EdgeId(6));
        assert_eq!(inst.terminals.len(), 2);
    }

    #[test]
    fn missing_terminals_means_all() {
        let inst = parse_instance("graph 2 1\ne 0 0 1\n").unwrap();
        assert_eq!(inst.terminals.len(), 2);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = parse_instance("graph 2 2\ne 0 0 1\ne 0 1 0\n").unwrap_err();
        assert_eq!(dup, Error::parse(3, "duplicate edge id 0"));
        let unknown = parse_instance("graph 2 1\n\ne 0 0 7\n").unwrap_err();
        assert!(matches!(unknown, Error::Parse { line: 3, .. }));
        let junk = parse_instance("graph 2 1\nx 1\n").unwrap_err();
        assert!(matches!(junk, Error::Parse { line: 2, .. }));
        let extra = parse_instance("graph 2 1\ne 0 0 1 9\n").unwrap_err();
        assert!(matches!(extra, Error::Parse { line: 2, .. }));
        let count = parse_instance("graph 2 2\ne 0 0 1\n").unwrap_err();
        assert!(matches!(count, Error::Parse { .. }));
        let neg = parse_instance("graph 2 1\ne -1 0 1\n").unwrap_err();
        assert!(matches!(neg, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn declared_vertices_may_be_sparse() {
        let inst = parse_instance("graph 2 1\nv 4\nv 9\ne 3 4 9\n").unwrap();
        assert!(inst.graph.contains_vertex(VertexId(9)));
        let text = write_instance(&inst, &[]);
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn write_then_parse_is_identity(
                n in 1u32..7,
                edges in proptest::collection::vec((0u32..7, 0u32..7), 0..12),
                tmask in 1u32..128,
            ) {
                let edges: Vec<(u32, u32)> = edges.into_iter().map(|(a, b)| (a % n, b % n)).collect();
                let g = Multigraph::from_edges(n, &edges);
                let mut ts: Vec<VertexId> = (0..n).filter(|i| tmask >> i & 1 == 1).map(VertexId).collect();
                if ts.is_empty() {
                    ts.push(VertexId(0));
                }
                let inst = Instance { graph: g, terminals: TerminalSet::new(ts).unwrap() };
                let text = write_instance(&inst, &["note".into()]);
                let back = parse_instance(&text).unwrap();
                prop_assert_eq!(&back, &inst);
                prop_assert_eq!(write_instance(&back, &["note".into()]), text);
            }
        }
    }
}

//! Recognition of T-connectors on small local graphs (vertices `0..n`,
//! loop-free edge lists).

use crate::matroid::Dsu;

/// Splitting steps explored before a shape is reported as unverified.
const SPLIT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Shape {
    /// Every non-terminal has degree 0 or 2.
    Canonical,
    /// Some non-terminal has degree 4 or more; an explicit splitting
    /// sequence to a connected graph on the terminals was found.
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Defect {
    MissingTerminal(usize),
    OddDegree(usize),
    Disconnected,
    /// Every splitting sequence disconnects the terminals.
    NoSplitting,
    /// The splitting search ran out of budget.
    Unverified,
}

pub(crate) fn connector_shape(
    terminal: &[bool],
    edges: &[(usize, usize)],
) -> Result<Shape, Defect> {
    let n = terminal.len();
    let degree = degrees(n, edges);
    if let Some(v) = (0..n).find(|&v| !terminal[v] && degree[v] % 2 == 1) {
        return Err(Defect::OddDegree(v));
    }
    let terminals = terminal.iter().filter(|&&t| t).count();
    if terminals >= 2 {
        if let Some(v) = (0..n).find(|&v| terminal[v] && degree[v] == 0) {
            return Err(Defect::MissingTerminal(v));
        }
    }
    if !connected(terminal, edges) {
        return Err(Defect::Disconnected);
    }
    if (0..n).all(|v| terminal[v] || degree[v] <= 2) {
        return Ok(Shape::Canonical);
    }
    let mut budget = SPLIT_BUDGET;
    match split_all(terminal, edges.to_vec(), &mut budget) {
        Some(true) => Ok(Shape::Split),
        Some(false) => Err(Defect::NoSplitting),
        None => Err(Defect::Unverified),
    }
}

fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut degree = vec![0; n];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    degree
}

/// Terminals and all non-isolated vertices lie in one component.
fn connected(terminal: &[bool], edges: &[(usize, usize)]) -> bool {
    let n = terminal.len();
    let mut dsu = Dsu::new(n);
    for &(a, b) in edges {
        dsu.union(a, b);
    }
    let degree = degrees(n, edges);
    let mut roots = (0..n)
        .filter(|&v| terminal[v] || degree[v] > 0)
        .map(|v| dsu.find(v));
    match roots.next() {
        Some(r) => roots.all(|s| s == r),
        None => true,
    }
}

/// Splits off every non-terminal completely, pairing the first edge at the
/// first busy non-terminal with each alternative in turn. Splitting never
/// merges components, so a disconnected intermediate graph is abandoned.
fn split_all(terminal: &[bool], edges: Vec<(usize, usize)>, budget: &mut usize) -> Option<bool> {
    let Some(v) =
        (0..terminal.len()).find(|&v| !terminal[v] && edges.iter().any(|&(a, b)| a == v || b == v))
    else {
        return Some(connected(terminal, &edges));
    };
    let at_v: Vec<usize> = (0..edges.len())
        .filter(|&i| edges[i].0 == v || edges[i].1 == v)
        .collect();
    let far = |i: usize| {
        if edges[i].0 == v {
            edges[i].1
        } else {
            edges[i].0
        }
    };
    let first = at_v[0];
    let mut tried = Vec::new();
    for &other in &at_v[1..] {
        if tried.contains(&far(other)) {
            continue;
        }
        tried.push(far(other));
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let (x, y) = (far(first), far(other));
        let mut next: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != first && i != other)
            .map(|(_, &e)| e)
            .collect();
        if x != y {
            next.push((x, y));
        }
        if !connected(terminal, &next) {
            continue;
        }
        if split_all(terminal, next, budget)? {
            return Some(true);
        }
    }
    Some(false)
}

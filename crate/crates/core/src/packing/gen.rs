//! Seeded instance generators.

use std::fmt;
use std::str::FromStr;

use super::Thresholds;
use crate::error::{Error, Result};
use crate::graph::{steiner_connectivity, Instance, Multigraph, TerminalSet, VertexId};
use crate::rng::Rng;

const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Model {
    /// Union of random Hamiltonian cycles on `n` vertices, all terminals.
    Nwt,
    /// `n` terminals, random non-terminals of degree 3 on distinct terminal
    /// triples, and occasional terminal-terminal edges.
    Fkk,
    /// Random multigraph on `n` vertices with geometric edge multiplicities;
    /// roughly two thirds of the vertices are terminals.
    Kriesell,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Nwt => "nwt",
            Model::Fkk => "fkk",
            Model::Kriesell => "kriesell",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nwt" => Ok(Model::Nwt),
            "fkk" => Ok(Model::Fkk),
            "kriesell" => Ok(Model::Kriesell),
            _ => Err(Error::invalid(format!("unknown model '{s}'"))),
        }
    }
}

impl Model {
    /// The connectivity each model guarantees: `2k`, `3k` and `f(k)`.
    pub fn default_target(self, k: usize) -> usize {
        let t = Thresholds::new(k);
        match self {
            Model::Nwt => t.nwt,
            Model::Fkk => t.fkk,
            Model::Kriesell => t.f_k,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub instance: Instance,
    pub model: Model,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub target: usize,
    /// Measured Steiner connectivity, at least `target`.
    pub connectivity: usize,
    pub attempts: usize,
}

impl Generated {
    /// Header comments recording the parameters and the connectivity check.
    pub fn comments(&self) -> Vec<String> {
        vec![
            format!(
                "model {} n {} k {} seed {}",
                self.model, self.n, self.k, self.seed
            ),
            format!(
                "steiner-connectivity {} target {} attempts {}",
                self.connectivity, self.target, self.attempts
            ),
        ]
    }
}

pub fn generate(model: Model, n: usize, k: usize, seed: u64) -> Result<Generated> {
    generate_with_target(model, n, k, model.default_target(k), seed)
}

/// Draws instances until one reaches Steiner connectivity `target`, failing
/// after a fixed number of attempts.
pub fn generate_with_target(
    model: Model,
    n: usize,
    k: usize,
    target: usize,
    seed: u64,
) -> Result<Generated> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if n > 1000 {
        return Err(Error::invalid("n must be at most 1000"));
    }
    let mut rng = Rng::new(seed);
    let mut best = 0;
    for attempt in 1..=MAX_ATTEMPTS {
        let (graph, terminals) = match model {
            Model::Nwt => nwt(&mut rng, n, target),
            Model::Fkk => fkk(&mut rng, n, target),
            Model::Kriesell => kriesell(&mut rng, n, target),
        }?;
        let connectivity = steiner_connectivity(&graph, &terminals)?;
        if connectivity >= target {
            return Ok(Generated {
                instance: Instance { graph, terminals },
                model,
                n,
                k,
                seed,
                target,
                connectivity,
                attempts: attempt,
            });
        }
        best = best.max(connectivity);
    }
    Err(Error::Generation(format!(
        "{model} model with n={n}, k={k}, seed={seed}: no instance reached connectivity \
         {target} in {MAX_ATTEMPTS} attempts (best {best})"
    )))
}

fn vertex(i: usize) -> VertexId {
    VertexId(i as u32)
}

fn nwt(rng: &mut Rng, n: usize, target: usize) -> Result<(Multigraph, TerminalSet)> {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(vertex(i));
    }
    let cycles = target.div_ceil(2) + rng.index(2);
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..cycles {
        rng.shuffle(&mut order);
        for i in 0..n {
            g.add_edge(vertex(order[i]), vertex(order[(i + 1) % n]))?;
        }
    }
    let t = TerminalSet::all(&g)?;
    Ok((g, t))
}

fn distinct(rng: &mut Rng, n: usize, count: usize) -> Vec<usize> {
    let mut picked = Vec::with_capacity(count);
    while picked.len() < count {
        let v = rng.index(n);
        if !picked.contains(&v) {
            picked.push(v);
        }
    }
    picked
}

/// Adds random pieces until the terminal degrees and then the Steiner
/// connectivity reach `target`, or the step budget runs out.
fn grow(
    g: &mut Multigraph,
    t: &TerminalSet,
    target: usize,
    budget: usize,
    mut step: impl FnMut(&mut Multigraph) -> Result<()>,
) -> Result<()> {
    for _ in 0..budget {
        let min_degree = t.iter().map(|v| g.degree(v)).min().unwrap_or(0);
        if min_degree >= target && steiner_connectivity(g, t)? >= target {
            return Ok(());
        }
        step(g)?;
    }
    Ok(())
}

fn fkk(rng: &mut Rng, n: usize, target: usize) -> Result<(Multigraph, TerminalSet)> {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(vertex(i));
    }
    let t = TerminalSet::all(&g)?;
    let mut next = n;
    grow(&mut g, &t, target, 20 * (target + 1) * n, |g| {
        if n < 3 || rng.chance(1, 4) {
            let p = distinct(rng, n, 2);
            g.add_edge(vertex(p[0]), vertex(p[1]))?;
        } else {
            let mut triple = distinct(rng, n, 3);
            triple.sort_unstable();
            let v = vertex(next);
            next += 1;
            g.add_vertex(v);
            for w in triple {
                g.add_edge(v, vertex(w))?;
            }
        }
        Ok(())
    })?;
    Ok((g, t))
}

fn kriesell(rng: &mut Rng, n: usize, target: usize) -> Result<(Multigraph, TerminalSet)> {
    let mut g = Multigraph::new();
    for i in 0..n {
        g.add_vertex(vertex(i));
    }
    let terminals = (n - n / 3).max(2);
    let t = TerminalSet::new((0..terminals).map(vertex))?;
    grow(&mut g, &t, target, 20 * (target + 1) * n, |g| {
        let p = distinct(rng, n, 2);
        let copies = 1 + rng.geometric(1, 2, 3);
        for _ in 0..copies {
            g.add_edge(vertex(p[0]), vertex(p[1]))?;
        }
        Ok(())
    })?;
    Ok((g, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_fkk_form, write_instance};

    #[test]
    fn generation_is_deterministic() {
        for model in [Model::Nwt, Model::Fkk, Model::Kriesell] {
            let a = generate(model, 5, 2, 7).unwrap();
            let b = generate(model, 5, 2, 7).unwrap();
            assert_eq!(
                write_instance(&a.instance, &a.comments()),
                write_instance(&b.instance, &b.comments())
            );
            assert!(a.connectivity >= model.default_target(2));
        }
    }

    #[test]
    fn fkk_instances_are_hypergraph_ready() {
        for seed in 0..20 {
            let g = generate(Model::Fkk, 4, 1, seed).unwrap();
            assert!(is_fkk_form(&g.instance.graph, &g.instance.terminals));
        }
    }

    #[test]
    fn kriesell_reaches_f_threshold() {
        let g = generate(Model::Kriesell, 6, 1, 3).unwrap();
        assert!(g.connectivity >= 8);
        assert!(g.comments()[1].starts_with("steiner-connectivity"));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate(Model::Nwt, 1, 1, 0).is_err());
        assert!(generate(Model::Nwt, 3, 0, 0).is_err());
    }
}

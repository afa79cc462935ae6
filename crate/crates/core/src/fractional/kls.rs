//! Degree-bounded rounding of a fractional basis to an integral one.

use super::{ConstraintFamily, FractionalVector, PolytopeVerdict};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

use super::check_polytope_membership;

/// `⌈x(F)⌉ + d - 1`.
pub fn kls_bound(x: &FractionalVector, set: &std::collections::BTreeSet<usize>, d: usize) -> usize {
    let weight = x.sum(set);
    let ceil = weight.ceil().to_integer().max(0.into());
    let ceil = usize::try_from(ceil).expect("weight fits in usize");
    ceil + d - 1
}

/// Returns the lexicographically first basis `B` (as ascending element
/// lists) with `|B ∩ F| <= ⌈x(F)⌉ + d - 1` for every `F` in the family.
pub fn kls_round<M: Matroid>(
    m: &M,
    x: &FractionalVector,
    fam: &ConstraintFamily,
    caps: &Capacity,
) -> Result<Vec<usize>> {
    match check_polytope_membership(m, x, caps)? {
        PolytopeVerdict::BasisPolytope => {}
        other => {
            return Err(Error::precondition(format!(
                "x is not a fractional basis: {other:?}"
            )))
        }
    }
    let n = m.ground_size();
    if let Some(bad) = fam.sets().iter().flatten().find(|&&e| e >= n) {
        return Err(Error::invalid(format!(
            "family mentions unknown element {bad}"
        )));
    }
    let bounds: Vec<usize> = fam
        .sets()
        .iter()
        .map(|f| kls_bound(x, f, fam.d()))
        .collect();
    let mut containing = vec![Vec::new(); n];
    for (j, f) in fam.sets().iter().enumerate() {
        for &e in f {
            containing[e].push(j);
        }
    }
    let mut search = Search {
        m,
        n,
        target: m.full_rank(),
        bounds,
        containing,
        counts: vec![0; fam.sets().len()],
        chosen: Vec::new(),
    };
    if search.run(0) {
        Ok(search.chosen)
    } else {
        Err(Error::internal(
            "no basis meets the rounding bounds although x is a fractional basis",
        ))
    }
}

struct Search<'a, M> {
    m: &'a M,
    n: usize,
    target: usize,
    bounds: Vec<usize>,
    containing: Vec<Vec<usize>>,
    counts: Vec<usize>,
    chosen: Vec<usize>,
}

impl<M: Matroid> Search<'_, M> {
    fn run(&mut self, next: usize) -> bool {
        if self.chosen.len() == self.target {
            return true;
        }
        let mut reach = self.chosen.clone();
        reach.extend(next..self.n);
        if next == self.n || self.m.rank(&reach) < self.target {
            return false;
        }
        let fits = self.containing[next]
            .iter()
            .all(|&j| self.counts[j] < self.bounds[j]);
        if fits {
            self.chosen.push(next);
            if self.m.is_independent(&self.chosen) {
                for &j in &self.containing[next] {
                    self.counts[j] += 1;
                }
                if self.run(next + 1) {
                    return true;
                }
                for &j in &self.containing[next] {
                    self.counts[j] -= 1;
                }
            }
            self.chosen.pop();
        }
        self.run(next + 1)
    }
}

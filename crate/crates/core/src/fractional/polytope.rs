//! Membership in the independent-set and basis polytopes, by exhaustive
//! enumeration of the rank constraints.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{FractionalVector, Rational};
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::matroid::{HyperedgeId, Hypergraph, Matroid, Partition, RestrictedGrowth};

/// A violated polytope constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `0 <= x(e) <= 1` fails.
    Bounds { element: usize, value: Rational },
    /// `x(S) <= r(S)` fails.
    Rank {
        subset: Vec<usize>,
        weight: Rational,
        rank: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeVerdict {
    /// Bounds and rank constraints hold and `x(E) = r(E)`.
    BasisPolytope,
    /// Bounds and rank constraints hold but `x(E) < r(E)`.
    IndependentPolytope {
        total: Rational,
        rank: usize,
    },
    Violation(Violation),
}

/// Checks `x` against `0 <= x <= 1`, `x(S) <= r(S)` for every subset `S`
/// (in increasing bitmask order) and `x(E) = r(E)`, reporting the first
/// violated constraint.
pub fn check_polytope_membership<M: Matroid>(
    m: &M,
    x: &FractionalVector,
    caps: &Capacity,
) -> Result<PolytopeVerdict> {
    let n = m.ground_size();
    Capacity::check("ground set size", n, caps.subset_ground)?;
    x.check_domain(n)?;
    for (&e, value) in x.weights() {
        if *value < Rational::zero() || *value > Rational::one() {
            return Ok(PolytopeVerdict::Violation(Violation::Bounds {
                element: e,
                value: value.clone(),
            }));
        }
    }
    let mut subset = Vec::with_capacity(n);
    for mask in 1u32..(1u32 << n) {
        subset.clear();
        subset.extend((0..n).filter(|i| mask >> i & 1 == 1));
        let weight = x.sum(&subset);
        let rank = m.rank(&subset);
        if weight > Rational::from_integer(rank.into()) {
            return Ok(PolytopeVerdict::Violation(Violation::Rank {
                subset: subset.clone(),
                weight,
                rank,
            }));
        }
    }
    let total = x.total();
    let rank = m.full_rank();
    if total == Rational::from_integer(rank.into()) {
        Ok(PolytopeVerdict::BasisPolytope)
    } else {
        Ok(PolytopeVerdict::IndependentPolytope { total, rank })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnionBasisVerdict {
    /// `x` is a fractional basis of the k-fold union of full rank `k(|V|-1)`.
    Yes,
    Bounds {
        hyperedge: HyperedgeId,
        value: Rational,
    },
    /// `x(Λ^in_P(E)) > k·r(P)`.
    Partition {
        partition: Partition,
        inner_weight: Rational,
        bound: usize,
    },
    /// `x(E) != k(|V| - 1)`.
    Total { total: Rational, required: usize },
}

/// Sufficient conditions for `x` to be a fractional basis of the k-fold
/// union of a hypergraphic matroid: bounds, `x(Λ^in_P(E)) <= k·r(P)` for
/// every partition, and `x(E) = k(|V| - 1)`.
pub fn check_fractional_union_basis(
    h: &Hypergraph,
    x: &BTreeMap<HyperedgeId, Rational>,
    k: usize,
    caps: &Capacity,
) -> Result<UnionBasisVerdict> {
    let vs: Vec<VertexId> = h.vertices().iter().copied().collect();
    Capacity::check("vertex count", vs.len(), caps.partition_vertices)?;
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if !x.keys().copied().eq(h.ids()) {
        return Err(Error::invalid(
            "fractional vector must assign a weight to exactly the hyperedges",
        ));
    }
    for (&id, value) in x {
        if *value < Rational::zero() || *value > Rational::one() {
            return Ok(UnionBasisVerdict::Bounds {
                hyperedge: id,
                value: value.clone(),
            });
        }
    }
    let members: Vec<(Vec<usize>, &Rational)> = h
        .hyperedges()
        .map(|(id, e)| {
            let local = e.iter().map(|v| vs.binary_search(v).unwrap()).collect();
            (local, &x[&id])
        })
        .collect();
    for labels in RestrictedGrowth::new(vs.len()) {
        let blocks = labels.iter().max().map_or(0, |m| m + 1);
        let bound = k * (vs.len() - blocks);
        let inner_weight: Rational = members
            .iter()
            .filter(|(e, _)| e.iter().all(|&v| labels[v] == labels[e[0]]))
            .map(|(_, w)| (*w).clone())
            .sum();
        if inner_weight > Rational::from_integer(bound.into()) {
            return Ok(UnionBasisVerdict::Partition {
                partition: Partition::from_labels(&vs, &labels),
                inner_weight,
                bound,
            });
        }
    }
    let total: Rational = x.values().sum();
    let required = k * vs.len().saturating_sub(1);
    if total != Rational::from_integer(required.into()) {
        return Ok(UnionBasisVerdict::Total { total, required });
    }
    Ok(UnionBasisVerdict::Yes)
}

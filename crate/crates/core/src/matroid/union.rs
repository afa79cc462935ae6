//! k-fold matroid union: base packing by augmenting paths, and the
//! adjustment that places prescribed elements into prescribed parts.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::Matroid;
use crate::error::{Error, Result};

/// Pairwise disjoint parts, each independent in the base matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionBasisFamily {
    pub parts: Vec<BTreeSet<usize>>,
}

impl UnionBasisFamily {
    pub fn empty(k: usize) -> Self {
        UnionBasisFamily {
            parts: vec![BTreeSet::new(); k],
        }
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(BTreeSet::len).sum()
    }

    pub fn union(&self) -> BTreeSet<usize> {
        self.parts.iter().flatten().copied().collect()
    }

    pub fn part_of(&self, e: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&e))
    }

    /// Disjointness and per-part independence.
    pub fn is_valid<M: Matroid>(&self, m: &M) -> bool {
        self.union().len() == self.size() && self.parts.iter().all(|p| independent(m, p))
    }
}

fn independent<M: Matroid + ?Sized>(m: &M, part: &BTreeSet<usize>) -> bool {
    let v: Vec<usize> = part.iter().copied().collect();
    m.is_independent(&v)
}

fn independent_with<M: Matroid + ?Sized>(
    m: &M,
    part: &BTreeSet<usize>,
    add: usize,
    remove: Option<usize>,
) -> bool {
    let v: Vec<usize> = part
        .iter()
        .copied()
        .filter(|&e| Some(e) != remove)
        .chain(std::iter::once(add))
        .collect();
    m.is_independent(&v)
}

/// Result of base packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PackOutcome {
    /// `k` disjoint bases of the considered element set.
    Bases(UnionBasisFamily),
    Deficient(Deficiency),
}

/// A maximum union-independent family that falls short of `k` bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deficiency {
    pub family: UnionBasisFamily,
    pub achieved: usize,
    pub target: usize,
    /// Elements reachable from uncovered elements in the exchange graph.
    /// Every part restricted to this set spans it.
    pub closure: BTreeSet<usize>,
}

impl PackOutcome {
    pub fn family(&self) -> &UnionBasisFamily {
        match self {
            PackOutcome::Bases(f) => f,
            PackOutcome::Deficient(d) => &d.family,
        }
    }

    pub fn size(&self) -> usize {
        self.family().size()
    }
}

/// Exchange-graph successors of `x`: elements `y` of a part not holding `x`
/// such that swapping `y` out for `x` keeps that part independent.
fn exchanges<M: Matroid + ?Sized>(m: &M, parts: &[BTreeSet<usize>], x: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for part in parts {
        if part.contains(&x) {
            continue;
        }
        for &y in part {
            if independent_with(m, part, x, Some(y)) {
                out.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Inserts `s` by a shortest chain of part reassignments.
fn augment<M: Matroid + ?Sized>(m: &M, parts: &mut [BTreeSet<usize>], s: usize) -> Result<bool> {
    let mut prev: BTreeMap<usize, Option<usize>> = BTreeMap::from([(s, None)]);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        let sink = (0..parts.len())
            .find(|&j| !parts[j].contains(&x) && independent_with(m, &parts[j], x, None));
        if let Some(j) = sink {
            let mut chain = vec![x];
            while let Some(Some(p)) = prev.get(chain.last().unwrap()) {
                chain.push(*p);
            }
            // chain = [x_m, ..., x_0 = s]; x_m goes to part j and every other
            // x_i takes the slot of x_{i+1}.
            let homes: Vec<Option<usize>> = chain
                .iter()
                .map(|&e| parts.iter().position(|p| p.contains(&e)))
                .collect();
            parts[j].insert(chain[0]);
            for i in 0..chain.len() - 1 {
                let home = homes[i].expect("displaced element has a part");
                parts[home].remove(&chain[i]);
                parts[home].insert(chain[i + 1]);
            }
            if !parts.iter().all(|p| independent(m, p)) {
                return Err(Error::internal(
                    "augmentation produced a dependent part; check the oracle's exchange axiom",
                ));
            }
            return Ok(true);
        }
        for y in exchanges(m, parts, x) {
            if let std::collections::btree_map::Entry::Vacant(slot) = prev.entry(y) {
                slot.insert(Some(x));
                queue.push_back(y);
            }
        }
    }
    Ok(false)
}

/// Packs `elements` into `k` disjoint independent parts of maximum total
/// size, inserting elements in ascending order.
pub fn pack_bases_on<M: Matroid>(m: &M, elements: &[usize], k: usize) -> Result<PackOutcome> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut sorted: Vec<usize> = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&e) = sorted.iter().find(|&&e| e >= m.ground_size()) {
        return Err(Error::invalid(format!(
            "element {e} is outside the ground set"
        )));
    }
    let mut parts = vec![BTreeSet::new(); k];
    for &s in &sorted {
        augment(m, &mut parts, s)?;
    }
    let family = UnionBasisFamily { parts };
    let target = k * m.rank(&sorted);
    let achieved = family.size();
    if achieved > target {
        return Err(Error::internal(
            "union exceeds k times the rank; check the oracle's matroid axioms",
        ));
    }
    if achieved == target {
        return Ok(PackOutcome::Bases(family));
    }
    let covered = family.union();
    let mut closure: BTreeSet<usize> = sorted
        .iter()
        .copied()
        .filter(|e| !covered.contains(e))
        .collect();
    let mut queue: VecDeque<usize> = closure.iter().copied().collect();
    while let Some(x) = queue.pop_front() {
        for y in exchanges(m, &family.parts, x) {
            if closure.insert(y) {
                queue.push_back(y);
            }
        }
    }
    Ok(PackOutcome::Deficient(Deficiency {
        family,
        achieved,
        target,
        closure,
    }))
}

/// Packs the whole ground set.
pub fn pack_bases<M: Matroid>(m: &M, k: usize) -> Result<PackOutcome> {
    let all: Vec<usize> = (0..m.ground_size()).collect();
    pack_bases_on(m, &all, k)
}

/// Rearranges `family` so that each `e` in the domain of `assign` lies in
/// part `assign[e]` (parts are indexed from 0), keeping the union and the
/// independence of every part.
///
/// An unmet index `i` with element `e` held by part `j` is repaired by
/// moving `e` into part `i` when that stays independent, and otherwise by
/// swapping `e` with the first `f` of part `i` for which both new parts are
/// independent. Each repair raises the number of met indices.
pub fn adjust_union<M: Matroid>(
    m: &M,
    family: &UnionBasisFamily,
    assign: &BTreeMap<usize, usize>,
) -> Result<UnionBasisFamily> {
    let k = family.k();
    if !family.is_valid(m) {
        return Err(Error::invalid(
            "family parts must be disjoint and independent",
        ));
    }
    let union = family.union();
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (&e, &i) in assign {
        if !union.contains(&e) {
            return Err(Error::invalid(format!("element {e} is not in the family")));
        }
        if i >= k {
            return Err(Error::invalid(format!("part index {i} is out of range")));
        }
        if owner.insert(i, e).is_some() {
            return Err(Error::invalid("assignment is not injective"));
        }
    }
    let mut parts = family.parts.clone();
    for _ in 0..=k {
        let Some((&i, &e)) = owner.iter().find(|(&i, e)| !parts[i].contains(e)) else {
            return Ok(UnionBasisFamily { parts });
        };
        let j = parts.iter().position(|p| p.contains(&e)).unwrap();
        if independent_with(m, &parts[i], e, None) {
            parts[j].remove(&e);
            parts[i].insert(e);
            continue;
        }
        let f = parts[i].iter().copied().find(|&f| {
            independent_with(m, &parts[i], e, Some(f)) && independent_with(m, &parts[j], f, Some(e))
        });
        let Some(f) = f else {
            return Err(Error::internal(format!(
                "no exchange element for {e} between parts {j} and {i}"
            )));
        };
        parts[i].remove(&f);
        parts[i].insert(e);
        parts[j].remove(&e);
        parts[j].insert(f);
    }
    Err(Error::internal("adjustment did not converge"))
}

/// The k-fold union of a matroid, as an oracle.
#[derive(Debug, Clone)]
pub struct UnionMatroid<M> {
    pub inner: M,
    pub k: usize,
}

impl<M: Matroid> Matroid for UnionMatroid<M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, set: &[usize]) -> bool {
        let distinct: BTreeSet<_> = set.iter().collect();
        distinct.len() == set.len()
            && pack_bases_on(&self.inner, set, self.k).is_ok_and(|o| o.size() == set.len())
    }
}

//! Exact rational fractional bases: polytope membership checks and
//! degree-bounded rounding. No floating point is used anywhere here.

mod kls;
mod polytope;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use kls::{kls_bound, kls_round};
pub use num_rational::BigRational as Rational;
pub use polytope::{
    check_fractional_union_basis, check_polytope_membership, PolytopeVerdict, UnionBasisVerdict,
    Violation,
};

/// Weights on matroid elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FractionalVector {
    weights: BTreeMap<usize, Rational>,
}

impl FractionalVector {
    pub fn new(weights: BTreeMap<usize, Rational>) -> Self {
        FractionalVector { weights }
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        FractionalVector {
            weights: (0..n).map(|e| (e, value.clone())).collect(),
        }
    }

    pub fn get(&self, e: usize) -> Rational {
        self.weights.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weights(&self) -> &BTreeMap<usize, Rational> {
        &self.weights
    }

    pub fn sum<'a>(&self, set: impl IntoIterator<Item = &'a usize>) -> Rational {
        set.into_iter().map(|&e| self.get(e)).sum()
    }

    pub fn total(&self) -> Rational {
        self.weights.values().sum()
    }

    /// Domain must be exactly `0..n`.
    pub(crate) fn check_domain(&self, n: usize) -> Result<()> {
        if self.weights.len() != n || self.weights.keys().enumerate().any(|(i, &k)| i != k) {
            return Err(Error::invalid(format!(
                "fractional vector must assign a weight to each of the {n} elements"
            )));
        }
        Ok(())
    }
}

/// Subsets `F_1..F_m` of the ground set, each element in at most `d` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintFamily {
    sets: Vec<BTreeSet<usize>>,
    d: usize,
}

impl ConstraintFamily {
    /// Uses the actual maximum membership (at least 1) as `d`.
    pub fn new(sets: Vec<BTreeSet<usize>>) -> Self {
        let d = max_membership(&sets).max(1);
        ConstraintFamily { sets, d }
    }

    /// Checks a claimed membership bound.
    pub fn with_bound(sets: Vec<BTreeSet<usize>>, d: usize) -> Result<Self> {
        let actual = max_membership(&sets);
        if actual > d {
            return Err(Error::invalid(format!(
                "an element lies in {actual} sets, more than the bound {d}"
            )));
        }
        Ok(ConstraintFamily { sets, d })
    }

    pub fn sets(&self) -> &[BTreeSet<usize>] {
        &self.sets
    }

    pub fn d(&self) -> usize {
        self.d
    }
}

fn max_membership(sets: &[BTreeSet<usize>]) -> usize {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for e in sets.iter().flatten() {
        *count.entry(*e).or_default() += 1;
    }
    count.values().copied().max().unwrap_or(0)
}

/// Parses `x <element-id> <numerator>/<denominator>` lines (blank lines and
/// `#` comments skipped).
pub fn parse_fractional(text: &str) -> Result<BTreeMap<u32, Rational>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = s.split_whitespace().collect();
        let [kw, id, value] = toks[..] else {
            return Err(Error::parse(line, "expected 'x <element-id> <num>/<den>'"));
        };
        if kw != "x" {
            return Err(Error::parse(line, format!("unknown record '{kw}'")));
        }
        let id: u32 = id
            .parse()
            .map_err(|_| Error::parse(line, format!("bad element id '{id}'")))?;
        let (num, den) = value
            .split_once('/')
            .ok_or_else(|| Error::parse(line, format!("'{value}' is not num/den")))?;
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::parse(line, format!("bad numerator '{num}'")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::parse(line, format!("bad denominator '{den}'")))?;
        if !den.is_positive() {
            return Err(Error::parse(line, "denominator must be positive"));
        }
        if out.insert(id, Rational::new(num, den)).is_some() {
            return Err(Error::parse(line, format!("duplicate element {id}")));
        }
    }
    Ok(out)
}

pub fn write_fractional(x: &BTreeMap<u32, Rational>) -> String {
    x.iter()
        .map(|(id, r)| format!("x {id} {}/{}\n", r.numer(), r.denom()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        let x = parse_fractional("# w\nx 0 2/4\nx 3 -6/3\n").unwrap();
        assert_eq!(x[&0], Rational::new(1.into(), 2.into()));
        assert_eq!(x[&3], Rational::from_integer((-2).into()));
        assert_eq!(write_fractional(&x), "x 0 1/2\nx 3 -2/1\n");
    }

    #[test]
    fn rejects_malformed_values() {
        assert!(matches!(
            parse_fractional("x 0 1/0\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_fractional("x 0 1\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_fractional("x 0 1/2\nx 0 1/3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn family_membership_is_checked() {
        let sets = vec![
            BTreeSet::from([0, 1]),
            BTreeSet::from([1, 2]),
            BTreeSet::from([1]),
        ];
        assert_eq!(ConstraintFamily::new(sets.clone()).d(), 3);
        assert!(ConstraintFamily::with_bound(sets, 2).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn representation_does_not_matter(
                nums in proptest::collection::vec(-50i64..50, 1..6),
                den in 1i64..20,
                scale in 1i64..30,
            ) {
                let plain: BTreeMap<usize, Rational> = nums.iter().enumerate()
                    .map(|(i, &n)| (i, Rational::new(n.into(), den.into()))).collect();
                let scaled: BTreeMap<usize, Rational> = nums.iter().enumerate()
                    .map(|(i, &n)| (i, Rational::new((n * scale).into(), (den * scale).into()))).collect();
                let a = FractionalVector::new(plain);
                let b = FractionalVector::new(scaled);
                prop_assert_eq!(&a, &b);
                prop_assert_eq!(a.total(), b.total());
            }
        }
    }
}

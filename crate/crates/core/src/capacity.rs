//! Hard bounds on the exhaustive enumerations.

use crate::error::{Error, Result};

/// Enumeration caps. Defaults are the maxima; `TREEPACK_CAPACITY` can only
/// lower them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity {
    /// Ground-set size for subset enumeration in polytope checks.
    pub subset_ground: usize,
    /// Vertex count for partition enumeration.
    pub partition_vertices: usize,
    /// Edge count for brute-force packing.
    pub brute_edges: usize,
    /// Number of parts for brute-force packing.
    pub brute_k: usize,
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity {
            subset_ground: 18,
            partition_vertices: 10,
            brute_edges: 16,
            brute_k: 3,
        }
    }
}

impl Capacity {
    pub const ENV: &'static str = "TREEPACK_CAPACITY";

    /// Applies a setting such as `"12"` (lowers every cap) or
    /// `"brute_edges=12,partition_vertices=8"`. Values above the current
    /// caps are ignored.
    pub fn lowered(mut self, setting: &str) -> Result<Self> {
        for item in setting.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = match item.split_once('=') {
                Some((k, v)) => (Some(k.trim()), v.trim()),
                None => (None, item),
            };
            let value: usize = value
                .parse()
                .map_err(|_| Error::invalid(format!("{}: '{item}' is not a cap", Self::ENV)))?;
            let slots: Vec<&mut usize> = match key {
                None => vec![
                    &mut self.subset_ground,
                    &mut self.partition_vertices,
                    &mut self.brute_edges,
                    &mut self.brute_k,
                ],
                Some("subset_ground") => vec![&mut self.subset_ground],
                Some("partition_vertices") => vec![&mut self.partition_vertices],
                Some("brute_edges") => vec![&mut self.brute_edges],
                Some("brute_k") => vec![&mut self.brute_k],
                Some(other) => {
                    return Err(Error::invalid(format!(
                        "{}: unknown cap '{other}'",
                        Self::ENV
                    )))
                }
            };
            for slot in slots {
                *slot = (*slot).min(value);
            }
        }
        Ok(self)
    }

    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV) {
            Ok(setting) => Capacity::default().lowered(&setting),
            Err(_) => Ok(Capacity::default()),
        }
    }

    pub(crate) fn check(what: &'static str, actual: usize, bound: usize) -> Result<()> {
        if actual > bound {
            Err(Error::Capacity {
                what,
                actual,
                bound,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_only_go_down() {
        let c = Capacity::default()
            .lowered("brute_edges=12, subset_ground=40")
            .unwrap();
        assert_eq!(c.brute_edges, 12);
        assert_eq!(c.subset_ground, 18);
        let all = Capacity::default().lowered("5").unwrap();
        assert_eq!(all.partition_vertices, 5);
        assert_eq!(all.brute_k, 3);
        assert!(Capacity::default().lowered("nope=1").is_err());
        assert!(Capacity::default().lowered("x").is_err());
    }
}

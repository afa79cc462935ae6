//! Edge-disjoint packings of spanning trees, Steiner trees and connectors:
//! pipelines, verification, exhaustive oracles and instance generators.

mod brute;
mod connector;
mod gen;
mod pipeline;
mod verify;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Reduction, VertexId};
use crate::matroid::Partition;

pub use brute::{brute_force_pack, BruteOutcome};
pub use gen::{generate, generate_with_target, Generated, Model};
pub use pipeline::{
    build_steiner_hypergraph, pack_connectors, pack_spanning_trees, pack_steiner_trees,
    HyperedgeOrigin, Outcome, PackOptions, PipelineRun, Route, SteinerHypergraph,
};
pub use verify::{verify_packing, Check, Reason};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Spanning,
    Steiner,
    Connector,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Spanning => "spanning",
            Mode::Steiner => "steiner",
            Mode::Connector => "connector",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spanning" => Ok(Mode::Spanning),
            "steiner" => Ok(Mode::Steiner),
            "connector" => Ok(Mode::Connector),
            _ => Err(Error::invalid(format!("unknown mode '{s}'"))),
        }
    }
}

/// `k` edge sets of a host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub mode: Mode,
    pub parts: Vec<BTreeSet<EdgeId>>,
}

impl Packing {
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    /// `packing <mode> <k>` followed by one `part <i>: <ids>` line per part,
    /// parts numbered from 1.
    pub fn to_text(&self) -> String {
        let mut out = format!("packing {} {}\n", self.mode, self.k());
        for (i, part) in self.parts.iter().enumerate() {
            out.push_str(&format!("part {}:", i + 1));
            for id in part {
                out.push_str(&format!(" {id}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty packing file"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let ["packing", mode, k] = toks[..] else {
            return Err(Error::parse(line, "expected 'packing <mode> <k>'"));
        };
        let mode: Mode = mode
            .parse()
            .map_err(|e: Error| Error::parse(line, e.to_string()))?;
        let k: usize = k
            .parse()
            .map_err(|_| Error::parse(line, format!("bad part count '{k}'")))?;
        let mut parts = Vec::with_capacity(k);
        let mut seen = BTreeSet::new();
        for (line, text) in lines {
            let (label, ids) = text
                .split_once(':')
                .ok_or_else(|| Error::parse(line, "expected 'part <i>: <edge-id>*'"))?;
            let expected = format!("part {}", parts.len() + 1);
            if label.split_whitespace().collect::<Vec<_>>().join(" ") != expected {
                return Err(Error::parse(line, format!("expected '{expected}:'")));
            }
            let mut part = BTreeSet::new();
            for tok in ids.split_whitespace() {
                let id: u32 = tok
                    .parse()
                    .map_err(|_| Error::parse(line, format!("bad edge id '{tok}'")))?;
                if !seen.insert(id) {
                    return Err(Error::parse(line, format!("edge {id} appears twice")));
                }
                part.insert(EdgeId(id));
            }
            parts.push(part);
        }
        if parts.len() != k {
            return Err(Error::parse(
                line,
                format!("header announces {k} parts, found {}", parts.len()),
            ));
        }
        Ok(Packing { mode, parts })
    }
}

/// Connectivity thresholds for a given `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub k: usize,
    /// `2⌈(5k+3)/2⌉`, the Steiner tree bound.
    pub f_k: usize,
    /// `6k + 6`, the connector bound.
    pub g_k: usize,
    /// `2k`, spanning trees.
    pub nwt: usize,
    /// `3k`, hypergraph-ready instances.
    pub fkk: usize,
}

impl Thresholds {
    pub fn new(k: usize) -> Self {
        Thresholds {
            k,
            f_k: 2 * (5 * k + 3).div_ceil(2),
            g_k: 6 * k + 6,
            nwt: 2 * k,
            fkk: 3 * k,
        }
    }
}

/// A threshold chosen by name or value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdName {
    Nwt,
    Fkk,
    PaperF,
    PaperG,
    Value(usize),
}

impl ThresholdName {
    pub fn resolve(self, k: usize) -> usize {
        let t = Thresholds::new(k);
        match self {
            ThresholdName::Nwt => t.nwt,
            ThresholdName::Fkk => t.fkk,
            ThresholdName::PaperF => t.f_k,
            ThresholdName::PaperG => t.g_k,
            ThresholdName::Value(v) => v,
        }
    }
}

impl fmt::Display for ThresholdName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdName::Nwt => f.write_str("nwt"),
            ThresholdName::Fkk => f.write_str("fkk"),
            ThresholdName::PaperF => f.write_str("paper-f"),
            ThresholdName::PaperG => f.write_str("paper-g"),
            ThresholdName::Value(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ThresholdName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nwt" => Ok(ThresholdName::Nwt),
            "fkk" => Ok(ThresholdName::Fkk),
            "paper-f" => Ok(ThresholdName::PaperF),
            "paper-g" => Ok(ThresholdName::PaperG),
            _ => s
                .parse()
                .map(ThresholdName::Value)
                .map_err(|_| Error::invalid(format!("unknown threshold '{s}'"))),
        }
    }
}

/// Evidence that no packing was produced.
#[derive(Debug, Clone)]
pub enum Certificate {
    /// `λ^out_P(E) < k(|P| - 1)`: no `k` disjoint spanning trees exist.
    ViolatingPartition {
        partition: Partition,
        lambda_out: usize,
        bound: usize,
    },
    /// A terminal-separating cut below the requested threshold.
    CutTooSmall {
        side: BTreeSet<VertexId>,
        size: usize,
        threshold: usize,
    },
    /// The constructive route did not apply; carries the partially reduced
    /// instance.
    ReductionIncomplete {
        reduced: Box<Reduction>,
        reason: String,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ViolatingPartition { .. } => "violating-partition",
            Certificate::CutTooSmall { .. } => "cut-too-small",
            Certificate::ReductionIncomplete { .. } => "reduction-incomplete",
        }
    }
}

//! Experiment grids over generated instances.

use super::run_mode;
use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::packing::{
    brute_force_pack, generate_with_target, BruteOutcome, Certificate, Mode, Model, Outcome,
    ThresholdName,
};

/// Parses `""`, `"5"`, `"4-6"` or comma-separated mixtures such as `"1,3-4"`.
pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::invalid(format!("bad list item '{item}'"));
        match item.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                );
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn default_mode(model: Model) -> Mode {
    match model {
        Model::Nwt => Mode::Spanning,
        Model::Fkk | Model::Kriesell => Mode::Steiner,
    }
}

fn default_threshold(model: Model, mode: Mode) -> ThresholdName {
    match (model, mode) {
        (_, Mode::Spanning) | (Model::Nwt, _) => ThresholdName::Nwt,
        (Model::Fkk, _) => ThresholdName::Fkk,
        (Model::Kriesell, Mode::Connector) => ThresholdName::PaperG,
        (Model::Kriesell, _) => ThresholdName::PaperF,
    }
}

#[derive(Debug, Default)]
struct Cell {
    instances: usize,
    packed: usize,
    negative: usize,
    incomplete: usize,
    exists: usize,
    brute_checked: usize,
    agree: usize,
}

/// Instances are generated at the larger of the model's own target and the
/// threshold. One row per `(n, k)` in ascending order. Columns: instance count,
/// pipeline packings, sound negatives, incomplete runs, instances where a
/// packing exists (pipeline or exhaustive search), instances checked
/// exhaustively, and how many of those agree with the pipeline.
pub fn sweep_table(
    model: Model,
    mode: Option<Mode>,
    ns: &[usize],
    ks: &[usize],
    seeds: &[u64],
    threshold: Option<ThresholdName>,
    caps: &Capacity,
) -> Result<String> {
    let mode = mode.unwrap_or(default_mode(model));
    let threshold = threshold.unwrap_or(default_threshold(model, mode));
    let mut out = String::from(
        "model\tmode\tn\tk\tthreshold\tinstances\tpacked\tnegative\tincomplete\texists\tbrute_checked\tagree\n",
    );
    if seeds.is_empty() {
        return Ok(out);
    }
    let mut ns = ns.to_vec();
    let mut ks = ks.to_vec();
    ns.sort_unstable();
    ns.dedup();
    ks.sort_unstable();
    ks.dedup();
    for &n in &ns {
        for &k in &ks {
            let mut cell = Cell::default();
            for &seed in seeds {
                let target = model.default_target(k).max(threshold.resolve(k));
                let gen = generate_with_target(model, n, k, target, seed)?;
                let inst = &gen.instance;
                let outcome = run_mode(inst, mode, k, Some(threshold), false, *caps)?;
                cell.instances += 1;
                // Some(answer) when the pipeline settles existence outright.
                let pipeline = match &outcome {
                    Outcome::Packed(_) => {
                        cell.packed += 1;
                        Some(true)
                    }
                    Outcome::Certificate(Certificate::ReductionIncomplete { .. }) => {
                        cell.incomplete += 1;
                        None
                    }
                    Outcome::Certificate(Certificate::CutTooSmall { .. }) => {
                        cell.negative += 1;
                        None
                    }
                    _ => {
                        cell.negative += 1;
                        Some(false)
                    }
                };
                let fits = inst.graph.num_edges() <= caps.brute_edges && k <= caps.brute_k;
                let brute = if fits {
                    cell.brute_checked += 1;
                    let found = matches!(
                        brute_force_pack(&inst.graph, &inst.terminals, k, mode, caps)?,
                        BruteOutcome::Packed(_)
                    );
                    if pipeline.is_none_or(|p| p == found) {
                        cell.agree += 1;
                    }
                    Some(found)
                } else {
                    None
                };
                if pipeline == Some(true) || brute == Some(true) {
                    cell.exists += 1;
                }
            }
            out.push_str(&format!(
                "{model}\t{mode}\t{n}\t{k}\t{threshold}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                cell.instances,
                cell.packed,
                cell.negative,
                cell.incomplete,
                cell.exists,
                cell.brute_checked,
                cell.agree
            ));
        }
    }
    Ok(out)
}

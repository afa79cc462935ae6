//! Command-line front end. `run` parses arguments, executes one command and
//! returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | packing produced and verified, or cut check passed |
//! | 1 | sound negative answer (certificate, infeasible, check failed) |
//! | 2 | input error |
//! | 3 | capacity exceeded |
//! | 4 | internal error |

mod report;
mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::graph::{
    parse_instance, steiner_min_cut, write_instance, Instance, ReducedForm, TerminalSet,
};
use crate::packing::{
    generate, pack_connectors, pack_spanning_trees, pack_steiner_trees, Certificate, Mode, Model,
    Outcome, PackOptions, Route, ThresholdName,
};

pub use report::{sha256_hex, strip_timings, RunReport};
pub use sweep::{parse_list, sweep_table};

#[derive(Debug, Parser)]
#[command(
    name = "treepack",
    version,
    about = "Edge-disjoint spanning tree, Steiner tree and T-connector packing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare the Steiner connectivity of an instance with a threshold.
    VerifyCuts {
        instance: PathBuf,
        #[arg(long)]
        k: usize,
        /// nwt, fkk, paper-f, paper-g or an integer.
        #[arg(long, default_value = "paper-f")]
        threshold: ThresholdName,
    },
    /// Pack spanning trees, Steiner trees or connectors.
    Pack {
        instance: PathBuf,
        #[arg(long)]
        mode: Mode,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        threshold: Option<ThresholdName>,
        #[arg(long)]
        brute_fallback: bool,
        /// Write the packing here instead of after the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded instance.
    Gen {
        model: Model,
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the instance here and print a report instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a generator/pipeline grid and print a tab-separated table.
    Sweep {
        model: Model,
        /// Values such as `4-6` or `4,6,8`.
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
        /// Seed values; may be empty.
        #[arg(long, default_value = "")]
        seeds: String,
        #[arg(long)]
        threshold: Option<ThresholdName>,
        #[arg(long)]
        mode: Option<Mode>,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    parse_instance(&text)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::InvalidArgument(format!("writing output: {e}")))
}

fn digest(inst: &Instance) -> String {
    sha256_hex(&write_instance(inst, &[]))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let caps = Capacity::from_env()?;
    match command {
        Command::VerifyCuts {
            instance,
            k,
            threshold,
        } => {
            let start = Instant::now();
            let inst = load(&instance)?;
            let value = threshold.resolve(k);
            let cut = steiner_min_cut(&inst.graph, &inst.terminals)?;
            let pass = cut.size >= value;
            let mut r = RunReport::new("verify-cuts");
            r.push("instance.sha256", digest(&inst));
            r.push("param.k", k);
            r.push("param.threshold", threshold);
            r.push("threshold.value", value);
            r.push("connectivity", cut.size);
            r.push("cut.side", join(cut.side.iter()));
            r.push("outcome", if pass { "pass" } else { "fail" });
            r.time("total", start.elapsed());
            emit(out, &r.to_text())?;
            Ok(if pass { 0 } else { 1 })
        }
        Command::Pack {
            instance,
            mode,
            k,
            threshold,
            brute_fallback,
            out: path,
        } => {
            let inst = load(&instance)?;
            let (r, packing) = pack_report(&inst, mode, k, threshold, brute_fallback, caps)?;
            emit(out, &r.to_text())?;
            let code = if packing.is_some() { 0 } else { 1 };
            if let Some(text) = packing {
                match path {
                    Some(p) => fs::write(&p, text).map_err(|e| io_error(&p, e))?,
                    None => emit(out, &text)?,
                }
            }
            Ok(code)
        }
        Command::Gen {
            model,
            n,
            k,
            seed,
            out: path,
        } => {
            let start = Instant::now();
            let g = generate(model, n, k, seed)?;
            let text = write_instance(&g.instance, &g.comments());
            match path {
                None => emit(out, &text)?,
                Some(p) => {
                    fs::write(&p, &text).map_err(|e| io_error(&p, e))?;
                    let mut r = RunReport::new("gen");
                    r.push("param.model", model);
                    r.push("param.n", n);
                    r.push("param.k", k);
                    r.push("param.seed", seed);
                    r.push("instance.sha256", digest(&g.instance));
                    r.push("connectivity", g.connectivity);
                    r.push("target", g.target);
                    r.push("attempts", g.attempts);
                    r.time("total", start.elapsed());
                    emit(out, &r.to_text())?;
                }
            }
            Ok(0)
        }
        Command::Sweep {
            model,
            n,
            k,
            seeds,
            threshold,
            mode,
        } => {
            let ns = parse_list(&n)?;
            let ks = parse_list(&k)?;
            let seeds: Vec<u64> = parse_list(&seeds)?.into_iter().map(|s| s as u64).collect();
            let table = sweep_table(model, mode, &ns, &ks, &seeds, threshold, &caps)?;
            emit(out, &table)?;
            Ok(0)
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs one pipeline and renders its report; the packing text is returned
/// only for verified packings.
pub fn pack_report(
    inst: &Instance,
    mode: Mode,
    k: usize,
    threshold: Option<ThresholdName>,
    brute_fallback: bool,
    caps: Capacity,
) -> Result<(RunReport, Option<String>)> {
    let mut r = RunReport::new("pack");
    r.push("instance.sha256", digest(inst));
    r.push("param.mode", mode);
    r.push("param.k", k);
    r.push(
        "param.threshold",
        threshold.map_or("default".to_string(), |t| format!("{t}={}", t.resolve(k))),
    );
    r.push("param.brute_fallback", brute_fallback);
    let start = Instant::now();
    let outcome = run_mode(inst, mode, k, threshold, brute_fallback, caps)?;
    r.time("pack", start.elapsed());
    let packing = describe(&mut r, &outcome);
    Ok((r, packing))
}

pub(crate) fn run_mode(
    inst: &Instance,
    mode: Mode,
    k: usize,
    threshold: Option<ThresholdName>,
    brute_fallback: bool,
    caps: Capacity,
) -> Result<Outcome> {
    let threshold = threshold.map(|t| t.resolve(k));
    match mode {
        Mode::Spanning => {
            if let Some(th) = threshold {
                if inst.graph.num_vertices() >= 2 {
                    let all = TerminalSet::all(&inst.graph)?;
                    let cut = steiner_min_cut(&inst.graph, &all)?;
                    if cut.size < th {
                        return Ok(Outcome::Certificate(Certificate::CutTooSmall {
                            side: cut.side,
                            size: cut.size,
                            threshold: th,
                        }));
                    }
                }
            }
            pack_spanning_trees(&inst.graph, k)
        }
        Mode::Steiner | Mode::Connector => {
            let opts = PackOptions {
                threshold,
                brute_fallback,
                caps,
            };
            if mode == Mode::Steiner {
                pack_steiner_trees(&inst.graph, &inst.terminals, k, &opts)
            } else {
                pack_connectors(&inst.graph, &inst.terminals, k, &opts)
            }
        }
    }
}

fn describe(r: &mut RunReport, outcome: &Outcome) -> Option<String> {
    match outcome {
        Outcome::Packed(run) => {
            r.push("outcome", "packed");
            r.push(
                "route",
                match run.route {
                    Route::Direct => "direct",
                    Route::Pipeline => "pipeline",
                    Route::BruteForce => "brute-force",
                },
            );
            if let Some(c) = run.connectivity {
                r.push("connectivity", c);
            }
            if let Some(red) = &run.reduction {
                r.push("reduction.form", form_name(red.form));
                r.push("reduction.steps", red.trace.len());
                r.push("reduction.vertices", red.graph.num_vertices());
                r.push("reduction.edges", red.graph.num_edges());
            }
            r.push("verify", &run.check);
            for (i, part) in run.packing.parts.iter().enumerate() {
                r.push(format!("part.{}.edges", i + 1), part.len());
            }
            let text = run.packing.to_text();
            r.push("packing.sha256", sha256_hex(&text));
            Some(text)
        }
        Outcome::Certificate(c) => {
            r.push("outcome", "certificate");
            r.push("certificate.kind", c.kind());
            match c {
                Certificate::ViolatingPartition {
                    partition,
                    lambda_out,
                    bound,
                } => {
                    let blocks: Vec<String> =
                        partition.blocks().iter().map(|b| join(b.iter())).collect();
                    r.push("certificate.partition", blocks.join(" | "));
                    r.push("certificate.lambda_out", lambda_out);
                    r.push("certificate.bound", bound);
                }
                Certificate::CutTooSmall {
                    side,
                    size,
                    threshold,
                } => {
                    r.push("certificate.side", join(side.iter()));
                    r.push("certificate.size", size);
                    r.push("certificate.threshold", threshold);
                }
                Certificate::ReductionIncomplete { reduced, reason } => {
                    r.push("certificate.reason", reason);
                    r.push("certificate.reduced.vertices", reduced.graph.num_vertices());
                    r.push("certificate.reduced.edges", reduced.graph.num_edges());
                    let inst = Instance {
                        graph: reduced.graph.clone(),
                        terminals: reduced.terminals.clone(),
                    };
                    r.push("certificate.reduced.sha256", digest(&inst));
                }
            }
            None
        }
        Outcome::Infeasible => {
            r.push("outcome", "infeasible");
            None
        }
    }
}

fn form_name(form: ReducedForm) -> &'static str {
    match form {
        ReducedForm::Fkk => "ready",
        ReducedForm::Partial => "partial",
    }
}

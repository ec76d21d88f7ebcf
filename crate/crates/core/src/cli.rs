//! The `edimlab` command line.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 argument or domain error,
//! 3 cover-size cap exceeded, 4 infeasible instance. JSON is printed only
//! once a command has fully succeeded.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::edgelist::{read_edge_list, write_edge_list};
use crate::experiment::{append_csv, sweep, wall_ms, write_csv, ExperimentRecord, ModeSelection, SweepConfig};
use crate::graph::{generate_er, Graph};
use crate::distance::all_pairs_distances;
use crate::montecarlo::{self, McError};
use crate::resolving::{LandmarkSet, Mode};
use crate::solvers::{solve_resolving, Method, SolveError, SolveWarning};
use crate::theory::TheoryParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP_EXCEEDED: i32 = 3;
pub const EXIT_INFEASIBLE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "edimlab", version, about = "Metric and edge metric dimension of graphs and G(n, p)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample G(n, p) and write it as an edge list.
    Gen(GenArgs),
    /// Compute dim or edim of a graph file or a sampled graph.
    Solve(SolveArgs),
    /// Print the closed-form quantities for (n, p) as JSON.
    Theory(TheoryArgs),
    /// Run a Monte Carlo estimator and print it as JSON.
    Mc(McArgs),
    /// Solve a grid of sampled graphs and write one CSV record per cell.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Edge-list file to solve.
    #[arg(long, conflicts_with_all = ["n", "p"])]
    pub graph: Option<PathBuf>,
    #[arg(long, requires = "p")]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "edge")]
    pub mode: Mode,
    #[arg(long, default_value = "bnb")]
    pub method: Method,
    /// Largest cover size the exhaustive search may try.
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Append an experiment record to this CSV file.
    #[arg(long)]
    pub record: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TheoryArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub p: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum McTarget {
    /// Non-distinguishing probability of a disjoint edge pair.
    Q,
    /// Distance-profile table of the same trials.
    Profile,
    /// Joint failure on two pairs sharing a vertex.
    #[value(name = "s_p")]
    SP,
    /// Fraction of graphs with diameter 2.
    Diameter2,
    /// Mean numbers of type-1 and type-2 edge pairs.
    #[value(name = "type_pairs")]
    TypePairs,
    /// Fraction of graphs where a random w-subset resolves the edges.
    #[value(name = "random_set")]
    RandomSet,
}

#[derive(Args, Debug)]
pub struct McArgs {
    #[arg(long, value_enum)]
    pub target: McTarget,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: f64,
    /// Trials (graphs, for the per-graph targets).
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Landmark set size for `random_set`.
    #[arg(long)]
    pub w: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Comma-separated vertex counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    /// Comma-separated edge probabilities.
    #[arg(long, value_delimiter = ',', required = true)]
    pub p_list: Vec<f64>,
    /// Number of seeds per (n, p); seeds are seed-base, seed-base + 1, ...
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed_base: u64,
    #[arg(long, default_value = "both")]
    pub mode: ModeSelection,
    #[arg(long, default_value = "bnb")]
    pub method: Method,
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Output CSV; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Output of `solve`.
#[derive(Serialize)]
struct SolveJson<'a> {
    size: usize,
    witness: &'a LandmarkSet,
    optimal: bool,
    nodes_explored: u64,
    wall_time_ms: f64,
    mode: Mode,
    method: Method,
    warnings: &'a [SolveWarning],
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }

    fn io(message: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_IO, message: message.to_string() }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let code = match e {
            SolveError::CapExceeded { .. } => EXIT_CAP_EXCEEDED,
            SolveError::Infeasible { .. } => EXIT_INFEASIBLE,
            SolveError::TooLarge { .. } | SolveError::Resolve(_) => EXIT_USAGE,
            SolveError::WitnessRejected(_) => EXIT_IO,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<McError> for Failure {
    fn from(e: McError) -> Self {
        Failure::usage(e)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(Failure::io)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Theory(a) => cmd_theory(a, out),
        Command::Mc(a) => cmd_mc(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
    }
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let g = generate_er(a.n, a.p, a.seed).map_err(Failure::usage)?;
    let mut buf = Vec::new();
    write_edge_list(&g, &mut buf).map_err(Failure::io)?;
    match a.out {
        Some(path) => std::fs::write(&path, buf).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => out.write_all(&buf).map_err(Failure::io),
    }
}

fn load_graph(a: &SolveArgs) -> Result<(Graph, usize, f64, u64), Failure> {
    match (&a.graph, a.n, a.p) {
        (Some(path), _, _) => {
            let file = File::open(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
            let g = read_edge_list(BufReader::new(file))
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let n = g.n();
            let pairs = n * n.saturating_sub(1) / 2;
            let density = if pairs == 0 { 0.0 } else { g.edge_count() as f64 / pairs as f64 };
            Ok((g, n, density, a.seed))
        }
        (None, Some(n), Some(p)) => {
            let g = generate_er(n, p, a.seed).map_err(Failure::usage)?;
            Ok((g, n, p, a.seed))
        }
        _ => Err(Failure::usage("solve needs --graph FILE or --n N --p P")),
    }
}

fn cmd_solve(a: SolveArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (g, n, p, seed) = load_graph(&a)?;
    let dm = all_pairs_distances(&g);
    let outcome = solve_resolving(&g, &dm, a.mode, a.method, a.max_size);
    if let Some(path) = &a.record {
        let record = ExperimentRecord::from_outcome(
            "solve",
            n,
            p,
            seed,
            a.method,
            a.mode,
            outcome.as_ref().map_err(|e| e.to_string()),
        );
        append_csv(path, &[record]).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    }
    let r = outcome?;
    let json = SolveJson {
        size: r.size,
        witness: &r.witness,
        optimal: r.optimal,
        nodes_explored: r.nodes_explored,
        wall_time_ms: wall_ms(r.wall_time),
        mode: a.mode,
        method: a.method,
        warnings: &r.warnings,
    };
    write_out(out, &(to_json(&json) + "\n"))
}

fn cmd_theory(a: TheoryArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let params = TheoryParams::new(a.n, a.p).map_err(Failure::usage)?;
    write_out(out, &(params.to_json() + "\n"))
}

fn cmd_mc(a: McArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let json = match a.target {
        McTarget::Q => to_json(&montecarlo::estimate_nondistinguish(a.n, a.p, a.trials, a.seed)?),
        McTarget::Profile => {
            let table = montecarlo::estimate_profile_table(a.n, a.p, a.trials, a.seed)?;
            serde_json::to_string_pretty(&table.to_json()).expect("serializable output")
        }
        McTarget::SP => to_json(&montecarlo::estimate_joint_fail(a.n, a.p, a.trials, a.seed)?),
        McTarget::Diameter2 => to_json(&montecarlo::estimate_diameter2(a.n, a.p, a.trials, a.seed)?),
        McTarget::TypePairs => to_json(&montecarlo::estimate_type_pair_counts(a.n, a.p, a.trials, a.seed)?),
        McTarget::RandomSet => {
            let w = a.w.ok_or_else(|| Failure::usage("--target random_set needs --w"))?;
            to_json(&montecarlo::random_set_trial(a.n, a.p, w, a.trials, a.seed)?)
        }
    };
    write_out(out, &(json + "\n"))
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let (n_list, p_list) = (a.n_list, a.p_list);
    if n_list.is_empty() || p_list.is_empty() {
        return Err(Failure::usage("--n-list and --p-list must be non-empty"));
    }
    if let Some(p) = p_list.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Failure::usage(format!("edge probability {p} is outside [0, 1]")));
    }
    let cfg = SweepConfig {
        n_list,
        p_list,
        seeds: (a.seed_base..a.seed_base + a.seeds).collect(),
        modes: a.mode,
        method: a.method,
        max_size: a.max_size,
    };
    let records = sweep(&cfg);
    let mut buf = Vec::new();
    write_csv(&records, &mut buf).map_err(Failure::io)?;
    match a.out {
        Some(path) => std::fs::write(&path, buf).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => out.write_all(&buf).map_err(Failure::io),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("edimlab").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gen_complete_graph() {
        let (code, out, _) = run_capture(&["gen", "--n", "5", "--p", "1.0"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("5 10"));
    }

    #[test]
    fn gen_rejects_bad_probability() {
        let (code, out, err) = run_capture(&["gen", "--n", "5", "--p", "1.5"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("1.5"));
    }

    #[test]
    fn theory_domain_errors() {
        assert_eq!(run_capture(&["theory", "--n", "100", "--p", "0"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["theory", "--n", "8", "--p", "0.5"]).0, EXIT_USAGE);
        let (code, out, _) = run_capture(&["theory", "--n", "100", "--p", "0.5"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["mu"].as_f64().unwrap() - 3.052).abs() < 1e-3);
    }

    #[test]
    fn mc_unknown_target() {
        assert_eq!(run_capture(&["mc", "--target", "zeta", "--n", "30", "--p", "0.5"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["mc", "--target", "random_set", "--n", "30", "--p", "0.5"]).0, EXIT_USAGE);
    }

    #[test]
    fn solve_cap_exceeded_exit_code() {
        let (code, out, _) = run_capture(&[
            "solve", "--n", "6", "--p", "1.0", "--mode", "vertex", "--method", "brute", "--max-size", "2",
        ]);
        assert_eq!(code, EXIT_CAP_EXCEEDED);
        assert!(out.is_empty());
    }

    #[test]
    fn solve_requires_a_graph() {
        assert_eq!(run_capture(&["solve", "--mode", "edge"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["solve", "--n", "5"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sweep"));
    }
}

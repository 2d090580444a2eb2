//! The `stabsim` command-line: generate instances, run single simulations,
//! sweep benchmark matrices to CSV, and exhaustively verify small instances.
//!
//! Exit codes are a stable contract for scripting: 0 success, 2 input or
//! parse error, 3 non-termination (step budget), 4 oracle violation.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;
use thiserror::Error;

use crate::algo::{Problem, Task};
use crate::engine::{self, Init, RunError, Scheduler, SchedulerConfig};
use crate::graph::Graph;
use crate::instance::SdmdsInstance;
use crate::oracle;
use crate::state::GlobalState;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NONTERM: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    NonTermination(String),
    #[error("{0}")]
    Oracle(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::NonTermination(_) => EXIT_NONTERM,
            CliError::Oracle(_) => EXIT_ORACLE,
        }
    }

    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "stabsim",
    version,
    about = "Self-stabilizing graph algorithms under adversarial and stale-read schedulers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Generate a seeded uniform random graph in edge-list format.
    Gen(GenArgs),
    /// Run one simulation and print its summary line.
    Run(RunArgs),
    /// Sweep a benchmark matrix and emit one CSV row per trial.
    Bench(BenchArgs),
    /// Enumerate the state space of a small instance and machine-check its
    /// descent structure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Sdmds,
    Mvc,
    Mis,
    Gc,
    #[value(name = "2ds")]
    TwoDs,
}

impl From<AlgoArg> for Problem {
    fn from(a: AlgoArg) -> Problem {
        match a {
            AlgoArg::Sdmds => Problem::Sdmds,
            AlgoArg::Mvc => Problem::Mvc,
            AlgoArg::Mis => Problem::Mis,
            AlgoArg::Gc => Problem::Gc,
            AlgoArg::TwoDs => Problem::TwoDs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchedArg {
    Central,
    Distributed,
    Sync,
    Amr,
}

impl From<SchedArg> for Scheduler {
    fn from(s: SchedArg) -> Scheduler {
        match s {
            SchedArg::Central => Scheduler::Central,
            SchedArg::Distributed => Scheduler::Distributed,
            SchedArg::Sync => Scheduler::Synchronous,
            SchedArg::Amr => Scheduler::Amr,
        }
    }
}

impl std::fmt::Display for SchedArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(Scheduler::from(*self).name())
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Node count.
    pub n: u32,
    /// Edge count.
    pub m: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long)]
    pub algo: AlgoArg,
    /// Edge-list graph file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Service/demand instance file (sdmds only); a plain graph runs the
    /// uniform single-token reduction.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SchedArg::Central)]
    pub scheduler: SchedArg,
    /// Staleness bound B (amr only).
    #[arg(long, default_value_t = 0)]
    pub staleness: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// random | all-in | all-out | file:PATH
    #[arg(long, default_value = "random")]
    pub init: String,
    #[arg(long)]
    pub max_steps: Option<u64>,
    /// Write the full activation trace as JSON lines.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', required = true)]
    pub algos: Vec<AlgoArg>,
    #[arg(long)]
    pub n: u32,
    /// Comma-separated edge counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    #[arg(long, value_delimiter = ',', default_values_t = vec![SchedArg::Central])]
    pub schedulers: Vec<SchedArg>,
    /// Staleness bounds applied to amr rows.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0u32])]
    pub staleness: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output CSV file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report 0 in the wall_ns column for byte-reproducible output.
    #[arg(long, default_value_t = false)]
    pub zero_time: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyProblemArg {
    /// Uniform single-token reduction of sdmds on a plain graph.
    Mds,
    Sdmds,
    Mvc,
    Mis,
    Gc,
    #[value(name = "2ds")]
    TwoDs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub problem: VerifyProblemArg,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Write the descent structure as GraphViz DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

/// Parses argv and executes; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.cmd) {
        Ok(out) => {
            print!("{out}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

/// Executes a parsed command, returning its stdout payload.
pub fn execute(cmd: Cmd) -> Result<String, CliError> {
    match cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Run(a) => cmd_run(a),
        Cmd::Bench(a) => cmd_bench(a),
        Cmd::Verify(a) => cmd_verify(a),
    }
}

fn write_or_return(out: Option<&PathBuf>, text: String) -> Result<String, CliError> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(CliError::input)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

pub fn cmd_gen(args: GenArgs) -> Result<String, CliError> {
    let g = Graph::gen_gnm(args.n, args.m, args.seed).map_err(CliError::input)?;
    write_or_return(args.out.as_ref(), g.to_edge_list())
}

/// Splitmix64 step, used to derive independent sub-seeds.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

pub fn sub_seed(master: u64, parts: &[u64]) -> u64 {
    let mut x = master;
    for &p in parts {
        x = splitmix64(x ^ p.wrapping_mul(0x9E3779B97F4A7C15));
    }
    splitmix64(x)
}

enum Loaded {
    Plain(Graph),
    Tokens(SdmdsInstance),
}

impl Loaded {
    fn task(&self, problem: Problem) -> Result<Task<'_>, CliError> {
        match (problem, self) {
            (Problem::Sdmds, Loaded::Tokens(inst)) => Ok(Task::Sdmds(inst)),
            (Problem::Sdmds, Loaded::Plain(_)) => unreachable!("sdmds always loads tokens"),
            (_, Loaded::Tokens(_)) => Err(CliError::Input(
                "--instance only applies to --algo sdmds".into(),
            )),
            (Problem::Mvc, Loaded::Plain(g)) => Ok(Task::Mvc(g)),
            (Problem::Mis, Loaded::Plain(g)) => Ok(Task::Mis(g)),
            (Problem::Gc, Loaded::Plain(g)) => Ok(Task::Gc(g)),
            (Problem::TwoDs, Loaded::Plain(g)) => Ok(Task::TwoDs(g)),
        }
    }
}

fn load_input(
    problem: Problem,
    graph: Option<&PathBuf>,
    instance: Option<&PathBuf>,
) -> Result<Loaded, CliError> {
    match (graph, instance) {
        (_, Some(path)) => {
            if problem != Problem::Sdmds {
                return Err(CliError::Input(
                    "--instance only applies to --algo sdmds".into(),
                ));
            }
            let text = fs::read_to_string(path).map_err(CliError::input)?;
            Ok(Loaded::Tokens(
                SdmdsInstance::parse_json(&text).map_err(CliError::input)?,
            ))
        }
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(CliError::input)?;
            let g = Graph::parse_edge_list(&text).map_err(CliError::input)?;
            Ok(if problem == Problem::Sdmds {
                Loaded::Tokens(SdmdsInstance::uniform(g))
            } else {
                Loaded::Plain(g)
            })
        }
        (None, None) => Err(CliError::Input(
            "provide --graph FILE (or --instance FILE for sdmds)".into(),
        )),
    }
}

fn parse_init(s: &str) -> Result<Init, CliError> {
    match s {
        "random" => Ok(Init::Random),
        "all-in" => Ok(Init::AllIn),
        "all-out" => Ok(Init::AllOut),
        other => {
            let path = other.strip_prefix("file:").ok_or_else(|| {
                CliError::Input(format!(
                    "unknown --init '{other}' (random | all-in | all-out | file:PATH)"
                ))
            })?;
            let text = fs::read_to_string(path).map_err(CliError::input)?;
            let state: GlobalState = serde_json::from_str(&text).map_err(CliError::input)?;
            Ok(Init::Explicit(state))
        }
    }
}

pub fn cmd_run(args: RunArgs) -> Result<String, CliError> {
    let problem: Problem = args.algo.into();
    let scheduler: Scheduler = args.scheduler.into();
    if args.staleness > 0 && scheduler != Scheduler::Amr {
        return Err(CliError::Input(
            "--staleness requires --scheduler amr".into(),
        ));
    }
    let loaded = load_input(problem, args.graph.as_ref(), args.instance.as_ref())?;
    let task = loaded.task(problem)?;
    let graph = task.graph();
    let init = parse_init(&args.init)?;
    let init_state = engine::initial_state(problem, graph, &init, sub_seed(args.seed, &[0]));

    let mut cfg = SchedulerConfig::new(scheduler, sub_seed(args.seed, &[1]))
        .staleness(args.staleness)
        .record_steps(args.trace.is_some());
    if let Some(steps) = args.max_steps {
        cfg = cfg.max_steps(steps);
    }

    let rules = task.rules();
    let trace = match engine::run(graph, &*rules, init_state, cfg) {
        Ok(t) => t,
        Err(RunError::NonTermination { trace }) => {
            return Err(CliError::NonTermination(format!(
                "no convergence within budget: algo={} scheduler={} staleness={} seed={} ({})",
                problem,
                scheduler,
                args.staleness,
                args.seed,
                trace.summary_line()
            )));
        }
        Err(e) => return Err(CliError::input(e)),
    };

    if let Some(path) = &args.trace {
        let mut buf = Vec::new();
        trace.write_jsonl(&mut buf).map_err(CliError::input)?;
        fs::write(path, buf).map_err(CliError::input)?;
    }

    let verdict = oracle::check_optimal(task, &trace.final_state);
    let bounds = oracle::check_bounds(problem, graph, &trace);
    let summary = format!(
        "algo={} scheduler={} staleness={} seed={} n={} m={} moves={} rounds={} activations={} converged={} optimal={} bounds={}\n",
        problem,
        scheduler,
        args.staleness,
        args.seed,
        graph.n(),
        graph.m(),
        trace.moves,
        trace.rounds,
        trace.activations,
        trace.converged,
        verdict.optimal,
        if bounds.ok { "ok" } else { "exceeded" },
    );
    if !verdict.optimal {
        print!("{summary}");
        return Err(CliError::Oracle(format!(
            "final state is not optimal (witness {:?})",
            verdict.witness
        )));
    }
    Ok(summary)
}

/// One benchmark row; columns in CSV order.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub algorithm: Problem,
    pub scheduler: Scheduler,
    pub staleness: u32,
    pub seed: u64,
    pub n: u32,
    pub m: u64,
    pub moves: u64,
    pub rounds: u64,
    pub activations: u64,
    pub wall_ns: u128,
    pub optimal: bool,
}

pub const BENCH_CSV_HEADER: &str =
    "algorithm,scheduler,staleness,seed,n,m,moves,rounds,activations,wall_ns,optimal";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.scheduler,
            self.staleness,
            self.seed,
            self.n,
            self.m,
            self.moves,
            self.rounds,
            self.activations,
            self.wall_ns,
            self.optimal
        )
    }
}

/// Runs the full benchmark matrix; rows are ordered by configuration
/// (algorithm, scheduler, staleness, m, trial) regardless of which trial
/// finishes first.
pub fn bench_matrix(args: &BenchArgs) -> Result<Vec<BenchRecord>, CliError> {
    struct Cell {
        algo: Problem,
        sched: Scheduler,
        b: u32,
        m: u64,
        trial: u32,
    }
    let mut cells = Vec::new();
    for &algo in &args.algos {
        let algo: Problem = algo.into();
        for &sched in &args.schedulers {
            let sched: Scheduler = sched.into();
            let bs: Vec<u32> = if sched == Scheduler::Amr {
                args.staleness.clone()
            } else {
                vec![0]
            };
            for b in bs {
                for &m in &args.m {
                    for trial in 0..args.trials {
                        cells.push(Cell {
                            algo,
                            sched,
                            b,
                            m,
                            trial,
                        });
                    }
                }
            }
        }
    }

    cells
        .par_iter()
        .map(|cell| {
            // Graph and initial state depend only on (algo, n, m, trial), so
            // schedulers compete on identical inputs.
            let row_seed = sub_seed(
                args.seed,
                &[cell.algo as u64, args.n as u64, cell.m, cell.trial as u64],
            );
            let graph = Graph::gen_gnm(args.n, cell.m, sub_seed(row_seed, &[1]))
                .map_err(CliError::input)?;
            let holder;
            let task = match cell.algo {
                Problem::Sdmds => {
                    holder = SdmdsInstance::uniform(graph.clone());
                    Task::Sdmds(&holder)
                }
                Problem::Mvc => Task::Mvc(&graph),
                Problem::Mis => Task::Mis(&graph),
                Problem::Gc => Task::Gc(&graph),
                Problem::TwoDs => Task::TwoDs(&graph),
            };
            let init = engine::initial_state(
                cell.algo,
                task.graph(),
                &Init::Random,
                sub_seed(row_seed, &[2]),
            );
            let cfg = SchedulerConfig::new(cell.sched, sub_seed(row_seed, &[3]))
                .staleness(if cell.sched == Scheduler::Amr {
                    cell.b
                } else {
                    0
                })
                .record_steps(false);
            let rules = task.rules();
            let started = Instant::now();
            let trace = engine::run(task.graph(), &*rules, init, cfg).map_err(|e| {
                CliError::NonTermination(format!(
                    "bench trial failed: algo={} scheduler={} staleness={} n={} m={} trial={}: {e}",
                    cell.algo, cell.sched, cell.b, args.n, cell.m, cell.trial
                ))
            })?;
            let wall_ns = if args.zero_time {
                0
            } else {
                started.elapsed().as_nanos()
            };
            let optimal = oracle::check_optimal(task, &trace.final_state).optimal;
            Ok(BenchRecord {
                algorithm: cell.algo,
                scheduler: cell.sched,
                staleness: cell.b,
                seed: row_seed,
                n: args.n,
                m: cell.m,
                moves: trace.moves,
                rounds: trace.rounds,
                activations: trace.activations,
                wall_ns,
                optimal,
            })
        })
        .collect()
}

pub fn cmd_bench(args: BenchArgs) -> Result<String, CliError> {
    let rows = bench_matrix(&args)?;
    let mut csv = String::from(BENCH_CSV_HEADER);
    csv.push('\n');
    for row in &rows {
        let _ = writeln!(csv, "{}", row.csv_row());
    }
    write_or_return(args.out.as_ref(), csv)
}

pub fn cmd_verify(args: VerifyArgs) -> Result<String, CliError> {
    let problem = match args.problem {
        VerifyProblemArg::Mds | VerifyProblemArg::Sdmds => Problem::Sdmds,
        VerifyProblemArg::Mvc => Problem::Mvc,
        VerifyProblemArg::Mis => Problem::Mis,
        VerifyProblemArg::Gc => Problem::Gc,
        VerifyProblemArg::TwoDs => Problem::TwoDs,
    };
    let loaded = load_input(problem, args.graph.as_ref(), args.instance.as_ref())?;
    let task = loaded.task(problem)?;

    let lat = oracle::enumerate_lattices(task).map_err(CliError::input)?;
    let report = oracle::check_lattice_linearity(task).map_err(CliError::input)?;
    if let Some(path) = &args.dot {
        fs::write(path, lat.to_dot()).map_err(CliError::input)?;
    }
    let mut out = format!(
        "{} feasible / {} lattices / {} infeasible / lattice-linear: {}\n",
        lat.feasible.len(),
        lat.components.len(),
        lat.infeasible.len(),
        if report.pass() { "pass" } else { "fail" }
    );
    if !report.pass() {
        for v in report.violations.iter().take(5) {
            let _ = writeln!(out, "violation at {}: {:?}", v.state, v.kind);
        }
        print!("{out}");
        return Err(CliError::Oracle(format!(
            "{} descent-structure violations",
            report.violations.len()
        )));
    }
    Ok(out)
}

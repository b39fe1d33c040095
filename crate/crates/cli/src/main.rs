//! `pursuit`: capture times, drunk capture times and the cost of
//! drunkenness for graph families or edge-list files.

mod output;
mod source;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pursuit_core::chain::{
    adversarial_survival_time, default_max_rounds, fixed_strategy_capture_distribution, FixedStrategy,
};
use pursuit_core::montecarlo::{
    simulate_drunk_pursuit, simulate_random_cops, walk_deviation_check, Evader, Pursuer, SimOptions,
};
use pursuit_core::solver::{caar_solve_with, cadr_solve, cost_of_drunkenness, CodOptions};
use pursuit_core::{ConfigSpace, Error, Exec, Scheme, SolveOptions, DEFAULT_STATE_CAP};

use output::{Field, Format, Record};
use source::GraphArgs;

/// Rough peak memory per state of the drunk-robber solver.
const BYTES_PER_STATE: u128 = 40;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;
pub const EXIT_NONCONVERGENCE: u8 = 4;
pub const EXIT_INFINITE: u8 = 5;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    pub fn usage(msg: String) -> Self {
        CliError { code: EXIT_USAGE, msg }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::StateSpaceTooLarge { .. } | Error::CopNumberAboveCap { .. } => EXIT_INFEASIBLE,
        Error::NoConvergence { .. } | Error::Nonterminating { .. } => EXIT_NONCONVERGENCE,
        _ => EXIT_USAGE,
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let mut msg = e.to_string();
        if let Error::StateSpaceTooLarge { states, .. } = e {
            msg.push_str(&format!(" (about {} MiB); raise --state-cap to allow it", mib(states)));
        }
        CliError { code: exit_code(&e), msg }
    }
}

fn mib(states: u128) -> u128 {
    (states * BYTES_PER_STATE).div_ceil(1 << 20)
}

#[derive(Parser, Debug)]
#[command(name = "pursuit", version, about = "Cops against adversarial and drunk robbers on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
    /// Significant digits for real numbers (at least 6).
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u8).range(6..=17))]
    exact_digits: u8,
    /// Largest state space (configurations × vertices) a solver may allocate.
    #[arg(long, global = true, env = "PURSUIT_STATE_CAP")]
    state_cap: Option<u128>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::GaussSeidel)]
    scheme: SchemeArg,
    /// Stop once a sweep changes no value by this much.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_sweeps: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Jacobi,
    GaussSeidel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyMode {
    Drunk,
    Adversarial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SimMode {
    /// Drunk robber against the optimal feedback policy or a strategy file.
    Drunk,
    /// Random-walking cops against a heuristic evader.
    RandomCops,
    /// Excursions of simple ±1 walks.
    WalkDeviation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvaderArg {
    Greedy,
    Uniform,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Capture time against an adversarial robber.
    Ct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Write the cops-to-move value table as CSV.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Write the cop policy as CSV.
        #[arg(long)]
        policy: Option<PathBuf>,
    },
    /// Expected capture time of a drunk robber.
    Dct {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        policy: Option<PathBuf>,
        /// Also list every optimal starting configuration.
        #[arg(long)]
        all_starts: bool,
    },
    /// Cost of drunkenness ct / dct at the cop number.
    Cod {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Largest cop count tried.
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Evaluate a fixed cop strategy file (one configuration per line).
    EvalStrategy {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyMode::Drunk)]
        mode: StrategyMode,
        /// Round limit for drunk evaluation.
        #[arg(long)]
        max_rounds: Option<usize>,
        /// Write per-round capture probabilities as CSV.
        #[arg(long)]
        distribution: Option<PathBuf>,
    },
    /// One CSV row per instance over parameter ranges of a family.
    Sweep(sweep::SweepArgs),
    /// Seeded Monte Carlo simulation.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = SimMode::Drunk)]
        mode: SimMode,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Fixed strategy for drunk mode instead of the optimal policy.
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EvaderArg::Greedy)]
        evader: EvaderArg,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Censoring threshold per trial.
        #[arg(long)]
        max_rounds: Option<u64>,
        /// Walk length for walk-deviation mode.
        #[arg(long, default_value_t = 1000)]
        walk_length: usize,
        /// Deviation multiplier c for walk-deviation mode.
        #[arg(long, default_value_t = 3.0)]
        multiplier: f64,
    },
}

pub struct Ctx {
    pub format: Format,
    pub digits: usize,
    pub state_cap: u128,
    pub exec: Exec,
}

impl Ctx {
    pub fn space(&self, g: &pursuit_core::Graph, k: usize) -> Result<std::sync::Arc<ConfigSpace>, CliError> {
        Ok(ConfigSpace::with_cap(g, k, self.state_cap)?)
    }
}

impl SolverArgs {
    pub fn options(&self, exec: Exec) -> SolveOptions {
        SolveOptions {
            scheme: match self.scheme {
                SchemeArg::Jacobi => Scheme::Jacobi,
                SchemeArg::GaussSeidel => Scheme::GaussSeidel,
            },
            tolerance: self.tolerance,
            max_sweeps: self.max_sweeps,
            exec,
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let ctx = Ctx {
        format: if cli.json {
            Format::Json
        } else if cli.csv {
            Format::Csv
        } else {
            Format::Text
        },
        digits: cli.exact_digits as usize,
        state_cap: cli.state_cap.unwrap_or(DEFAULT_STATE_CAP),
        exec: if cli.sequential { Exec::Sequential } else { Exec::default() },
    };
    if let Some(cap) = cli.state_cap {
        eprintln!("state cap: {cap} states (about {} MiB)", mib(cap));
    }
    match cli.command {
        Command::Ct { graph, k, table, policy } => {
            let (g, info) = graph.load()?;
            let space = ctx.space(&g, k)?;
            let sol = caar_solve_with(&space, ctx.exec);
            let (start, ct) = sol.optimal_start();
            if let Some(p) = table {
                write_file(&p, &sol.cop_turn.to_csv(ctx.digits))?;
            }
            if let Some(p) = policy {
                write_file(&p, &sol.cop_policy.to_csv())?;
            }
            let mut r = Record::new("ct");
            r.push("ct", Field::Rounds(ct));
            r.push("start", Field::Cops(start.cops().to_vec()));
            r.push("k", Field::Int(k as u64));
            r.push("states", Field::Int(space.num_states() as u64));
            r.push("iterations", Field::Int(sol.iterations as u64));
            r.graph(info);
            r.emit(&ctx);
            Ok(if ct.is_finite() { 0 } else { EXIT_INFINITE })
        }
        Command::Dct { graph, k, solver, table, policy, all_starts } => {
            let (g, info) = graph.load()?;
            let space = ctx.space(&g, k)?;
            let sol = cadr_solve(&space, &solver.options(ctx.exec))?;
            let (start, dct) = sol.optimal_start();
            if let Some(p) = table {
                write_file(&p, &sol.values.to_csv(ctx.digits))?;
            }
            if let Some(p) = policy {
                write_file(&p, &sol.policy.to_csv())?;
            }
            let mut r = Record::new("dct");
            r.push("dct", Field::Real(dct));
            r.push("start", Field::Cops(start.cops().to_vec()));
            if all_starts {
                let tol = 1e-9 * dct.max(1.0);
                let starts = sol.optimal_starts(tol).into_iter().map(|c| c.cops().to_vec()).collect();
                r.push("starts", Field::CopsList(starts));
            }
            r.push("k", Field::Int(k as u64));
            r.push("sweeps", Field::Int(sol.sweeps as u64));
            r.push("residual", Field::Real(sol.residual));
            r.push("states", Field::Int(space.num_states() as u64));
            r.graph(info);
            r.emit(&ctx);
            Ok(0)
        }
        Command::Cod { graph, solver, max_k } => {
            let (g, info) = graph.load()?;
            let opts = CodOptions { max_k, state_cap: ctx.state_cap };
            let f = cost_of_drunkenness(&g, &solver.options(ctx.exec), &opts)?;
            let mut r = Record::new("cod");
            r.push("F", Field::Real(f.ratio));
            r.push("ct", Field::Rounds(f.ct));
            r.push("dct", Field::Real(f.dct));
            r.push("cop_number", Field::Int(f.cop_number as u64));
            r.push("ct_start", Field::Cops(f.ct_start.cops().to_vec()));
            r.push("dct_start", Field::Cops(f.dct_start.cops().to_vec()));
            r.push("sweeps", Field::Int(f.sweeps as u64));
            r.graph(info);
            r.emit(&ctx);
            Ok(0)
        }
        Command::EvalStrategy { graph, strategy, mode, max_rounds, distribution } => {
            let (g, info) = graph.load()?;
            let s = FixedStrategy::parse(&g, &read_file(&strategy)?)?;
            let mut r = Record::new("eval-strategy");
            let code = match mode {
                StrategyMode::Drunk => {
                    let limit = max_rounds.unwrap_or_else(|| default_max_rounds(&g));
                    let d = fixed_strategy_capture_distribution(&g, &s, limit)?;
                    if let Some(p) = distribution {
                        write_file(&p, &d.to_csv(ctx.digits))?;
                    }
                    r.push("mode", Field::Text("drunk".into()));
                    r.push("expected_time", Field::Real(d.expected_time()));
                    r.push("residual", Field::Real(d.residual));
                    r.push("rounds", Field::Int(d.per_round.len() as u64 - 1));
                    0
                }
                StrategyMode::Adversarial => {
                    let v = adversarial_survival_time(&g, &s)?;
                    r.push("mode", Field::Text("adversarial".into()));
                    r.push("survival_time", Field::Rounds(v));
                    if v.is_finite() {
                        0
                    } else {
                        EXIT_INFINITE
                    }
                }
            };
            r.push("k", Field::Int(s.k() as u64));
            r.push("length", Field::Int(s.configs().len() as u64));
            r.graph(info);
            r.emit(&ctx);
            Ok(code)
        }
        Command::Sweep(args) => sweep::run(&args, &ctx),
        Command::Simulate {
            graph,
            mode,
            k,
            strategy,
            evader,
            trials,
            seed,
            max_rounds,
            walk_length,
            multiplier,
        } => {
            let opts = SimOptions { max_rounds, exec: ctx.exec, ..SimOptions::new(trials, seed) };
            if mode == SimMode::WalkDeviation {
                let p = walk_deviation_check(walk_length, multiplier, trials, seed, ctx.exec)?;
                let n = walk_length as f64;
                let mut r = Record::new("walk-deviation");
                r.push("exceedance", Field::Real(p));
                r.push("bound", Field::Real(2.0 * n.powf(1.0 - multiplier * multiplier / 4.0)));
                r.push("threshold", Field::Real(multiplier * (n * n.ln()).sqrt()));
                r.push("trials", Field::Int(trials as u64));
                r.push("seed", Field::Int(seed));
                r.emit(&ctx);
                return Ok(0);
            }
            let (g, info) = graph.load()?;
            let report = match (mode, &strategy) {
                (SimMode::Drunk, Some(path)) => {
                    let s = FixedStrategy::parse(&g, &read_file(path)?)?;
                    simulate_drunk_pursuit(&g, Pursuer::Fixed(&s), &opts)?
                }
                (SimMode::Drunk, None) => {
                    let space = ctx.space(&g, k)?;
                    let sol = cadr_solve(&space, &SolveOptions { exec: ctx.exec, ..Default::default() })?;
                    let (start, _) = sol.optimal_start();
                    simulate_drunk_pursuit(&g, Pursuer::Feedback { policy: &sol.policy, start: &start }, &opts)?
                }
                _ => {
                    let ev = match evader {
                        EvaderArg::Greedy => Evader::MaxDistanceGreedy,
                        EvaderArg::Uniform => Evader::UniformRandom,
                    };
                    simulate_random_cops(&g, k, ev, &opts)?
                }
            };
            let mut r = Record::new("simulate");
            r.report(&report);
            r.graph(info);
            r.emit(&ctx);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

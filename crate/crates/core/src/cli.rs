//! The `saf` command line: `solve`, `sweep`, `bench` and `verify`.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 usage or configuration error.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::calculus::Beta;
use crate::config::{BenchConfig, SweepConfig, SweepMode};
use crate::error::{invalid, Error, Result};
use crate::experiments::{
    convergence_csv, run_beta_sweep, run_convergence, run_iteration_table, run_success_sweep,
    with_threads,
};
use crate::field::{Complex64, Field};
use crate::measurement::Instance;
use crate::metrics::SUCCESS_THRESHOLD;
use crate::solvers::{baseline_solve, gd_saf, BaselineKind, GdConfig, InitStrategy, SolveError};
use crate::verify::{run_suite, Suite, VerifyOptions};

/// Environment variable consulted when `--threads` is absent.
pub const THREADS_ENV: &str = "SAF_THREADS";

const AFTER_HELP: &str = "\
Output columns:
  solve   trace.csv        iter,grad_norm,rel_err
          summary.json     algorithm,field,n,m,seed,init,success,final_rel_err,iters,termination,diverged
  sweep   success.csv      m_over_n,algorithm,success_rate,trials
          beta.csv         beta,init,success_rate
          convergence.csv  m_over_n,algorithm,noise_level,trial,iter,grad_norm,rel_err
  bench   iterations.csv   algorithm,init,threshold,median_iters,mean_seconds
  verify  report.csv       check_id,input,expected,actual,tolerance,pass

Without --out, CSV goes to stdout and the solve summary to stderr.
Worker threads: --threads, else SAF_THREADS, else all cores. One thread gives
bit-exact reference output; results do not depend on the thread count.

Exit codes: 0 ok, 1 numerical failure, 2 usage or configuration error.";

#[derive(Parser, Debug)]
#[command(name = "saf", version, about = "Smoothed amplitude flow phase retrieval", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve one seeded random instance and write its trace.
    #[command(after_help = AFTER_HELP)]
    Solve(SolveArgs),
    /// Run a success-rate, beta or convergence sweep from a JSON config.
    #[command(after_help = AFTER_HELP)]
    Sweep(ConfigArgs),
    /// Tabulate median iterations to error thresholds from a JSON config.
    #[command(after_help = AFTER_HELP)]
    Bench(ConfigArgs),
    /// Run a numerical verification suite and report every check.
    #[command(after_help = AFTER_HELP)]
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Saf,
    Wf,
    Twf,
    Taf,
}

impl SolverArg {
    fn name(self) -> &'static str {
        match self {
            SolverArg::Saf => "saf",
            SolverArg::Wf => "wf",
            SolverArg::Twf => "twf",
            SolverArg::Taf => "taf",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InitArg {
    Random,
    Spectral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Signal length
    #[arg(long)]
    n: usize,
    /// Number of measurements
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value_t = FieldArg::Real)]
    field: FieldArg,
    /// Smoothing parameter in (0, 1]
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Step size
    #[arg(long, default_value_t = 0.6)]
    mu: f64,
    #[arg(long, default_value_t = 2000)]
    max_iter: usize,
    /// Default: random for saf, spectral for the baselines
    #[arg(long, value_enum)]
    init: Option<InitArg>,
    #[arg(long, default_value_t = InitStrategy::DEFAULT_POWER_ITERS)]
    power_iters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Standard deviation of additive noise on the magnitudes
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value = "1e-14")]
    grad_tol: f64,
    /// Stop once the relative error reaches this value
    #[arg(long)]
    err_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = SolverArg::Saf)]
    algorithm: SolverArg,
    /// Directory for trace.csv and summary.json
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the generated instance in the binary SAFD layout
    #[arg(long)]
    dump: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// JSON config file
    config: PathBuf,
    /// Overrides `base_seed`
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `trials`
    #[arg(long)]
    trials: Option<usize>,
    /// Overrides `threads`
    #[arg(long)]
    threads: Option<usize>,
    /// Overrides `output`
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// calculus, expectations, landscape, appendix or all
    suite: String,
    /// Monte Carlo samples per estimate
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
    /// Directory for report.csv
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidArgument(_)
        | Error::DimensionMismatch { .. }
        | Error::Format(_)
        | Error::Unsupported(_) => 2,
        _ => 1,
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Solve(a) => {
            let threads = threads(a.threads)?;
            with_threads(threads, || cmd_solve(&a))?
        }
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Verify(a) => {
            let threads = threads(a.threads)?;
            with_threads(threads, || cmd_verify(&a))?
        }
    }
}

/// `--threads`, else `SAF_THREADS`, else the global pool.
fn threads(flag: Option<usize>) -> Result<Option<usize>> {
    let value = match flag {
        Some(k) => Some(k),
        None => match std::env::var(THREADS_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse()
                    .map_err(|_| invalid(format!("{THREADS_ENV}={s:?} is not a thread count")))?,
            ),
            Err(_) => None,
        },
    };
    if value == Some(0) {
        return Err(invalid("thread count must be at least 1"));
    }
    Ok(value)
}

/// Writes `contents` to `dir/name`, or to stdout without a directory.
fn emit(dir: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), contents)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveSummary {
    algorithm: &'static str,
    field: &'static str,
    n: usize,
    m: usize,
    seed: u64,
    init: &'static str,
    success: bool,
    final_rel_err: Option<f64>,
    iters: usize,
    termination: &'static str,
    diverged: bool,
}

fn cmd_solve(a: &SolveArgs) -> Result<i32> {
    if a.n == 0 || a.m == 0 {
        return Err(invalid("--n and --m must be positive"));
    }
    if a.power_iters == 0 {
        return Err(invalid("--power-iters must be positive"));
    }
    let config = GdConfig {
        beta: Beta::new(a.beta)?,
        step: a.mu,
        max_iter: a.max_iter,
        grad_tol: a.grad_tol,
        err_tol: a.err_tol,
    };
    config.validate()?;
    match a.field {
        FieldArg::Real => solve_field::<f64>(a, &config),
        FieldArg::Complex => solve_field::<Complex64>(a, &config),
    }
}

fn solve_field<T: Field>(a: &SolveArgs, config: &GdConfig) -> Result<i32> {
    let inst = Instance::<T>::generate(a.n, a.m, a.noise, a.seed)?;
    if let Some(path) = &a.dump {
        let file = std::fs::File::create(path)?;
        inst.write_dump(std::io::BufWriter::new(file))?;
    }
    let init = match a.init.unwrap_or(if a.algorithm == SolverArg::Saf {
        InitArg::Random
    } else {
        InitArg::Spectral
    }) {
        InitArg::Random => InitStrategy::Random,
        InitArg::Spectral => InitStrategy::Spectral {
            power_iters: a.power_iters,
        },
    };
    let truth = Some(&inst.x);
    let result = match a.algorithm {
        SolverArg::Saf => gd_saf(&inst.a, &inst.obs, config, init, a.seed, truth),
        SolverArg::Wf => baseline_solve(BaselineKind::Wf, &inst.a, &inst.obs, config, init, a.seed, truth),
        SolverArg::Twf => baseline_solve(BaselineKind::Twf, &inst.a, &inst.obs, config, init, a.seed, truth),
        SolverArg::Taf => baseline_solve(BaselineKind::Taf, &inst.a, &inst.obs, config, init, a.seed, truth),
    };
    let (trace, diverged) = match result {
        Ok(trace) => (trace, false),
        Err(SolveError::Diverged { trace, .. }) => (*trace, true),
        Err(SolveError::Setup(e)) => return Err(e),
    };
    let final_rel_err = if diverged { None } else { trace.final_rel_err() };
    let summary = SolveSummary {
        algorithm: a.algorithm.name(),
        field: T::TAG.as_str(),
        n: a.n,
        m: a.m,
        seed: a.seed,
        init: init.name(),
        success: final_rel_err.is_some_and(|e| e <= SUCCESS_THRESHOLD),
        final_rel_err,
        iters: trace.iterations(),
        termination: if diverged { "diverged" } else { trace.termination.as_str() },
        diverged,
    };
    let mut json = serde_json::to_string_pretty(&summary)
        .map_err(|e| Error::Format(format!("summary: {e}")))?;
    json.push('\n');
    emit(a.out.as_deref(), "trace.csv", &trace.to_csv())?;
    match &a.out {
        Some(dir) => std::fs::write(dir.join("summary.json"), &json)?,
        None => eprint!("{json}"),
    }
    if diverged {
        eprintln!("error: iterate became non-finite");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_sweep(a: &ConfigArgs) -> Result<i32> {
    let mut cfg = SweepConfig::load(&a.config)?;
    if let Some(seed) = a.seed {
        cfg.base_seed = seed;
    }
    if let Some(trials) = a.trials {
        cfg.trials = trials;
    }
    cfg.threads = threads(a.threads.or(cfg.threads))?;
    if a.out.is_some() {
        cfg.output = a.out.clone();
    }
    let spec = cfg.spec()?;
    let csv = with_threads(spec.threads, || -> Result<String> {
        Ok(match cfg.mode {
            SweepMode::Success => run_success_sweep(&spec)?.to_csv(),
            SweepMode::Beta => run_beta_sweep(&spec, &cfg.beta_sweep())?.to_csv(),
            SweepMode::Convergence => convergence_csv(&run_convergence(&spec)?),
        })
    })??;
    emit(cfg.output.as_deref(), &format!("{}.csv", cfg.mode.name()), &csv)?;
    Ok(0)
}

fn cmd_bench(a: &ConfigArgs) -> Result<i32> {
    let mut cfg = BenchConfig::load(&a.config)?;
    if let Some(seed) = a.seed {
        cfg.base_seed = seed;
    }
    if let Some(trials) = a.trials {
        cfg.trials = trials;
    }
    cfg.threads = threads(a.threads.or(cfg.threads))?;
    if a.out.is_some() {
        cfg.output = a.out.clone();
    }
    let spec = cfg.spec()?;
    let table = with_threads(spec.threads, || {
        run_iteration_table(&spec, &cfg.thresholds, cfg.record_time)
    })??;
    emit(cfg.output.as_deref(), "iterations.csv", &table.to_csv())?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let suite: Suite = a.suite.parse().map_err(Error::InvalidArgument)?;
    let mut opts = VerifyOptions {
        seed: a.seed,
        ..VerifyOptions::default()
    };
    if let Some(samples) = a.samples {
        if samples < 2 {
            return Err(invalid("--samples must be at least 2"));
        }
        opts.mc_samples = samples;
    }
    let report = run_suite(suite, &opts);
    emit(a.out.as_deref(), "report.csv", &report.to_csv())?;
    let failures = report.failures().count();
    if failures > 0 {
        eprintln!("{failures} of {} checks failed", report.rows.len());
        return Ok(1);
    }
    Ok(0)
}

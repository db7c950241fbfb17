//! Seeded experiment drivers: success-rate sweeps, convergence traces,
//! iteration tables and β sweeps.
//!
//! Every trial draws a fresh `(x, A)` from `derive_seed(base_seed, [grid, trial])`
//! and all algorithms of that trial see the same instance. Trials run on a
//! rayon pool, but results are collected by index, so tables do not depend on
//! the thread count.

use std::fmt::Write as _;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::Beta;
use crate::error::{invalid, Error, Result};
use crate::field::{Field, FieldTag};
use crate::measurement::Instance;
use crate::metrics::SUCCESS_THRESHOLD;
use crate::seed::derive_seed;
use crate::solvers::{
    baseline_solve, gd_saf, BaselineKind, GdConfig, InitStrategy, IterRecord, SolveError,
    SolveTrace,
};

/// A solver together with its initialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// SAF gradient descent from a random start.
    Saf,
    /// SAF gradient descent from the spectral start.
    SafSpectral,
    Wf,
    Twf,
    Taf,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Saf,
        Algorithm::SafSpectral,
        Algorithm::Wf,
        Algorithm::Twf,
        Algorithm::Taf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Saf => "saf",
            Algorithm::SafSpectral => "saf-spectral",
            Algorithm::Wf => "wf",
            Algorithm::Twf => "twf",
            Algorithm::Taf => "taf",
        }
    }

    pub fn init(self, power_iters: usize) -> InitStrategy {
        match self {
            Algorithm::Saf => InitStrategy::Random,
            _ => InitStrategy::Spectral { power_iters },
        }
    }

    /// Runs the algorithm on one instance.
    pub fn solve<T: Field>(
        self,
        inst: &Instance<T>,
        config: &GdConfig,
        power_iters: usize,
        seed: u64,
    ) -> std::result::Result<SolveTrace<T>, SolveError<T>> {
        let init = self.init(power_iters);
        let truth = Some(&inst.x);
        match self {
            Algorithm::Saf | Algorithm::SafSpectral => {
                gd_saf(&inst.a, &inst.obs, config, init, seed, truth)
            }
            Algorithm::Wf => baseline_solve(BaselineKind::Wf, &inst.a, &inst.obs, config, init, seed, truth),
            Algorithm::Twf => baseline_solve(BaselineKind::Twf, &inst.a, &inst.obs, config, init, seed, truth),
            Algorithm::Taf => baseline_solve(BaselineKind::Taf, &inst.a, &inst.obs, config, init, seed, truth),
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Parameters shared by all experiment drivers.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub n: usize,
    pub field: FieldTag,
    pub m_over_n: Vec<f64>,
    pub trials: usize,
    pub config: GdConfig,
    pub algorithms: Vec<Algorithm>,
    pub noise_level: f64,
    pub base_seed: u64,
    pub power_iters: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl ExperimentSpec {
    pub fn new(n: usize, field: FieldTag) -> Self {
        Self {
            n,
            field,
            m_over_n: vec![],
            trials: 1,
            config: GdConfig::default(),
            algorithms: vec![Algorithm::Saf],
            noise_level: 0.0,
            base_seed: 0,
            power_iters: InitStrategy::DEFAULT_POWER_ITERS,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("n must be positive"));
        }
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        if self.m_over_n.is_empty() {
            return Err(invalid("m_over_n grid is empty"));
        }
        if let Some(r) = self.m_over_n.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
            return Err(invalid(format!("grid value {r} must be positive")));
        }
        if self.algorithms.is_empty() {
            return Err(invalid("algorithm list is empty"));
        }
        if !(self.noise_level >= 0.0) {
            return Err(invalid("noise level must be nonnegative"));
        }
        if self.power_iters == 0 {
            return Err(invalid("power_iters must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(invalid("threads must be at least 1"));
        }
        self.config.validate()
    }

    /// Number of measurements for a grid ratio, at least 1.
    pub fn m_for(&self, ratio: f64) -> usize {
        ((ratio * self.n as f64).round() as usize).max(1)
    }
}

/// Seed of trial `trial` at grid point `grid`.
pub fn trial_seed(base_seed: u64, grid: usize, trial: usize) -> u64 {
    derive_seed(base_seed, &[grid as u64, trial as u64])
}

/// Runs `f` on a pool with `threads` workers (or the global pool).
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Outcome of one algorithm on one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub algorithm: Algorithm,
    pub success: bool,
    /// `None` when the solver diverged.
    pub final_rel_err: Option<f64>,
    pub iterations: usize,
    pub records: Vec<IterRecord>,
}

fn outcome<T: Field>(
    algorithm: Algorithm,
    result: std::result::Result<SolveTrace<T>, SolveError<T>>,
) -> Result<TrialOutcome> {
    match result {
        Ok(trace) => {
            let err = trace.final_rel_err();
            Ok(TrialOutcome {
                algorithm,
                success: err.is_some_and(|e| e <= SUCCESS_THRESHOLD),
                final_rel_err: err,
                iterations: trace.iterations(),
                records: trace.records,
            })
        }
        Err(SolveError::Diverged { iter, trace }) => Ok(TrialOutcome {
            algorithm,
            success: false,
            final_rel_err: None,
            iterations: iter,
            records: trace.records,
        }),
        Err(SolveError::Setup(e)) => Err(e),
    }
}

/// Generates the instance for `seed` and runs every algorithm in `algorithms` on it.
pub fn run_trial<T: Field>(
    n: usize,
    m: usize,
    noise_level: f64,
    algorithms: &[Algorithm],
    config: &GdConfig,
    power_iters: usize,
    seed: u64,
) -> Result<Vec<TrialOutcome>> {
    let inst = Instance::<T>::generate(n, m, noise_level, seed)?;
    algorithms
        .iter()
        .map(|&alg| outcome(alg, alg.solve(&inst, config, power_iters, seed)))
        .collect()
}

fn dispatch_trial(
    field: FieldTag,
    n: usize,
    m: usize,
    noise_level: f64,
    algorithms: &[Algorithm],
    config: &GdConfig,
    power_iters: usize,
    seed: u64,
) -> Result<Vec<TrialOutcome>> {
    match field {
        FieldTag::Real => run_trial::<f64>(n, m, noise_level, algorithms, config, power_iters, seed),
        FieldTag::Complex => {
            run_trial::<Complex64>(n, m, noise_level, algorithms, config, power_iters, seed)
        }
    }
}

/// Runs `trials` trials at each grid point, in parallel, returning
/// `outcomes[grid][trial][algorithm]`.
fn run_grid(
    spec: &ExperimentSpec,
    grid: &[(usize, f64)],
    noise_level: f64,
    config: &GdConfig,
) -> Result<Vec<Vec<Vec<TrialOutcome>>>> {
    let jobs: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|g| (0..spec.trials).map(move |t| (g, t)))
        .collect();
    let results: Vec<Result<Vec<TrialOutcome>>> = with_threads(spec.threads, || {
        jobs.par_iter()
            .map(|&(g, t)| {
                let (seed_index, ratio) = grid[g];
                dispatch_trial(
                    spec.field,
                    spec.n,
                    spec.m_for(ratio),
                    noise_level,
                    &spec.algorithms,
                    config,
                    spec.power_iters,
                    trial_seed(spec.base_seed, seed_index, t),
                )
            })
            .collect()
    })?;
    let mut out: Vec<Vec<Vec<TrialOutcome>>> = vec![Vec::with_capacity(spec.trials); grid.len()];
    for (&(g, _), r) in jobs.iter().zip(results) {
        out[g].push(r?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuccessRow {
    pub m_over_n: f64,
    pub algorithm: Algorithm,
    pub success_rate: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuccessTable {
    pub rows: Vec<SuccessRow>,
}

impl SuccessTable {
    pub fn rate(&self, m_over_n: f64, algorithm: Algorithm) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.m_over_n == m_over_n && r.algorithm == algorithm)
            .map(|r| r.success_rate)
    }

    /// CSV with header `m_over_n,algorithm,success_rate,trials`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m_over_n,algorithm,success_rate,trials\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.m_over_n,
                r.algorithm.name(),
                r.success_rate,
                r.trials
            );
        }
        out
    }
}

/// Success rate of every algorithm at every `m/n` grid point.
pub fn run_success_sweep(spec: &ExperimentSpec) -> Result<SuccessTable> {
    spec.validate()?;
    let grid: Vec<(usize, f64)> = spec.m_over_n.iter().copied().enumerate().collect();
    let outcomes = run_grid(spec, &grid, spec.noise_level, &spec.config)?;
    let mut rows = Vec::new();
    for (g, per_trial) in outcomes.iter().enumerate() {
        for (k, &alg) in spec.algorithms.iter().enumerate() {
            let successes = per_trial.iter().filter(|t| t[k].success).count();
            rows.push(SuccessRow {
                m_over_n: spec.m_over_n[g],
                algorithm: alg,
                success_rate: successes as f64 / spec.trials as f64,
                trials: spec.trials,
            });
        }
    }
    Ok(SuccessTable { rows })
}

/// Per-iteration history of one algorithm on one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub m_over_n: f64,
    pub algorithm: Algorithm,
    pub noise_level: f64,
    pub trial: usize,
    pub records: Vec<IterRecord>,
}

/// CSV with header `m_over_n,algorithm,noise_level,trial,iter,grad_norm,rel_err`.
pub fn convergence_csv(traces: &[ConvergenceTrace]) -> String {
    let mut out = String::from("m_over_n,algorithm,noise_level,trial,iter,grad_norm,rel_err\n");
    for t in traces {
        for r in &t.records {
            let _ = write!(
                out,
                "{},{},{},{},{},{:e},",
                t.m_over_n,
                t.algorithm.name(),
                t.noise_level,
                t.trial,
                r.iter,
                r.grad_norm
            );
            if let Some(e) = r.rel_err {
                let _ = write!(out, "{e:e}");
            }
            out.push('\n');
        }
    }
    out
}

/// Relative-error histories for noiseless data and, when `spec.noise_level > 0`,
/// for noisy data at that level. Noiseless and noisy runs share instances.
pub fn run_convergence(spec: &ExperimentSpec) -> Result<Vec<ConvergenceTrace>> {
    spec.validate()?;
    let mut levels = vec![0.0];
    if spec.noise_level > 0.0 {
        levels.push(spec.noise_level);
    }
    let grid: Vec<(usize, f64)> = spec.m_over_n.iter().copied().enumerate().collect();
    let mut traces = Vec::new();
    for &level in &levels {
        let outcomes = run_grid(spec, &grid, level, &spec.config)?;
        for (g, per_trial) in outcomes.into_iter().enumerate() {
            for (trial, algs) in per_trial.into_iter().enumerate() {
                for o in algs {
                    traces.push(ConvergenceTrace {
                        m_over_n: spec.m_over_n[g],
                        algorithm: o.algorithm,
                        noise_level: level,
                        trial,
                        records: o.records,
                    });
                }
            }
        }
    }
    Ok(traces)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRow {
    pub algorithm: Algorithm,
    pub init: &'static str,
    pub threshold: f64,
    /// Median over trials of the first iteration reaching `threshold`;
    /// trials that never reach it count as `+∞`.
    pub median_iters: f64,
    /// Mean wall time to reach the threshold, when timing was requested.
    pub mean_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IterationTable {
    pub rows: Vec<IterationRow>,
}

impl IterationTable {
    pub fn median(&self, algorithm: Algorithm, threshold: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.algorithm == algorithm && r.threshold == threshold)
            .map(|r| r.median_iters)
    }

    /// CSV with header `algorithm,init,threshold,median_iters,mean_seconds`.
    /// Untimed rows write `NA` for the time.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("algorithm,init,threshold,median_iters,mean_seconds\n");
        for r in &self.rows {
            let secs = r.mean_seconds.map_or_else(|| "NA".to_string(), |s| format!("{s}"));
            let _ = writeln!(
                out,
                "{},{},{:e},{},{}",
                r.algorithm.name(),
                r.init,
                r.threshold,
                r.median_iters,
                secs
            );
        }
        out
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(|a, b| a.total_cmp(b));
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

/// Median iterations to each relative-error threshold, per algorithm, over
/// `spec.trials` instances at `spec.m_over_n[0]`.
///
/// Iteration counts come from one run per trial stopped at the smallest
/// threshold. With `record_time`, each threshold is additionally timed by a
/// separate run stopped at that threshold; wall time is not reproducible.
pub fn run_iteration_table(
    spec: &ExperimentSpec,
    thresholds: &[f64],
    record_time: bool,
) -> Result<IterationTable> {
    spec.validate()?;
    if thresholds.is_empty() || thresholds.iter().any(|t| !(*t > 0.0)) {
        return Err(invalid("thresholds must be a nonempty list of positive numbers"));
    }
    let tightest = thresholds.iter().copied().fold(f64::INFINITY, f64::min);
    let mut config = spec.config;
    config.err_tol = Some(tightest);
    let grid = [(0usize, spec.m_over_n[0])];
    let outcomes = run_grid(spec, &grid, spec.noise_level, &config)?;
    let per_trial = &outcomes[0];

    let timings = if record_time {
        Some(time_thresholds(spec, thresholds)?)
    } else {
        None
    };

    let mut rows = Vec::new();
    for (k, &alg) in spec.algorithms.iter().enumerate() {
        for (ti, &threshold) in thresholds.iter().enumerate() {
            let mut iters: Vec<f64> = per_trial
                .iter()
                .map(|algs| {
                    algs[k]
                        .records
                        .iter()
                        .find(|r| r.rel_err.is_some_and(|e| e <= threshold))
                        .map_or(f64::INFINITY, |r| r.iter as f64)
                })
                .collect();
            rows.push(IterationRow {
                algorithm: alg,
                init: alg.init(spec.power_iters).name(),
                threshold,
                median_iters: median(&mut iters),
                mean_seconds: timings.as_ref().map(|t| t[k][ti]),
            });
        }
    }
    Ok(IterationTable { rows })
}

/// Mean wall time per (algorithm, threshold), measured sequentially.
fn time_thresholds(spec: &ExperimentSpec, thresholds: &[f64]) -> Result<Vec<Vec<f64>>> {
    let m = spec.m_for(spec.m_over_n[0]);
    let mut totals = vec![vec![0.0; thresholds.len()]; spec.algorithms.len()];
    for trial in 0..spec.trials {
        let seed = trial_seed(spec.base_seed, 0, trial);
        for (ti, &threshold) in thresholds.iter().enumerate() {
            let mut config = spec.config;
            config.err_tol = Some(threshold);
            for (k, &alg) in spec.algorithms.iter().enumerate() {
                let start = Instant::now();
                dispatch_trial(spec.field, spec.n, m, spec.noise_level, &[alg], &config, spec.power_iters, seed)?;
                totals[k][ti] += start.elapsed().as_secs_f64();
            }
        }
    }
    for row in &mut totals {
        for t in row.iter_mut() {
            *t /= spec.trials as f64;
        }
    }
    Ok(totals)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaRow {
    pub beta: f64,
    pub init: &'static str,
    pub m_over_n: f64,
    pub success_rate: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BetaTable {
    pub rows: Vec<BetaRow>,
}

impl BetaTable {
    pub fn rate(&self, beta: f64, init: &str) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.beta == beta && r.init == init)
            .map(|r| r.success_rate)
    }

    /// CSV with header `beta,init,success_rate`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("beta,init,success_rate\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.beta, r.init, r.success_rate);
        }
        out
    }
}

/// Settings of the β sweep beyond the shared [`ExperimentSpec`].
#[derive(Debug, Clone)]
pub struct BetaSweep {
    pub betas: Vec<f64>,
    /// `m/n` used with random initialization.
    pub random_m_over_n: f64,
    /// `m/n` used with spectral initialization.
    pub spectral_m_over_n: f64,
}

impl Default for BetaSweep {
    fn default() -> Self {
        Self {
            betas: (1..=10).map(|k| k as f64 / 10.0).collect(),
            random_m_over_n: 4.0,
            spectral_m_over_n: 2.5,
        }
    }
}

/// SAF success rate as a function of β, for random initialization at
/// `random_m_over_n` and spectral initialization at `spectral_m_over_n`.
/// All β values share the same instances.
pub fn run_beta_sweep(spec: &ExperimentSpec, sweep: &BetaSweep) -> Result<BetaTable> {
    if sweep.betas.is_empty() {
        return Err(invalid("beta grid is empty"));
    }
    let betas = sweep
        .betas
        .iter()
        .map(|&b| Beta::new(b))
        .collect::<Result<Vec<_>>>()?;
    let arms = [
        (0usize, Algorithm::Saf, sweep.random_m_over_n),
        (1usize, Algorithm::SafSpectral, sweep.spectral_m_over_n),
    ];
    let mut rows = Vec::new();
    for beta in betas {
        for &(grid_index, alg, ratio) in &arms {
            let mut arm = spec.clone();
            arm.config.beta = beta;
            arm.algorithms = vec![alg];
            arm.m_over_n = vec![ratio];
            arm.validate()?;
            let outcomes = run_grid(&arm, &[(grid_index, ratio)], arm.noise_level, &arm.config)?;
            let successes = outcomes[0].iter().filter(|t| t[0].success).count();
            rows.push(BetaRow {
                beta: beta.get(),
                init: alg.init(arm.power_iters).name(),
                m_over_n: ratio,
                success_rate: successes as f64 / arm.trials as f64,
                trials: arm.trials,
            });
        }
    }
    Ok(BetaTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for alg in Algorithm::ALL {
            assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
        }
        assert!("gd".parse::<Algorithm>().is_err());
    }

    #[test]
    fn median_handles_infinities() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert_eq!(median(&mut [f64::INFINITY, 1.0, f64::INFINITY]), f64::INFINITY);
        assert!(median(&mut []).is_nan());
    }

    #[test]
    fn spec_validation() {
        let mut spec = ExperimentSpec::new(8, FieldTag::Real);
        assert!(spec.validate().is_err());
        spec.m_over_n = vec![2.0];
        assert!(spec.validate().is_ok());
        spec.trials = 0;
        assert!(spec.validate().is_err());
        spec.trials = 1;
        spec.m_over_n = vec![-1.0];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn m_rounds_and_is_positive() {
        let spec = ExperimentSpec::new(128, FieldTag::Real);
        assert_eq!(spec.m_for(4.5), 576);
        assert_eq!(spec.m_for(1e-9), 1);
    }
}

//! Experiment orchestration: seeded batches of independent runs across
//! algorithms, problems, and size sweeps, with statistics and CSV output.
//!
//! Runs are embarrassingly parallel. Each run derives its own seed from
//! `(base_seed, algorithm tag, n, run index)` through a fixed SplitMix64
//! chain, so results are independent of execution order and worker count,
//! and adding an algorithm to a study never perturbs the streams of the
//! others. With the `parallel` feature (default) batches execute on a rayon
//! pool; without it, sequentially.

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algorithms::{
    ollga_iteration, run_ollga, run_one_plus_one_ea, run_rls, LambdaController, RunBudget,
    RunRecord,
};
use crate::problems::{FitnessState, MaxSatState, OneMaxState, SatInstance};
use crate::sampling::PowerLawDist;
use crate::util::{fnv1a64, splitmix64};
use crate::{Error, Result};

/// Which benchmark problem a batch runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    OneMax,
    MaxSat,
}

impl ProblemKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ProblemKind::OneMax => "onemax",
            ProblemKind::MaxSat => "maxsat",
        }
    }
}

impl FromStr for ProblemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "onemax" => Ok(ProblemKind::OneMax),
            "maxsat" => Ok(ProblemKind::MaxSat),
            other => Err(Error::parse(format!("unknown problem `{other}`"))),
        }
    }
}

/// How the heavy-tailed distribution's upper limit u is derived from n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UPolicy {
    /// u = n, the classic choice.
    N,
    /// u = floor(2 ln(n+1)), the logarithmic cap.
    TwoLogN,
    /// A fixed integer, independent of n.
    Fixed(u64),
}

impl UPolicy {
    pub fn resolve(&self, n: usize) -> u64 {
        match self {
            UPolicy::N => n as u64,
            UPolicy::TwoLogN => ((2.0 * ((n + 1) as f64).ln()).floor() as u64).max(1),
            UPolicy::Fixed(u) => *u,
        }
    }
}

impl FromStr for UPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" => Ok(UPolicy::N),
            "2ln" => Ok(UPolicy::TwoLogN),
            other => other.parse::<u64>().map(UPolicy::Fixed).map_err(|_| {
                Error::parse(format!(
                    "u policy must be n, 2ln or an integer, got `{other}`"
                ))
            }),
        }
    }
}

impl std::fmt::Display for UPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UPolicy::N => write!(f, "n"),
            UPolicy::TwoLogN => write!(f, "2ln"),
            UPolicy::Fixed(u) => write!(f, "{u}"),
        }
    }
}

/// Upper clamp on the one-fifth controller's λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapPolicy {
    /// No cap beyond the structural λ <= n.
    None,
    /// Real-valued clamp at 2 ln(n+1).
    TwoLogN,
}

impl CapPolicy {
    pub fn resolve(&self, n: usize) -> f64 {
        match self {
            CapPolicy::None => n as f64,
            CapPolicy::TwoLogN => 2.0 * ((n + 1) as f64).ln(),
        }
    }
}

impl FromStr for CapPolicy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(CapPolicy::None),
            "2ln" => Ok(CapPolicy::TwoLogN),
            other => Err(Error::parse(format!(
                "cap must be none or 2ln, got `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for CapPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CapPolicy::None => write!(f, "none"),
            CapPolicy::TwoLogN => write!(f, "2ln"),
        }
    }
}

/// An algorithm plus its controller parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgorithmSpec {
    Rls,
    OnePlusOneEa,
    /// (1+(λ,λ)) GA at the near-optimal static λ.
    OllgaStatic,
    /// (1+(λ,λ)) GA with λ = sqrt(n/(n - f)).
    OllgaFitnessDependent,
    /// (1+(λ,λ)) GA with the one-fifth success rule.
    OllgaOneFifth { cap: CapPolicy, factor: f64 },
    /// The fast (1+(λ,λ)) GA with power-law λ.
    OllgaFast { beta: f64, u: UPolicy },
}

impl AlgorithmSpec {
    /// Stable identity used in CSV rows and per-run seed derivation.
    /// Contains no commas.
    pub fn tag(&self) -> String {
        match self {
            AlgorithmSpec::Rls => "rls".into(),
            AlgorithmSpec::OnePlusOneEa => "opo-ea".into(),
            AlgorithmSpec::OllgaStatic => "ollga-static".into(),
            AlgorithmSpec::OllgaFitnessDependent => "ollga-fitdep".into(),
            AlgorithmSpec::OllgaOneFifth { cap, factor } => {
                format!("ollga-onefifth(cap={cap};f={factor})")
            }
            AlgorithmSpec::OllgaFast { beta, u } => format!("ollga-fast(beta={beta};u={u})"),
        }
    }

    fn controller(&self, n: usize, dist: Option<&Arc<PowerLawDist>>) -> Option<LambdaController> {
        match self {
            AlgorithmSpec::Rls | AlgorithmSpec::OnePlusOneEa => None,
            AlgorithmSpec::OllgaStatic => Some(LambdaController::optimal_static(n)),
            AlgorithmSpec::OllgaFitnessDependent => Some(LambdaController::FitnessDependent),
            AlgorithmSpec::OllgaOneFifth { cap, factor } => {
                Some(LambdaController::one_fifth(*factor, cap.resolve(n)))
            }
            AlgorithmSpec::OllgaFast { .. } => Some(LambdaController::heavy_tailed(
                dist.expect("distribution prebuilt for fast GA").clone(),
            )),
        }
    }
}

/// One experiment: an algorithm on a problem over a size sweep.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub algorithm: AlgorithmSpec,
    pub problem: ProblemKind,
    pub sizes: Vec<usize>,
    pub runs: u32,
    pub base_seed: u64,
    /// Per-run evaluation budget; defaults to 10^4 * n.
    pub max_evaluations: Option<u64>,
    /// Worker threads for the batch; defaults to the rayon global pool.
    pub workers: Option<usize>,
    /// When set, per-run records are written here and the summary next to it.
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(
        algorithm: AlgorithmSpec,
        problem: ProblemKind,
        sizes: Vec<usize>,
        runs: u32,
        base_seed: u64,
    ) -> Self {
        Self {
            algorithm,
            problem,
            sizes,
            runs,
            base_seed,
            max_evaluations: None,
            workers: None,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::invalid("runs must be >= 1"));
        }
        if self.sizes.is_empty() {
            return Err(Error::invalid("sizes must be non-empty"));
        }
        for &n in &self.sizes {
            if n == 0 {
                return Err(Error::invalid("problem size must be >= 1"));
            }
            if self.problem == ProblemKind::MaxSat && n < 3 {
                return Err(Error::invalid("MAX-3SAT needs n >= 3"));
            }
            if let AlgorithmSpec::OllgaFast { u, .. } = &self.algorithm {
                let resolved = u.resolve(n);
                if resolved == 0 || resolved > n as u64 {
                    return Err(Error::invalid(format!(
                        "u policy resolves to {resolved} outside [1..n={n}]"
                    )));
                }
            }
        }
        Ok(())
    }

    fn budget_for(&self, n: usize, target: u64) -> RunBudget {
        RunBudget::new(self.max_evaluations.unwrap_or(10_000 * n as u64), target)
    }
}

/// One labeled run: the CSV row behind [`records_to_csv`].
#[derive(Clone, Debug, PartialEq)]
pub struct RunRow {
    pub algorithm: String,
    pub problem: ProblemKind,
    pub n: usize,
    pub run: u32,
    pub record: RunRecord,
}

/// Aggregated statistics for one (algorithm, problem, n) group.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub algorithm: String,
    pub problem: String,
    pub n: usize,
    pub runs: u32,
    pub mean_evals_per_n: f64,
    pub std_evals_per_n: f64,
    pub mean_iterations: f64,
}

/// Derives the seed of run `run_index` at size `n`: a fixed SplitMix64 chain
/// over the base seed, the algorithm tag (FNV-1a folded), n, and the index.
pub fn derive_seed(base_seed: u64, algorithm_tag: &str, n: u64, run_index: u64) -> u64 {
    let mut h = splitmix64(base_seed);
    h = splitmix64(h ^ fnv1a64(algorithm_tag.as_bytes()));
    h = splitmix64(h ^ n);
    h = splitmix64(h ^ run_index);
    h
}

fn execute_run(
    config: &ExperimentConfig,
    tag: &str,
    n: usize,
    run: u32,
    dist: Option<&Arc<PowerLawDist>>,
) -> Result<RunRow> {
    let seed = derive_seed(config.base_seed, tag, n as u64, run as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let started = Instant::now();
    let mut record = match config.problem {
        ProblemKind::OneMax => {
            let mut state = OneMaxState::random(n, &mut rng);
            let budget = config.budget_for(n, state.target());
            dispatch(&config.algorithm, &mut state, n, dist, &mut rng, &budget)
        }
        ProblemKind::MaxSat => {
            // A fresh instance per run, drawn from the run's own stream
            // before the algorithm starts.
            let inst = Arc::new(SatInstance::generate(n, &mut rng)?);
            let mut state = MaxSatState::random(inst, &mut rng);
            let budget = config.budget_for(n, state.target());
            dispatch(&config.algorithm, &mut state, n, dist, &mut rng, &budget)
        }
    };
    record.seed = seed;
    record.wall_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(RunRow {
        algorithm: tag.to_string(),
        problem: config.problem,
        n,
        run,
        record,
    })
}

fn dispatch<S: FitnessState>(
    spec: &AlgorithmSpec,
    state: &mut S,
    n: usize,
    dist: Option<&Arc<PowerLawDist>>,
    rng: &mut ChaCha8Rng,
    budget: &RunBudget,
) -> RunRecord {
    match spec {
        AlgorithmSpec::Rls => run_rls(state, rng, budget),
        AlgorithmSpec::OnePlusOneEa => run_one_plus_one_ea(state, rng, budget),
        _ => {
            let mut controller = spec
                .controller(n, dist)
                .expect("ollga variants have controllers");
            run_ollga(state, &mut controller, rng, budget)
        }
    }
}

/// Runs the full batch: `runs` independent runs per size, parallel when the
/// `parallel` feature is on. Returns the per-run rows (ordered by size then
/// run index) and their summaries, and writes both as CSV when `config.out`
/// is set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(Vec<RunRow>, Vec<SummaryRow>)> {
    run_experiment_impl(config, false)
}

/// As [`run_experiment`], but forcing sequential execution regardless of the
/// `parallel` feature; the baseline side of the scheduling benchmarks.
pub fn run_experiment_sequential(
    config: &ExperimentConfig,
) -> Result<(Vec<RunRow>, Vec<SummaryRow>)> {
    run_experiment_impl(config, true)
}

fn run_experiment_impl(
    config: &ExperimentConfig,
    force_sequential: bool,
) -> Result<(Vec<RunRow>, Vec<SummaryRow>)> {
    config.validate()?;
    let tag = config.algorithm.tag();
    let mut rows: Vec<RunRow> = Vec::with_capacity(config.sizes.len() * config.runs as usize);
    for &n in &config.sizes {
        // One distribution per (beta, u) pair, shared by all runs at this n.
        let dist = match &config.algorithm {
            AlgorithmSpec::OllgaFast { beta, u } => {
                Some(Arc::new(PowerLawDist::new(*beta, u.resolve(n))?))
            }
            _ => None,
        };
        let run_one = |run: u32| execute_run(config, &tag, n, run, dist.as_ref());
        let mut batch = map_runs(config.runs, config.workers, force_sequential, run_one)?;
        rows.append(&mut batch);
    }
    // Deterministic order regardless of scheduling.
    rows.sort_by(|a, b| (a.n, a.run).cmp(&(b.n, b.run)));
    let summaries = summarize(&rows);
    if let Some(out) = &config.out {
        write_outputs(&rows, &summaries, out)?;
    }
    Ok((rows, summaries))
}

#[cfg(feature = "parallel")]
fn map_runs<F>(
    runs: u32,
    workers: Option<usize>,
    force_sequential: bool,
    f: F,
) -> Result<Vec<RunRow>>
where
    F: Fn(u32) -> Result<RunRow> + Sync + Send,
{
    if force_sequential {
        return (0..runs).map(f).collect();
    }
    match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::invalid(format!("cannot build worker pool: {e}")))?;
            pool.install(|| (0..runs).into_par_iter().map(f).collect())
        }
        None => (0..runs).into_par_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn map_runs<F>(
    runs: u32,
    _workers: Option<usize>,
    _force_sequential: bool,
    f: F,
) -> Result<Vec<RunRow>>
where
    F: Fn(u32) -> Result<RunRow> + Sync + Send,
{
    (0..runs).map(f).collect()
}

/// Mean and sample standard deviation (divisor runs - 1) of evaluations/n,
/// and the mean iteration count, per (algorithm, problem, n) group. Group
/// order and results are independent of the input permutation.
pub fn summarize(rows: &[RunRow]) -> Vec<SummaryRow> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(String, &'static str, usize), Vec<&RunRow>> = BTreeMap::new();
    for row in rows {
        groups
            .entry((row.algorithm.clone(), row.problem.tag(), row.n))
            .or_default()
            .push(row);
    }
    groups
        .into_iter()
        .map(|((algorithm, problem, n), mut group)| {
            group.sort_by_key(|r| r.run);
            let runs = group.len() as u32;
            let eval_sum: u64 = group.iter().map(|r| r.record.evaluations).sum();
            let iter_sum: u64 = group.iter().map(|r| r.record.iterations).sum();
            // The mean is the integer sum divided exactly once.
            let mean_evals_per_n = eval_sum as f64 / (runs as u64 * n as u64) as f64;
            let mean_evals = eval_sum as f64 / runs as f64;
            let std_evals_per_n = if runs > 1 {
                let ss: f64 = group
                    .iter()
                    .map(|r| {
                        let d = r.record.evaluations as f64 - mean_evals;
                        d * d
                    })
                    .sum();
                (ss / (runs as f64 - 1.0)).sqrt() / n as f64
            } else {
                0.0
            };
            SummaryRow {
                algorithm,
                problem: problem.to_string(),
                n,
                runs,
                mean_evals_per_n,
                std_evals_per_n,
                mean_iterations: iter_sum as f64 / runs as f64,
            }
        })
        .collect()
}

/// Builds a OneMax state at Hamming distance exactly `d` from the optimum,
/// executes `trials` single (1+(λ,λ)) iterations from fresh copies with λ
/// drawn from the controller, and returns the fraction that strictly
/// improved fitness together with its binomial standard error.
pub fn estimate_progress_probability<R: rand::Rng + ?Sized>(
    n: usize,
    d: usize,
    controller: &LambdaController,
    trials: u32,
    rng: &mut R,
) -> Result<(f64, f64)> {
    if d == 0 || d > n {
        return Err(Error::invalid(format!("distance d={d} outside [1..n={n}]")));
    }
    if trials == 0 {
        return Err(Error::invalid("trials must be >= 1"));
    }
    let template = OneMaxState::at_distance(n, d);
    let mut ctrl = controller.clone();
    let mut successes = 0u64;
    for _ in 0..trials {
        let mut state = template.clone();
        let lambda = ctrl
            .next_lambda(n, state.fitness(), None, rng)
            .clamp(1.0, n as f64);
        let out = ollga_iteration(&mut state, lambda, rng, u64::MAX);
        if out.improved {
            successes += 1;
        }
    }
    let p = successes as f64 / trials as f64;
    let stderr = (p * (1.0 - p) / trials as f64).sqrt();
    Ok((p, stderr))
}

pub const RUN_CSV_HEADER: &str =
    "algorithm,problem,n,run,seed,evaluations,iterations,best_fitness,hit_optimum,wall_ms";

pub const SUMMARY_CSV_HEADER: &str =
    "algorithm,problem,n,runs,mean_evals_per_n,std_evals_per_n,mean_iterations";

pub fn records_to_csv(rows: &[RunRow]) -> String {
    let mut out = String::from(RUN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.algorithm,
            r.problem.tag(),
            r.n,
            r.run,
            r.record.seed,
            r.record.evaluations,
            r.record.iterations,
            r.record.best_fitness,
            r.record.hit_optimum,
            r.record.wall_ms,
        ));
    }
    out
}

pub fn records_from_csv(text: &str) -> Result<Vec<RunRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == RUN_CSV_HEADER => {}
        _ => return Err(Error::parse("missing per-run CSV header")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 10 {
            return Err(Error::parse(format!("row {}: expected 10 fields", i + 2)));
        }
        let record = RunRecord {
            seed: parse_field(f[4], i)?,
            evaluations: parse_field(f[5], i)?,
            iterations: parse_field(f[6], i)?,
            best_fitness: parse_field(f[7], i)?,
            hit_optimum: parse_field(f[8], i)?,
            wall_ms: parse_field(f[9], i)?,
            lambda_clamps: 0,
        };
        rows.push(RunRow {
            algorithm: f[0].to_string(),
            problem: f[1].parse()?,
            n: parse_field(f[2], i)?,
            run: parse_field(f[3], i)?,
            record,
        });
    }
    Ok(rows)
}

pub fn summary_to_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.algorithm,
            r.problem,
            r.n,
            r.runs,
            r.mean_evals_per_n,
            r.std_evals_per_n,
            r.mean_iterations,
        ));
    }
    out
}

pub fn summary_from_csv(text: &str) -> Result<Vec<SummaryRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SUMMARY_CSV_HEADER => {}
        _ => return Err(Error::parse("missing summary CSV header")),
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(Error::parse(format!("row {}: expected 7 fields", i + 2)));
        }
        rows.push(SummaryRow {
            algorithm: f[0].to_string(),
            problem: f[1].to_string(),
            n: parse_field(f[2], i)?,
            runs: parse_field(f[3], i)?,
            mean_evals_per_n: parse_field(f[4], i)?,
            std_evals_per_n: parse_field(f[5], i)?,
            mean_iterations: parse_field(f[6], i)?,
        });
    }
    Ok(rows)
}

fn parse_field<T: FromStr>(s: &str, row: usize) -> Result<T> {
    s.parse()
        .map_err(|_| Error::parse(format!("row {}: bad field `{s}`", row + 2)))
}

/// Writes per-run records to `out` and the summary to `<out stem>.summary.csv`.
pub fn write_outputs(rows: &[RunRow], summaries: &[SummaryRow], out: &Path) -> Result<()> {
    std::fs::write(out, records_to_csv(rows))?;
    std::fs::write(summary_path(out), summary_to_csv(summaries))?;
    Ok(())
}

pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.csv")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn tiny_config(algorithm: AlgorithmSpec, problem: ProblemKind, n: usize) -> ExperimentConfig {
        ExperimentConfig::new(algorithm, problem, vec![n], 8, 12345)
    }

    #[test]
    fn tags_are_stable_and_comma_free() {
        let specs = [
            AlgorithmSpec::Rls,
            AlgorithmSpec::OnePlusOneEa,
            AlgorithmSpec::OllgaStatic,
            AlgorithmSpec::OllgaFitnessDependent,
            AlgorithmSpec::OllgaOneFifth {
                cap: CapPolicy::TwoLogN,
                factor: 1.5,
            },
            AlgorithmSpec::OllgaFast {
                beta: 2.5,
                u: UPolicy::N,
            },
        ];
        let tags: Vec<String> = specs.iter().map(|s| s.tag()).collect();
        assert_eq!(tags[0], "rls");
        assert_eq!(tags[1], "opo-ea");
        assert_eq!(tags[4], "ollga-onefifth(cap=2ln;f=1.5)");
        assert_eq!(tags[5], "ollga-fast(beta=2.5;u=n)");
        for t in &tags {
            assert!(!t.contains(','));
        }
    }

    #[test]
    fn u_policy_resolution() {
        assert_eq!(UPolicy::N.resolve(65536), 65536);
        // floor(2 ln(65537)) = floor(22.18) = 22.
        assert_eq!(UPolicy::TwoLogN.resolve(65536), 22);
        assert_eq!(UPolicy::Fixed(8).resolve(65536), 8);
        assert_eq!("n".parse::<UPolicy>().unwrap(), UPolicy::N);
        assert_eq!("2ln".parse::<UPolicy>().unwrap(), UPolicy::TwoLogN);
        assert_eq!("32".parse::<UPolicy>().unwrap(), UPolicy::Fixed(32));
        assert!("x".parse::<UPolicy>().is_err());
    }

    #[test]
    fn seeds_separate_algorithms_and_runs() {
        let a = derive_seed(1, "rls", 64, 0);
        assert_eq!(a, derive_seed(1, "rls", 64, 0));
        assert_ne!(a, derive_seed(1, "opo-ea", 64, 0));
        assert_ne!(a, derive_seed(1, "rls", 128, 0));
        assert_ne!(a, derive_seed(1, "rls", 64, 1));
        assert_ne!(a, derive_seed(2, "rls", 64, 0));
    }

    #[test]
    fn validation_rejects_bad_configs() {
        let mut c = tiny_config(AlgorithmSpec::Rls, ProblemKind::OneMax, 16);
        c.runs = 0;
        assert!(c.validate().is_err());

        let mut c = tiny_config(AlgorithmSpec::Rls, ProblemKind::OneMax, 16);
        c.sizes.clear();
        assert!(c.validate().is_err());

        let c = tiny_config(AlgorithmSpec::Rls, ProblemKind::MaxSat, 2);
        assert!(c.validate().is_err());

        let c = tiny_config(
            AlgorithmSpec::OllgaFast {
                beta: 2.5,
                u: UPolicy::Fixed(100),
            },
            ProblemKind::OneMax,
            16,
        );
        assert!(c.validate().is_err(), "u > n must be rejected");
    }

    #[test]
    fn single_bit_rls_summary_is_trivial() {
        let config = ExperimentConfig::new(AlgorithmSpec::Rls, ProblemKind::OneMax, vec![1], 1, 7);
        let (rows, summaries) = run_experiment(&config).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].record.hit_optimum);
        assert_eq!(summaries.len(), 1);
        assert!(summaries[0].mean_evals_per_n <= 1.0);
    }

    #[test]
    fn experiments_are_deterministic_and_scheduling_independent() {
        let config = tiny_config(
            AlgorithmSpec::OllgaFast {
                beta: 2.5,
                u: UPolicy::N,
            },
            ProblemKind::OneMax,
            128,
        );
        let (rows_a, sum_a) = run_experiment(&config).unwrap();
        let (rows_b, sum_b) = run_experiment(&config).unwrap();
        let (rows_c, sum_c) = run_experiment_sequential(&config).unwrap();
        let strip = |rows: &[RunRow]| {
            let mut v = rows.to_vec();
            for r in &mut v {
                r.record.wall_ms = 0.0;
            }
            v
        };
        assert_eq!(strip(&rows_a), strip(&rows_b));
        assert_eq!(strip(&rows_a), strip(&rows_c));
        assert_eq!(sum_a, sum_b);
        assert_eq!(sum_a, sum_c);
        // Summaries never depend on wall time, so their CSV is byte-stable.
        assert_eq!(summary_to_csv(&sum_a), summary_to_csv(&sum_c));

        let mut config2 = config.clone();
        config2.workers = Some(1);
        let (_, sum_d) = run_experiment(&config2).unwrap();
        assert_eq!(sum_a, sum_d);
    }

    #[test]
    fn maxsat_batch_runs_and_hits_on_small_instances() {
        let config = tiny_config(
            AlgorithmSpec::OllgaFast {
                beta: 2.5,
                u: UPolicy::N,
            },
            ProblemKind::MaxSat,
            32,
        );
        let (rows, summaries) = run_experiment(&config).unwrap();
        assert_eq!(rows.len(), 8);
        for r in &rows {
            assert!(r.record.hit_optimum, "run {} missed the optimum", r.run);
            assert!(r.record.best_fitness > 0);
        }
        assert_eq!(summaries[0].problem, "maxsat");
    }

    #[test]
    fn summarize_by_hand() {
        let mk = |evals: u64, run: u32| RunRow {
            algorithm: "rls".into(),
            problem: ProblemKind::OneMax,
            n: 10,
            run,
            record: RunRecord {
                evaluations: evals,
                iterations: evals,
                best_fitness: 10,
                seed: run as u64,
                wall_ms: 0.5,
                hit_optimum: true,
                lambda_clamps: 0,
            },
        };
        let rows = vec![mk(10, 0), mk(20, 1)];
        let s = summarize(&rows);
        assert_eq!(s.len(), 1);
        assert!((s[0].mean_evals_per_n - 1.5).abs() < 1e-15);
        assert!((s[0].std_evals_per_n - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((s[0].mean_iterations - 15.0).abs() < 1e-15);

        // Single record: std is 0 by convention.
        let s = summarize(&rows[..1]);
        assert_eq!(s[0].std_evals_per_n, 0.0);

        // Permutation stability.
        let flipped = vec![rows[1].clone(), rows[0].clone()];
        assert_eq!(summarize(&rows), summarize(&flipped));
    }

    #[test]
    fn record_csv_round_trips() {
        let config = tiny_config(AlgorithmSpec::OnePlusOneEa, ProblemKind::OneMax, 64);
        let (rows, summaries) = run_experiment(&config).unwrap();
        let text = records_to_csv(&rows);
        let parsed = records_from_csv(&text).unwrap();
        // lambda_clamps is not serialized; compare everything else.
        assert_eq!(parsed.len(), rows.len());
        for (p, r) in parsed.iter().zip(&rows) {
            assert_eq!(p.algorithm, r.algorithm);
            assert_eq!(p.problem, r.problem);
            assert_eq!((p.n, p.run), (r.n, r.run));
            assert_eq!(p.record.seed, r.record.seed);
            assert_eq!(p.record.evaluations, r.record.evaluations);
            assert_eq!(p.record.wall_ms, r.record.wall_ms);
            assert_eq!(p.record.hit_optimum, r.record.hit_optimum);
        }

        let stext = summary_to_csv(&summaries);
        assert_eq!(summary_from_csv(&stext).unwrap(), summaries);
    }

    #[test]
    fn csv_rejects_malformed_input() {
        assert!(records_from_csv("nope\n").is_err());
        assert!(summary_from_csv("nope\n").is_err());
        let bad = format!("{RUN_CSV_HEADER}\nrls,onemax,64\n");
        assert!(records_from_csv(&bad).is_err());
    }

    #[test]
    fn outputs_are_written_when_requested() {
        let dir = std::env::temp_dir().join("fastga-harness-test");
        std::fs::create_dir_all(&dir).unwrap();
        let out = dir.join("records.csv");
        let mut config = tiny_config(AlgorithmSpec::Rls, ProblemKind::OneMax, 32);
        config.out = Some(out.clone());
        let (rows, summaries) = run_experiment(&config).unwrap();
        let on_disk = std::fs::read_to_string(&out).unwrap();
        assert_eq!(on_disk, records_to_csv(&rows));
        let summary_disk = std::fs::read_to_string(summary_path(&out)).unwrap();
        assert_eq!(summary_disk, summary_to_csv(&summaries));
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn progress_probe_rejects_bad_distance_and_finds_sure_progress() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let ctrl = LambdaController::Static(1.0);
        assert!(estimate_progress_probability(64, 0, &ctrl, 10, &mut rng).is_err());
        assert!(estimate_progress_probability(64, 65, &ctrl, 10, &mut rng).is_err());

        // From the all-wrong string with lambda = 1, flipping ell >= 1 bits
        // and keeping them all is always a strict improvement.
        let (p, _) = estimate_progress_probability(64, 64, &ctrl, 100_000, &mut rng).unwrap();
        assert!(p >= 0.6, "measured probability {p}");
    }

    #[test]
    fn progress_probe_grows_with_distance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let ctrl = LambdaController::Static(2.0);
        let (p1, se1) = estimate_progress_probability(1024, 16, &ctrl, 100_000, &mut rng).unwrap();
        let (p2, _) = estimate_progress_probability(1024, 32, &ctrl, 100_000, &mut rng).unwrap();
        assert!(p2 >= p1 - 3.0 * se1, "p(32) = {p2} vs p(16) = {p1}");
    }
}

//! Command-line benchmark harness: seeded experiment batches (`run`,
//! `sweep`), the analytical bound tables (`bounds`), and Monte-Carlo
//! progress-probability estimation (`probe`).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use fastga::algorithms::LambdaController;
use fastga::bounds::{leading_constant, progress_bound, runtime_bound};
use fastga::harness::{
    estimate_progress_probability, run_experiment, summary_path, summary_to_csv, AlgorithmSpec,
    ExperimentConfig, ProblemKind, UPolicy,
};
use fastga::sampling::PowerLawDist;

#[derive(Parser)]
#[command(
    name = "fastga",
    about = "Benchmark harness for the fast (1+(lambda,lambda)) GA and friends",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm over a size sweep and write per-run + summary CSV
    Run(RunArgs),
    /// Run a batch of `run`-style experiments from a JSON config file
    Sweep(SweepArgs),
    /// Print the progress/runtime bound cells and the leading constant
    Bounds(BoundsArgs),
    /// Estimate the one-iteration progress probability at distance d
    Probe(ProbeArgs),
}

#[derive(Args)]
struct RunArgs {
    /// rls | opo-ea | ollga-static | ollga-fitdep | ollga-onefifth | ollga-fast
    #[arg(long)]
    algorithm: String,
    /// Power-law exponent for ollga-fast
    #[arg(long, default_value_t = 2.5)]
    beta: f64,
    /// Upper limit policy for ollga-fast: n | 2ln | <integer>
    #[arg(long, default_value = "n")]
    u: String,
    /// Cap policy for ollga-onefifth: none | 2ln
    #[arg(long, default_value = "none")]
    cap: String,
    /// One-fifth update factor F
    #[arg(long, default_value_t = 1.5)]
    factor: f64,
    /// onemax | maxsat
    #[arg(long)]
    problem: String,
    /// Problem sizes, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    runs: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Per-run evaluation budget (default: 10^4 * n)
    #[arg(long)]
    max_evals: Option<u64>,
    /// Per-run records CSV path; the summary goes to <out>.summary.csv
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON file holding an array of run specs (see README)
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    beta: f64,
    #[arg(long)]
    u: u64,
    #[arg(long)]
    n: u64,
    /// Also print the progress-probability cell at this distance
    #[arg(long)]
    d: Option<u64>,
    /// Emit CSV instead of aligned text
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u32,
    /// Power-law exponent of the heavy-tailed controller
    #[arg(long, default_value_t = 2.5)]
    beta: f64,
    /// Upper limit policy: n | 2ln | <integer>
    #[arg(long, default_value = "n")]
    u: String,
    /// Probe a static λ instead of the heavy-tailed controller
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// JSON shape of one sweep entry; field meanings match the `run` flags.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepEntry {
    algorithm: String,
    #[serde(default = "defaults::beta")]
    beta: f64,
    #[serde(default = "defaults::u")]
    u: String,
    #[serde(default = "defaults::cap")]
    cap: String,
    #[serde(default = "defaults::factor")]
    factor: f64,
    problem: String,
    n: Vec<usize>,
    #[serde(default = "defaults::runs")]
    runs: u32,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    workers: Option<usize>,
    #[serde(default)]
    max_evals: Option<u64>,
    out: PathBuf,
}

mod defaults {
    pub fn beta() -> f64 {
        2.5
    }
    pub fn u() -> String {
        "n".into()
    }
    pub fn cap() -> String {
        "none".into()
    }
    pub fn factor() -> f64 {
        1.5
    }
    pub fn runs() -> u32 {
        100
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Probe(args) => cmd_probe(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn algorithm_spec(
    name: &str,
    beta: f64,
    u: &str,
    cap: &str,
    factor: f64,
) -> fastga::Result<AlgorithmSpec> {
    let spec = match name {
        "rls" => AlgorithmSpec::Rls,
        "opo-ea" => AlgorithmSpec::OnePlusOneEa,
        "ollga-static" => AlgorithmSpec::OllgaStatic,
        "ollga-fitdep" => AlgorithmSpec::OllgaFitnessDependent,
        "ollga-onefifth" => AlgorithmSpec::OllgaOneFifth {
            cap: cap.parse()?,
            factor,
        },
        "ollga-fast" => AlgorithmSpec::OllgaFast {
            beta,
            u: u.parse()?,
        },
        other => {
            return Err(fastga::Error::Parse(format!(
                "unknown algorithm `{other}`"
            )))
        }
    };
    Ok(spec)
}

fn cmd_run(args: RunArgs) -> fastga::Result<()> {
    let algorithm = algorithm_spec(&args.algorithm, args.beta, &args.u, &args.cap, args.factor)?;
    let problem: ProblemKind = args.problem.parse()?;
    let mut config = ExperimentConfig::new(algorithm, problem, args.n, args.runs, args.seed);
    config.workers = args.workers;
    config.max_evaluations = args.max_evals;
    config.out = Some(args.out.clone());
    let (_, summaries) = run_experiment(&config)?;
    print!("{}", summary_to_csv(&summaries));
    eprintln!(
        "wrote {} and {}",
        args.out.display(),
        summary_path(&args.out).display()
    );
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> fastga::Result<()> {
    let text = std::fs::read_to_string(&args.config)?;
    let entries: Vec<SweepEntry> = serde_json::from_str(&text)
        .map_err(|e| fastga::Error::Parse(format!("{}: {e}", args.config.display())))?;
    for (i, entry) in entries.iter().enumerate() {
        let algorithm = algorithm_spec(
            &entry.algorithm,
            entry.beta,
            &entry.u,
            &entry.cap,
            entry.factor,
        )?;
        let problem: ProblemKind = entry.problem.parse()?;
        let mut config =
            ExperimentConfig::new(algorithm, problem, entry.n.clone(), entry.runs, entry.seed);
        config.workers = entry.workers;
        config.max_evaluations = entry.max_evals;
        config.out = Some(entry.out.clone());
        eprintln!(
            "[{}/{}] {} on {}",
            i + 1,
            entries.len(),
            config.algorithm.tag(),
            entry.problem
        );
        let (_, summaries) = run_experiment(&config)?;
        print!("{}", summary_to_csv(&summaries));
    }
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> fastga::Result<()> {
    let (ti, tf) = runtime_bound(args.beta, args.u, args.n)?;
    let lead = leading_constant(args.beta).ok();
    let progress = match args.d {
        Some(d) => Some(progress_bound(args.beta, args.u, args.n, d)?),
        None => None,
    };
    if args.csv {
        println!("quantity,expression,regime,value");
        println!("iterations,O({}),{},{}", ti.expression, ti.regime, ti.value);
        println!("evaluations,O({}),{},{}", tf.expression, tf.regime, tf.value);
        if let Some(c) = lead {
            println!("leading-constant,328*beta*(5-beta)/((3-beta)*(beta-2)),beta in (2 3),{c}");
        }
        if let Some(p) = progress {
            println!("progress,Omega({}),{},{}", p.expression, p.regime, p.value);
        }
    } else {
        println!("beta = {}, u = {}, n = {}", args.beta, args.u, args.n);
        println!(
            "  E[T_I] = O({:<28}bound(const=1) = {:.6e}   [{}]",
            format!("{})", ti.expression),
            ti.value,
            ti.regime
        );
        println!(
            "  E[T_F] = O({:<28}bound(const=1) = {:.6e}   [{}]",
            format!("{})", tf.expression),
            tf.value,
            tf.regime
        );
        match lead {
            Some(c) => println!("  leading constant estimate for E[T_F] = {c:.2}"),
            None => println!("  leading constant estimate: only defined for beta in (2,3)"),
        }
        if let Some(p) = progress {
            println!(
                "  p_d    = Omega({:<24}bound(const=1) = {:.6e}   [{}]",
                format!("{})", p.expression),
                p.value,
                p.regime
            );
        }
    }
    Ok(())
}

fn cmd_probe(args: ProbeArgs) -> fastga::Result<()> {
    use rand::SeedableRng;
    let controller = match args.lambda {
        Some(l) => LambdaController::Static(l),
        None => {
            let policy: UPolicy = args.u.parse()?;
            let u = policy.resolve(args.n);
            LambdaController::heavy_tailed(std::sync::Arc::new(PowerLawDist::new(args.beta, u)?))
        }
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let (p, stderr) =
        estimate_progress_probability(args.n, args.d, &controller, args.trials, &mut rng)?;
    println!(
        "n = {}, d = {}, trials = {}: progress probability = {:.6} +- {:.6}",
        args.n, args.d, args.trials, p, stderr
    );
    Ok(())
}

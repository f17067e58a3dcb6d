//! The (1+(λ,λ)) GA optimization loop with its λ-controllers, plus the RLS
//! and (1+1) EA baselines.
//!
//! All algorithms use practice-aware evaluation accounting: offspring that
//! are provably identical to an already-evaluated individual are never
//! charged a fitness evaluation. Concretely, the (1+1) EA draws its flip
//! count conditioned on being nonzero, the GA resamples ℓ until ℓ ≠ 0,
//! crossover draws equal to the parent are repeated without evaluation, and
//! crossover draws equal to the mutation winner x′ are not evaluated; x′
//! itself participates in the final selection, losing ties against the
//! crossover winner. The evaluation of the random initial individual is not
//! counted.

use std::sync::Arc;

use rand::Rng;

use crate::problems::{subsample_patch_nonempty, FitnessState, Patch};
use crate::sampling::{sample_ell_conditioned, PowerLawDist};

/// Policy choosing the offspring population size λ for each iteration.
///
/// λ is real-valued: the self-adjusting controllers move it continuously,
/// while the algorithm rounds it to an integer offspring count and uses the
/// real value for the mutation rate λ/n and crossover bias 1/λ.
#[derive(Clone, Debug)]
pub enum LambdaController {
    /// A constant λ.
    Static(f64),
    /// λ = sqrt(n / (n - f(x))), defined while f(x) < n.
    FitnessDependent,
    /// One-fifth success rule: divide λ by `update_factor` on success,
    /// multiply by `update_factor^(1/4)` on failure, clamped to `[1, cap]`.
    /// Success means a strict fitness improvement.
    OneFifth {
        lambda: f64,
        update_factor: f64,
        cap: f64,
    },
    /// A fresh power-law draw each iteration.
    HeavyTailed(Arc<PowerLawDist>),
}

/// The default one-fifth update factor.
pub const DEFAULT_ONE_FIFTH_FACTOR: f64 = 1.5;

impl LambdaController {
    /// One-fifth controller starting from λ = 1.
    pub fn one_fifth(update_factor: f64, cap: f64) -> Self {
        assert!(update_factor > 1.0, "one-fifth factor must exceed 1");
        assert!(cap >= 1.0);
        LambdaController::OneFifth {
            lambda: 1.0,
            update_factor,
            cap,
        }
    }

    pub fn heavy_tailed(dist: Arc<PowerLawDist>) -> Self {
        LambdaController::HeavyTailed(dist)
    }

    /// The static λ that approximates the optimal fixed choice on OneMax:
    /// `2*sqrt(lnp(n)*lnp(lnp(n)) / lnp(lnp(lnp(n))))` with `lnp(x) = ln(x+1)`.
    pub fn optimal_static(n: usize) -> Self {
        LambdaController::Static(optimal_static_lambda(n))
    }

    /// λ for the next iteration. `last_success` reports whether the previous
    /// iteration strictly improved fitness (`None` before the first one);
    /// only the one-fifth controller consumes it.
    pub fn next_lambda<R: Rng + ?Sized>(
        &mut self,
        n: usize,
        current_fitness: u64,
        last_success: Option<bool>,
        rng: &mut R,
    ) -> f64 {
        match self {
            LambdaController::Static(lambda) => *lambda,
            LambdaController::FitnessDependent => {
                assert!(
                    current_fitness < n as u64,
                    "fitness-dependent lambda is undefined at the optimum"
                );
                (n as f64 / (n as f64 - current_fitness as f64)).sqrt()
            }
            LambdaController::OneFifth {
                lambda,
                update_factor,
                cap,
            } => {
                match last_success {
                    Some(true) => *lambda /= *update_factor,
                    Some(false) => *lambda *= update_factor.powf(0.25),
                    None => {}
                }
                *lambda = lambda.clamp(1.0, *cap);
                *lambda
            }
            LambdaController::HeavyTailed(dist) => dist.sample(rng) as f64,
        }
    }
}

pub fn optimal_static_lambda(n: usize) -> f64 {
    let lnp = |x: f64| (x + 1.0).ln();
    let l1 = lnp(n as f64);
    let l2 = lnp(l1);
    let l3 = lnp(l2);
    2.0 * (l1 * l2 / l3).sqrt()
}

/// Evaluation budget and termination target of a run.
#[derive(Clone, Copy, Debug)]
pub struct RunBudget {
    pub max_evaluations: u64,
    pub target_fitness: u64,
}

impl RunBudget {
    pub fn new(max_evaluations: u64, target_fitness: u64) -> Self {
        assert!(max_evaluations > 0);
        Self {
            max_evaluations,
            target_fitness,
        }
    }

    pub fn unlimited(target_fitness: u64) -> Self {
        Self {
            max_evaluations: u64::MAX,
            target_fitness,
        }
    }
}

/// One algorithm run's outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub evaluations: u64,
    pub iterations: u64,
    pub best_fitness: u64,
    pub seed: u64,
    pub wall_ms: f64,
    pub hit_optimum: bool,
    /// Iterations where the controller proposed λ > n and was clamped.
    pub lambda_clamps: u64,
}

impl RunRecord {
    fn fresh() -> Self {
        Self {
            evaluations: 0,
            iterations: 0,
            best_fitness: 0,
            seed: 0,
            wall_ms: 0.0,
            hit_optimum: false,
            lambda_clamps: 0,
        }
    }
}

/// Randomized local search: flip one uniformly random bit per iteration,
/// accept if not worse.
pub fn run_rls<S: FitnessState, R: Rng + ?Sized>(
    state: &mut S,
    rng: &mut R,
    budget: &RunBudget,
) -> RunRecord {
    let n = state.n();
    let mut rec = RunRecord::fresh();
    loop {
        if state.fitness() >= budget.target_fitness {
            rec.hit_optimum = true;
            break;
        }
        if rec.evaluations >= budget.max_evaluations {
            break;
        }
        let patch = Patch::random_subset(n, 1, rng);
        let f = state.eval_patch(&patch);
        rec.evaluations += 1;
        rec.iterations += 1;
        if f >= state.fitness() {
            state.commit_patch(&patch, f);
        }
    }
    rec.best_fitness = state.fitness();
    rec
}

/// The (1+1) EA with standard bit mutation at rate 1/n, resampling offspring
/// identical to the parent: the flip count is `Bin(n, 1/n)` conditioned to
/// be at least 1, at uniformly random positions. Accepts if not worse.
pub fn run_one_plus_one_ea<S: FitnessState, R: Rng + ?Sized>(
    state: &mut S,
    rng: &mut R,
    budget: &RunBudget,
) -> RunRecord {
    let n = state.n();
    let mut rec = RunRecord::fresh();
    loop {
        if state.fitness() >= budget.target_fitness {
            rec.hit_optimum = true;
            break;
        }
        if rec.evaluations >= budget.max_evaluations {
            break;
        }
        let flips = sample_ell_conditioned(n as u64, 1.0, rng).expect("rate 1/n is valid");
        let patch = Patch::random_subset(n, flips as usize, rng);
        let f = state.eval_patch(&patch);
        rec.evaluations += 1;
        rec.iterations += 1;
        if f >= state.fitness() {
            state.commit_patch(&patch, f);
        }
    }
    rec.best_fitness = state.fitness();
    rec
}

/// What a single (1+(λ,λ)) iteration did.
#[derive(Clone, Copy, Debug)]
pub struct IterationOutcome {
    /// Fitness evaluations charged to this iteration.
    pub evaluations: u64,
    /// The common Hamming distance of the mutants from the parent.
    pub ell: u64,
    /// Whether the committed winner strictly improved fitness.
    pub improved: bool,
    /// Whether the optimum was evaluated (and adopted) this iteration.
    pub reached_target: bool,
    /// Whether the evaluation budget ran out mid-iteration.
    pub budget_exhausted: bool,
}

/// One iteration of the (1+(λ,λ)) GA at the given real-valued λ.
///
/// The offspring count is `round(λ)` (at least 1); the mutation strength is
/// `ℓ ~ Bin(n, λ/n)` conditioned on `ℓ >= 1`; each mutant flips a uniform
/// random ℓ-subset; crossover keeps each winner index with bias `1/λ`.
/// Fitness ties among mutants, and among crossover offspring, are broken
/// uniformly at random; x′ loses fitness ties against the crossover winner.
/// The run stops the moment an evaluation produces the target fitness.
pub fn ollga_iteration<S: FitnessState, R: Rng + ?Sized>(
    state: &mut S,
    lambda: f64,
    rng: &mut R,
    max_new_evaluations: u64,
) -> IterationOutcome {
    let n = state.n();
    debug_assert!(lambda >= 1.0 && lambda <= n as f64);
    let target = state.target();
    let start_fitness = state.fitness();
    let offspring = lambda.round().max(1.0) as u64;
    let ell = sample_ell_conditioned(n as u64, lambda, rng).expect("lambda in (0, n]");

    let mut outcome = IterationOutcome {
        evaluations: 0,
        ell,
        improved: false,
        reached_target: false,
        budget_exhausted: false,
    };

    // Mutation phase: `offspring` mutants at distance exactly ell.
    //
    // When ell = n (routine while a self-adjusting λ sits clamped at n, since
    // then Bin(n, λ/n) is deterministic), every mutant is the one possible
    // full-flip patch: all offspring are identical, so the shared fitness is
    // computed once and each offspring is charged its evaluation.
    if ell == n as u64 {
        if max_new_evaluations == 0 {
            outcome.budget_exhausted = true;
            return outcome;
        }
        let patch = Patch::random_subset(n, n, rng);
        let f = state.eval_patch(&patch);
        outcome.evaluations += 1;
        if f >= target {
            state.commit_patch(&patch, f);
            outcome.improved = f > start_fitness;
            outcome.reached_target = true;
            return outcome;
        }
        let rest = offspring - 1;
        let chargeable = rest.min(max_new_evaluations - outcome.evaluations);
        outcome.evaluations += chargeable;
        if chargeable < rest {
            outcome.budget_exhausted = true;
            return outcome;
        }
        return crossover_phase(state, patch, f, lambda, offspring, rng, outcome, max_new_evaluations);
    }

    let mut winner: Option<(Patch, u64)> = None;
    let mut winner_ties = 0u32;
    for _ in 0..offspring {
        if outcome.evaluations >= max_new_evaluations {
            outcome.budget_exhausted = true;
            return outcome;
        }
        let patch = Patch::random_subset(n, ell as usize, rng);
        let f = state.eval_patch(&patch);
        outcome.evaluations += 1;
        if f >= target {
            state.commit_patch(&patch, f);
            outcome.improved = f > start_fitness;
            outcome.reached_target = true;
            return outcome;
        }
        winner = match winner {
            None => {
                winner_ties = 1;
                Some((patch, f))
            }
            Some((best, best_f)) => {
                if f > best_f {
                    winner_ties = 1;
                    Some((patch, f))
                } else if f == best_f {
                    winner_ties += 1;
                    if rng.gen_range(0..winner_ties) == 0 {
                        Some((patch, f))
                    } else {
                        Some((best, best_f))
                    }
                } else {
                    Some((best, best_f))
                }
            }
        };
    }
    let (mutation_patch, mutation_fitness) = winner.expect("offspring >= 1");
    crossover_phase(
        state,
        mutation_patch,
        mutation_fitness,
        lambda,
        offspring,
        rng,
        outcome,
        max_new_evaluations,
    )
}

/// Crossover phase and final selection. Empty subsamples (copies of the
/// parent) are repeated without evaluation; a draw equal to the full mutant
/// patch is x' itself and is not evaluated either, but x' competes in the
/// final selection, losing ties to the crossover winner.
#[allow(clippy::too_many_arguments)]
fn crossover_phase<S: FitnessState, R: Rng + ?Sized>(
    state: &mut S,
    mutation_patch: Patch,
    mutation_fitness: u64,
    lambda: f64,
    offspring: u64,
    rng: &mut R,
    mut outcome: IterationOutcome,
    max_new_evaluations: u64,
) -> IterationOutcome {
    let target = state.target();
    let start_fitness = state.fitness();
    let bias = (1.0 / lambda).min(1.0);
    let mut cross: Option<(Patch, u64)> = None;
    let mut cross_ties = 0u32;
    for _ in 0..offspring {
        let sub = subsample_patch_nonempty(&mutation_patch, bias, rng);
        if sub.len() == mutation_patch.len() {
            continue;
        }
        if outcome.evaluations >= max_new_evaluations {
            outcome.budget_exhausted = true;
            return outcome;
        }
        let f = state.eval_patch(&sub);
        outcome.evaluations += 1;
        if f >= target {
            state.commit_patch(&sub, f);
            outcome.improved = f > start_fitness;
            outcome.reached_target = true;
            return outcome;
        }
        cross = match cross {
            None => {
                cross_ties = 1;
                Some((sub, f))
            }
            Some((best, best_f)) => {
                if f > best_f {
                    cross_ties = 1;
                    Some((sub, f))
                } else if f == best_f {
                    cross_ties += 1;
                    if rng.gen_range(0..cross_ties) == 0 {
                        Some((sub, f))
                    } else {
                        Some((best, best_f))
                    }
                } else {
                    Some((best, best_f))
                }
            }
        };
    }

    // Final selection among the crossover winner and x', crossover first.
    let (final_patch, final_fitness) = match cross {
        Some((p, f)) if f >= mutation_fitness => (p, f),
        _ => (mutation_patch, mutation_fitness),
    };
    if final_fitness >= start_fitness {
        state.commit_patch(&final_patch, final_fitness);
        outcome.improved = final_fitness > start_fitness;
    }
    outcome
}

/// The (1+(λ,λ)) GA: runs [`ollga_iteration`] with λ supplied by the
/// controller until the target fitness is reached or the budget is spent.
/// A proposed λ above n is clamped to n and counted in `lambda_clamps`.
pub fn run_ollga<S: FitnessState, R: Rng + ?Sized>(
    state: &mut S,
    controller: &mut LambdaController,
    rng: &mut R,
    budget: &RunBudget,
) -> RunRecord {
    let n = state.n();
    let mut rec = RunRecord::fresh();
    let mut last_success: Option<bool> = None;
    loop {
        if state.fitness() >= budget.target_fitness {
            rec.hit_optimum = true;
            break;
        }
        if rec.evaluations >= budget.max_evaluations {
            break;
        }
        let proposed = controller.next_lambda(n, state.fitness(), last_success, rng);
        let lambda = if proposed > n as f64 {
            rec.lambda_clamps += 1;
            n as f64
        } else {
            proposed.max(1.0)
        };
        let out = ollga_iteration(
            state,
            lambda,
            rng,
            budget.max_evaluations - rec.evaluations,
        );
        rec.evaluations += out.evaluations;
        rec.iterations += 1;
        last_success = Some(out.improved);
        if out.reached_target {
            rec.hit_optimum = true;
            break;
        }
        if out.budget_exhausted {
            break;
        }
    }
    rec.best_fitness = state.fitness();
    rec
}

//! Search-point representation, patch-based incremental fitness evaluation,
//! the OneMax benchmark, and planted random MAX-3SAT instances.

mod bits;
pub mod dimacs;
mod maxsat;
mod onemax;

pub use bits::{subsample_patch, BitString, Patch};
pub use maxsat::{maxsat_eval, planted_clause_count, Clause, MaxSatState, SatInstance};
pub use onemax::{onemax_eval, OneMaxState};

pub(crate) use bits::subsample_patch_nonempty;

/// A search point together with its fitness and any problem-specific cache,
/// supporting patch-based incremental evaluation.
///
/// `eval_patch` is logically const: it reports the fitness of
/// `current() XOR patch` without changing the observable state (the `&mut`
/// receiver only grants access to internal scratch buffers). `commit_patch`
/// applies a patch whose fitness was previously computed by `eval_patch`;
/// passing any other fitness value is a programming error caught by debug
/// assertions.
pub trait FitnessState: Clone {
    fn n(&self) -> usize;

    /// Fitness of the current search point; always equals a full
    /// recomputation of the objective.
    fn fitness(&self) -> u64;

    /// The optimum fitness value (n for OneMax, m for planted MAX-3SAT).
    fn target(&self) -> u64;

    fn current(&self) -> &BitString;

    /// Fitness of `current() XOR patch`, in O(|patch|) work for OneMax and
    /// O(sum of occurrence-list lengths) for MAX-3SAT.
    fn eval_patch(&mut self, patch: &Patch) -> u64;

    /// XORs `patch` into the current point and updates fitness and caches.
    fn commit_patch(&mut self, patch: &Patch, new_fitness: u64);
}

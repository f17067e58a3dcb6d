//! The fast (1+(λ,λ)) genetic algorithm with a heavy-tailed choice of the
//! offspring population size λ, together with the algorithms it is usually
//! compared against, the benchmark problems it is usually run on, and an
//! executable form of the runtime bounds that describe it.
//!
//! The crate is organized around five modules:
//!
//! - [`sampling`]: the truncated power-law distribution over λ and the
//!   conditioned binomial sampling of the mutation strength ℓ.
//! - [`problems`]: word-packed bit strings, patch-based incremental fitness
//!   evaluation, OneMax, and planted random MAX-3SAT instances (with DIMACS
//!   import/export).
//! - [`algorithms`]: the (1+(λ,λ)) GA optimization loop with its four
//!   λ-controllers, plus RLS and the (1+1) EA baselines, all with
//!   practice-aware evaluation accounting.
//! - [`bounds`]: harmonic-sum sandwich bounds, E[λ] moments, and the
//!   progress-probability and runtime-bound tables as executable formulas.
//! - [`harness`]: seeded batches of independent runs, statistics, and CSV
//!   output. Runs execute in parallel via rayon when the `parallel` feature
//!   (on by default) is enabled, and sequentially otherwise.

pub mod algorithms;
pub mod bounds;
mod error;
pub mod harness;
pub mod problems;
pub mod sampling;
mod util;

pub use error::{Error, Result};

//! The OneMax benchmark: fitness is the number of one-bits.

use rand::Rng;

use super::bits::{BitString, Patch};
use super::FitnessState;

/// Counts the one-bits of `x`.
pub fn onemax_eval(x: &BitString) -> u64 {
    x.count_ones()
}

/// A OneMax search point with its fitness kept in sync.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneMaxState {
    bits: BitString,
    fitness: u64,
}

impl OneMaxState {
    pub fn new(bits: BitString) -> Self {
        let fitness = onemax_eval(&bits);
        Self { bits, fitness }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::new(BitString::random(n, rng))
    }

    /// The all-ones string with `d` zeros planted at the lowest indices;
    /// a OneMax state at Hamming distance exactly `d` from the optimum.
    pub fn at_distance(n: usize, d: usize) -> Self {
        assert!(d <= n);
        let mut bits = BitString::ones(n);
        for i in 0..d {
            bits.flip(i);
        }
        Self::new(bits)
    }
}

impl FitnessState for OneMaxState {
    fn n(&self) -> usize {
        self.bits.len()
    }

    fn fitness(&self) -> u64 {
        self.fitness
    }

    fn target(&self) -> u64 {
        self.bits.len() as u64
    }

    fn current(&self) -> &BitString {
        &self.bits
    }

    fn eval_patch(&mut self, patch: &Patch) -> u64 {
        let mut delta = 0i64;
        for &i in patch.indices() {
            delta += if self.bits.get(i as usize) { -1 } else { 1 };
        }
        (self.fitness as i64 + delta) as u64
    }

    fn commit_patch(&mut self, patch: &Patch, new_fitness: u64) {
        debug_assert_eq!(self.eval_patch(patch), new_fitness);
        self.bits.apply_patch(patch);
        self.fitness = new_fitness;
    }
}

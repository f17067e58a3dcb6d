//! Planted random MAX-3SAT instances and their incremental evaluation.
//!
//! Instances have `round(4 n ln n)` clauses over `n` variables. Each clause
//! is drawn by sampling three distinct variables and three independent signs,
//! rejecting draws not satisfied by the all-ones assignment, so the all-ones
//! string is a planted optimum. A per-variable occurrence index enables
//! patch-based fitness deltas.

use std::sync::Arc;

use rand::Rng;

use super::bits::{BitString, Patch};
use super::FitnessState;
use crate::{Error, Result};

/// One 3-CNF clause: three distinct variables and their signs
/// (`true` = positive literal).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Clause {
    pub vars: [u32; 3],
    pub signs: [bool; 3],
}

impl Clause {
    /// Number of literals satisfied under `x`, in `0..=3`.
    #[inline]
    pub fn satisfied_literals(&self, x: &BitString) -> u32 {
        let mut count = 0;
        for slot in 0..3 {
            if x.get(self.vars[slot] as usize) == self.signs[slot] {
                count += 1;
            }
        }
        count
    }

    /// Whether the all-ones assignment satisfies this clause, i.e. at least
    /// one literal is positive.
    pub fn satisfied_by_all_ones(&self) -> bool {
        self.signs.iter().any(|&s| s)
    }
}

/// The clause count `round(4 n ln n)` used for generated instances.
pub fn planted_clause_count(n: usize) -> usize {
    let nf = n as f64;
    (4.0 * nf * nf.ln()).round() as usize
}

/// A planted random 3-CNF formula with a per-variable clause-occurrence
/// index. Immutable after construction and cheap to share between runs.
#[derive(Clone, Debug)]
pub struct SatInstance {
    n: usize,
    clauses: Vec<Clause>,
    // CSR occurrence index: for variable v, occ_data[occ_offsets[v]..occ_offsets[v+1]]
    // holds (clause_index << 1) | sign entries, so the delta-evaluation hot
    // loop never touches the clause array.
    occ_offsets: Vec<u32>,
    occ_data: Vec<u32>,
}

impl SatInstance {
    /// Generates a planted instance with `round(4 n ln n)` clauses.
    pub fn generate<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("MAX-3SAT needs at least 3 variables"));
        }
        let m = planted_clause_count(n);
        let mut clauses = Vec::with_capacity(m);
        while clauses.len() < m {
            let picked = rand::seq::index::sample(rng, n, 3);
            let vars = [
                picked.index(0) as u32,
                picked.index(1) as u32,
                picked.index(2) as u32,
            ];
            let signs = [rng.gen(), rng.gen(), rng.gen()];
            let clause = Clause { vars, signs };
            // An all-negative draw is rejected wholesale, variables included.
            if clause.satisfied_by_all_ones() {
                clauses.push(clause);
            }
        }
        Self::from_clauses(n, clauses)
    }

    /// Builds an instance from explicit clauses, validating the planted-
    /// satisfiability and distinct-variables invariants and constructing the
    /// occurrence index. The clause count is taken as given, so loaded
    /// instances need not follow the `4 n ln n` convention.
    pub fn from_clauses(n: usize, clauses: Vec<Clause>) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("MAX-3SAT needs at least 3 variables"));
        }
        for (ci, c) in clauses.iter().enumerate() {
            if c.vars.iter().any(|&v| v as usize >= n) {
                return Err(Error::invalid(format!(
                    "clause {ci} references a variable >= n={n}"
                )));
            }
            if c.vars[0] == c.vars[1] || c.vars[0] == c.vars[2] || c.vars[1] == c.vars[2] {
                return Err(Error::invalid(format!(
                    "clause {ci} has repeated variables"
                )));
            }
            if !c.satisfied_by_all_ones() {
                return Err(Error::invalid(format!(
                    "clause {ci} is not satisfied by the planted all-ones solution"
                )));
            }
        }

        assert!(clauses.len() < (1 << 31), "clause index must fit 31 bits");
        let mut counts = vec![0u32; n + 1];
        for c in &clauses {
            for &v in &c.vars {
                counts[v as usize + 1] += 1;
            }
        }
        for v in 0..n {
            counts[v + 1] += counts[v];
        }
        let occ_offsets = counts;
        let mut occ_data = vec![0u32; occ_offsets[n] as usize];
        let mut cursor = occ_offsets.clone();
        for (ci, c) in clauses.iter().enumerate() {
            for (slot, &v) in c.vars.iter().enumerate() {
                let at = &mut cursor[v as usize];
                occ_data[*at as usize] = ((ci as u32) << 1) | c.signs[slot] as u32;
                *at += 1;
            }
        }

        Ok(Self {
            n,
            clauses,
            occ_offsets,
            occ_data,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Clause count.
    pub fn m(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Indices of the clauses containing variable `v`.
    pub fn clauses_of(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.occurrence_packed(v).iter().map(|&e| (e >> 1) as usize)
    }

    #[inline]
    fn occurrence_packed(&self, v: usize) -> &[u32] {
        let lo = self.occ_offsets[v] as usize;
        let hi = self.occ_offsets[v + 1] as usize;
        &self.occ_data[lo..hi]
    }
}

/// Number of clauses of `inst` with at least one satisfied literal under `x`.
pub fn maxsat_eval(inst: &SatInstance, x: &BitString) -> Result<u64> {
    if x.len() != inst.n() {
        return Err(Error::invalid(format!(
            "assignment length {} does not match instance n={}",
            x.len(),
            inst.n()
        )));
    }
    Ok(inst
        .clauses
        .iter()
        .filter(|c| c.satisfied_literals(x) > 0)
        .count() as u64)
}

/// A MAX-3SAT search point with its fitness and a per-clause count of
/// satisfied literals kept in sync. A clause's satisfaction flips only when
/// that count crosses 0, which makes patch deltas O(1) per touched literal.
///
/// Patches touching a large fraction of the clause set are evaluated by a
/// sequential full recount instead, which is cheaper than chasing the
/// occurrence lists through memory; the crossover point is roughly where the
/// expected number of occurrence-list entries reaches a fraction of m.
#[derive(Clone, Debug)]
pub struct MaxSatState {
    inst: Arc<SatInstance>,
    bits: BitString,
    fitness: u64,
    sat_counts: Vec<u8>,
    // Merged eval scratch, one word per clause: (visit epoch << 8) | (delta + 128).
    stamp_delta: Vec<u32>,
    epoch: u32,
    touched: Vec<u32>,
    recount_threshold: usize,
}

const EPOCH_LIMIT: u32 = (1 << 24) - 1;

impl MaxSatState {
    pub fn new(inst: Arc<SatInstance>, bits: BitString) -> Result<Self> {
        if bits.len() != inst.n() {
            return Err(Error::invalid(format!(
                "assignment length {} does not match instance n={}",
                bits.len(),
                inst.n()
            )));
        }
        let m = inst.m();
        let mut sat_counts = vec![0u8; m];
        let mut fitness = 0u64;
        for (ci, c) in inst.clauses().iter().enumerate() {
            let count = c.satisfied_literals(&bits) as u8;
            sat_counts[ci] = count;
            if count > 0 {
                fitness += 1;
            }
        }
        let recount_threshold = (inst.n() / 12).max(64);
        Ok(Self {
            inst,
            bits,
            fitness,
            sat_counts,
            stamp_delta: vec![128; m],
            epoch: 0,
            touched: Vec::new(),
            recount_threshold,
        })
    }

    pub fn random<R: Rng + ?Sized>(inst: Arc<SatInstance>, rng: &mut R) -> Self {
        let bits = BitString::random(inst.n(), rng);
        Self::new(inst, bits).expect("lengths match by construction")
    }

    pub fn instance(&self) -> &SatInstance {
        &self.inst
    }

    /// The satisfied-literal count per clause; equals a from-scratch recount.
    pub fn satisfied_literal_counts(&self) -> &[u8] {
        &self.sat_counts
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == EPOCH_LIMIT {
            self.stamp_delta.fill(128);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    /// Fitness of `bits XOR patch` by temporarily applying the patch and
    /// recounting every clause sequentially; restores the bits afterwards.
    fn recount_with(&mut self, patch: &Patch) -> u64 {
        self.bits.apply_patch(patch);
        let fitness = self
            .inst
            .clauses()
            .iter()
            .filter(|c| c.satisfied_literals(&self.bits) > 0)
            .count() as u64;
        self.bits.apply_patch(patch);
        fitness
    }
}

impl FitnessState for MaxSatState {
    fn n(&self) -> usize {
        self.inst.n()
    }

    fn fitness(&self) -> u64 {
        self.fitness
    }

    fn target(&self) -> u64 {
        self.inst.m() as u64
    }

    fn current(&self) -> &BitString {
        &self.bits
    }

    fn eval_patch(&mut self, patch: &Patch) -> u64 {
        if patch.len() >= self.recount_threshold {
            return self.recount_with(patch);
        }
        let epoch = self.next_epoch();
        self.touched.clear();
        for &i in patch.indices() {
            let v = i as usize;
            debug_assert!(v < self.inst.n());
            let bit = self.bits.get(v);
            for &e in self.inst.occurrence_packed(v) {
                let c = (e >> 1) as usize;
                let sign = (e & 1) == 1;
                // Flipping v negates this literal's satisfaction.
                let d: i32 = if sign == bit { -1 } else { 1 };
                let sd = self.stamp_delta[c];
                let sd = if sd >> 8 != epoch {
                    self.touched.push(c as u32);
                    (epoch << 8) | 128
                } else {
                    sd
                };
                self.stamp_delta[c] = sd.wrapping_add_signed(d);
            }
        }
        let mut fitness = self.fitness as i64;
        for &c in &self.touched {
            let c = c as usize;
            let delta = (self.stamp_delta[c] & 0xFF) as i64 - 128;
            let before = self.sat_counts[c] as i64;
            fitness += i64::from(before + delta > 0) - i64::from(before > 0);
        }
        fitness as u64
    }

    fn commit_patch(&mut self, patch: &Patch, new_fitness: u64) {
        debug_assert_eq!(self.eval_patch(patch), new_fitness);
        if patch.len() >= self.recount_threshold {
            self.bits.apply_patch(patch);
            let mut fitness = 0u64;
            for (ci, c) in self.inst.clauses().iter().enumerate() {
                let count = c.satisfied_literals(&self.bits) as u8;
                self.sat_counts[ci] = count;
                if count > 0 {
                    fitness += 1;
                }
            }
            self.fitness = fitness;
        } else {
            let mut fitness = self.fitness as i64;
            for &i in patch.indices() {
                let v = i as usize;
                let bit = self.bits.get(v);
                for &e in self.inst.occurrence_packed(v) {
                    let c = (e >> 1) as usize;
                    let sign = (e & 1) == 1;
                    let before = self.sat_counts[c];
                    let after = if sign == bit { before - 1 } else { before + 1 };
                    self.sat_counts[c] = after;
                    fitness += i64::from(after > 0) - i64::from(before > 0);
                }
                self.bits.flip(v);
            }
            self.fitness = fitness as u64;
        }
        debug_assert_eq!(self.fitness, new_fitness);
    }
}

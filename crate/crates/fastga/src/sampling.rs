//! The truncated power-law distribution over the offspring population size λ
//! and the conditioned binomial sampling of the mutation strength ℓ.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::util::KahanSum;
use crate::{Error, Result};

/// A power-law distribution over `[1..u]` with exponent `beta`:
/// `Pr[λ = i] = C · i^(-beta)`, where `C` normalizes the mass to 1.
///
/// The distribution is immutable after construction and can be shared freely
/// across concurrent runs. Sampling is inverse-transform on the precomputed
/// CDF with binary search, O(log u) per draw and deterministic for a given
/// random stream.
#[derive(Clone, Debug)]
pub struct PowerLawDist {
    beta: f64,
    upper: u64,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
    norm_const: f64,
}

impl PowerLawDist {
    /// Builds the distribution for exponent `beta` and upper limit `u >= 1`.
    ///
    /// The normalization constant is the exact reciprocal of the power sum,
    /// computed by direct compensated summation rather than via the analytic
    /// sandwich bounds, so the latter remain independent oracles in tests.
    pub fn new(beta: f64, u: u64) -> Result<Self> {
        if u == 0 {
            return Err(Error::invalid("power-law upper limit u must be >= 1"));
        }
        if !beta.is_finite() {
            return Err(Error::invalid("power-law exponent beta must be finite"));
        }
        let mut sum = KahanSum::new();
        for i in 1..=u {
            sum.add((i as f64).powf(-beta));
        }
        let total = sum.value();
        if !total.is_finite() || total <= 0.0 {
            return Err(Error::invalid(format!(
                "power-law mass is not normalizable for beta={beta}, u={u}"
            )));
        }
        let norm_const = 1.0 / total;

        let mut pmf = Vec::with_capacity(u as usize);
        let mut cdf = Vec::with_capacity(u as usize);
        let mut acc = KahanSum::new();
        for i in 1..=u {
            let p = norm_const * (i as f64).powf(-beta);
            pmf.push(p);
            acc.add(p);
            cdf.push(acc.value());
        }
        // Pin the terminal value so inverse transform cannot run off the end.
        *cdf.last_mut().expect("u >= 1") = 1.0;

        Ok(Self {
            beta,
            upper: u,
            pmf,
            cdf,
            norm_const,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The upper limit `u` of the support `[1..u]`.
    pub fn upper(&self) -> u64 {
        self.upper
    }

    /// `pmf()[i]` is the probability of the value `i + 1`.
    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    /// The normalization coefficient `C`, i.e. the reciprocal power sum.
    pub fn norm_const(&self) -> f64 {
        self.norm_const
    }

    /// Draws a value in `[1..u]` with probability `pmf()[value - 1]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let r: f64 = rng.gen();
        let idx = self.cdf.partition_point(|&c| c < r);
        (idx as u64).min(self.upper - 1) + 1
    }
}

/// Samples the mutation strength `ℓ ~ Bin(n, λ/n)` conditioned on `ℓ >= 1`,
/// by rejection: a draw of zero is thrown away and repeated.
///
/// `λ` may be any real in `(0, n]`; non-integer values arise from the
/// self-adjusting controllers.
pub fn sample_ell_conditioned<R: Rng + ?Sized>(n: u64, lambda: f64, rng: &mut R) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("problem size n must be >= 1"));
    }
    if !(lambda > 0.0 && lambda <= n as f64) {
        return Err(Error::invalid(format!(
            "mutation-rate parameter lambda={lambda} outside (0, n={n}]"
        )));
    }
    let bin = Binomial::new(n, lambda / n as f64)
        .map_err(|e| Error::invalid(format!("binomial parameters rejected: {e}")))?;
    loop {
        let ell = bin.sample(rng);
        if ell > 0 {
            return Ok(ell);
        }
    }
}

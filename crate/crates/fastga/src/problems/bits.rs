//! Word-packed bit strings and the patch representation of offspring.

use rand::Rng;

use crate::{Error, Result};

/// A fixed-length Boolean vector, the search-point representation.
///
/// Storage is word-packed; flipping a patch index is a single-word XOR. The
/// length is immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitString {
    words: Vec<u64>,
    n: usize,
}

impl BitString {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "bit string length must be >= 1");
        Self {
            words: vec![0; n.div_ceil(64)],
            n,
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut s = Self::zeros(n);
        for w in &mut s.words {
            *w = u64::MAX;
        }
        s.clear_tail();
        s
    }

    /// A uniformly random bit string.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut s = Self::zeros(n);
        for w in &mut s.words {
            *w = rng.gen();
        }
        s.clear_tail();
        s
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                s.words[i / 64] |= 1 << (i % 64);
            }
        }
        s
    }

    fn clear_tail(&mut self) {
        let rem = self.n % 64;
        if rem != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.n);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// XORs the patch into this string in place.
    pub fn apply_patch(&mut self, patch: &Patch) {
        for &i in patch.indices() {
            self.flip(i as usize);
        }
    }
}

/// A sorted set of distinct bit positions, encoding a candidate offspring as
/// a diff against a parent. Applying a patch twice is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Patch {
    indices: Vec<u32>,
}

impl Patch {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a patch from arbitrary distinct indices; sorts them.
    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]), "duplicate index");
        Self { indices }
    }

    /// A uniformly random `k`-subset of `[0..n)`.
    pub fn random_subset<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Self {
        debug_assert!(k <= n);
        if k == n {
            // The only n-subset; no randomness to consume.
            return Self {
                indices: (0..n as u32).collect(),
            };
        }
        let picked = rand::seq::index::sample(rng, n, k);
        Self::new(picked.iter().map(|i| i as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn contains(&self, i: u32) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Retains each index of `patch` independently with probability `bias`.
///
/// This is the crossover step of the (1+(λ,λ)) GA expressed on patches: the
/// result is the diff of the crossover offspring against the parent, because
/// taking a bit from the mutation winner at a position where parent and
/// winner agree is a no-op.
pub fn subsample_patch<R: Rng + ?Sized>(patch: &Patch, bias: f64, rng: &mut R) -> Result<Patch> {
    if !(bias > 0.0 && bias <= 1.0) {
        return Err(Error::invalid(format!(
            "crossover bias {bias} outside (0, 1]"
        )));
    }
    let kept = patch
        .indices()
        .iter()
        .copied()
        .filter(|_| rng.gen::<f64>() < bias)
        .collect();
    Ok(Patch { indices: kept })
}

/// Equivalent to repeating [`subsample_patch`] until the result is non-empty,
/// in one pass: the retained count is `Bin(|patch|, bias)` conditioned to be
/// at least 1, and the retained indices are a uniform subset of that size.
pub(crate) fn subsample_patch_nonempty<R: Rng + ?Sized>(
    patch: &Patch,
    bias: f64,
    rng: &mut R,
) -> Patch {
    debug_assert!(!patch.is_empty());
    debug_assert!(bias > 0.0 && bias <= 1.0);
    let len = patch.len() as u64;
    let kept = crate::sampling::sample_ell_conditioned(len, bias * len as f64, rng)
        .expect("bias in (0,1] implies valid binomial rate") as usize;
    if kept == patch.len() {
        return patch.clone();
    }
    let picked = rand::seq::index::sample(rng, patch.len(), kept);
    Patch::new(picked.iter().map(|i| patch.indices()[i]).collect())
}

//! Deterministic random streams.
//!
//! [`RngStream`] wraps a ChaCha8 generator, which is counter based and
//! produces the same sequence on every platform. All derived draws are
//! computed here from raw 64-bit words so their mapping is fixed:
//!
//! * uniform real in `[a, b)`: `a + (b - a) * u`, with
//!   `u = (word >> 11) * 2^-53`;
//! * uniform integer in `[a, b]`: rejection sampling on `word % n`, rejecting
//!   words below `2^64 mod n`;
//! * standard normal: Box-Muller cosine branch using two uniforms
//!   `u1 = 1 - u` (so `u1` is in `(0, 1]`) and `u2 = u`, one normal per pair;
//! * permutation of `n`: Fisher-Yates from the last index down, swapping `i`
//!   with a uniform integer in `[0, i]`.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Uniform integer in the inclusive range `[lo, hi]`.
    pub fn uniform_int(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi, "empty integer range");
        let span = hi - lo;
        if span == u64::MAX {
            return self.next_u64();
        }
        let n = span + 1;
        let reject_below = n.wrapping_neg() % n;
        loop {
            let word = self.next_u64();
            if word >= reject_below {
                return lo + word % n;
            }
        }
    }

    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.uniform_int(0, i as u64) as usize;
            perm.swap(i, j);
        }
        perm
    }
}

/// Closed interval `[lo, hi]` that parameters are drawn from uniformly.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct UniformRange {
    pub lo: f64,
    pub hi: f64,
}

impl UniformRange {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        rng.uniform(self.lo, self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        (self.lo..=self.hi).contains(&v)
    }

    /// True when `self` is a non-empty sub-interval of `outer`.
    pub fn is_within(&self, outer: &UniformRange) -> bool {
        self.lo <= self.hi && outer.contains(self.lo) && outer.contains(self.hi)
    }
}

impl std::fmt::Display for UniformRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = RngStream::new(7);
        let mut b = RngStream::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn uniform_stays_in_range() {
        let mut rng = RngStream::new(1);
        for _ in 0..10_000 {
            let v = rng.uniform(-0.4, 0.4);
            assert!((-0.4..0.4).contains(&v));
            let k = rng.uniform_int(3, 5);
            assert!((3..=5).contains(&k));
        }
    }

    #[test]
    fn uniform_int_degenerate_range() {
        let mut rng = RngStream::new(2);
        assert_eq!(rng.uniform_int(4, 4), 4);
        let _ = rng.uniform_int(0, u64::MAX);
    }

    #[test]
    fn normal_moments() {
        let mut rng = RngStream::new(3);
        let n = 20_000;
        let draws: Vec<f64> = (0..n).map(|_| rng.standard_normal()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "var {var}");
        assert!(draws.iter().all(|d| d.is_finite()));
    }

    #[test]
    fn permutation_is_a_permutation() {
        let mut rng = RngStream::new(4);
        for n in 0..10 {
            let mut p = rng.permutation(n);
            p.sort_unstable();
            assert_eq!(p, (0..n).collect::<Vec<_>>());
        }
    }
}

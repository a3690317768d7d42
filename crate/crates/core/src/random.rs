//! Seeded random instances for property checks.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::scalar::Field;

/// Deterministic generator; the same seed always yields the same instances.
pub struct Rng {
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn seeded(seed: u64) -> Self {
        Rng { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Integer in `-bound..=bound`.
    pub fn int(&mut self, bound: i64) -> i64 {
        self.inner.gen_range(-bound..=bound)
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.inner.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.inner.gen_bool(0.5)
    }

    /// `n/d` with `|n| ≤ bound` and `1 ≤ d ≤ 3`.
    pub fn small_rational<F: Field>(&mut self, bound: i64) -> F {
        let n = self.int(bound);
        let d = self.inner.gen_range(1..=3);
        F::from_ratio(n, d)
    }

    /// Nonzero small rational.
    pub fn nonzero_rational<F: Field>(&mut self, bound: i64) -> F {
        loop {
            let x: F = self.small_rational(bound);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn matrix<F: Field>(&mut self, n: usize, bound: i64) -> Matrix<F> {
        Matrix::from_fn(n, n, |_, _| self.small_rational(bound))
    }

    /// Uniform permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.inner.gen_range(0..=i);
            p.swap(i, j);
        }
        p
    }
}

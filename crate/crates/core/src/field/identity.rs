//! Randomized identity testing at rational points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ratfunc::RationalFunction;

/// Numerators and denominators of sampled rationals are bounded by this.
pub const HEIGHT_BOUND: i64 = 10_000;

/// Rank used for the admissibility filter when no rank is given.
pub const DEFAULT_DEPTH: usize = 16;

/// True when `r ≠ 0` and `r^(2k) ≠ ±1` for `1 ≤ k ≤ n`.
pub fn is_admissible_r(r: &BigRational, n: usize) -> bool {
    if r.is_zero() {
        return false;
    }
    let one = BigRational::one();
    let r2 = r * r;
    let mut p = BigRational::one();
    for _ in 0..n {
        p = &p * &r2;
        if p == one || p == -one.clone() {
            return false;
        }
    }
    true
}

/// Deterministic sampler of random rationals and admissible points.
pub struct PointSampler {
    rng: ChaCha8Rng,
    n: usize,
}

impl PointSampler {
    pub fn new(seed: u64, n: usize) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), n }
    }

    /// Non-zero rational with numerator and denominator at most the bound.
    pub fn rational(&mut self) -> BigRational {
        self.rational_bounded(HEIGHT_BOUND)
    }

    pub fn rational_bounded(&mut self, bound: i64) -> BigRational {
        loop {
            let p: i64 = self.rng.gen_range(-bound..=bound);
            let q: i64 = self.rng.gen_range(1..=bound);
            if p != 0 {
                return BigRational::new(BigInt::from(p), BigInt::from(q));
            }
        }
    }

    pub fn admissible_r(&mut self) -> BigRational {
        self.admissible_r_bounded(HEIGHT_BOUND)
    }

    pub fn admissible_r_bounded(&mut self, bound: i64) -> BigRational {
        loop {
            let r = self.rational_bounded(bound);
            if is_admissible_r(&r, self.n) {
                return r;
            }
        }
    }

    /// A random `(l, r)` with admissible `r`.
    pub fn point(&mut self) -> (BigRational, BigRational) {
        let r = self.admissible_r();
        (self.rational(), r)
    }

    /// A random `c·r^k` with `|c| ≠ 1`, so never one of the critical values.
    pub fn generic_l(&mut self) -> super::LValue {
        loop {
            let c = self.rational_bounded(50);
            if c.numer().magnitude() != c.denom().magnitude() {
                let k = self.rng.gen_range(-12..=12);
                return super::LValue::new(c, k).expect("non-zero coefficient");
            }
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }
}

/// True iff `x == y` at `points` random admissible points (poles skipped).
pub fn probabilistic_identity(
    x: &RationalFunction,
    y: &RationalFunction,
    points: usize,
    seed: u64,
) -> bool {
    let mut s = PointSampler::new(seed, DEFAULT_DEPTH);
    let mut done = 0;
    let mut attempts = 0;
    while done < points {
        attempts += 1;
        if attempts > 100 * points + 100 {
            // every point hit a pole: treat as unverified
            return false;
        }
        let (l, r) = s.point();
        match (x.eval(&l, &r), y.eval(&l, &r)) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    return false;
                }
                done += 1;
            }
            _ => continue,
        }
    }
    true
}

//! Deterministic randomness for simulations and certification.
//!
//! Everything random in this crate flows through SplitMix64 (Steele, Lea
//! and Flood's 64-bit mixer), chosen because its output is a pure integer
//! function of the seed: streams are bit-identical across platforms and
//! runs, which the reproducibility guarantees depend on. Per-sample
//! substreams are derived by hashing (seed, index), so sample k can be
//! regenerated without replaying samples 0..k-1.

use crate::scalar::Rational;
use crate::stream::IncrementStream;
use num::BigInt;

/// The SplitMix64 finalizer: a bijective avalanche mix of a 64-bit value.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// An independent generator for (seed, index). Used to give every
    /// sample of an experiment its own stream.
    pub fn substream(seed: u64, index: u64) -> Self {
        SplitMix64 {
            state: mix64(seed ^ mix64(index.wrapping_add(GOLDEN_GAMMA))),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform on the half-open unit interval (0, 1]; never returns 0, so
    /// it is safe under a logarithm.
    pub fn next_unit(&mut self) -> f64 {
        (((self.next_u64() >> 11) + 1) as f64) * (1.0 / 9007199254740992.0)
    }

    /// Uniform index in `0..bound` via the widening-multiply trick.
    pub fn next_index(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Uniform integer in `lo..=hi`.
    pub fn next_range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.next_index((hi - lo + 1) as usize) as i64
    }

    /// ±1 with equal probability.
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() >> 63 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// A pair of independent standard normals via the Box-Muller transform.
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_unit();
        let u2 = self.next_unit();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// One standard normal (the sine half of a fresh Box-Muller pair is
    /// discarded; fine for our volumes and keeps per-draw state simple).
    pub fn next_normal(&mut self) -> f64 {
        self.next_normal_pair().0
    }

    /// A small random rational: numerator in [-9, 9], denominator in [1, 4].
    pub fn next_small_rational(&mut self) -> Rational {
        let numer = self.next_range_i64(-9, 9);
        let denom = self.next_range_i64(1, 4);
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// A Fisher-Yates shuffled permutation of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.next_index(i + 1);
            out.swap(i, j);
        }
        out
    }
}

/// A stream of small random rational increments, for exact checks.
pub fn random_rational_stream(
    rng: &mut SplitMix64,
    len: usize,
    dimension: usize,
) -> IncrementStream<Rational> {
    let rows = (0..len)
        .map(|_| (0..dimension).map(|_| rng.next_small_rational()).collect())
        .collect();
    IncrementStream::from_rows(dimension, rows).expect("rows built with the right dimension")
}

/// A random rational piecewise-linear path with vertices of small height.
pub fn random_rational_path_vertices(
    rng: &mut SplitMix64,
    vertex_count: usize,
    dimension: usize,
) -> Vec<Vec<Rational>> {
    (0..vertex_count)
        .map(|_| (0..dimension).map(|_| rng.next_small_rational()).collect())
        .collect()
}

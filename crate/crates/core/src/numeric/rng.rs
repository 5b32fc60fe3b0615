//! Counter-based pseudorandom numbers.
//!
//! Monte Carlo runs are parallelized, and we want the i-th sample to be the
//! same no matter how work is split across threads.  A stateful generator
//! cannot give that, so we use a pure function of `(seed, counter)` instead:
//! the SplitMix64 output function applied to `seed + (counter + 1) * golden`,
//! which passes the usual statistical batteries and costs a few arithmetic
//! ops per draw.  Sample `i` of a `dim`-dimensional point uses counters
//! `i * dim .. i * dim + dim`, one per coordinate.

/// Stateless generator: every draw is a pure function of the seed and a
/// caller-supplied counter.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    seed: u64,
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    /// The raw 64-bit output for a counter value.
    pub fn value(&self, counter: u64) -> u64 {
        // counter + 1 so that (seed, counter) = (0, 0) does not map to the
        // all-zero input of the mixer.
        let mut z = self.seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// A uniform draw in `[0, 1)` with the full 53 bits of double precision.
    pub fn unit(&self, counter: u64) -> f64 {
        (self.value(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Coordinate `j` of the `i`-th point in `dim` dimensions.
    pub fn coord(&self, i: u64, dim: u32, j: u32) -> f64 {
        debug_assert!(j < dim);
        self.unit(i * dim as u64 + j as u64)
    }
}

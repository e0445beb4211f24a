//! Self-contained deterministic RNG, pinned so that seeded trajectories are
//! reproducible bit-for-bit across implementations and platforms.
//!
//! Seeding: the 64-bit seed is expanded into the 256-bit generator state with
//! SplitMix64 (increment `0x9E3779B97F4A7C15`, mix constants
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`, shifts 30/27/31).
//! Stream: xoshiro256** (rotl(s1 * 5, 7) * 9; shift 17; rotations 45).
//! Bounded draws use the 128-bit widening multiply `(x * n) >> 64` on the raw
//! 64-bit output, with no rejection step.

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256** seeded via SplitMix64.
#[derive(Clone, Debug)]
pub struct Rng {
    s: [u64; 4],
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        let s = [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()];
        Rng { s }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform draw from `0..n` via widening multiply. `n` must be nonzero.
    pub fn gen_range(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        let x = self.next_u64();
        ((x as u128 * n as u128) >> 64) as usize
    }

    /// Fisher-Yates shuffle, back to front.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.gen_range(i + 1);
            items.swap(i, j);
        }
    }
}

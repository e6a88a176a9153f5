//! Seeded determinism: a splitmix64 stream and a stateless 64-bit mixer.
//!
//! Every random choice in the crate is a pure function of `(base seed,
//! trial index, purpose tag)`, so repeated runs with the same configuration
//! are bit-identical regardless of thread scheduling.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 finalizer: a stateless 64-bit bijective mixer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seeded hash of a packed point word, used for processor ownership maps.
#[inline]
pub fn point_hash(seed: u64, word: u64) -> u64 {
    mix64(seed ^ mix64(word))
}

/// Bit mask selecting the low `dim` bits of a word.
#[inline]
pub fn mask(dim: u32) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// splitmix64 sequence generator.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Stream dedicated to one `(base_seed, trial, tag)` triple.
    pub fn for_trial(base_seed: u64, trial: u64, tag: u64) -> Self {
        SplitMix64::new(mix64(base_seed ^ mix64(trial ^ mix64(tag))))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Unbiased uniform draw from `[0, bound)`, `bound > 0`.
    #[inline]
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        if bound.is_power_of_two() {
            return self.next_u64() & (bound - 1);
        }
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// Uniform draw from `[0, bound)` where `bound` may be `2^64`.
    #[inline]
    pub fn next_below_wide(&mut self, bound: u128) -> u64 {
        debug_assert!(bound > 0 && bound <= (1u128 << 64));
        if bound == 1u128 << 64 {
            self.next_u64()
        } else {
            self.next_below(bound as u64)
        }
    }

    /// Fair coin.
    #[inline]
    pub fn next_bool(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    /// Uniform point word of the given dimension.
    #[inline]
    pub fn next_point(&mut self, dim: u32) -> u64 {
        self.next_u64() & mask(dim)
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }

    /// Uniform `count`-subset of `[0, universe)` by Floyd's algorithm.
    /// `universe` may be as large as `2^64`. Result is sorted.
    pub fn sample_distinct(&mut self, universe: u128, count: u64) -> Vec<u64> {
        debug_assert!((count as u128) <= universe);
        let mut chosen = std::collections::HashSet::with_capacity(count as usize);
        let start = universe - count as u128;
        for j in 0..count as u128 {
            let bound = start + j + 1;
            let t = self.next_below_wide(bound);
            if !chosen.insert(t) {
                chosen.insert((bound - 1) as u64);
            }
        }
        let mut out: Vec<u64> = chosen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Uniform `count`-combination of positions `[0, n)`, as a bit mask.
    pub fn position_mask(&mut self, n: u32, count: u32) -> u64 {
        debug_assert!(count <= n && n <= 64);
        let mut m = 0u64;
        // Floyd over bit positions.
        for j in (n - count)..n {
            let t = self.next_below(j as u64 + 1) as u32;
            if m & (1 << t) != 0 {
                m |= 1 << j;
            } else {
                m |= 1 << t;
            }
        }
        m
    }
}

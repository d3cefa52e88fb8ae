//! Deterministic random number streams.
//!
//! Every random draw in this crate comes from a substream derived by mixing a
//! 64-bit base seed with a stream tag and a counter (RR-set ordinal, node id,
//! simulation index, ...). Substreams are independent of thread scheduling, so
//! any work item produces the same bits whether it runs on one thread or many.
//!
//! The generator is xoshiro256++ seeded through splitmix64, implemented here
//! rather than pulled in as a dependency so the bit streams can never drift
//! under a crate upgrade.

/// Stream tags keep substream families (RR sampling, forward simulation,
/// cost assignment, ...) disjoint even when their counters collide.
pub mod tag {
    pub const RR_SET: u64 = 0x5252_5345_5401;
    pub const SIMULATION: u64 = 0x5349_4d55_4c02;
    pub const COST: u64 = 0x434f_5354_5303;
    pub const ESTIMATE: u64 = 0x4553_5449_4d04;
    pub const SYNTHETIC: u64 = 0x5359_4e54_4805;
}

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Collapse (base seed, stream tag, counter) into a single well-mixed seed.
#[inline]
pub fn stream_seed(base: u64, tag: u64, counter: u64) -> u64 {
    let mut s = base;
    let a = splitmix64(&mut s);
    let mut s = a ^ tag;
    let b = splitmix64(&mut s);
    let mut s = b ^ counter;
    splitmix64(&mut s)
}

/// xoshiro256++ by Blackman & Vigna.
#[derive(Clone, Debug)]
pub struct Rng {
    s: [u64; 4],
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let s = [
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
            splitmix64(&mut sm),
        ];
        Rng { s }
    }

    /// Substream positioned at (base, tag, counter).
    pub fn for_stream(base: u64, tag: u64, counter: u64) -> Self {
        Rng::new(stream_seed(base, tag, counter))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[0]
            .wrapping_add(s[3])
            .rotate_left(23)
            .wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in (0, 1].
    #[inline]
    pub fn next_f64_open_closed(&mut self) -> f64 {
        1.0 - self.next_f64()
    }

    /// Uniform integer in [0, bound). Debiased via rejection.
    #[inline]
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        // Lemire's multiply-shift with rejection of the biased region.
        let mut x = self.next_u64();
        let mut m = (x as u128) * (bound as u128);
        let mut low = m as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                x = self.next_u64();
                m = (x as u128) * (bound as u128);
                low = m as u64;
            }
        }
        (m >> 64) as u64
    }

    /// Bernoulli draw with success probability `p`.
    #[inline]
    pub fn coin(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

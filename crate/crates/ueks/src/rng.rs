//! Counter-based uniform random stream.
//!
//! Every variate is a pure function of `(key, counter)`, so draws can be
//! generated in any order, on any number of threads, on any platform, and
//! always reproduce bit for bit. The construction is the SplitMix64
//! generator evaluated at an explicit counter instead of a mutable state.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stateless stream of uniforms keyed by a 64-bit seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniformStream {
    key: u64,
}

impl UniformStream {
    pub fn new(seed: u64) -> Self {
        Self { key: seed }
    }

    /// 64 random bits at counter position `i`.
    #[inline]
    pub fn bits(&self, i: u64) -> u64 {
        mix(self.key.wrapping_add(i.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// Uniform variate in the open interval (0, 1) at counter position `i`.
    ///
    /// The endpoints are excluded so inverse-cdf sampling never produces an
    /// infinite quantile.
    #[inline]
    pub fn u01(&self, i: u64) -> f64 {
        // top 52 bits, centered in its cell
        ((self.bits(i) >> 12) as f64 + 0.5) * (1.0 / 4_503_599_627_370_496.0)
    }
}

/// Sub-seed for replication `index` of a master seed.
///
/// Distinct replications get decorrelated keys; the derivation is itself a
/// counter lookup so replication order never matters.
#[inline]
pub fn substream(seed: u64, index: u64) -> u64 {
    UniformStream::new(seed).bits(index)
}

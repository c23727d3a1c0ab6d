//! The stego key: a secret indicator sequence plus the bit-count threshold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pixel::Channel;

/// Default threshold for the 3-vs-4-bit decision.
pub const DEFAULT_THRESHOLD: u8 = 128;

/// Current key format version, matching the `DPISKEY v1` file magic.
pub const KEY_VERSION: u32 = 1;

/// Minimum indicator sequence length.
pub const MIN_INDICATOR_LEN: usize = 3;

/// The shared secret: an indicator sequence over {R, G, B} consumed
/// cyclically (one symbol per pixel, advancing on skipped pixels too), and
/// the threshold that controls how many bits a data channel carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StegoKey {
    indicator: Vec<Channel>,
    threshold: u8,
    version: u32,
}

impl StegoKey {
    /// Builds a key with the default threshold.
    pub fn new(indicator: Vec<Channel>) -> Result<StegoKey> {
        StegoKey::with_threshold(indicator, DEFAULT_THRESHOLD)
    }

    pub fn with_threshold(indicator: Vec<Channel>, threshold: u8) -> Result<StegoKey> {
        if indicator.len() < MIN_INDICATOR_LEN {
            return Err(Error::InvalidArgument(format!(
                "indicator sequence must have at least {MIN_INDICATOR_LEN} channels, got {}",
                indicator.len()
            )));
        }
        Ok(StegoKey {
            indicator,
            threshold,
            version: KEY_VERSION,
        })
    }

    pub fn indicator(&self) -> &[Channel] {
        &self.indicator
    }

    pub fn threshold(&self) -> u8 {
        self.threshold
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    pub fn len(&self) -> usize {
        self.indicator.len()
    }

    /// Indicator channel for the pixel at row-major index `i`.
    pub fn channel_at(&self, pixel_index: usize) -> Channel {
        self.indicator[pixel_index % self.indicator.len()]
    }

    /// The indicator sequence as a string over R/G/B.
    pub fn indicator_string(&self) -> String {
        self.indicator.iter().map(|c| c.letter()).collect()
    }
}

/// Generates a random key of the given length from a seeded generator.
/// The same (length, seed) pair always yields the same key.
pub fn keygen(length: usize, seed: u64) -> Result<StegoKey> {
    if length < MIN_INDICATOR_LEN {
        return Err(Error::InvalidArgument(format!(
            "indicator length must be at least {MIN_INDICATOR_LEN}, got {length}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indicator = (0..length)
        .map(|_| Channel::ALL[rng.random_range(0..3)])
        .collect();
    StegoKey::new(indicator)
}

//! Reproducible random streams.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// A (seed, stream) pair identifying one reproducible random stream.
///
/// The same pair always reproduces the same draws bit for bit on one build.
/// Replicate r of an experiment runs on `substream(r)`, so results do not
/// depend on execution order or on how replicates are spread over threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomSeed {
    pub seed: u64,
    pub stream_id: u64,
}

impl RandomSeed {
    /// Stream 0 of the given seed.
    pub fn new(seed: u64) -> Self {
        Self { seed, stream_id: 0 }
    }

    pub fn with_stream(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// The stream shifted by `offset`, same seed.
    pub fn substream(&self, offset: u64) -> Self {
        Self {
            seed: self.seed,
            stream_id: self.stream_id.wrapping_add(offset),
        }
    }

    pub(crate) fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

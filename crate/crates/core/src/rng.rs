//! Seeded random streams.
//!
//! A run owns one root seed. Every phase that consumes randomness draws from
//! its own ChaCha8 stream derived from `(root seed, stream id)`, so extra
//! draws in one phase never shift the values another phase sees.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    VertexOrder = 1,
    Crossover = 2,
    Mutation = 3,
    MonteCarlo = 4,
    GraphGeneration = 5,
}

/// Create the generator for `stream` under `root_seed`.
pub fn stream_rng(root_seed: u64, stream: Stream) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(root_seed);
    rng.set_stream(stream as u64);
    rng
}

/// Create an indexed sub-stream, e.g. one per Monte Carlo trial.
pub fn indexed_rng(root_seed: u64, stream: Stream, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(root_seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(stream as u64);
    rng
}

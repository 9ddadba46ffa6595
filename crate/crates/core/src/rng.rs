//! Seeded random streams.
//!
//! Every sampler draws from ChaCha8, a counter-based generator: the output
//! block is a pure function of (key, stream id, counter). The 64-bit user
//! seed becomes the key and each kind of random entity gets its own stream
//! id, so e.g. the vertex types of a graph do not depend on how many label
//! draws were made.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub(crate) enum Stream {
    VertexTypes = 1,
    SameTypePairs = 2,
    CrossTypePairs = 3,
    EdgeLabels = 4,
    Tree = 5,
    StartVector = 6,
    Restart = 7,
    Balanced = 8,
}

pub(crate) fn substream(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

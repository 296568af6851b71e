//! Shared fixtures for the criterion benchmarks.

use permopt::{Graph, TspInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn bench_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::random(n, 0.5, &mut rng)
}

pub fn bench_tsp(n: usize) -> TspInstance {
    TspInstance::unit_ring(n, 10.0)
}

//! Deterministic random-number plumbing.
//!
//! One master seed controls an experiment; each Monte Carlo run draws from
//! its own ChaCha stream keyed by the run index. Streams are independent of
//! scheduling, so a run produces the same draws whether it executes alone,
//! in a thread pool of any size, or in a different process.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type SimRng = ChaCha8Rng;

/// Generator for run `run_index` under `master_seed`.
pub fn run_rng(master_seed: u64, run_index: u32) -> SimRng {
    let mut rng = SimRng::seed_from_u64(master_seed);
    rng.set_stream(run_index as u64);
    rng
}

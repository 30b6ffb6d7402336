//! Shared inputs for the criterion benchmarks.

use join_invariants::{IntMatrix, JoinParams, TupleGrid};

/// A dense `k x k` matrix with entries in `-9..=9` from a fixed linear
/// congruential sequence.
pub fn pseudo_random_matrix(k: usize, seed: u64) -> IntMatrix {
    let mut state = seed;
    IntMatrix::from_fn(k, k, |_, _| {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 19) as i64 - 9
    }.into())
}

pub fn sweep_tuples() -> Vec<JoinParams> {
    TupleGrid::bounded(1, 4, 3).tuples()
}

//! Inputs shared by the benchmarks.

use relchar_core::IntMatrix;

/// A deterministic dense integer matrix with entries in `-4..=4`, built
/// from a linear congruential sequence so benchmark inputs never change.
pub fn scrambled_matrix(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) % 9) as i64 - 4
                })
                .collect()
        })
        .collect();
    IntMatrix::from_dense(&data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_are_reproducible() {
        assert_eq!(scrambled_matrix(5, 7, 3), scrambled_matrix(5, 7, 3));
        assert_ne!(scrambled_matrix(5, 7, 3), scrambled_matrix(5, 7, 4));
    }
}

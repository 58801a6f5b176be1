//! Deterministic seeded sampling for the sweep verifiers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Per-sample generator: independent of sweep order, so parallel and
/// sequential sweeps see identical draws.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (index + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Uniform point of the simplex on the coordinates of `mask`, embedded in a
/// zero-padded vector of length `dim`.
pub fn uniform_simplex_point(rng: &mut ChaCha8Rng, dim: usize, mask: u32) -> Vec<f64> {
    let mut x = vec![0.0; dim];
    let mut total = 0.0;
    for i in 0..dim {
        if mask >> i & 1 == 1 {
            let u: f64 = rng.random::<f64>().max(1e-12);
            let e = -u.ln();
            x[i] = e;
            total += e;
        }
    }
    for v in &mut x {
        *v /= total;
    }
    x
}

/// Uniform vector in [-1, 0] on the coordinates of `mask`, zero elsewhere.
pub fn uniform_collar_vector(rng: &mut ChaCha8Rng, dim: usize, mask: u32) -> Vec<f64> {
    (0..dim)
        .map(|i| {
            if mask >> i & 1 == 1 {
                -rng.random::<f64>()
            } else {
                0.0
            }
        })
        .collect()
}

/// Maps `f` over `0..count`; data-parallel when the `parallel` feature is
/// on, plain iteration otherwise. Output order is by index either way.
#[cfg(feature = "parallel")]
pub fn map_indices<T: Send, F: Fn(u64) -> T + Sync + Send>(count: u64, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indices<T, F: Fn(u64) -> T>(count: u64, f: F) -> Vec<T> {
    (0..count).map(f).collect()
}

/// Always-sequential variant, kept for benchmarking against the parallel
/// sweep.
pub fn map_indices_seq<T, F: Fn(u64) -> T>(count: u64, f: F) -> Vec<T> {
    (0..count).map(f).collect()
}

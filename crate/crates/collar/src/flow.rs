//! The piecewise collar maps, the interpolating flow, and the coherence
//! sweep.

use crate::partition::partition_g;
use crate::sample::{map_indices, map_indices_seq, sample_rng, uniform_collar_vector,
    uniform_simplex_point};
use crate::CollarError;

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// The chart map phi_S(x, t): coordinates t_j off I, x_j on I minus S, and
/// b_S(x, t) x_j on S, where b_S makes the output sum to 1. `x` and `t` are
/// full-length vectors over the ambient index set; `x` is read on `i_mask`
/// and `t` off it.
pub fn phi_piecewise(
    i_mask: u32,
    s_mask: u32,
    x: &[f64],
    t: &[f64],
) -> Result<Vec<f64>, CollarError> {
    if s_mask == 0 {
        return Err(CollarError::EmptySubset);
    }
    if s_mask & !i_mask != 0 {
        return Err(CollarError::Other(
            "rescaling set must lie inside the face index set".into(),
        ));
    }
    let dim = x.len();
    let x_s: f64 = members(s_mask).map(|i| x[i]).sum();
    if x_s <= 0.0 {
        return Err(CollarError::DegenerateRescalingSet { sum: x_s });
    }
    let t_sum: f64 = (0..dim).filter(|&j| i_mask >> j & 1 == 0).map(|j| t[j]).sum();
    let rest: f64 = members(i_mask & !s_mask).map(|i| x[i]).sum();
    let b = (1.0 - t_sum - rest) / x_s;
    Ok((0..dim)
        .map(|j| {
            if i_mask >> j & 1 == 0 {
                t[j]
            } else if s_mask >> j & 1 == 1 {
                b * x[j]
            } else {
                x[j]
            }
        })
        .collect())
}

/// Velocity of the interpolating field at `y` for the straight path toward
/// `t`: each chart S inside `i_mask` contributes its weight g_S(y) times
/// (t_j off I, 0 on I minus S, and -(sum of t off I) y_j / y_S on S).
fn field(i_mask: u32, t: &[f64], y: &[f64]) -> Result<Vec<f64>, CollarError> {
    let dim = y.len();
    let g = partition_g(y)?;
    let t_sum: f64 = (0..dim).filter(|&j| i_mask >> j & 1 == 0).map(|j| t[j]).sum();
    let mut v = vec![0.0; dim];
    let mut weight = 0.0;
    for s_mask in 1u32..1 << dim {
        if s_mask & !i_mask != 0 {
            continue;
        }
        let w = g[s_mask as usize];
        let y_s: f64 = members(s_mask).map(|i| y[i]).sum();
        if y_s < 1e-9 {
            if w >= 1e-9 {
                return Err(CollarError::ChartGuard {
                    mask: s_mask,
                    x_s: y_s,
                    g: w,
                });
            }
            continue;
        }
        if w == 0.0 {
            continue;
        }
        weight += w;
        for i in members(s_mask) {
            v[i] += w * (-t_sum) * y[i] / y_s;
        }
    }
    for j in 0..dim {
        if i_mask >> j & 1 == 0 {
            v[j] += weight * t[j];
        }
    }
    Ok(v)
}

/// The collar map Phi_{I in J}(x, t): time-1 flow of the interpolating field
/// along the straight path, by classical fixed-step RK4. `x` lives on
/// `i_mask` (zero elsewhere); `t` lives off it with entries in [-1, 0].
pub fn collar_flow(
    i_mask: u32,
    x: &[f64],
    t: &[f64],
    steps: usize,
) -> Result<Vec<f64>, CollarError> {
    let dim = x.len();
    if dim == 0 || dim > 20 {
        return Err(CollarError::Other(format!("unsupported dimension {dim}")));
    }
    if steps < 16 {
        return Err(CollarError::Other(format!(
            "integrator needs at least 16 steps, got {steps}"
        )));
    }
    for j in 0..dim {
        if i_mask >> j & 1 == 0 && !(-1.0..=0.0).contains(&t[j]) {
            return Err(CollarError::Other(format!(
                "collar entry t[{j}] = {} outside [-1, 0]",
                t[j]
            )));
        }
    }
    if (0..dim).all(|j| i_mask >> j & 1 == 1) || t.iter().all(|&v| v == 0.0) {
        return Ok(x.to_vec());
    }

    let h = 1.0 / steps as f64;
    let mut y = x.to_vec();
    for _ in 0..steps {
        let k1 = field(i_mask, t, &y)?;
        let k2 = field(i_mask, t, &axpy(&y, &k1, h / 2.0))?;
        let k3 = field(i_mask, t, &axpy(&y, &k2, h / 2.0))?;
        let k4 = field(i_mask, t, &axpy(&y, &k3, h))?;
        for j in 0..dim {
            y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
    }

    let sum: f64 = y.iter().sum();
    let mut violation = (sum - 1.0).abs();
    for &c in &y {
        violation = violation.max(-1.0 - c);
    }
    if violation > 1e-6 {
        return Err(CollarError::LeftSimplex {
            max_violation: violation,
        });
    }
    Ok(y)
}

fn axpy(y: &[f64], k: &[f64], h: f64) -> Vec<f64> {
    y.iter().zip(k).map(|(a, b)| a + h * b).collect()
}

#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub samples: usize,
    pub max_residual: f64,
}

impl CoherenceReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

fn coherence_sample(
    i_mask: u32,
    j_mask: u32,
    k_mask: u32,
    dim: usize,
    steps: usize,
    seed: u64,
    idx: u64,
) -> Result<f64, CollarError> {
    let mut rng = sample_rng(seed, idx);
    let x = uniform_simplex_point(&mut rng, dim, i_mask);
    let u1 = uniform_collar_vector(&mut rng, dim, j_mask & !i_mask);
    let u2 = uniform_collar_vector(&mut rng, dim, k_mask & !j_mask);
    let mid = collar_flow(i_mask, &x, &u1, steps)?;
    let two_step = collar_flow(j_mask, &mid, &u2, steps)?;
    let combined: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| a + b).collect();
    let direct = collar_flow(i_mask, &x, &combined, steps)?;
    Ok(two_step
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

fn check_chain(i_mask: u32, j_mask: u32, k_mask: u32, dim: usize) -> Result<(), CollarError> {
    if i_mask == 0 || i_mask & !j_mask != 0 || j_mask & !k_mask != 0 {
        return Err(CollarError::InvalidChain(
            "need nonempty I with I within J within K".into(),
        ));
    }
    if i_mask == j_mask || j_mask == k_mask {
        return Err(CollarError::InvalidChain("inclusions must be proper".into()));
    }
    if k_mask.count_ones() as usize > dim || dim > 20 {
        return Err(CollarError::InvalidChain(format!(
            "index set exceeds dimension {dim}"
        )));
    }
    Ok(())
}

/// Samples the collaring-coherence square for the chain `I in J in K`:
/// the two-step collar against the combined one, max-norm residual over the
/// sweep. Data-parallel per sample when the `parallel` feature is on.
pub fn verify_coherence(
    i_mask: u32,
    j_mask: u32,
    k_mask: u32,
    samples: usize,
    steps: usize,
    seed: u64,
) -> Result<CoherenceReport, CollarError> {
    let dim = 32 - k_mask.leading_zeros() as usize;
    check_chain(i_mask, j_mask, k_mask, dim)?;
    let results = map_indices(samples as u64, |idx| {
        coherence_sample(i_mask, j_mask, k_mask, dim, steps, seed, idx)
    });
    collect_residuals(samples, results)
}

/// Sequential twin of [`verify_coherence`], kept for benchmarking; results
/// are identical.
pub fn verify_coherence_seq(
    i_mask: u32,
    j_mask: u32,
    k_mask: u32,
    samples: usize,
    steps: usize,
    seed: u64,
) -> Result<CoherenceReport, CollarError> {
    let dim = 32 - k_mask.leading_zeros() as usize;
    check_chain(i_mask, j_mask, k_mask, dim)?;
    let results = map_indices_seq(samples as u64, |idx| {
        coherence_sample(i_mask, j_mask, k_mask, dim, steps, seed, idx)
    });
    collect_residuals(samples, results)
}

fn collect_residuals(
    samples: usize,
    results: Vec<Result<f64, CollarError>>,
) -> Result<CoherenceReport, CollarError> {
    let mut max_residual = 0.0f64;
    for r in results {
        max_residual = max_residual.max(r?);
    }
    Ok(CoherenceReport {
        samples,
        max_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_printed_example() {
        // I = {0} inside J = {0,1}, x = (1), t = (-0.5): b = 1.5
        let y = phi_piecewise(0b01, 0b01, &[1.0, 0.0], &[0.0, -0.5]).unwrap();
        assert_eq!(y, vec![1.5, -0.5]);
    }

    #[test]
    fn phi_at_zero_collar_is_identity() {
        let x = [0.3, 0.7, 0.0];
        let y = phi_piecewise(0b011, 0b010, &x, &[0.0, 0.0, 0.0]).unwrap();
        assert_eq!(y, x.to_vec());
    }

    #[test]
    fn phi_output_sums_to_one() {
        for idx in 0..50u64 {
            let mut rng2 = sample_rng(11, idx);
            let x = uniform_simplex_point(&mut rng2, 4, 0b0111);
            let t = uniform_collar_vector(&mut rng2, 4, 0b1000);
            for s_mask in [0b0001u32, 0b0011, 0b0111] {
                let y = phi_piecewise(0b0111, s_mask, &x, &t).unwrap();
                let sum: f64 = y.iter().sum();
                assert!((sum - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phi_degenerate_rescaling_set() {
        let x = [0.0, 1.0];
        assert!(matches!(
            phi_piecewise(0b11, 0b01, &x, &[0.0, 0.0]),
            Err(CollarError::DegenerateRescalingSet { .. })
        ));
    }

    #[test]
    fn flow_with_zero_collar_or_full_face_is_identity() {
        let x = [0.25, 0.75, 0.0];
        assert_eq!(
            collar_flow(0b011, &x, &[0.0, 0.0, 0.0], 16).unwrap(),
            x.to_vec()
        );
        assert_eq!(
            collar_flow(0b111, &x, &[0.0; 3], 16).unwrap(),
            x.to_vec()
        );
        assert!(collar_flow(0b011, &x, &[0.0, 0.0, -0.5], 8).is_err());
    }

    #[test]
    fn single_chart_flow_matches_phi() {
        // from the vertex only the chart S = {0} is ever active, so the flow
        // must reproduce phi exactly up to integrator error
        let x = [1.0, 0.0];
        let t = [0.0, -0.5];
        let flowed = collar_flow(0b01, &x, &t, 256).unwrap();
        let exact = phi_piecewise(0b01, 0b01, &x, &t).unwrap();
        for (a, b) in flowed.iter().zip(&exact) {
            assert!((a - b).abs() < 1e-8, "{flowed:?} vs {exact:?}");
        }
    }

    #[test]
    fn flow_lands_in_the_collar_slice() {
        let x = [0.6, 0.4, 0.0, 0.0];
        let t = [0.0, 0.0, -0.3, -0.8];
        let y = collar_flow(0b0011, &x, &t, 64).unwrap();
        assert!((y[2] - t[2]).abs() < 1e-9);
        assert!((y[3] - t[3]).abs() < 1e-9);
        assert!((y.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn coherence_chain_passes() {
        let r = verify_coherence(0b001, 0b011, 0b111, 64, 128, 42).unwrap();
        assert!(r.passes(1e-6), "max residual {}", r.max_residual);
    }

    #[test]
    fn coherence_matches_sequential_bitwise() {
        let a = verify_coherence(0b001, 0b011, 0b111, 32, 64, 9).unwrap();
        let b = verify_coherence_seq(0b001, 0b011, 0b111, 32, 64, 9).unwrap();
        assert_eq!(a.max_residual.to_bits(), b.max_residual.to_bits());
    }

    #[test]
    fn coherence_of_permuted_chain() {
        // relabeling coordinates must give the same residual profile
        let a = verify_coherence(0b001, 0b011, 0b111, 32, 64, 5).unwrap();
        let b = verify_coherence(0b100, 0b110, 0b111, 32, 64, 5).unwrap();
        // samples differ (coordinates are drawn by index) but both pass
        assert!(a.passes(1e-6) && b.passes(1e-6));
    }

    #[test]
    fn staggered_path_independence() {
        // extend one coordinate at a time versus all at once
        let x = [1.0, 0.0, 0.0];
        let t = [0.0, -0.4, -0.7];
        let direct = collar_flow(0b001, &x, &t, 256).unwrap();
        let mid = collar_flow(0b001, &x, &[0.0, t[1], 0.0], 256).unwrap();
        let staggered = collar_flow(0b011, &mid, &[0.0, 0.0, t[2]], 256).unwrap();
        for (a, b) in direct.iter().zip(&staggered) {
            assert!((a - b).abs() < 1e-6, "{direct:?} vs {staggered:?}");
        }
    }

    #[test]
    fn bad_chains_are_rejected() {
        assert!(matches!(
            verify_coherence(0b010, 0b001, 0b111, 4, 16, 0),
            Err(CollarError::InvalidChain(_))
        ));
        assert!(matches!(
            verify_coherence(0b011, 0b011, 0b111, 4, 16, 0),
            Err(CollarError::InvalidChain(_))
        ));
    }
}

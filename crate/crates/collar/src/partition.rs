//! The subset-indexed cutoffs and the inductive partition of unity.

use crate::cutoff::CutoffSpec;
use crate::CollarError;

fn pow2(k: i32) -> f64 {
    (2.0f64).powi(k)
}

/// kappa_S(x) for a nonempty subset `mask` of the index set of `x`: the
/// outer cutoff on x_S = sum over S times the per-coordinate lower cutoffs.
/// With n = |S| the outer band is [1 - 1/2^(n-1), 1 - 1/2^n] and each
/// coordinate band is [1/2^(n+1), 1/2^n].
pub fn kappa_s(mask: u32, x: &[f64]) -> Result<f64, CollarError> {
    if mask == 0 {
        return Err(CollarError::EmptySubset);
    }
    let n = mask.count_ones() as i32;
    let outer = CutoffSpec::new(1.0 - pow2(-(n - 1)), 1.0 - pow2(-n)).expect("outer band");
    let inner = CutoffSpec::new(pow2(-(n + 1)), pow2(-n)).expect("inner band");
    let x_s: f64 = members(mask).map(|i| x[i]).sum();
    let mut v = outer.eval(x_s);
    for i in members(mask) {
        if i >= x.len() {
            return Err(CollarError::Other(format!(
                "subset {mask:#b} exceeds point dimension {}",
                x.len()
            )));
        }
        v *= inner.eval(x[i]);
    }
    Ok(v)
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// The full family {g_S} on the index set of `x`, indexed by mask; entry 0
/// (the empty set) is 0. Built by cardinality:
/// f_S = kappa_S * prod over same-size S' != S of (1 - kappa_S'), and
/// g_S = f_S * (1 - sum of g_S' over strictly smaller S').
pub fn partition_g(x: &[f64]) -> Result<Vec<f64>, CollarError> {
    let dim = x.len();
    if dim == 0 || dim > 20 {
        return Err(CollarError::Other(format!("unsupported dimension {dim}")));
    }
    let total = 1u32 << dim;
    let kappa: Vec<f64> = std::iter::once(Ok(0.0))
        .chain((1..total).map(|m| kappa_s(m, x)))
        .collect::<Result<_, _>>()?;
    let mut g = vec![0.0f64; total as usize];
    let mut smaller_sum = 0.0f64;
    for n in 1..=dim as u32 {
        let level: Vec<u32> = (1..total).filter(|m| m.count_ones() == n).collect();
        let mut level_sum = 0.0;
        for &m in &level {
            let mut f = kappa[m as usize];
            for &m2 in &level {
                if m2 != m {
                    f *= 1.0 - kappa[m2 as usize];
                }
            }
            let v = f * (1.0 - smaller_sum);
            g[m as usize] = v;
            level_sum += v;
        }
        smaller_sum += level_sum;
    }
    Ok(g)
}

#[derive(Debug, Clone)]
pub struct SupportReport {
    /// Property: g_S > 0 forces x_s > 0 for every s in S.
    pub positive_support: bool,
    /// Property: g_S depends only on the positive components; max deviation
    /// observed when shifting mass between negative components.
    pub negative_invariance_deviation: f64,
    pub partition_sum: f64,
}

impl SupportReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.positive_support
            && self.negative_invariance_deviation <= tol
            && (self.partition_sum - 1.0).abs() <= tol
    }
}

/// Checks the two support properties of the partition at `x`, plus the
/// partition-of-unity sum.
pub fn verify_partition_support(x: &[f64]) -> Result<SupportReport, CollarError> {
    crate::check_point(x)?;
    let g = partition_g(x)?;
    let mut positive_support = true;
    for (m, &v) in g.iter().enumerate().skip(1) {
        if v > 0.0 && members(m as u32).any(|i| x[i] <= 0.0) {
            positive_support = false;
        }
    }
    let partition_sum: f64 = g.iter().sum();

    // shift mass between pairs of negative coordinates; the family must not
    // move
    let mut deviation = 0.0f64;
    let negatives: Vec<usize> = (0..x.len()).filter(|&i| x[i] < 0.0).collect();
    for (ai, &a) in negatives.iter().enumerate() {
        for &b in &negatives[ai + 1..] {
            let room = (x[a] + 1.0).min(-x[b]).min(0.25);
            if room <= 0.0 {
                continue;
            }
            let delta = 0.5 * room;
            let mut y = x.to_vec();
            y[a] -= delta;
            y[b] += delta;
            let g2 = partition_g(&y)?;
            for (v, w) in g.iter().zip(&g2) {
                deviation = deviation.max((v - w).abs());
            }
        }
    }
    Ok(SupportReport {
        positive_support,
        negative_invariance_deviation: deviation,
        partition_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_at_a_vertex() {
        // x = e_0 in the 2-simplex
        let x = [1.0, 0.0, 0.0];
        assert_eq!(kappa_s(0b001, &x).unwrap(), 1.0);
        assert_eq!(kappa_s(0b010, &x).unwrap(), 0.0);
        assert!(matches!(kappa_s(0, &x), Err(CollarError::EmptySubset)));
    }

    #[test]
    fn kappa_vanishes_with_a_nonpositive_member() {
        let x = [0.5, 0.5, 0.0];
        for mask in [0b100u32, 0b101, 0b110, 0b111] {
            assert_eq!(kappa_s(mask, &x).unwrap(), 0.0, "mask {mask:#b}");
        }
    }

    #[test]
    fn kappa_singleton_at_barycenter_is_interior() {
        let x = [1.0 / 3.0; 3];
        let v = kappa_s(0b001, &x).unwrap();
        assert!(v > 0.0 && v < 1.0, "got {v}");
    }

    #[test]
    fn vertex_gets_the_full_weight() {
        let x = [0.0, 1.0, 0.0];
        let g = partition_g(&x).unwrap();
        assert_eq!(g[0b010], 1.0);
        for (m, &v) in g.iter().enumerate() {
            if m != 0b010 {
                assert_eq!(v, 0.0, "mask {m:#b}");
            }
        }
    }

    #[test]
    fn barycenter_of_interval_is_symmetric() {
        let g = partition_g(&[0.5, 0.5]).unwrap();
        assert_eq!(g[0b01], g[0b10]);
        assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partition_sums_to_one_on_grid() {
        // deterministic grid over the 2-simplex, including boundary points
        for a in 0..=20 {
            for b in 0..=(20 - a) {
                let x = [a as f64 / 20.0, b as f64 / 20.0, (20 - a - b) as f64 / 20.0];
                let g = partition_g(&x).unwrap();
                let s: f64 = g.iter().sum();
                assert!((s - 1.0).abs() < 1e-9, "x = {x:?}, sum = {s}");
            }
        }
    }

    #[test]
    fn permutation_equivariance_is_exact() {
        let x = [0.2, 0.5, 0.3];
        let perm = [2usize, 0, 1]; // sigma(i) = perm[i]
        let mut y = [0.0; 3];
        for (i, &p) in perm.iter().enumerate() {
            y[p] = x[i];
        }
        let gx = partition_g(&x).unwrap();
        let gy = partition_g(&y).unwrap();
        for m in 1u32..8 {
            let mut m2 = 0u32;
            for i in members(m) {
                m2 |= 1 << perm[i];
            }
            assert_eq!(gx[m as usize], gy[m2 as usize], "mask {m:#b}");
        }
    }

    #[test]
    fn support_report_on_collared_points() {
        // a point with negative coordinates, as produced by the collar flow
        let x = [0.9, 0.8, -0.3, -0.4];
        let r = verify_partition_support(&x).unwrap();
        assert!(r.positive_support);
        assert!(r.negative_invariance_deviation <= 1e-12);
        assert!((r.partition_sum - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn zero_coordinate_kills_every_containing_subset() {
        let x = [0.6, 0.0, 0.4];
        let g = partition_g(&x).unwrap();
        for (m, &v) in g.iter().enumerate().skip(1) {
            if m as u32 >> 1 & 1 == 1 {
                assert_eq!(v, 0.0, "mask {m:#b}");
            }
        }
    }
}

//! Numerical verification of the simplex collaring construction: smooth
//! cutoffs, the subset-indexed partition of unity, the piecewise collar maps,
//! and the flow of the interpolating vector field, together with the
//! coherence and partition sweeps used by the acceptance suite.
//!
//! Points of the simplex on an index set `J = {0, .., dim-1}` are dense
//! `f64` vectors summing to 1 with every entry at least -1; subsets of `J`
//! are `u32` bitmasks.

pub mod cutoff;
pub mod flow;
pub mod partition;
pub mod sample;

pub use cutoff::CutoffSpec;
pub use flow::{collar_flow, phi_piecewise, verify_coherence, verify_coherence_seq, CoherenceReport};
pub use partition::{kappa_s, partition_g, verify_partition_support, SupportReport};

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum CollarError {
    #[error("empty rescaling subset")]
    EmptySubset,
    #[error("degenerate rescaling set: sum of selected coordinates is {sum:e}")]
    DegenerateRescalingSet { sum: f64 },
    #[error("chart guard tripped: x_S = {x_s:e} but g_S = {g:e} for S = {mask:#b}")]
    ChartGuard { mask: u32, x_s: f64, g: f64 },
    #[error("integration left the simplex by {max_violation:e}")]
    LeftSimplex { max_violation: f64 },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("{0}")]
    Other(String),
}

/// Checks the simplex invariants at construction tolerance.
pub fn check_point(x: &[f64]) -> Result<(), CollarError> {
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > 1e-12 {
        return Err(CollarError::InvalidPoint(format!(
            "coordinates sum to {sum}, not 1"
        )));
    }
    if let Some(&bad) = x.iter().find(|&&c| c < -1.0 - 1e-12) {
        return Err(CollarError::InvalidPoint(format!(
            "coordinate {bad} below -1"
        )));
    }
    Ok(())
}

//! Smooth step functions built from the standard mollifier.

use crate::CollarError;

fn bump(u: f64) -> f64 {
    if u > 0.0 {
        (-1.0 / u).exp()
    } else {
        0.0
    }
}

/// The smooth transition psi(u) = e(u) / (e(u) + e(1-u)) with
/// e(u) = exp(-1/u) for u > 0 and 0 otherwise; exactly 0 on u <= 0 and
/// exactly 1 on u >= 1.
pub fn psi(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let e = bump(u);
    e / (e + bump(1.0 - u))
}

/// A nondecreasing cutoff with value 0 on (-inf, a] and 1 on [b, inf).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffSpec {
    pub a: f64,
    pub b: f64,
}

impl CutoffSpec {
    pub fn new(a: f64, b: f64) -> Result<Self, CollarError> {
        if !(a < b) {
            return Err(CollarError::Other(format!(
                "cutoff band needs a < b, got [{a}, {b}]"
            )));
        }
        Ok(CutoffSpec { a, b })
    }

    pub fn eval(&self, x: f64) -> f64 {
        psi((x - self.a) / (self.b - self.a))
    }
}

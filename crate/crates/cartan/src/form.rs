//! Darboux charts and polynomial differential forms of degree at most 2.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::poly::Poly;
use crate::CartanError;

/// Which factor and fiber position a chart coordinate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordKind {
    /// q_i, base of the M factor
    MBase(usize),
    /// p_i, fiber of the M factor
    MFiber(usize),
    /// s_j, base of the T*S factor
    SBase(usize),
    /// sigma_j, fiber of the T*S factor
    SFiber(usize),
}

/// A chart M x T*S with coordinate pairs (q_i, p_i) and (s_j, sigma_j) and
/// the fixed symplectic form sum dp_i ^ dq_i + sum dsigma_j ^ ds_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxChart {
    names: Vec<String>,
    kinds: Vec<CoordKind>,
}

impl DarbouxChart {
    pub fn new(
        m_pairs: &[(&str, &str)],
        s_pairs: &[(&str, &str)],
    ) -> Result<Self, CartanError> {
        let mut names = Vec::new();
        let mut kinds = Vec::new();
        for (i, (q, p)) in m_pairs.iter().enumerate() {
            names.push(q.to_string());
            kinds.push(CoordKind::MBase(i));
            names.push(p.to_string());
            kinds.push(CoordKind::MFiber(i));
        }
        for (j, (s, sigma)) in s_pairs.iter().enumerate() {
            names.push(s.to_string());
            kinds.push(CoordKind::SBase(j));
            names.push(sigma.to_string());
            kinds.push(CoordKind::SFiber(j));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(CartanError::Other(format!("duplicate coordinate `{n}`")));
            }
            if n.is_empty() || n.starts_with('d') || !n.chars().all(|c| c.is_alphanumeric() || c == '_')
            {
                return Err(CartanError::Other(format!(
                    "coordinate name `{n}` must be alphanumeric and not start with `d`"
                )));
            }
        }
        Ok(DarbouxChart { names, kinds })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, v: usize) -> CoordKind {
        self.kinds[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize, CartanError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CartanError::UnknownCoordinate(name.to_string()))
    }

    pub fn is_m_coord(&self, v: usize) -> bool {
        matches!(self.kinds[v], CoordKind::MBase(_) | CoordKind::MFiber(_))
    }

    /// Index of the symplectic partner (q <-> p, s <-> sigma).
    pub fn partner(&self, v: usize) -> usize {
        let target = match self.kinds[v] {
            CoordKind::MBase(i) => CoordKind::MFiber(i),
            CoordKind::MFiber(i) => CoordKind::MBase(i),
            CoordKind::SBase(j) => CoordKind::SFiber(j),
            CoordKind::SFiber(j) => CoordKind::SBase(j),
        };
        self.kinds.iter().position(|&k| k == target).unwrap()
    }

    /// The standard symplectic form of the chart as an ordered 2-form:
    /// dp ^ dq = -(dq ^ dp), so each pair contributes coefficient -1 on its
    /// ordered basis element (base coordinate precedes fiber coordinate).
    pub fn symplectic_form(&self) -> TwoForm {
        let mut coeffs = BTreeMap::new();
        for v in 0..self.dim() {
            if matches!(self.kinds[v], CoordKind::MBase(_) | CoordKind::SBase(_)) {
                let w = self.partner(v);
                debug_assert!(v < w);
                coeffs.insert(
                    (v, w),
                    Poly::constant(self.dim(), -BigRational::one()),
                );
            }
        }
        TwoForm {
            dim: self.dim(),
            coeffs,
        }
    }
}

/// A polynomial 1-form: a coefficient per coordinate direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    pub coeffs: Vec<Poly>,
}

impl OneForm {
    pub fn zero(dim: usize) -> Self {
        OneForm {
            coeffs: (0..dim).map(|_| Poly::zero(dim)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        OneForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        OneForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// Exterior derivative: coefficient of dx_a ^ dx_b (a < b) is
    /// dA_b/dx_a - dA_a/dx_b.
    pub fn d(&self) -> TwoForm {
        let dim = self.dim();
        let mut coeffs = BTreeMap::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let c = self.coeffs[b].partial(a).sub(&self.coeffs[a].partial(b));
                if !c.is_zero() {
                    coeffs.insert((a, b), c);
                }
            }
        }
        TwoForm { dim, coeffs }
    }

    pub fn render(&self, chart: &DarbouxChart) -> String {
        let parts: Vec<String> = (0..self.dim())
            .filter(|&v| !self.coeffs[v].is_zero())
            .map(|v| {
                format!(
                    "(({}) d{})",
                    self.coeffs[v].render(chart.names()),
                    chart.names()[v]
                )
            })
            .collect();
        format!("(form1 {})", parts.join(" "))
    }
}

/// A polynomial 2-form over the ordered basis dx_a ^ dx_b with a < b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoForm {
    dim: usize,
    coeffs: BTreeMap<(usize, usize), Poly>,
}

impl TwoForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, a: usize, b: usize) -> Poly {
        assert!(a < b);
        self.coeffs
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Poly::is_zero)
    }

    pub fn sub(&self, other: &TwoForm) -> TwoForm {
        let mut coeffs = self.coeffs.clone();
        for (&k, c) in &other.coeffs {
            let v = coeffs
                .remove(&k)
                .unwrap_or_else(|| Poly::zero(self.dim))
                .sub(c);
            if !v.is_zero() {
                coeffs.insert(k, v);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TwoForm {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn render(&self, chart: &DarbouxChart) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(a, b), c)| {
                format!(
                    "(({}) d{}^d{})",
                    c.render(chart.names()),
                    chart.names()[a],
                    chart.names()[b]
                )
            })
            .collect();
        format!("(form2 {})", parts.join(" "))
    }
}

/// Exterior derivative of a 0-form.
pub fn d0(f: &Poly) -> OneForm {
    OneForm {
        coeffs: (0..f.nvars()).map(|v| f.partial(v)).collect(),
    }
}

/// Differential restricted to the M coordinates of the chart.
pub fn d_m(chart: &DarbouxChart, f: &Poly) -> OneForm {
    OneForm {
        coeffs: (0..chart.dim())
            .map(|v| {
                if chart.is_m_coord(v) {
                    f.partial(v)
                } else {
                    Poly::zero(chart.dim())
                }
            })
            .collect(),
    }
}

/// Differential restricted to the T*S coordinates of the chart.
pub fn d_s(chart: &DarbouxChart, f: &Poly) -> OneForm {
    OneForm {
        coeffs: (0..chart.dim())
            .map(|v| {
                if chart.is_m_coord(v) {
                    Poly::zero(chart.dim())
                } else {
                    f.partial(v)
                }
            })
            .collect(),
    }
}

/// Pullback of a 1-form along the polynomial coordinate map `f` (one source
/// polynomial per destination coordinate): f* (sum A_a dx_a) =
/// sum_a A_a(f) sum_b dA f_a/dx_b dx_b.
pub fn pullback_one_form(f: &[Poly], lambda: &OneForm) -> Result<OneForm, CartanError> {
    if f.len() != lambda.dim() {
        return Err(CartanError::Arity(format!(
            "map has {} components but form lives in dimension {}",
            f.len(),
            lambda.dim()
        )));
    }
    let src_dim = f
        .first()
        .map(Poly::nvars)
        .ok_or_else(|| CartanError::Arity("empty coordinate map".into()))?;
    let mut out = OneForm::zero(src_dim);
    for a in 0..lambda.dim() {
        let coeff = lambda.coeffs[a].substitute(f)?;
        for b in 0..src_dim {
            let part = coeff.mul(&f[a].partial(b));
            out.coeffs[b] = out.coeffs[b].add(&part);
        }
    }
    Ok(out)
}

/// A polynomial vector field: a coefficient per coordinate direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    pub coeffs: Vec<Poly>,
}

impl PolyVectorField {
    pub fn zero(dim: usize) -> Self {
        PolyVectorField {
            coeffs: (0..dim).map(|_| Poly::zero(dim)).collect(),
        }
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        PolyVectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn render(&self, chart: &DarbouxChart) -> String {
        let parts: Vec<String> = (0..self.coeffs.len())
            .filter(|&v| !self.coeffs[v].is_zero())
            .map(|v| {
                format!(
                    "(({}) @{})",
                    self.coeffs[v].render(chart.names()),
                    chart.names()[v]
                )
            })
            .collect();
        format!("(field {})", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> DarbouxChart {
        DarbouxChart::new(&[("q", "p")], &[("s", "sigma")]).unwrap()
    }

    #[test]
    fn chart_layout_and_partners() {
        let c = chart();
        assert_eq!(c.names(), &["q", "p", "s", "sigma"]);
        assert_eq!(c.partner(0), 1);
        assert_eq!(c.partner(3), 2);
        assert!(c.is_m_coord(1));
        assert!(!c.is_m_coord(2));
        assert!(DarbouxChart::new(&[("q", "q")], &[]).is_err());
        assert!(DarbouxChart::new(&[("dq", "p")], &[]).is_err());
    }

    #[test]
    fn d_of_p_dq_is_symplectic_on_m() {
        let c = chart();
        // p dq
        let mut lam = OneForm::zero(4);
        lam.coeffs[0] = Poly::var(4, 1);
        let omega = lam.d();
        // dp ^ dq = -(dq ^ dp): coefficient -1 on the (q, p) slot
        assert_eq!(omega.coeff(0, 1), Poly::int(4, -1));
        assert!(omega.coeff(2, 3).is_zero());
        let _ = c;
    }

    #[test]
    fn d_of_product_rule() {
        // d(q s) = s dq + q ds
        let f = Poly::var(4, 0).mul(&Poly::var(4, 2));
        let df = d0(&f);
        assert_eq!(df.coeffs[0], Poly::var(4, 2));
        assert_eq!(df.coeffs[2], Poly::var(4, 0));
        assert!(df.coeffs[1].is_zero() && df.coeffs[3].is_zero());
    }

    #[test]
    fn d_m_and_d_s_split_the_differential() {
        let c = chart();
        let f = Poly::var(4, 0).mul(&Poly::var(4, 2)); // q s
        let dm = d_m(&c, &f);
        let ds = d_s(&c, &f);
        assert_eq!(dm.coeffs[0], Poly::var(4, 2)); // s dq
        assert!(dm.coeffs[2].is_zero());
        assert_eq!(ds.coeffs[2], Poly::var(4, 0)); // q ds
        assert_eq!(dm.add(&ds), d0(&f));
    }

    #[test]
    fn dd_is_zero() {
        let f = Poly::var(4, 0)
            .pow(3)
            .mul(&Poly::var(4, 3))
            .add(&Poly::var(4, 1).mul(&Poly::var(4, 2)).pow(2));
        assert!(d0(&f).d().is_zero());
    }

    #[test]
    fn pullback_of_translation_fixes_p_dq() {
        let mut lam = OneForm::zero(2);
        lam.coeffs[0] = Poly::var(2, 1); // p dq over (q, p)
        // q -> q + 1, p -> p
        let f = vec![Poly::var(2, 0).add(&Poly::int(2, 1)), Poly::var(2, 1)];
        let back = pullback_one_form(&f, &lam).unwrap();
        assert_eq!(back, lam);
        // scaling q -> 2q doubles it
        let g = vec![Poly::var(2, 0).scale(&BigRational::from_integer(2.into())), Poly::var(2, 1)];
        let back = pullback_one_form(&g, &lam).unwrap();
        assert_eq!(back.coeffs[0], Poly::var(2, 1).scale(&BigRational::from_integer(2.into())));
    }
}

//! The movie Liouville form, its vector field, and pullback checks.

use num_rational::BigRational;

use crate::form::{d0, pullback_one_form, CoordKind, DarbouxChart, OneForm, PolyVectorField, TwoForm};
use crate::poly::Poly;
use crate::CartanError;

/// lambda_M + sum sigma_j ds_j + dh over the chart. `lambda_m` must involve
/// only M coordinates, in both directions and coefficients.
pub fn movie_form(
    chart: &DarbouxChart,
    lambda_m: &OneForm,
    h: &Poly,
) -> Result<OneForm, CartanError> {
    if lambda_m.dim() != chart.dim() || h.nvars() != chart.dim() {
        return Err(CartanError::Arity(
            "form and function must live on the chart".into(),
        ));
    }
    for v in 0..chart.dim() {
        if chart.is_m_coord(v) {
            for w in 0..chart.dim() {
                if !chart.is_m_coord(w) && lambda_m.coeffs[v].uses_var(w) {
                    return Err(CartanError::NotAnMForm(chart.names()[w].clone()));
                }
            }
        } else if !lambda_m.coeffs[v].is_zero() {
            return Err(CartanError::NotAnMForm(chart.names()[v].clone()));
        }
    }
    let mut canonical = OneForm::zero(chart.dim());
    for v in 0..chart.dim() {
        if let CoordKind::SBase(_) = chart.kind(v) {
            canonical.coeffs[v] = Poly::var(chart.dim(), chart.partner(v));
        }
    }
    Ok(lambda_m.add(&canonical).add(&d0(h)))
}

/// Solves d(lambda)(v, -) = lambda(-) against the standard symplectic form:
/// for lambda = sum A_a dx_a the field is A_base on each fiber direction and
/// -A_fiber on each base direction. Errors unless d(lambda) is the standard
/// symplectic form of the chart.
pub fn liouville_field(
    chart: &DarbouxChart,
    lambda: &OneForm,
) -> Result<PolyVectorField, CartanError> {
    if lambda.dim() != chart.dim() {
        return Err(CartanError::Arity("form does not live on the chart".into()));
    }
    if lambda.d() != chart.symplectic_form() {
        return Err(CartanError::NonDarbouxPrimitive);
    }
    let mut v = PolyVectorField::zero(chart.dim());
    for a in 0..chart.dim() {
        let partner = chart.partner(a);
        match chart.kind(a) {
            CoordKind::MBase(_) | CoordKind::SBase(_) => {
                v.coeffs[partner] = lambda.coeffs[a].clone();
            }
            CoordKind::MFiber(_) | CoordKind::SFiber(_) => {
                v.coeffs[partner] = lambda.coeffs[a].neg();
            }
        }
    }
    Ok(v)
}

/// Checks that the T*S-fiber component of the movie field is
/// sum_j (sigma_j + dh/ds_j) d/dsigma_j, exactly. Returns the computed field
/// alongside the verdict so callers can print it.
pub fn verify_movie_field_formula(
    chart: &DarbouxChart,
    lambda_m: &OneForm,
    h: &Poly,
) -> Result<(PolyVectorField, bool), CartanError> {
    let lam = movie_form(chart, lambda_m, h)?;
    let field = liouville_field(chart, &lam)?;
    let mut ok = true;
    for v in 0..chart.dim() {
        if let CoordKind::SFiber(_) = chart.kind(v) {
            let s = chart.partner(v);
            let expected = Poly::var(chart.dim(), v).add(&h.partial(s));
            if field.coeffs[v] != expected {
                ok = false;
            }
        }
    }
    Ok((field, ok))
}

/// f* lambda_dst = lambda_src, exactly.
pub fn check_strict_pullback(
    f: &[Poly],
    lambda_src: &OneForm,
    lambda_dst: &OneForm,
) -> Result<bool, CartanError> {
    Ok(pullback_one_form(f, lambda_dst)? == *lambda_src)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactnessResult {
    /// f* lambda_dst - lambda_src = dh for this h (zero constant term).
    Primitive(Poly),
    /// The difference is not closed; here is its exterior derivative.
    NotClosed(TwoForm),
}

/// Searches for a polynomial primitive of f* lambda_dst - lambda_src by
/// variable-by-variable antidifferentiation. Compact support of the
/// primitive is not (and cannot be) checked for polynomials; only exactness
/// is certified.
pub fn check_exact_pullback(
    f: &[Poly],
    lambda_src: &OneForm,
    lambda_dst: &OneForm,
) -> Result<ExactnessResult, CartanError> {
    let diff = pullback_one_form(f, lambda_dst)?.sub(lambda_src);
    let ddiff = diff.d();
    if !ddiff.is_zero() {
        return Ok(ExactnessResult::NotClosed(ddiff));
    }
    let dim = diff.dim();
    let mut h = Poly::zero(dim);
    let mut remaining = diff.clone();
    for v in 0..dim {
        let piece = remaining.coeffs[v].antiderivative(v);
        remaining = remaining.sub(&d0(&piece));
        h = h.add(&piece);
    }
    if !remaining.is_zero() || d0(&h) != diff {
        return Err(CartanError::Other(
            "antidifferentiation failed on a closed form".into(),
        ));
    }
    Ok(ExactnessResult::Primitive(h))
}

/// The fixture library for the movie-field formula: chart, lambda_M, h.
pub fn movie_fixtures() -> Vec<(DarbouxChart, OneForm, Poly)> {
    let mut out = Vec::new();

    // chart with one M pair and one S pair: (q, p, s, sigma)
    let c1 = DarbouxChart::new(&[("q", "p")], &[("s", "sigma")]).unwrap();
    let q = Poly::var(4, 0);
    let p = Poly::var(4, 1);
    let s = Poly::var(4, 2);
    let sigma = Poly::var(4, 3);
    let p_dq = {
        let mut l = OneForm::zero(4);
        l.coeffs[0] = p.clone();
        l
    };
    // lambda_M may differ from p dq by an M-exact term
    let shifted = {
        let mut l = p_dq.clone();
        l.coeffs[0] = l.coeffs[0].add(&q.scale(&BigRational::from_integer(2.into())));
        l // (p + 2q) dq = p dq + d(q^2)
    };
    let two = BigRational::from_integer(2.into());
    let hs: Vec<Poly> = vec![
        Poly::zero(4),
        Poly::int(4, 7),
        q.clone(),
        s.clone(),
        q.mul(&s),
        q.pow(2).mul(&s.pow(3)),
        p.mul(&s),
        q.add(&s),
        q.mul(&s).add(&s.pow(2)),
        s.pow(3),
        q.pow(2),
        q.add(&s).pow(2),
        p.pow(2).mul(&s),
        q.mul(&s.pow(2)).add(&Poly::int(4, 5)),
        q.pow(3).mul(&s).scale(&two),
        sigma.mul(&s).mul(&q),
    ];
    for h in &hs {
        out.push((c1.clone(), p_dq.clone(), h.clone()));
    }
    out.push((c1.clone(), shifted.clone(), q.mul(&s)));
    out.push((c1.clone(), shifted, s.pow(2)));

    // chart with one M pair and two S pairs: (q, p, s1, sigma1, s2, sigma2)
    let c2 = DarbouxChart::new(&[("q", "p")], &[("s1", "sigma1"), ("s2", "sigma2")]).unwrap();
    let q6 = Poly::var(6, 0);
    let p6 = Poly::var(6, 1);
    let s1 = Poly::var(6, 2);
    let s2 = Poly::var(6, 4);
    let p_dq6 = {
        let mut l = OneForm::zero(6);
        l.coeffs[0] = p6.clone();
        l
    };
    out.push((c2.clone(), p_dq6.clone(), q6.mul(&s1).mul(&s2)));
    out.push((c2, p_dq6, s1.pow(2).mul(&s2.pow(3)).add(&q6.pow(2))));

    assert_eq!(out.len(), 20);
    out
}

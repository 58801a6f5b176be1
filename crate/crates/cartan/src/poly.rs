//! Multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::CartanError;

/// A polynomial over a fixed number of variables; keys are exponent vectors
/// of that length, zero-coefficient terms are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        Poly::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[v] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exps, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    fn insert(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exps: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(exps, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, BigRational::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] -= 1;
            out.insert(e2, c * BigRational::from_integer(BigInt::from(e[v])));
        }
        out
    }

    /// Antiderivative in variable `v` with zero constant term.
    pub fn antiderivative(&self, v: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[v] += 1;
            let denom = BigRational::from_integer(BigInt::from(e2[v]));
            out.insert(e2, c / denom);
        }
        out
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    /// Substitution: evaluate at `args[v]` for each variable; the arguments
    /// live over a possibly different variable count.
    pub fn substitute(&self, args: &[Poly]) -> Result<Poly, CartanError> {
        if args.len() != self.nvars {
            return Err(CartanError::Arity(format!(
                "substitution expects {} arguments, got {}",
                self.nvars,
                args.len()
            )));
        }
        let target_nvars = args.first().map_or(self.nvars, Poly::nvars);
        let mut out = Poly::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target_nvars, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&args[v].pow(k));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Canonical rendering against coordinate names, graded-lex by exponent
    /// vector.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| {
            (
                std::cmp::Reverse(e.iter().sum::<u32>()),
                e.iter().map(|&k| std::cmp::Reverse(k)).collect::<Vec<_>>(),
            )
        });
        let mut out = String::new();
        for (ti, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let mut mono: Vec<String> = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => mono.push(names[v].clone()),
                    _ => mono.push(format!("{}^{}", names[v], k)),
                }
            }
            let abs = c.abs();
            let coeff_str = if abs.is_one() && !mono.is_empty() {
                String::new()
            } else {
                format!("{abs}")
            };
            let body = match (coeff_str.is_empty(), mono.is_empty()) {
                (true, _) => mono.join("*"),
                (false, true) => coeff_str,
                (false, false) => format!("{}*{}", coeff_str, mono.join("*")),
            };
            if ti == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|v| format!("x{v}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

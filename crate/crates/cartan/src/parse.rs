//! Text input for polynomials and 1-forms: `q^2*s^3 - 2*p`, `p dq + (sigma+q) ds`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::form::{DarbouxChart, OneForm};
use crate::poly::Poly;
use crate::CartanError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, CartanError> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push((start, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((start, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((start, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((start, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((start, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((start, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let mut n = String::new();
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    n.push(bytes[i]);
                    i += 1;
                }
                out.push((start, Tok::Num(n.parse().unwrap())));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut n = String::new();
                while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                    n.push(bytes[i]);
                    i += 1;
                }
                out.push((start, Tok::Ident(n)));
            }
            other => {
                return Err(CartanError::Parse {
                    offset: start,
                    detail: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    chart: &'a DarbouxChart,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, detail: impl Into<String>) -> Result<T, CartanError> {
        Err(CartanError::Parse {
            offset: self.offset(),
            detail: detail.into(),
        })
    }

    // sum of signed products
    fn poly_expr(&mut self) -> Result<Poly, CartanError> {
        let mut acc = Poly::zero(self.chart.dim());
        let mut sign = 1i64;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            sign = -1;
        } else if matches!(self.peek(), Some(Tok::Plus)) {
            self.bump();
        }
        loop {
            let term = self.poly_term()?;
            acc = acc.add(&term.scale(&BigRational::from_integer(sign.into())));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    // product of factors, with `*` optional between them
    fn poly_term(&mut self) -> Result<Poly, CartanError> {
        let mut acc = self.poly_factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.poly_factor()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.poly_factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn poly_factor(&mut self) -> Result<Poly, CartanError> {
        let base = match self.bump() {
            Some(Tok::Num(n)) => Poly::constant(
                self.chart.dim(),
                BigRational::from_integer(n),
            ),
            Some(Tok::Ident(name)) => {
                let v = self.chart.index_of(&name)?;
                Poly::var(self.chart.dim(), v)
            }
            Some(Tok::LParen) => {
                let inner = self.poly_expr()?;
                match self.bump() {
                    Some(Tok::RParen) => inner,
                    _ => return self.err("expected `)`"),
                }
            }
            _ => return self.err("expected a number, coordinate, or `(`"),
        };
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| CartanError::Parse {
                            offset: self.offset(),
                            detail: "exponent too large".into(),
                        })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected an integer exponent"),
            }
        }
        Ok(base)
    }

    fn differential(&mut self, name: &str) -> Option<usize> {
        let tail = name.strip_prefix('d')?;
        self.chart.index_of(tail).ok()
    }

    // sum of terms, each ending in a differential factor
    fn form_expr(&mut self) -> Result<OneForm, CartanError> {
        let mut acc = OneForm::zero(self.chart.dim());
        let mut sign = 1i64;
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            sign = -1;
        }
        loop {
            let (coeff, dir) = self.form_term()?;
            acc.coeffs[dir] =
                acc.coeffs[dir].add(&coeff.scale(&BigRational::from_integer(sign.into())));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                None => return Ok(acc),
                _ => return self.err("expected `+`, `-`, or end of form"),
            }
        }
    }

    fn form_term(&mut self) -> Result<(Poly, usize), CartanError> {
        let mut coeff = Poly::int(self.chart.dim(), 1);
        loop {
            if let Some(Tok::Ident(name)) = self.peek().cloned() {
                if let Some(dir) = self.differential(&name) {
                    self.bump();
                    return Ok((coeff, dir));
                }
            }
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {}
                _ => return self.err("term is missing its differential (like `dq`)"),
            }
            coeff = coeff.mul(&self.poly_factor()?);
        }
    }
}

pub fn parse_poly(chart: &DarbouxChart, text: &str) -> Result<Poly, CartanError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        chart,
    };
    if p.toks.is_empty() {
        return Err(CartanError::Parse {
            offset: 0,
            detail: "empty polynomial".into(),
        });
    }
    let out = p.poly_expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after polynomial");
    }
    Ok(out)
}

pub fn parse_one_form(chart: &DarbouxChart, text: &str) -> Result<OneForm, CartanError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        chart,
    };
    if p.toks.is_empty() {
        return Err(CartanError::Parse {
            offset: 0,
            detail: "empty form".into(),
        });
    }
    let out = p.form_expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after form");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> DarbouxChart {
        DarbouxChart::new(&[("q", "p")], &[("s", "sigma")]).unwrap()
    }

    #[test]
    fn parse_polynomials() {
        let c = chart();
        assert_eq!(parse_poly(&c, "q*s").unwrap(), Poly::var(4, 0).mul(&Poly::var(4, 2)));
        assert_eq!(
            parse_poly(&c, "q^2*s^3").unwrap(),
            Poly::var(4, 0).pow(2).mul(&Poly::var(4, 2).pow(3))
        );
        assert_eq!(parse_poly(&c, "0").unwrap(), Poly::zero(4));
        assert_eq!(
            parse_poly(&c, "(q + s)^2 - q^2 - 2 q s").unwrap(),
            Poly::var(4, 2).pow(2)
        );
        assert!(parse_poly(&c, "q +").is_err());
        assert!(matches!(
            parse_poly(&c, "z"),
            Err(CartanError::UnknownCoordinate(_))
        ));
    }

    #[test]
    fn parse_forms() {
        let c = chart();
        let f = parse_one_form(&c, "p dq").unwrap();
        assert_eq!(f.coeffs[0], Poly::var(4, 1));
        let f = parse_one_form(&c, "p dq + (sigma + q) ds - 3 dsigma").unwrap();
        assert_eq!(f.coeffs[2], Poly::var(4, 3).add(&Poly::var(4, 0)));
        assert_eq!(f.coeffs[3], Poly::int(4, -3));
        assert!(parse_one_form(&c, "p").is_err());
        assert!(parse_one_form(&c, "p dz").is_err());
    }

    #[test]
    fn render_round_trip() {
        let c = chart();
        for text in ["p dq + (sigma + q) ds", "-2 q^2 dp + s dsigma"] {
            let f = parse_one_form(&c, text).unwrap();
            let printed = f.render(&c);
            assert!(printed.starts_with("(form1 "), "{printed}");
        }
    }
}

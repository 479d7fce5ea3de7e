//! Canonical text form: terms largest-first under a term order, joined by
//! ` + ` / ` - `, each term `c*x1^2*x3` with unit coefficients omitted.
//!
//! Over `F_p` coefficients are canonical residues and always added; over `Q`
//! negative coefficients are written with ` - `.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Monomial, OrderKind, Polynomial, TermOrder};
use crate::error::{Error, Result};
use crate::field::FieldSpec;

impl Polynomial {
    pub fn render(&self, ord: &TermOrder) -> String {
        let terms = self.sorted_terms(ord);
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{magnitude}*{m}"));
            }
        }
        out
    }

    /// Parse the canonical text form (and any sum of products of numbers
    /// and powers of `x<i>` variables) into a polynomial over `field`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Polynomial> {
        let err = |message: String| Error::Parse { line: 0, message };
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(err("empty polynomial".into()));
        }
        let mut out = Polynomial::zero(field);
        let mut rest = src.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut negative = false;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                negative = true;
            } else if !first {
                return Err(err(format!("expected `+` or `-` before `{rest}`")));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(err("empty term".into()));
            }
            let mut coeff = field.one();
            let mut exps = Vec::new();
            for factor in term.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, e) = match var.split_once('^') {
                        Some((i, e)) => (
                            i,
                            e.parse::<u32>()
                                .map_err(|_| err(format!("bad exponent in `{factor}`")))?,
                        ),
                        None => (var, 1),
                    };
                    let v = idx
                        .parse::<u32>()
                        .map_err(|_| err(format!("bad variable `{factor}`")))?;
                    exps.push((v, e));
                } else {
                    let value = parse_number(factor)
                        .ok_or_else(|| err(format!("bad factor `{factor}`")))?;
                    coeff = coeff.try_mul(&field.from_rational(&value)?)?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial::from_exponents(exps), coeff);
        }
        Ok(out)
    }
}

fn parse_number(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl fmt::Display for Polynomial {
    /// Renders under graded lex with the natural variable order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&TermOrder::natural(OrderKind::GradedLex)))
    }
}

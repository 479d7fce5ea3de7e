//! Sparse multivariate polynomials over a [`FieldSpec`].

mod division;
mod order;
mod symmetric;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

pub use division::{normal_form, s_polynomial, Division};
pub use order::{OrderKind, TermOrder};
pub use symmetric::{
    complete_homogeneous, complete_homogeneous_value, elementary_symmetric,
    elementary_symmetric_poly,
};

/// Variable index. Variable `i` renders as `x{i}`; graph vertex `i` owns variable `i`.
pub type Var = u32;

/// A monomial `x^α` stored as `(variable, exponent)` pairs sorted by
/// variable, with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn power(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial, summing repeated variables and dropping zero exponents.
    pub fn from_exponents<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, b) = (self.0[i], other.0[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e - other.exponent(v);
                    (r > 0).then_some((v, r))
                })
                .collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let vars: BTreeSet<Var> = self.variables().chain(other.variables()).collect();
        Monomial(
            vars.into_iter()
                .map(|v| (v, self.exponent(v).max(other.exponent(v))))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.variables().all(|v| other.exponent(v) == 0)
    }

    /// Replace every exponent by its residue mod `k`.
    pub fn reduce_exponents(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let r = e % k;
                    (r > 0).then_some((v, r))
                })
                .collect(),
        )
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec) -> Self {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn var(field: FieldSpec, v: Var) -> Self {
        Self::term(Monomial::var(v), field.one())
    }

    pub fn term(m: Monomial, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms; every coefficient must lie in `field`.
    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Polynomial::zero(field);
        for (m, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElement) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Maximum total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.variables().collect::<Vec<_>>())
            .collect()
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Polynomial::zero(self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Polynomial> {
        self.mul_term(&Monomial::one(), c)
    }

    /// `c·m·self`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Result<Polynomial> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if c.is_zero() {
            return Ok(Polynomial::zero(self.field));
        }
        Ok(Polynomial {
            field: self.field,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn leading_term(&self, ord: &TermOrder) -> Result<(Monomial, FieldElement)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &TermOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Terms sorted from largest to smallest under `ord`.
    pub fn sorted_terms(&self, ord: &TermOrder) -> Vec<(&Monomial, &FieldElement)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, ord: &TermOrder) -> Result<Polynomial> {
        let (_, lc) = self.leading_term(ord)?;
        self.scale(&lc.inv()?)
    }

    /// Evaluate at a point; every variable of `self` must be assigned.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, FieldElement>) -> Result<FieldElement> {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = assignment.get(&v).ok_or(Error::UnboundVariable(v))?;
                t = t.try_mul(&x.pow(e as u64))?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Substitute values for the assigned variables, leaving the rest symbolic.
    pub fn partial_evaluate(&self, assignment: &BTreeMap<Var, FieldElement>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m.iter() {
                match assignment.get(&v) {
                    Some(x) => coeff = coeff.try_mul(&x.pow(e as u64))?,
                    None => rest.push((v, e)),
                }
            }
            out.add_term(Monomial(rest), coeff);
        }
        Ok(out)
    }

    /// Replace every exponent by its residue mod `k` (i.e. impose `x_i^k = 1`).
    pub fn reduce_exponents(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.reduce_exponents(k), c.clone());
        }
        out
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("field mismatch")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn x(f: FieldSpec) -> Polynomial {
        Polynomial::var(f, 1)
    }

    fn y(f: FieldSpec) -> Polynomial {
        Polynomial::var(f, 2)
    }

    #[test]
    fn ring_arithmetic() {
        let f = q();
        let one = Polynomial::one(f);
        let prod = &(&x(f) + &one) * &(&x(f) - &one);
        assert_eq!(prod, &x(f).pow(2) - &one);

        let f2 = FieldSpec::prime(2).unwrap();
        let sq = (&x(f2) + &y(f2)).pow(2);
        assert_eq!(sq, &x(f2).pow(2) + &y(f2).pow(2));

        let g = &(&x(f) * &y(f)) + &one;
        assert!((&g + &g.neg()).is_zero());
    }

    #[test]
    fn field_mismatch() {
        let a = x(q());
        let b = x(FieldSpec::prime(3).unwrap());
        assert_eq!(a.try_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::FieldMismatch));
    }

    #[test]
    fn leading_terms() {
        let f = q();
        let lex = TermOrder::lex(&[1, 2]);
        let grlex = TermOrder::graded_lex(&[1, 2]);
        let p = &(&x(f).pow(2) * &y(f)) + &(&x(f) * &y(f).pow(2));
        assert_eq!(
            p.leading_monomial(&lex).unwrap(),
            Monomial::from_exponents([(1, 2), (2, 1)])
        );
        let p = &x(f) + &y(f).pow(3);
        assert_eq!(p.leading_monomial(&lex).unwrap(), Monomial::var(1));
        assert_eq!(p.leading_monomial(&grlex).unwrap(), Monomial::power(2, 3));
        assert_eq!(
            Polynomial::zero(f).leading_term(&lex),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn evaluation() {
        let f7 = FieldSpec::prime(7).unwrap();
        let cube = &x(f7).pow(3) - &Polynomial::one(f7);
        let at = |a: i64, b: i64| BTreeMap::from([(1, f7.from_i64(a)), (2, f7.from_i64(b))]);
        assert!(cube.evaluate(&at(2, 0)).unwrap().is_zero());
        let eta = &(&x(f7).pow(2) + &(&x(f7) * &y(f7))) + &y(f7).pow(2);
        assert!(eta.evaluate(&at(2, 4)).unwrap().is_zero());
        assert_eq!(eta.evaluate(&at(2, 2)).unwrap(), f7.from_i64(5));
        let only_x = BTreeMap::from([(1, f7.one())]);
        assert_eq!(eta.evaluate(&only_x), Err(Error::UnboundVariable(2)));
    }

    #[test]
    fn monomial_helpers() {
        let a = Monomial::from_exponents([(1, 2), (3, 1)]);
        let b = Monomial::from_exponents([(1, 1), (2, 4)]);
        assert_eq!(
            a.lcm(&b),
            Monomial::from_exponents([(1, 2), (2, 4), (3, 1)])
        );
        assert!(Monomial::var(1).divides(&a));
        assert_eq!(
            a.div(&Monomial::var(1)),
            Some(Monomial::from_exponents([(1, 1), (3, 1)]))
        );
        assert_eq!(a.div(&b), None);
        assert!(Monomial::var(3).is_coprime(&b));
        assert_eq!(
            Monomial::from_exponents([(1, 4), (2, 1)])
                .reduce_exponents(3)
                .to_string(),
            "x1*x2"
        );
        assert_eq!(Monomial::from_exponents([(1, 0), (2, 0)]), Monomial::one());
    }
}

#[cfg(test)]
use super::Monomial;
use super::{Polynomial, TermOrder};
use crate::error::{Error, Result};

/// Result of multivariate division: `f = Σ quotients[i]·basis[i] + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division of `f` by `basis` under `ord`.
///
/// At each step the leading term of the running dividend is divided by the
/// first basis element (in list order) whose leading monomial divides it;
/// otherwise it moves to the remainder. No term of the remainder is
/// divisible by any basis leading monomial.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &TermOrder) -> Result<Division> {
    let field = f.field();
    let mut leads = Vec::with_capacity(basis.len());
    for g in basis {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        let (m, c) = g.leading_term(ord)?;
        leads.push((m, c.inv()?));
    }
    let mut quotients = vec![Polynomial::zero(field); basis.len()];
    let mut remainder = Polynomial::zero(field);
    let mut p = f.clone();
    while !p.is_zero() {
        let (m, c) = p.leading_term(ord)?;
        let divisor = leads.iter().position(|(lm, _)| lm.divides(&m));
        match divisor {
            Some(i) => {
                let (lm, lc_inv) = &leads[i];
                let t = m.div(lm).expect("leading monomial divides");
                let coeff = &c * lc_inv;
                quotients[i].add_term(t.clone(), coeff.clone());
                p = p.try_sub(&basis[i].mul_term(&t, &coeff)?)?;
            }
            None => {
                remainder.add_term(m.clone(), c.clone());
                p.add_term(m, -c);
            }
        }
    }
    Ok(Division {
        quotients,
        remainder,
    })
}

/// `lcm/LT(f)·f − lcm/LT(g)·g` where `lcm = lcm(LM f, LM g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &TermOrder) -> Result<Polynomial> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    let l = mf.lcm(&mg);
    let a = f.mul_term(&l.div(&mf).expect("lcm"), &cf.inv()?)?;
    let b = g.mul_term(&l.div(&mg).expect("lcm"), &cg.inv()?)?;
    a.try_sub(&b)
}

#[cfg(test)]
pub(crate) fn no_term_divisible(r: &Polynomial, leads: &[Monomial]) -> bool {
    r.terms()
        .all(|(m, _)| leads.iter().all(|lm| !lm.divides(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::poly::Var;
    use proptest::prelude::*;

    fn parse(f: FieldSpec, s: &str) -> Polynomial {
        Polynomial::parse(f, s).unwrap()
    }

    fn reconstruct(div: &Division, basis: &[Polynomial]) -> Polynomial {
        basis
            .iter()
            .zip(&div.quotients)
            .fold(div.remainder.clone(), |acc, (g, q)| &acc + &(q * g))
    }

    #[test]
    fn division_examples() {
        let q = FieldSpec::RATIONALS;
        let lex = TermOrder::lex(&[1, 2]);
        let d = normal_form(&parse(q, "x1^2"), &[parse(q, "x1^2 - 1")], &lex).unwrap();
        assert!(d.remainder.is_one());

        let f = parse(q, "x1^2 + x1*x2 + x2^2");
        let basis = [parse(q, "x1 + x2")];
        let d = normal_form(&f, &basis, &lex).unwrap();
        assert_eq!(d.remainder, parse(q, "x2^2"));
        assert_eq!(reconstruct(&d, &basis), f);
    }

    #[test]
    fn membership_via_groebner_basis() {
        let q = FieldSpec::RATIONALS;
        let lex = TermOrder::lex(&[1, 2]);
        // {x - y^2, y^3 - 1} is a Gröbner basis (coprime leading monomials).
        let basis = [parse(q, "x1 - x2^2"), parse(q, "x2^3 - 1")];
        let member = &(&parse(q, "x1*x2 + 3") * &basis[0]) + &(&parse(q, "x1^2") * &basis[1]);
        assert!(normal_form(&member, &basis, &lex)
            .unwrap()
            .remainder
            .is_zero());
    }

    #[test]
    fn zero_divisor_rejected() {
        let q = FieldSpec::RATIONALS;
        let lex = TermOrder::lex(&[1]);
        assert_eq!(
            normal_form(&parse(q, "x1"), &[Polynomial::zero(q)], &lex),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn s_polynomial_examples() {
        let q = FieldSpec::RATIONALS;
        let lex = TermOrder::lex(&[1, 2]);
        let (x, y) = (parse(q, "x1"), parse(q, "x2"));
        assert!(s_polynomial(&x, &y, &lex).unwrap().is_zero());
        let f = parse(q, "x1^2 - x2");
        let g = parse(q, "x1*x2 - 1");
        assert_eq!(s_polynomial(&f, &g, &lex).unwrap(), parse(q, "x1 - x2^2"));
        assert!(s_polynomial(&f, &f, &lex).unwrap().is_zero());
        assert_eq!(
            s_polynomial(&f, &Polynomial::zero(q), &lex),
            Err(Error::ZeroPolynomial)
        );
    }

    fn arb_poly(f: FieldSpec) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec((1u32..4, 0u32..3), 0..3), -3i64..4),
            1..5,
        )
        .prop_map(move |terms| {
            Polynomial::from_terms(
                f,
                terms
                    .into_iter()
                    .map(|(m, c)| (Monomial::from_exponents(m), f.from_i64(c))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn division_identity(
            f in arb_poly(FieldSpec::prime(7).unwrap()),
            basis in prop::collection::vec(arb_poly(FieldSpec::prime(7).unwrap()), 1..4),
            graded in prop::bool::ANY,
            vars in Just(vec![1 as Var, 2, 3]).prop_shuffle(),
        ) {
            let basis: Vec<Polynomial> = basis.into_iter().filter(|g| !g.is_zero()).collect();
            let ord = if graded { TermOrder::graded_lex(&vars) } else { TermOrder::lex(&vars) };
            let d = normal_form(&f, &basis, &ord).unwrap();
            prop_assert_eq!(reconstruct(&d, &basis), f);
            let leads: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial(&ord).unwrap()).collect();
            prop_assert!(no_term_divisible(&d.remainder, &leads));
        }
    }
}

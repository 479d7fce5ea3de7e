//! Elementary and complete homogeneous symmetric polynomials.

use super::{Monomial, Polynomial, Var};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// `σ_d(values)`: the sum over all size-`d` subsets of the product of their
/// elements. `σ_0 = 1`.
pub fn elementary_symmetric(
    field: FieldSpec,
    d: usize,
    values: &[FieldElement],
) -> Result<FieldElement> {
    if d > values.len() {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            count: values.len(),
        });
    }
    // e[j] holds σ_j of the prefix processed so far.
    let mut e = vec![field.zero(); d + 1];
    e[0] = field.one();
    for v in values {
        if v.field() != field {
            return Err(Error::FieldMismatch);
        }
        for j in (1..=d).rev() {
            e[j] = &e[j] + &(v * &e[j - 1]);
        }
    }
    Ok(e.swap_remove(d))
}

/// Symbolic `σ_d(x_{vars[0]}, …)`: the sum of all square-free degree-`d` monomials.
pub fn elementary_symmetric_poly(field: FieldSpec, d: usize, vars: &[Var]) -> Result<Polynomial> {
    if d > vars.len() {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            count: vars.len(),
        });
    }
    let mut out = Polynomial::zero(field);
    let mut chosen = Vec::with_capacity(d);
    subsets(vars, d, 0, &mut chosen, &mut |s| {
        out.add_term(
            Monomial::from_exponents(s.iter().map(|&v| (v, 1))),
            field.one(),
        );
    });
    Ok(out)
}

fn subsets(
    vars: &[Var],
    d: usize,
    start: usize,
    chosen: &mut Vec<Var>,
    emit: &mut dyn FnMut(&[Var]),
) {
    if chosen.len() == d {
        emit(chosen);
        return;
    }
    for i in start..vars.len() {
        chosen.push(vars[i]);
        subsets(vars, d, i + 1, chosen, emit);
        chosen.pop();
    }
}

/// `S_d(x_{vars[0]}, …)`: the sum of every degree-`d` monomial in `vars`,
/// each with coefficient 1. It has `C(d + r − 1, r − 1)` terms for `r = |vars|`.
pub fn complete_homogeneous(field: FieldSpec, d: u32, vars: &[Var]) -> Polynomial {
    let mut out = Polynomial::zero(field);
    if vars.is_empty() {
        if d == 0 {
            out.add_term(Monomial::one(), field.one());
        }
        return out;
    }
    let mut exps = vec![0u32; vars.len()];
    compositions(&mut exps, 0, d, &mut |e| {
        out.add_term(
            Monomial::from_exponents(vars.iter().copied().zip(e.iter().copied())),
            field.one(),
        );
    });
    out
}

/// Enumerate all exponent vectors with the given total, writing into `exps[pos..]`.
fn compositions(exps: &mut [u32], pos: usize, remaining: u32, emit: &mut dyn FnMut(&[u32])) {
    if pos + 1 == exps.len() {
        exps[pos] = remaining;
        emit(exps);
        return;
    }
    for e in (0..=remaining).rev() {
        exps[pos] = e;
        compositions(exps, pos + 1, remaining - e, emit);
    }
    exps[pos] = 0;
}

/// Numeric `S_d(values)` via `h_j(v_1..v_m) = h_j(v_1..v_{m-1}) + v_m·h_{j-1}(v_1..v_m)`.
pub fn complete_homogeneous_value(
    field: FieldSpec,
    d: u32,
    values: &[FieldElement],
) -> Result<FieldElement> {
    let d = d as usize;
    let mut h = vec![field.zero(); d + 1];
    h[0] = field.one();
    for v in values {
        if v.field() != field {
            return Err(Error::FieldMismatch);
        }
        for j in 1..=d {
            h[j] = &h[j] + &(v * &h[j - 1]);
        }
    }
    Ok(h.swap_remove(d))
}

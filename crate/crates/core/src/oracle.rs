//! Independent reference computations used to cross-check the fast paths:
//! exhaustive coloring enumeration, the Buchberger criterion, a textbook
//! Buchberger completion, reduced Gröbner bases, and an induced-cycle
//! chordality test.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::ideal::Coloring;
use crate::poly::{normal_form, s_polynomial, Monomial, Polynomial, TermOrder, Var};

/// Largest `k^n` the enumeration oracle accepts.
pub const ENUMERATION_BUDGET: u64 = 100_000_000;

/// Default number of S-polynomial reductions before [`buchberger`] gives up.
pub const DEFAULT_STEP_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringEnumeration {
    pub count: u64,
    pub witnesses: Option<Vec<Coloring>>,
}

/// Counts labeled proper `k`-colorings by backtracking in vertex order.
pub fn brute_force_colorings(g: &Graph, k: u32, collect: bool) -> Result<ColoringEnumeration> {
    let n = g.n();
    let space = (k as u64)
        .checked_pow(n)
        .filter(|&s| s <= ENUMERATION_BUDGET);
    if space.is_none() {
        return Err(Error::OracleTooLarge(format!("{k}^{n}")));
    }
    // Only constraints towards earlier vertices are checked at each level.
    let earlier: Vec<Vec<usize>> = g
        .vertices()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| u < v)
                .map(|&u| u as usize - 1)
                .collect()
        })
        .collect();
    let mut colors = vec![0u32; n as usize];
    let mut count = 0u64;
    let mut witnesses = collect.then(Vec::new);
    fn rec(
        pos: usize,
        k: u32,
        earlier: &[Vec<usize>],
        colors: &mut [u32],
        count: &mut u64,
        witnesses: &mut Option<Vec<Coloring>>,
    ) {
        if pos == colors.len() {
            *count += 1;
            if let Some(w) = witnesses {
                w.push(
                    colors
                        .iter()
                        .enumerate()
                        .map(|(i, &c)| (i as Vertex + 1, c))
                        .collect(),
                );
            }
            return;
        }
        for c in 0..k {
            if earlier[pos].iter().all(|&u| colors[u] != c) {
                colors[pos] = c;
                rec(pos + 1, k, earlier, colors, count, witnesses);
            }
        }
    }
    rec(0, k, &earlier, &mut colors, &mut count, &mut witnesses);
    Ok(ColoringEnumeration { count, witnesses })
}

/// True iff every S-polynomial of a pair in `basis` reduces to zero.
/// Pairs with coprime leading monomials are skipped.
pub fn buchberger_criterion(basis: &[Polynomial], ord: &TermOrder) -> Result<bool> {
    buchberger_criterion_with(basis, ord, true)
}

pub fn buchberger_criterion_with(
    basis: &[Polynomial],
    ord: &TermOrder,
    skip_coprime: bool,
) -> Result<bool> {
    let leads = basis
        .iter()
        .map(|g| g.leading_monomial(ord))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if skip_coprime && leads[i].is_coprime(&leads[j]) {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j], ord)?;
            if !normal_form(&s, basis, ord)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A Gröbner basis produced by the oracle, with the order it is valid under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub polys: Vec<Polynomial>,
    pub order: TermOrder,
}

/// How [`buchberger`] picks the next critical pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSelection {
    /// Pair with the smallest lcm of leading monomials.
    Normal,
    /// Pairs in creation order.
    Fifo,
}

/// Textbook Buchberger completion. `budget` bounds the number of
/// S-polynomial reductions.
pub fn buchberger(
    gens: &[Polynomial],
    ord: &TermOrder,
    budget: usize,
    selection: PairSelection,
) -> Result<Basis> {
    let mut basis: Vec<Polynomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        basis.push(g.clone());
    }
    let mut leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(ord))
        .collect::<Result<_>>()?;
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut steps = 0usize;
    while !pairs.is_empty() {
        let idx = match selection {
            PairSelection::Fifo => 0,
            PairSelection::Normal => (0..pairs.len())
                .min_by(|&a, &b| {
                    let la = leads[pairs[a].0].lcm(&leads[pairs[a].1]);
                    let lb = leads[pairs[b].0].lcm(&leads[pairs[b].1]);
                    ord.cmp(&la, &lb).then(pairs[a].cmp(&pairs[b]))
                })
                .expect("nonempty"),
        };
        let (i, j) = pairs.remove(idx);
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        if steps >= budget {
            return Err(Error::OracleBudgetExceeded(budget));
        }
        steps += 1;
        let s = s_polynomial(&basis[i], &basis[j], ord)?;
        let r = normal_form(&s, &basis, ord)?.remainder;
        if !r.is_zero() {
            let new = basis.len();
            leads.push(r.leading_monomial(ord)?);
            basis.push(r);
            pairs.extend((0..new).map(|i| (i, new)));
        }
    }
    Ok(Basis {
        polys: basis,
        order: ord.clone(),
    })
}

/// The reduced Gröbner basis: minimal, monic, inter-reduced, sorted by
/// ascending leading monomial.
pub fn reduce_basis(basis: &Basis) -> Result<Basis> {
    let ord = &basis.order;
    let nonzero: Vec<Polynomial> = basis
        .polys
        .iter()
        .filter(|p| !p.is_zero())
        .cloned()
        .collect();
    if !buchberger_criterion(&nonzero, ord)? {
        return Err(Error::NotAGroebnerBasis);
    }
    let mut sorted: Vec<(Monomial, Polynomial)> = nonzero
        .into_iter()
        .map(|p| (p.leading_monomial(ord).expect("nonzero"), p))
        .collect();
    sorted.sort_by(|a, b| ord.cmp(&a.0, &b.0));
    let mut minimal: Vec<(Monomial, Polynomial)> = Vec::new();
    for (lm, p) in sorted {
        if minimal.iter().all(|(m, _)| !m.divides(&lm)) {
            minimal.push((lm, p.monic(ord)?));
        }
    }
    let mut polys: Vec<Polynomial> = minimal.into_iter().map(|(_, p)| p).collect();
    for i in 0..polys.len() {
        let others: Vec<Polynomial> = polys
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        polys[i] = normal_form(&polys[i], &others, ord)?.remainder;
    }
    Ok(Basis {
        polys,
        order: ord.clone(),
    })
}

/// Both sets generate the same ideal, given that each is a Gröbner basis under `ord`.
pub fn same_ideal(a: &[Polynomial], b: &[Polynomial], ord: &TermOrder) -> Result<bool> {
    for (x, y) in [(a, b), (b, a)] {
        for f in x {
            if !normal_form(f, y, ord)?.remainder.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Number of monomials in `vars` divisible by no monomial in `leads`, or
/// `None` if that set is infinite (some variable has no pure-power leading
/// monomial) or exceeds `limit`.
pub fn count_standard_monomials(leads: &[Monomial], vars: &[Var], limit: u64) -> Option<u64> {
    if leads.iter().any(Monomial::is_one) {
        return Some(0);
    }
    let mut bounds = Vec::with_capacity(vars.len());
    for &v in vars {
        let b = leads
            .iter()
            .filter(|m| m.iter().all(|(w, _)| w == v))
            .map(|m| m.exponent(v))
            .min()?;
        bounds.push(b);
    }
    let box_size = bounds
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b as u64))?;
    if box_size > limit {
        return None;
    }
    let mut count = 0;
    let mut exps = vec![0u32; vars.len()];
    loop {
        let m = Monomial::from_exponents(vars.iter().copied().zip(exps.iter().copied()));
        if leads.iter().all(|l| !l.divides(&m)) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == exps.len() {
                return Some(count);
            }
            exps[pos] += 1;
            if exps[pos] < bounds[pos] {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

/// Chordality by exhaustive search for an induced cycle of length ≥ 4.
/// Exponential in `n`; meant for `n ≤ 10`.
pub fn has_long_induced_cycle(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 20, "induced-cycle oracle is exponential");
    for mask in 0u32..(1 << n) {
        if mask.count_ones() < 4 {
            continue;
        }
        let vs: BTreeSet<Vertex> = (1..=n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let deg2 = vs
            .iter()
            .all(|&v| g.neighbors(v).iter().filter(|u| vs.contains(u)).count() == 2);
        if deg2 && induced_connected(g, &vs) {
            return true;
        }
    }
    false
}

fn induced_connected(g: &Graph, vs: &BTreeSet<Vertex>) -> bool {
    let start = *vs.iter().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if vs.contains(&u) && seen.insert(u) {
                stack.push(u);
            }
        }
    }
    seen.len() == vs.len()
}

/// Outcome of [`verify_groebner_basis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVerification {
    /// Every S-polynomial reduces to zero (no coprime skipping).
    pub criterion: bool,
    /// Every generator of the coloring ideal reduces to zero.
    pub generators_reduce: bool,
    pub standard_monomials: Option<u64>,
    /// Labeled proper colorings, computed independently of the basis.
    pub colorings: u64,
    pub valid: bool,
}

/// Checks that `polys` is a Gröbner basis of the `k`-coloring ideal of `g`.
///
/// The coloring ideal is radical and zero-dimensional, so its quotient has
/// dimension equal to the number of colorings. If the generators reduce to
/// zero, the ideal spanned by `polys` contains it, and equal quotient
/// dimensions force equality.
pub fn verify_groebner_basis(
    g: &Graph,
    k: u32,
    field: crate::field::FieldSpec,
    polys: &[Polynomial],
    ord: &TermOrder,
) -> Result<BasisVerification> {
    let nonzero: Vec<Polynomial> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    let criterion = buchberger_criterion_with(&nonzero, ord, false)?;
    let ideal = crate::ideal::build_ideal(g, k, field)?;
    let mut generators_reduce = true;
    for f in ideal.generator_polys() {
        if !normal_form(&f, &nonzero, ord)?.remainder.is_zero() {
            generators_reduce = false;
            break;
        }
    }
    let leads = nonzero
        .iter()
        .map(|p| p.leading_monomial(ord))
        .collect::<Result<Vec<_>>>()?;
    let vars: Vec<Var> = g.vertices().collect();
    let standard_monomials = count_standard_monomials(&leads, &vars, ENUMERATION_BUDGET);
    let colorings = match crate::chordalgb::count_colorings_chordal(g, k) {
        Ok(c) => u64::try_from(c).map_err(|_| Error::OracleTooLarge("coloring count".into()))?,
        Err(Error::NotChordal) => brute_force_colorings(g, k, false)?.count,
        Err(e) => return Err(e),
    };
    let valid = criterion && generators_reduce && standard_monomials == Some(colorings);
    Ok(BasisVerification {
        criterion,
        generators_reduce,
        standard_monomials,
        colorings,
        valid,
    })
}

/// Sort key used to compare bases irrespective of element order.
pub fn canonical_strings(polys: &[Polynomial], ord: &TermOrder) -> Vec<String> {
    let mut v: Vec<String> = polys.iter().map(|p| p.render(ord)).collect();
    v.sort();
    v
}

#[allow(dead_code)]
fn cmp_by_lead(a: &Polynomial, b: &Polynomial, ord: &TermOrder) -> Ordering {
    ord.cmp(
        &a.leading_monomial(ord).expect("nonzero"),
        &b.leading_monomial(ord).expect("nonzero"),
    )
}

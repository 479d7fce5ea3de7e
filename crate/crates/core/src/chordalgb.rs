//! Gröbner bases of coloring ideals of chordal graphs, built one vertex at a
//! time along a perfect elimination ordering.
//!
//! Removing vertex `v` with clique neighbourhood `U` (|U| = r) contributes
//! `S_{k−r}(x_U, x_v)`, or `x_v^k − 1` when `U` is empty. Under the lex order
//! in which earlier-removed vertices are larger variables, its leading
//! monomial is `x_v^{k−r}`, coprime to every other leading monomial, so the
//! collection is a Gröbner basis. A clique of size `k` at removal means a
//! `(k+1)`-clique in the graph and the basis collapses to `{1}`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::graph::{
    perfect_elimination_order, EliminationOutcome, EliminationRecord, Graph,
    PerfectEliminationOrder,
};
use crate::ideal::{mk_vertex_poly, Coloring};
use crate::poly::{complete_homogeneous, Monomial, Polynomial, TermOrder, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// One polynomial per vertex, last-removed vertex first.
    pub polys: Vec<Polynomial>,
    pub order: TermOrder,
    pub peo: PerfectEliminationOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisResult {
    Basis(GroebnerBasis),
    /// The trivial basis `{1}`; `witness` is the first removed vertex whose
    /// clique neighbourhood has at least `k` vertices.
    Infeasible {
        witness: EliminationRecord,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildOutcome {
    Result(BasisResult),
    NotChordal,
}

impl BuildOutcome {
    pub fn into_result(self) -> Result<BasisResult> {
        match self {
            BuildOutcome::Result(r) => Ok(r),
            BuildOutcome::NotChordal => Err(Error::NotChordal),
        }
    }
}

impl GroebnerBasis {
    /// Leading monomials in basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|p| {
                p.leading_monomial(&self.order)
                    .expect("basis elements are nonzero")
            })
            .collect()
    }
}

impl BasisResult {
    pub fn polys(&self, field: FieldSpec) -> Vec<Polynomial> {
        match self {
            BasisResult::Basis(b) => b.polys.clone(),
            BasisResult::Infeasible { .. } => vec![Polynomial::one(field)],
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, BasisResult::Infeasible { .. })
    }
}

/// The polynomial contributed by an elimination record.
pub fn basis_polynomial(
    record: &EliminationRecord,
    k: u32,
    field: FieldSpec,
) -> Result<Polynomial> {
    let r = record.clique.len();
    if r > k as usize {
        return Err(Error::CliqueTooLarge { size: r, k });
    }
    field.check_k(k)?;
    if r == 0 {
        return Ok(mk_vertex_poly(record.vertex, k, field));
    }
    let vars: Vec<Var> = record
        .clique
        .iter()
        .copied()
        .chain([record.vertex])
        .collect();
    Ok(complete_homogeneous(field, k - r as u32, &vars))
}

/// Lex order with the first-removed vertex as the largest variable.
pub fn elimination_order(peo: &PerfectEliminationOrder) -> TermOrder {
    TermOrder::lex(&peo.order())
}

pub fn build_groebner_basis(g: &Graph, k: u32, field: FieldSpec) -> Result<BuildOutcome> {
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    field.check_k(k)?;
    let peo = match perfect_elimination_order(g) {
        EliminationOutcome::Order(peo) => peo,
        EliminationOutcome::NotChordal { .. } => return Ok(BuildOutcome::NotChordal),
    };
    let mut polys = Vec::with_capacity(peo.len());
    for record in &peo.records {
        if record.clique.len() >= k as usize {
            return Ok(BuildOutcome::Result(BasisResult::Infeasible {
                witness: record.clone(),
            }));
        }
        polys.push(basis_polynomial(record, k, field)?);
    }
    polys.reverse();
    let order = elimination_order(&peo);
    Ok(BuildOutcome::Result(BasisResult::Basis(GroebnerBasis {
        polys,
        order,
        peo,
    })))
}

/// Number of standard monomials: `Π (k − |U_i|)`, or 0 for the trivial basis.
pub fn quotient_dimension(result: &BasisResult, k: u32) -> BigUint {
    match result {
        BasisResult::Infeasible { .. } => BigUint::from(0u32),
        BasisResult::Basis(b) => b
            .peo
            .records
            .iter()
            .map(|r| BigUint::from(k.saturating_sub(r.clique.len() as u32)))
            .product(),
    }
}

/// Back-substitution from the smallest variable upward: each vertex takes
/// the smallest color not used by its (already coloured) clique.
pub fn extract_coloring(result: &BasisResult, k: u32) -> Option<Coloring> {
    let BasisResult::Basis(b) = result else {
        return None;
    };
    let mut coloring = Coloring::new();
    for rec in b.peo.records.iter().rev() {
        let used: Vec<u32> = rec.clique.iter().map(|u| coloring[u]).collect();
        let color = (0..k).find(|c| !used.contains(c))?;
        coloring.insert(rec.vertex, color);
    }
    Some(coloring)
}

/// Roots of the univariate polynomial obtained by substituting already
/// chosen values into a basis element, searched among `candidates`.
pub fn univariate_roots(
    poly: &Polynomial,
    var: Var,
    assigned: &std::collections::BTreeMap<Var, FieldElement>,
    candidates: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    let uni = poly.partial_evaluate(assigned)?;
    let mut roots = Vec::new();
    for z in candidates {
        let point = std::collections::BTreeMap::from([(var, z.clone())]);
        if uni.evaluate(&point)?.is_zero() {
            roots.push(z.clone());
        }
    }
    Ok(roots)
}

/// Labeled proper `k`-colorings of a chordal graph.
pub fn count_colorings_chordal(g: &Graph, k: u32) -> Result<BigUint> {
    let peo = perfect_elimination_order(g)
        .order()
        .ok_or(Error::NotChordal)?;
    Ok(peo
        .records
        .iter()
        .map(|r| BigUint::from(k.saturating_sub(r.clique.len() as u32)))
        .product())
}

/// A basis document read back from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDocument {
    pub field: FieldSpec,
    pub k: u32,
    pub graph: Graph,
    pub infeasible: bool,
    pub order: TermOrder,
    pub polys: Vec<Polynomial>,
}

#[derive(Deserialize)]
struct BasisJsonIn {
    kind: String,
    field: FieldSpec,
    k: u32,
    graph: Graph,
    status: String,
    order: Option<TermOrder>,
    basis: Vec<String>,
}

/// Parses a document produced by [`basis_to_json`].
pub fn basis_from_json(value: &serde_json::Value) -> Result<BasisDocument> {
    let bad = |message: String| Error::Parse { line: 0, message };
    let doc: BasisJsonIn = serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
    if doc.kind != "groebner-basis" {
        return Err(bad(format!(
            "expected a groebner-basis document, got `{}`",
            doc.kind
        )));
    }
    let polys = doc
        .basis
        .iter()
        .map(|s| Polynomial::parse(doc.field, s))
        .collect::<Result<_>>()?;
    Ok(BasisDocument {
        field: doc.field,
        k: doc.k,
        graph: doc.graph,
        infeasible: doc.status == "infeasible",
        order: doc
            .order
            .unwrap_or_else(|| TermOrder::natural(crate::poly::OrderKind::Lex)),
        polys,
    })
}

#[derive(Serialize)]
struct BasisJson<'a> {
    version: u32,
    kind: &'static str,
    field: FieldSpec,
    k: u32,
    graph: &'a Graph,
    status: &'static str,
    order: Option<&'a TermOrder>,
    peo: Option<&'a PerfectEliminationOrder>,
    basis: Vec<String>,
    dimension: String,
    coloring: Option<Coloring>,
    witness: Option<&'a EliminationRecord>,
}

/// Stable JSON document for a basis result.
pub fn basis_to_json(
    g: &Graph,
    k: u32,
    field: FieldSpec,
    result: &BasisResult,
) -> serde_json::Value {
    let doc = match result {
        BasisResult::Basis(b) => BasisJson {
            version: crate::JSON_VERSION,
            kind: "groebner-basis",
            field,
            k,
            graph: g,
            status: "basis",
            order: Some(&b.order),
            peo: Some(&b.peo),
            basis: b.polys.iter().map(|p| p.render(&b.order)).collect(),
            dimension: quotient_dimension(result, k).to_string(),
            coloring: extract_coloring(result, k),
            witness: None,
        },
        BasisResult::Infeasible { witness } => BasisJson {
            version: crate::JSON_VERSION,
            kind: "groebner-basis",
            field,
            k,
            graph: g,
            status: "infeasible",
            order: None,
            peo: None,
            basis: vec!["1".to_string()],
            dimension: "0".to_string(),
            coloring: None,
            witness: Some(witness),
        },
    };
    serde_json::to_value(doc).expect("basis serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn rec(vertex: u32, clique: &[u32]) -> EliminationRecord {
        EliminationRecord {
            vertex,
            clique: clique.iter().copied().collect::<BTreeSet<_>>(),
        }
    }

    fn basis(g: &Graph, k: u32) -> BasisResult {
        build_groebner_basis(g, k, q())
            .unwrap()
            .into_result()
            .unwrap()
    }

    #[test]
    fn basis_polynomial_examples() {
        let p = basis_polynomial(&rec(1, &[2]), 3, q()).unwrap();
        assert_eq!(p, Polynomial::parse(q(), "x1^2 + x1*x2 + x2^2").unwrap());
        let p = basis_polynomial(&rec(1, &[]), 3, q()).unwrap();
        assert_eq!(p, Polynomial::parse(q(), "x1^3 - 1").unwrap());
        let p = basis_polynomial(&rec(1, &[2, 3]), 3, q()).unwrap();
        assert_eq!(p, Polynomial::parse(q(), "x1 + x2 + x3").unwrap());
        assert!(basis_polynomial(&rec(1, &[2, 3, 4]), 3, q())
            .unwrap()
            .is_one());
        assert_eq!(
            basis_polynomial(&rec(1, &[2, 3, 4, 5]), 3, q()),
            Err(Error::CliqueTooLarge { size: 4, k: 3 })
        );
    }

    #[test]
    fn triangle_basis() {
        let BasisResult::Basis(b) = basis(&Graph::complete(3), 3) else {
            panic!()
        };
        assert_eq!(b.peo.order(), vec![1, 2, 3]);
        let expected: Vec<Polynomial> = ["x3^3 - 1", "x2^2 + x2*x3 + x3^2", "x1 + x2 + x3"]
            .iter()
            .map(|s| Polynomial::parse(q(), s).unwrap())
            .collect();
        assert_eq!(b.polys, expected);
        assert_eq!(
            b.leading_monomials(),
            vec![
                Monomial::power(3, 3),
                Monomial::power(2, 2),
                Monomial::var(1)
            ]
        );
        let rendered: Vec<String> = b.polys.iter().map(|p| p.render(&b.order)).collect();
        assert_eq!(
            rendered,
            ["x3^3 - 1", "x2^2 + x2*x3 + x3^2", "x1 + x2 + x3"]
        );
    }

    #[test]
    fn infeasible_and_not_chordal() {
        let r = basis(&Graph::complete(4), 3);
        assert!(matches!(r, BasisResult::Infeasible { ref witness } if witness.clique.len() == 3));
        assert_eq!(quotient_dimension(&r, 3), BigUint::from(0u32));
        assert_eq!(extract_coloring(&r, 3), None);
        assert_eq!(
            build_groebner_basis(&Graph::cycle(4), 3, q()).unwrap(),
            BuildOutcome::NotChordal
        );
        assert_eq!(
            build_groebner_basis(&Graph::complete(3), 3, FieldSpec::prime(3).unwrap()),
            Err(Error::CharacteristicDividesK { p: 3, k: 3 })
        );
    }

    #[test]
    fn single_vertex() {
        let BasisResult::Basis(b) = basis(&Graph::new(1), 2) else {
            panic!()
        };
        assert_eq!(b.polys, vec![Polynomial::parse(q(), "x1^2 - 1").unwrap()]);
    }

    #[test]
    fn dimensions_and_counts() {
        assert_eq!(
            quotient_dimension(&basis(&Graph::complete(3), 3), 3),
            BigUint::from(6u32)
        );
        assert_eq!(
            quotient_dimension(&basis(&Graph::new(1), 3), 3),
            BigUint::from(3u32)
        );
        assert_eq!(
            quotient_dimension(&basis(&Graph::path(2), 2), 2),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_colorings_chordal(&Graph::complete(3), 3).unwrap(),
            BigUint::from(6u32)
        );
        assert_eq!(
            count_colorings_chordal(&Graph::cycle(4), 3),
            Err(Error::NotChordal)
        );
    }

    #[test]
    fn extraction_examples() {
        let col = extract_coloring(&basis(&Graph::path(2), 2), 2).unwrap();
        assert_ne!(col[&1], col[&2]);
        let col = extract_coloring(&basis(&Graph::complete(3), 3), 3).unwrap();
        let distinct: BTreeSet<u32> = col.values().copied().collect();
        assert_eq!(distinct.len(), 3);
        let star = Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let col = extract_coloring(&basis(&star, 2), 2).unwrap();
        assert!(col[&2] == col[&3] && col[&3] == col[&4] && col[&1] != col[&2]);
    }

    #[test]
    fn back_substitution_roots_match_unused_colors() {
        // Each basis element, with the smaller variables fixed, vanishes at
        // exactly the k − r roots of unity unused by its clique.
        use crate::field::{first_prime_one_mod, kth_roots_of_unity};
        use crate::ideal::coloring_point;
        let g = crate::graph::random_chordal(7, 4, 3);
        let k = 4;
        let p = first_prime_one_mod(k);
        let field = FieldSpec::prime(p as u64).unwrap();
        let r = build_groebner_basis(&g, k, field)
            .unwrap()
            .into_result()
            .unwrap();
        let BasisResult::Basis(b) = &r else {
            panic!("expected a basis")
        };
        let col = extract_coloring(&r, k).unwrap();
        let point = coloring_point(&col, k, p).unwrap();
        let roots = kth_roots_of_unity(p, k).unwrap();
        for (poly, rec) in b.polys.iter().zip(b.peo.records.iter().rev()) {
            let assigned = rec.clique.iter().map(|u| (*u, point[u].clone())).collect();
            let found = univariate_roots(poly, rec.vertex, &assigned, &roots).unwrap();
            assert_eq!(found.len(), k as usize - rec.clique.len());
            assert!(found.contains(&point[&rec.vertex]));
        }
    }
}

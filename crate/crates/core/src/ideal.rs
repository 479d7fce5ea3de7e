//! The k-coloring ideal: vertex polynomials `x_i^k − 1` and edge
//! polynomials `Σ_{l<k} x_i^l x_j^{k−1−l}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{primitive_kth_root, FieldElement, FieldSpec};
use crate::graph::{Graph, Vertex};
use crate::poly::{complete_homogeneous, Monomial, OrderKind, Polynomial, TermOrder};

/// Colors are integers `0..k`; color `c` corresponds to `ζ^c` for a fixed
/// primitive `k`-th root of unity `ζ`.
pub type Coloring = BTreeMap<Vertex, u32>;

/// `x_i^k − 1`.
pub fn mk_vertex_poly(i: Vertex, k: u32, field: FieldSpec) -> Polynomial {
    let mut p = Polynomial::term(Monomial::power(i, k), field.one());
    p.add_term(Monomial::one(), -field.one());
    p
}

/// `η_ij = (x_i^k − x_j^k)/(x_i − x_j)`, the complete homogeneous polynomial
/// of degree `k − 1` in `x_i, x_j`.
pub fn mk_edge_poly(i: Vertex, j: Vertex, k: u32, field: FieldSpec) -> Result<Polynomial> {
    if i == j {
        return Err(Error::SelfLoop(i));
    }
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    Ok(complete_homogeneous(field, k - 1, &[i, j]))
}

/// Impose `x_i^k = 1`: every exponent is replaced by its residue mod `k`.
pub fn quotient_reduce(f: &Polynomial, k: u32) -> Polynomial {
    f.reduce_exponents(k)
}

/// Identifies a generator of the coloring ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorId {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringIdeal {
    pub graph: Graph,
    pub k: u32,
    pub field: FieldSpec,
    pub vertex_polys: Vec<Polynomial>,
    pub edge_polys: BTreeMap<(Vertex, Vertex), Polynomial>,
}

pub fn build_ideal(graph: &Graph, k: u32, field: FieldSpec) -> Result<ColoringIdeal> {
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    field.check_k(k)?;
    let vertex_polys = graph
        .vertices()
        .map(|v| mk_vertex_poly(v, k, field))
        .collect();
    let edge_polys = graph
        .edges()
        .into_iter()
        .map(|(u, v)| Ok(((u, v), mk_edge_poly(u, v, k, field)?)))
        .collect::<Result<_>>()?;
    Ok(ColoringIdeal {
        graph: graph.clone(),
        k,
        field,
        vertex_polys,
        edge_polys,
    })
}

impl ColoringIdeal {
    /// All generators: vertex polynomials first, then edges in lexicographic order.
    pub fn generators(&self) -> Vec<(GeneratorId, &Polynomial)> {
        self.graph
            .vertices()
            .zip(&self.vertex_polys)
            .map(|(v, p)| (GeneratorId::Vertex(v), p))
            .chain(
                self.edge_polys
                    .iter()
                    .map(|(&(u, v), p)| (GeneratorId::Edge(u, v), p)),
            )
            .collect()
    }

    pub fn generator_polys(&self) -> Vec<Polynomial> {
        self.generators()
            .into_iter()
            .map(|(_, p)| p.clone())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ord = TermOrder::natural(OrderKind::GradedLex);
        let gens: Vec<serde_json::Value> = self
            .generators()
            .into_iter()
            .map(|(id, p)| serde_json::json!({ "id": id, "poly": p.render(&ord) }))
            .collect();
        serde_json::json!({
            "version": crate::JSON_VERSION,
            "kind": "ideal",
            "field": self.field,
            "k": self.k,
            "graph": self.graph,
            "generators": gens,
        })
    }
}

/// True iff `coloring` is total on `V`, uses colors `0..k`, and no edge is monochromatic.
pub fn check_coloring(g: &Graph, k: u32, coloring: &Coloring) -> Result<bool> {
    for v in g.vertices() {
        let &c = coloring.get(&v).ok_or(Error::UncoloredVertex(v))?;
        if c >= k {
            return Err(Error::InvalidColor {
                vertex: v,
                color: c,
                k,
            });
        }
    }
    Ok(g.edges()
        .into_iter()
        .all(|(u, v)| coloring[&u] != coloring[&v]))
}

/// Maps each vertex to `ζ^{color}` in `F_p` for `p ≡ 1 (mod k)`.
pub fn coloring_point(
    coloring: &Coloring,
    k: u32,
    p: u32,
) -> Result<BTreeMap<Vertex, FieldElement>> {
    let zeta = primitive_kth_root(p, k)?;
    Ok(coloring
        .iter()
        .map(|(&v, &c)| (v, zeta.pow(c as u64)))
        .collect())
}

//! Minimal-degree Nullstellensatz certificates for non-colorability over `F_p`.
//!
//! The search works in `F_p[x]/⟨x_i^k − 1⟩` with edge coefficients only:
//! a certificate is a family `β_e` with `Σ β_e η_e = 1` in the quotient ring.
//! Every monomial of every `β_e` has degree `≡ 1 (mod k)`, so the unknowns
//! are indexed by an edge and a monomial `m` with exponents `< k`,
//! `deg m ≡ 1 (mod k)` and `deg m ≤ d`. Vertex coefficients for the
//! full-ring identity are recovered afterwards by [`lift_certificate`].

pub mod linalg;

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::graph::{Graph, Vertex};
use crate::ideal::{mk_edge_poly, quotient_reduce, ColoringIdeal};
use crate::poly::{Monomial, OrderKind, Polynomial, TermOrder};
use linalg::{Eliminator, Gf2Echelon, SparseEchelon};

/// Default column limit for a single system.
pub const DEFAULT_MAX_COLUMNS: usize = 4_000_000;

/// Degrees `d ≤ d_max` with `d ≡ 1 (mod k)`, from `1` for `k ≤ 3` and from
/// `k + 1` otherwise.
pub fn admissible_degrees(k: u32, d_max: u32) -> Vec<u32> {
    let start = if k <= 3 { 1 } else { k + 1 };
    (start..=d_max).step_by(k.max(1) as usize).collect()
}

/// The default degree bound `3k + 1`.
pub fn default_d_max(k: u32) -> u32 {
    3 * k + 1
}

/// Unknown `β_e[m]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ColumnId {
    pub edge: (Vertex, Vertex),
    pub monomial: Monomial,
}

/// Sparse system over `F_p`. Rows are monomials with exponents `< k`,
/// keyed by their base-`k` index (digit `v − 1` is the exponent of `x_v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub field: FieldSpec,
    pub k: u32,
    pub degree: u32,
    pub columns: Vec<ColumnId>,
    pub entries: Vec<Vec<(u64, u32)>>,
    pub rhs: Vec<(u64, u32)>,
}

impl LinearSystem {
    /// Number of rows of the ambient space, `k^n`.
    pub fn num_rows(&self, n: u32) -> Option<u64> {
        (self.k as u64).checked_pow(n)
    }
}

struct Space {
    n: u32,
    k: u32,
    place: Vec<u64>,
}

impl Space {
    fn new(n: u32, k: u32) -> Result<Self> {
        if (k as u64).checked_pow(n).is_none() {
            return Err(Error::SystemTooLarge(format!("{k}^{n} monomials")));
        }
        let place = (0..n).map(|i| (k as u64).pow(i)).collect();
        Ok(Space { n, k, place })
    }

    /// Exponent vectors with entries `< k` and total degree exactly `d`,
    /// in increasing base-`k` index.
    fn monomials_of_degree(&self, d: u32, limit: usize) -> Result<Vec<Vec<u32>>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.n as usize];
        fn rec(
            pos: usize,
            left: u32,
            k: u32,
            cur: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
            limit: usize,
        ) -> bool {
            if pos == cur.len() {
                if left == 0 {
                    if out.len() >= limit {
                        return false;
                    }
                    out.push(cur.clone());
                }
                return true;
            }
            let room = (cur.len() - pos - 1) as u32 * (k - 1);
            for e in 0..k.min(left + 1) {
                if left - e > room {
                    continue;
                }
                cur[pos] = e;
                if !rec(pos + 1, left - e, k, cur, out, limit) {
                    return false;
                }
            }
            cur[pos] = 0;
            true
        }
        // Recurse from the most significant digit (the highest variable).
        if !rec(0, d, self.k, &mut cur, &mut out, limit) {
            return Err(Error::SystemTooLarge(format!("more than {limit} columns")));
        }
        for m in &mut out {
            m.reverse();
        }
        Ok(out)
    }

    fn index(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .zip(&self.place)
            .map(|(&e, &p)| e as u64 * p)
            .sum()
    }

    /// Rows of `quotient_reduce(m · η_uv)`; all coefficients are `1`.
    fn column(&self, exps: &[u32], (u, v): (Vertex, Vertex)) -> Vec<(u64, u32)> {
        let k = self.k;
        let (iu, iv) = (u as usize - 1, v as usize - 1);
        let base =
            self.index(exps) - exps[iu] as u64 * self.place[iu] - exps[iv] as u64 * self.place[iv];
        let mut col: Vec<(u64, u32)> = (0..k)
            .map(|l| {
                let eu = (exps[iu] + l) % k;
                let ev = (exps[iv] + k - 1 - l) % k;
                (
                    base + eu as u64 * self.place[iu] + ev as u64 * self.place[iv],
                    1,
                )
            })
            .collect();
        col.sort_unstable();
        col
    }

    fn monomial(&self, exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps.iter().enumerate().map(|(i, &e)| (i as u32 + 1, e)))
    }
}

fn check_inputs(g: &Graph, k: u32, field: FieldSpec) -> Result<u32> {
    let p = field
        .modulus()
        .ok_or(Error::PrimeFieldRequired("certificate search"))?;
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    field.check_k(k)?;
    Space::new(g.n(), k)?;
    Ok(p)
}

/// Column entries as `(row key, coefficient)`.
type Entries = Vec<(u64, u32)>;

/// Columns of one degree class, edge-major.
fn class_columns(
    g: &Graph,
    space: &Space,
    degree: u32,
    limit: usize,
) -> Result<Vec<(ColumnId, Entries)>> {
    let monos = space.monomials_of_degree(degree, limit)?;
    let edges = g.edges();
    if edges.len().saturating_mul(monos.len()) > limit {
        return Err(Error::SystemTooLarge(format!("more than {limit} columns")));
    }
    let pairs: Vec<((Vertex, Vertex), &Vec<u32>)> = edges
        .iter()
        .flat_map(|&e| monos.iter().map(move |m| (e, m)))
        .collect();
    Ok(pairs
        .into_par_iter()
        .map(|(edge, exps)| {
            (
                ColumnId {
                    edge,
                    monomial: space.monomial(exps),
                },
                space.column(exps, edge),
            )
        })
        .collect())
}

/// Degree classes `1, 1 + k, …` not exceeding `d`.
fn classes(k: u32, d: u32) -> impl Iterator<Item = u32> {
    (1..=d).step_by(k as usize)
}

/// The system whose solutions are the edge-coefficient certificates of
/// degree `≤ d` in the quotient ring.
pub fn assemble_system(g: &Graph, k: u32, field: FieldSpec, d: u32) -> Result<LinearSystem> {
    check_inputs(g, k, field)?;
    let space = Space::new(g.n(), k)?;
    let mut columns = Vec::new();
    let mut entries = Vec::new();
    for class in classes(k, d) {
        for (id, col) in class_columns(g, &space, class, DEFAULT_MAX_COLUMNS)? {
            columns.push(id);
            entries.push(col);
        }
    }
    Ok(LinearSystem {
        field,
        k,
        degree: d,
        columns,
        entries,
        rhs: vec![(0, 1)],
    })
}

/// Which elimination engine runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Engine {
    /// Bit-packed over `F_2`, sparse otherwise.
    #[default]
    Auto,
    Sparse,
    DenseGf2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// One value per column.
    Solution(Vec<FieldElement>),
    Infeasible,
}

/// Assigns dense row ids in order of first appearance; the constant
/// monomial (the right-hand side) is always row `0`.
#[derive(Default)]
struct RowIndex(HashMap<u64, u32>);

impl RowIndex {
    fn id(&mut self, key: u64) -> u32 {
        let next = self.0.len() as u32;
        *self.0.entry(key).or_insert(next)
    }

    fn compact(&mut self, col: &[(u64, u32)], p: u32) -> Vec<(u32, u32)> {
        col.iter().map(|&(r, v)| (self.id(r), v % p)).collect()
    }
}

fn make_engine(engine: Engine, p: u32, rhs: &[(u32, u32)]) -> Result<Box<dyn Eliminator + Send>> {
    Ok(match engine {
        Engine::Auto if p == 2 => Box::new(Gf2Echelon::new(rhs)),
        Engine::Auto | Engine::Sparse => Box::new(SparseEchelon::new(p, rhs)),
        Engine::DenseGf2 if p == 2 => Box::new(Gf2Echelon::new(rhs)),
        Engine::DenseGf2 => {
            return Err(Error::PrimeFieldRequired("the F_2 engine needs p = 2 and"))
        }
    })
}

pub fn solve_system(sys: &LinearSystem) -> SolveOutcome {
    solve_system_with(sys, Engine::Auto).expect("assembled systems live over a prime field")
}

/// Exact elimination with a fixed pivot rule; the returned solution is a
/// deterministic function of the system.
pub fn solve_system_with(sys: &LinearSystem, engine: Engine) -> Result<SolveOutcome> {
    let p = sys
        .field
        .modulus()
        .ok_or(Error::PrimeFieldRequired("linear solving"))?;
    let mut rows = RowIndex::default();
    rows.id(0);
    let rhs = rows.compact(&sys.rhs, p);
    let mut e = make_engine(engine, p, &rhs)?;
    for col in &sys.entries {
        let c = rows.compact(col, p);
        e.push_column(&c);
    }
    Ok(match e.solution() {
        Some(x) => SolveOutcome::Solution(
            x.into_iter()
                .map(|v| sys.field.from_u64(v as u64))
                .collect(),
        ),
        None => SolveOutcome::Infeasible,
    })
}

/// One rung of the degree ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAttempt {
    pub degree: u32,
    /// Columns eliminated, cumulative over lower degrees.
    pub columns: usize,
    pub rank: usize,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub field: FieldSpec,
    pub k: u32,
    /// `β_e`, nonzero entries only, exponents `< k`.
    pub edge_coeffs: BTreeMap<(Vertex, Vertex), Polynomial>,
    /// `γ_v` for the full-ring identity, once lifted.
    pub vertex_coeffs: Option<BTreeMap<Vertex, Polynomial>>,
    /// Largest total degree among the `β_e`.
    pub degree: u32,
}

impl Certificate {
    /// Largest total degree among all coefficients, vertex ones included.
    pub fn full_degree(&self) -> u32 {
        let gammas = self.vertex_coeffs.iter().flat_map(|m| m.values());
        self.edge_coeffs
            .values()
            .chain(gammas)
            .filter_map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Certificate(Certificate),
    /// No admissible degree up to the bound works; the graph may be
    /// colorable or the bound too small.
    ColorableWitnessUnknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// Every degree tried, ascending; all but possibly the last are infeasible.
    pub attempts: Vec<DegreeAttempt>,
}

impl SearchReport {
    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            SearchOutcome::Certificate(c) => Some(c),
            SearchOutcome::ColorableWitnessUnknown => None,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub engine: Engine,
    pub max_columns: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            engine: Engine::Auto,
            max_columns: DEFAULT_MAX_COLUMNS,
        }
    }
}

pub fn nulla_search(g: &Graph, k: u32, field: FieldSpec, d_max: u32) -> Result<SearchReport> {
    nulla_search_with(g, k, field, d_max, &SearchOptions::default(), &mut |_| {})
}

/// Walks the admissible degrees upwards, extending one elimination with the
/// columns of each new degree class, and stops at the first consistent
/// system. `progress` sees every attempt as it completes.
pub fn nulla_search_with(
    g: &Graph,
    k: u32,
    field: FieldSpec,
    d_max: u32,
    opts: &SearchOptions,
    progress: &mut dyn FnMut(&DegreeAttempt),
) -> Result<SearchReport> {
    let p = check_inputs(g, k, field)?;
    let space = Space::new(g.n(), k)?;
    let mut rows = RowIndex::default();
    let rhs = rows.compact(&[(0, 1)], p);
    let mut engine = make_engine(opts.engine, p, &rhs)?;
    let mut ids: Vec<ColumnId> = Vec::new();
    let mut next_class = 1;
    let mut attempts = Vec::new();
    for d in admissible_degrees(k, d_max) {
        'classes: while next_class <= d {
            let budget = opts.max_columns.saturating_sub(ids.len());
            for (id, col) in class_columns(g, &space, next_class, budget)? {
                if engine.is_consistent() {
                    break 'classes;
                }
                ids.push(id);
                let c = rows.compact(&col, p);
                engine.push_column(&c);
            }
            next_class += k;
        }
        let attempt = DegreeAttempt {
            degree: d,
            columns: engine.columns(),
            rank: engine.rank(),
            feasible: engine.is_consistent(),
        };
        progress(&attempt);
        attempts.push(attempt);
        if let Some(x) = engine.solution() {
            let cert = certificate_from_solution(field, k, &ids, &x)?;
            debug_assert_eq!(cert.degree, d);
            return Ok(SearchReport {
                outcome: SearchOutcome::Certificate(cert),
                attempts,
            });
        }
    }
    Ok(SearchReport {
        outcome: SearchOutcome::ColorableWitnessUnknown,
        attempts,
    })
}

fn certificate_from_solution(
    field: FieldSpec,
    k: u32,
    ids: &[ColumnId],
    x: &[u32],
) -> Result<Certificate> {
    let mut terms: BTreeMap<(Vertex, Vertex), Vec<(Monomial, FieldElement)>> = BTreeMap::new();
    for (id, &v) in ids.iter().zip(x) {
        if v != 0 {
            terms
                .entry(id.edge)
                .or_default()
                .push((id.monomial.clone(), field.from_u64(v as u64)));
        }
    }
    let edge_coeffs = terms
        .into_iter()
        .map(|(e, t)| Ok((e, Polynomial::from_terms(field, t)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let degree = edge_coeffs
        .values()
        .filter_map(Polynomial::total_degree)
        .max()
        .unwrap_or(0);
    Ok(Certificate {
        field,
        k,
        edge_coeffs,
        vertex_coeffs: None,
        degree,
    })
}

/// Builds the certificate read off a solution of [`assemble_system`].
pub fn certificate_from_system(
    sys: &LinearSystem,
    solution: &[FieldElement],
) -> Result<Certificate> {
    let x: Vec<u32> = solution
        .iter()
        .map(|v| v.residue().ok_or(Error::FieldMismatch))
        .collect::<Result<_>>()?;
    certificate_from_solution(sys.field, sys.k, &sys.columns, &x)
}

fn edge_combination(cert: &Certificate, g: &Graph) -> Result<Polynomial> {
    let mut sum = Polynomial::zero(cert.field);
    for (&(u, v), beta) in &cert.edge_coeffs {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidCertificate(format!(
                "{{{u}, {v}}} is not an edge"
            )));
        }
        if beta.field() != cert.field {
            return Err(Error::FieldMismatch);
        }
        sum = sum.try_add(&beta.try_mul(&mk_edge_poly(u, v, cert.k, cert.field)?)?)?;
    }
    Ok(sum)
}

/// Recovers vertex coefficients `γ_v` with `Σ β_e η_e + Σ γ_v (x_v^k − 1) = 1`
/// by dividing `1 − Σ β_e η_e` by the vertex polynomials.
pub fn lift_certificate(cert: &Certificate, g: &Graph, k: u32) -> Result<Certificate> {
    if cert.k != k {
        return Err(Error::InvalidCertificate(format!(
            "certificate is for k = {}, not {k}",
            cert.k
        )));
    }
    let field = cert.field;
    let target = Polynomial::one(field).try_sub(&edge_combination(cert, g)?)?;
    let mut gammas: BTreeMap<Vertex, Vec<(Monomial, FieldElement)>> = BTreeMap::new();
    let mut remainder = Polynomial::zero(field);
    for (m, c) in target.terms() {
        // c·x^a = c·x^{a − k e_v}(x_v^k − 1) + c·x^{a − k e_v}, lowest variable first.
        let mut exps: Vec<(u32, u32)> = m.iter().collect();
        for i in 0..exps.len() {
            while exps[i].1 >= k {
                exps[i].1 -= k;
                let v = exps[i].0;
                if v < 1 || v > g.n() {
                    return Err(Error::InvalidCertificate(format!(
                        "x{v} is not a vertex variable"
                    )));
                }
                gammas
                    .entry(v)
                    .or_default()
                    .push((Monomial::from_exponents(exps.iter().copied()), c.clone()));
            }
        }
        remainder.add_term(Monomial::from_exponents(exps), c.clone());
    }
    if !remainder.is_zero() {
        return Err(Error::InvalidCertificate(
            "edge combination is not 1 in the quotient ring".into(),
        ));
    }
    let mut vertex_coeffs: BTreeMap<Vertex, Polynomial> =
        g.vertices().map(|v| (v, Polynomial::zero(field))).collect();
    for (v, terms) in gammas {
        vertex_coeffs.insert(v, Polynomial::from_terms(field, terms)?);
    }
    Ok(Certificate {
        vertex_coeffs: Some(vertex_coeffs),
        ..cert.clone()
    })
}

/// Checks `Σ β_e η_e = 1` in the quotient ring, or the full-ring identity
/// when vertex coefficients are present.
pub fn verify_certificate(cert: &Certificate, ideal: &ColoringIdeal) -> bool {
    if cert.field != ideal.field || cert.k != ideal.k {
        return false;
    }
    let Ok(mut sum) = edge_combination(cert, &ideal.graph) else {
        return false;
    };
    match &cert.vertex_coeffs {
        None => quotient_reduce(&sum, cert.k).is_one(),
        Some(gammas) => {
            for (&v, gamma) in gammas {
                if v < 1 || v > ideal.graph.n() {
                    return false;
                }
                let nu = &ideal.vertex_polys[v as usize - 1];
                match gamma.try_mul(nu).and_then(|t| sum.try_add(&t)) {
                    Ok(s) => sum = s,
                    Err(_) => return false,
                }
            }
            sum.is_one()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeCoeff {
    edge: (Vertex, Vertex),
    poly: String,
}

#[derive(Serialize, Deserialize)]
struct VertexCoeff {
    vertex: Vertex,
    poly: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    version: u32,
    kind: String,
    field: FieldSpec,
    k: u32,
    graph: Graph,
    status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    full_degree: Option<u32>,
    #[serde(default)]
    edge_coeffs: Vec<EdgeCoeff>,
    #[serde(default)]
    vertex_coeffs: Option<Vec<VertexCoeff>>,
    #[serde(default)]
    attempts: Vec<DegreeAttempt>,
}

fn render(p: &Polynomial) -> String {
    p.render(&TermOrder::natural(OrderKind::GradedLex))
}

/// Stable JSON document for a search result. Certificates carry the graph
/// so they can be verified on their own.
pub fn report_to_json(
    g: &Graph,
    k: u32,
    field: FieldSpec,
    report: &SearchReport,
) -> serde_json::Value {
    let cert = report.certificate();
    let doc = CertificateJson {
        version: crate::JSON_VERSION,
        kind: "certificate".into(),
        field,
        k,
        graph: g.clone(),
        status: if cert.is_some() {
            "certificate"
        } else {
            "colorable-witness-unknown"
        }
        .into(),
        degree: cert.map(|c| c.degree),
        full_degree: cert
            .filter(|c| c.vertex_coeffs.is_some())
            .map(Certificate::full_degree),
        edge_coeffs: cert
            .map(|c| {
                c.edge_coeffs
                    .iter()
                    .map(|(&edge, p)| EdgeCoeff {
                        edge,
                        poly: render(p),
                    })
                    .collect()
            })
            .unwrap_or_default(),
        vertex_coeffs: cert.and_then(|c| c.vertex_coeffs.as_ref()).map(|m| {
            m.iter()
                .map(|(&vertex, p)| VertexCoeff {
                    vertex,
                    poly: render(p),
                })
                .collect()
        }),
        attempts: report.attempts.clone(),
    };
    serde_json::to_value(doc).expect("certificate serializes")
}

/// Parses a document produced by [`report_to_json`] back into the graph and
/// certificate it carries.
pub fn certificate_from_json(value: &serde_json::Value) -> Result<(Graph, Certificate)> {
    let bad = |m: String| Error::InvalidCertificate(m);
    let doc: CertificateJson =
        serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
    if doc.kind != "certificate" {
        return Err(bad(format!(
            "expected a certificate document, got `{}`",
            doc.kind
        )));
    }
    if doc.status != "certificate" {
        return Err(bad("document records no certificate".into()));
    }
    let field = doc.field;
    let mut edge_coeffs = BTreeMap::new();
    for ec in doc.edge_coeffs {
        let (u, v) = ec.edge;
        edge_coeffs.insert((u.min(v), u.max(v)), Polynomial::parse(field, &ec.poly)?);
    }
    let vertex_coeffs = doc
        .vertex_coeffs
        .map(|vs| {
            vs.into_iter()
                .map(|vc| Ok((vc.vertex, Polynomial::parse(field, &vc.poly)?)))
                .collect::<Result<_>>()
        })
        .transpose()?;
    let degree = edge_coeffs
        .values()
        .filter_map(Polynomial::total_degree)
        .max()
        .unwrap_or(0);
    if doc.degree.is_some_and(|d| d != degree) {
        return Err(bad(format!(
            "recorded degree {} but coefficients have degree {degree}",
            doc.degree.unwrap()
        )));
    }
    Ok((
        doc.graph,
        Certificate {
            field,
            k: doc.k,
            edge_coeffs,
            vertex_coeffs,
            degree,
        },
    ))
}

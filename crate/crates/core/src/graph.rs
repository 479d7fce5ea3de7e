//! Undirected simple graphs on vertices `1..=n`, DIMACS / edge-list input,
//! simpliciality and perfect elimination orderings.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<BTreeSet<Vertex>>,
}

/// Input syntax accepted by [`parse_graph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    /// `c` comments, one `p edge n m` header, `e u v` edge lines.
    Dimacs,
    /// One `u v` pair per line, `#` comments; `n` is the largest index seen.
    EdgeList,
}

impl GraphFormat {
    /// DIMACS if any non-blank line starts with `p` or `e`, edge list otherwise.
    pub fn detect(input: &str) -> GraphFormat {
        let dimacs = input
            .lines()
            .map(str::trim)
            .any(|l| l.starts_with("p ") || l.starts_with("e "));
        if dimacs {
            GraphFormat::Dimacs
        } else {
            GraphFormat::EdgeList
        }
    }
}

impl Graph {
    pub fn new(n: u32) -> Self {
        Graph {
            adjacency: vec![BTreeSet::new(); n as usize],
        }
    }

    pub fn from_edges(n: u32, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: u32) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n {
            for v in u + 1..=n {
                g.add_edge(u, v).expect("valid vertices");
            }
        }
        g
    }

    pub fn cycle(n: u32) -> Self {
        let mut g = Graph::new(n);
        for u in 1..=n {
            g.add_edge(u, u % n + 1).expect("valid vertices");
        }
        g
    }

    pub fn path(n: u32) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.add_edge(u, u + 1).expect("valid vertices");
        }
        g
    }

    pub fn n(&self) -> u32 {
        self.adjacency.len() as u32
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n()
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v == 0 || v > self.n() {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Adds `{u, v}`; repeated edges are collapsed.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adjacency[u as usize - 1].insert(v);
        self.adjacency[v as usize - 1].insert(u);
        Ok(())
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adjacency[v as usize - 1]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && u >= 1 && u <= self.n() && self.neighbors(u).contains(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.vertices()
            .flat_map(|u| self.neighbors(u).range(u + 1..).map(move |&v| (u, v)))
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_clique(&self, vs: &BTreeSet<Vertex>) -> bool {
        vs.iter()
            .all(|&u| vs.iter().all(|&w| u == w || self.has_edge(u, w)))
    }

    /// Renders the graph in DIMACS edge format.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.num_edges());
        for (u, v) in self.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: u32,
    edges: Vec<(Vertex, Vertex)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n(),
            edges: self.edges(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        Graph::from_edges(r.n, &r.edges).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graph(n={}, m={})", self.n(), self.num_edges())
    }
}

fn parse_vertex(tok: Option<&str>, line: usize) -> Result<Vertex> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        message: "missing vertex".into(),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex `{tok}`"),
    })
}

fn located(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Parse {
            line,
            message: other.to_string(),
        },
    }
}

/// Parses a graph. Errors carry 1-based line numbers.
pub fn parse_graph(input: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::Dimacs => parse_dimacs(input),
        GraphFormat::EdgeList => parse_edge_list(input),
    }
}

fn parse_dimacs(input: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "duplicate `p` line".into(),
                    });
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => {
                        return Err(Error::Parse {
                            line,
                            message: format!("expected `p edge`, got {:?}", other.unwrap_or("")),
                        })
                    }
                }
                let n = parse_vertex(toks.next(), line)?;
                // The declared edge count is informational; duplicates are collapsed.
                let _m = parse_vertex(toks.next(), line)?;
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or_else(|| Error::Parse {
                    line,
                    message: "edge before `p` line".into(),
                })?;
                let u = parse_vertex(toks.next(), line)?;
                let v = parse_vertex(toks.next(), line)?;
                g.add_edge(u, v).map_err(|e| located(e, line))?;
            }
            Some(tok) => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown line type `{tok}`"),
                })
            }
        }
        if toks.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "trailing tokens".into(),
            });
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        message: "missing `p edge n m` line".into(),
    })
}

fn parse_edge_list(input: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (idx, raw) in input.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let u = parse_vertex(toks.next(), line)?;
        let v = parse_vertex(toks.next(), line)?;
        if toks.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "trailing tokens".into(),
            });
        }
        if u == 0 || v == 0 {
            return Err(Error::Parse {
                line,
                message: "vertices are numbered from 1".into(),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: Error::SelfLoop(u).to_string(),
            });
        }
        n = n.max(u).max(v);
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

/// `v` is simplicial iff its neighbours form a clique. Checked as
/// `|N(v) ∩ N(w)| ≥ deg(v) − 1` for every neighbour `w`.
pub fn is_simplicial(g: &Graph, v: Vertex) -> Result<bool> {
    g.check(v)?;
    Ok(simplicial_in(g.neighbors(v), |w| g.neighbors(w)))
}

fn simplicial_in<'a>(nv: &BTreeSet<Vertex>, nbrs: impl Fn(Vertex) -> &'a BTreeSet<Vertex>) -> bool {
    let d = nv.len();
    nv.iter()
        .all(|&w| nv.intersection(nbrs(w)).count() + 1 >= d)
}

/// A vertex together with its neighbourhood at the moment of removal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationRecord {
    pub vertex: Vertex,
    pub clique: BTreeSet<Vertex>,
}

/// Records in removal order (first removed first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PerfectEliminationOrder {
    pub records: Vec<EliminationRecord>,
}

impl PerfectEliminationOrder {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Vertices in removal order.
    pub fn order(&self) -> Vec<Vertex> {
        self.records.iter().map(|r| r.vertex).collect()
    }

    /// Checks every vertex appears once and each recorded clique is exactly
    /// the neighbourhood among later vertices and is pairwise adjacent.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let order = self.order();
        let mut seen = BTreeSet::new();
        if order.len() != g.n() as usize
            || !order
                .iter()
                .all(|&v| v >= 1 && v <= g.n() && seen.insert(v))
        {
            return false;
        }
        let mut remaining: BTreeSet<Vertex> = g.vertices().collect();
        for rec in &self.records {
            remaining.remove(&rec.vertex);
            let later: BTreeSet<Vertex> = g
                .neighbors(rec.vertex)
                .intersection(&remaining)
                .copied()
                .collect();
            if later != rec.clique || !g.is_clique(&rec.clique) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationOutcome {
    Order(PerfectEliminationOrder),
    /// The residual graph on these vertices has no simplicial vertex.
    NotChordal {
        stuck: BTreeSet<Vertex>,
    },
}

impl EliminationOutcome {
    pub fn order(self) -> Option<PerfectEliminationOrder> {
        match self {
            EliminationOutcome::Order(o) => Some(o),
            EliminationOutcome::NotChordal { .. } => None,
        }
    }
}

/// Repeatedly removes the lowest-index simplicial vertex of the residual graph.
pub fn perfect_elimination_order(g: &Graph) -> EliminationOutcome {
    let mut residual: Vec<BTreeSet<Vertex>> = g.adjacency.clone();
    let mut alive: BTreeSet<Vertex> = g.vertices().collect();
    let mut records = Vec::with_capacity(g.n() as usize);
    while !alive.is_empty() {
        let found = alive
            .iter()
            .copied()
            .find(|&v| simplicial_in(&residual[v as usize - 1], |w| &residual[w as usize - 1]));
        let Some(v) = found else {
            return EliminationOutcome::NotChordal { stuck: alive };
        };
        let clique = std::mem::take(&mut residual[v as usize - 1]);
        for &w in &clique {
            residual[w as usize - 1].remove(&v);
        }
        alive.remove(&v);
        records.push(EliminationRecord { vertex: v, clique });
    }
    EliminationOutcome::Order(PerfectEliminationOrder { records })
}

pub fn is_chordal(g: &Graph) -> bool {
    matches!(perfect_elimination_order(g), EliminationOutcome::Order(_))
}

/// Random chordal graph: each new vertex `v ≥ 2` attaches to a random clique
/// of size below `max_clique` among the earlier vertices (grown greedily from a
/// random seed vertex). Every vertex is simplicial when added, so the result
/// is chordal with clique number at most `max_clique`. For `max_clique ≥ 2`
/// the graph is connected.
pub fn random_chordal(n: u32, max_clique: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    if max_clique < 2 {
        return g;
    }
    for v in 2..=n {
        let target = rng.random_range(1..max_clique) as usize;
        let mut clique = vec![rng.random_range(1..v)];
        let mut candidates: Vec<Vertex> = g
            .neighbors(clique[0])
            .iter()
            .copied()
            .filter(|&w| w < v)
            .collect();
        while clique.len() < target && !candidates.is_empty() {
            let w = candidates.swap_remove(rng.random_range(0..candidates.len()));
            clique.push(w);
            candidates.retain(|&c| g.has_edge(c, w));
        }
        for &u in &clique {
            g.add_edge(u, v).expect("valid vertices");
        }
    }
    g
}

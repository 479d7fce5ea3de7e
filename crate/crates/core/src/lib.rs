//! Graph coloring ideals: construction, Gröbner bases of chordal graphs,
//! coloring counts and extraction, and minimal-degree Nullstellensatz
//! certificates of non-colorability.

pub mod chordalgb;
pub mod error;
pub mod field;
pub mod graph;
pub mod ideal;
pub mod nulla;
pub mod oracle;
pub mod poly;

/// Version tag carried by every JSON document.
pub const JSON_VERSION: u32 = 1;

pub use chordalgb::{
    build_groebner_basis, count_colorings_chordal, extract_coloring, quotient_dimension,
    BasisResult, BuildOutcome, GroebnerBasis,
};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use graph::{
    parse_graph, perfect_elimination_order, random_chordal, Graph, GraphFormat, Vertex,
};
pub use ideal::{build_ideal, check_coloring, Coloring, ColoringIdeal};
pub use nulla::{
    admissible_degrees, assemble_system, lift_certificate, nulla_search, solve_system,
    verify_certificate, Certificate, SearchOutcome, SearchReport,
};
pub use poly::{Monomial, Polynomial, TermOrder};

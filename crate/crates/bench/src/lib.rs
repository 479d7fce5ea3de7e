//! Shared inputs for the benchmarks.

use colorideal::{random_chordal, FieldSpec, Graph};

/// `(n, k, p)`: the complete graph `K_n` with `k = n - 1` colors over `F_p`.
pub const CERTIFICATE_CELLS: &[(u32, u32, u64)] = &[(4, 3, 2), (4, 3, 7), (5, 4, 3), (6, 5, 2)];

pub fn certificate_cell(n: u32, k: u32, p: u64) -> (Graph, u32, FieldSpec) {
    (
        Graph::complete(n),
        k,
        FieldSpec::prime(p).expect("benchmark moduli are prime"),
    )
}

/// Random chordal graphs of increasing size with clique number at most 4.
pub fn chordal_family() -> Vec<Graph> {
    [10, 40, 160]
        .into_iter()
        .map(|n| random_chordal(n, 4, u64::from(n)))
        .collect()
}

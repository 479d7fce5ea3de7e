use thiserror::Error;

/// Errors raised by the algebra, graph and certificate routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("F_{p} has no full set of {k}-th roots of unity ({p} is not 1 mod {k})")]
    RootsUnavailable { p: u32, k: u32 },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} out of range for {count} values")]
    DegreeOutOfRange { degree: usize, count: usize },
    #[error("variable x{0} has no assigned value")]
    UnboundVariable(u32),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: u32, n: u32 },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("field characteristic {p} divides k = {k}")]
    CharacteristicDividesK { p: u32, k: u32 },
    #[error("invalid color {color} for vertex {vertex} (k = {k})")]
    InvalidColor { vertex: u32, color: u32, k: u32 },
    #[error("coloring does not assign vertex {0}")]
    UncoloredVertex(u32),
    #[error("clique of size {size} exceeds k = {k}")]
    CliqueTooLarge { size: usize, k: u32 },
    #[error("graph is not chordal")]
    NotChordal,
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("linear system too large: {0}")]
    SystemTooLarge(String),
    #[error("brute-force search space {0} exceeds the oracle budget")]
    OracleTooLarge(String),
    #[error("Buchberger step budget of {0} reductions exhausted")]
    OracleBudgetExceeded(usize),
    #[error("input is not a Gröbner basis")]
    NotAGroebnerBasis,
    #[error("{0} requires a prime field")]
    PrimeFieldRequired(&'static str),
    #[error("k must be at least {min}, got {k}")]
    InvalidK { k: u32, min: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

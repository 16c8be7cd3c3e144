//! Crate-wide error type.
//!
//! Every fallible operation in this crate returns [`Error`]; the CLI maps
//! validation failures and malformed inputs to distinct exit codes, so the
//! variants keep enough structure to tell those apart.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by construction, validation and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    // ----- labels and generic input shape -----
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("{what} has {size} elements, exceeding the bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    // ----- linear algebra -----
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("coboundary maps do not compose to zero at degree {degree}")]
    NotAComplex { degree: i64 },
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("scalar {value} has no image in GF({modulus}) (denominator divisible by the modulus)")]
    BadScalar { value: String, modulus: u64 },

    // ----- posets -----
    #[error("hasse relation contains a cycle through `{0}`")]
    HasseCycle(String),
    #[error("hasse edges are not covering relations; redundant pairs: {}", format_pairs(.0))]
    NonCoveringEdges(Vec<(String, String)>),
    #[error("`{0}` is not a lower set: missing element `{1}` below `{2}`")]
    NotLowerSet(String, String, String),

    // ----- KP-modules -----
    #[error("missing transition matrix for hasse edge {x} < {y}")]
    MissingEdge { x: String, y: String },
    #[error("transition matrix for {x} < {y} has wrong shape (expected {rows}x{cols})")]
    EdgeShape {
        x: String,
        y: String,
        rows: usize,
        cols: usize,
    },
    #[error("functoriality fails between `{x}` and `{y}`: two hasse paths compose differently")]
    Functoriality { x: String, y: String },

    // ----- simplicial complexes -----
    #[error("complex has {0} vertices; at most {1} are supported")]
    TooManyVertices(usize, usize),
    #[error("face {{{0}}} is not in the complex")]
    FaceNotInComplex(String),
    #[error("face family is not closed under taking subsets (missing a subset of {{{0}}})")]
    NotClosed(String),

    // ----- fans and cones -----
    #[error("cone generated by {0} is not pointed")]
    NotPointed(String),
    #[error("generator has {got} coordinates, ambient dimension is {expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("fan is invalid: intersection of cones {a} and {b} is not a common face")]
    IntersectionNotFace { a: String, b: String },
    #[error("degree {0:?} lies in the relative interior of more than one cone (fan is invalid)")]
    AmbiguousCarrier(Vec<num::BigInt>),
    #[error("degree {0:?} is not in the ring (no cone of the fan contains it)")]
    DegreeNotInRing(Vec<num::BigInt>),
    #[error("fan was not built from a simplicial complex; the Buchsbaum criterion requires one")]
    NotFromComplex,
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("({a},{b})"))
        .collect::<Vec<_>>()
        .join(", ")
}

use thiserror::Error;

/// Errors raised by graph construction, polynomial arithmetic and the
/// verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),

    #[error("edge {{{0}, {1}}} already present")]
    EdgeExists(usize, usize),

    #[error("{{{0}, {1}}} is not a non-edge of the graph")]
    NotANonEdge(usize, usize),

    #[error("graph too large: {what} = {got}, cap is {cap}")]
    TooLarge { what: &'static str, got: usize, cap: usize },

    #[error("size cap exceeded: {edges} edges, exhaustive enumeration is capped at {cap}")]
    SizeCapExceeded { edges: usize, cap: usize },

    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A proved identity failed; this always points at a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("route disagreement for {graph}: {left_route} gives {left}, {right_route} gives {right}")]
    RouteDisagreement {
        graph: String,
        left_route: &'static str,
        left: String,
        right_route: &'static str,
        right: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

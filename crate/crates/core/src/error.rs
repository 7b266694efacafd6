use crate::graph::Vertex;

/// Errors raised across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} is not in a graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("coloring is partial: vertex {0} is uncolored but a total coloring was required")]
    NotTotal(Vertex),

    #[error("vertex {0} is not in the domain of the coloring")]
    NotInDomain(Vertex),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("parameter out of range: {0}")]
    BadParameter(String),

    #[error("enumeration budget of {budget} exhausted at vertex {vertex}")]
    BudgetExhausted { vertex: Vertex, budget: usize },

    #[error("malformed lazy graph at vertex {vertex}: {message}")]
    MalformedLazy { vertex: Vertex, message: String },

    #[error("graph has {n} vertices, above the exhaustive bound {bound}; use local search")]
    ExhaustiveBound { n: usize, bound: usize },

    #[error("vertex {0} has infinite degree but the operation requires a locally finite graph")]
    InfiniteDegree(Vertex),

    #[error("vertex {0} has finite degree but the operation requires every degree to be infinite")]
    FiniteDegree(Vertex),

    #[error("no common extension found within the node budget; deepest consistent level {deepest_level}")]
    NoCommonExtension { deepest_level: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

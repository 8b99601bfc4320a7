//! Invariants of Leavitt path algebras of finite directed graphs.
pub mod classify;
pub mod field;
pub mod graph;
mod json;
pub mod ktheory;
pub mod monoid;
pub mod moves;
pub mod numtheory;
pub mod symbolic;

use thiserror::Error;

pub use classify::{ClassifyError, Verdict};
pub use field::{Field, FieldError};
pub use graph::{families, parse_graph, Cycle, Graph, GraphError, VertexSet};
pub use ktheory::{FgAbelianGroup, IntMatrix, KTheoryError, PointedIso};
pub use monoid::MonoidError;
pub use moves::{MoveError, MoveSpec};
pub use numtheory::NumTheoryError;
pub use symbolic::{LpaContext, LpaElement, LpaMatrix, SymbolicError};

/// Any error from this crate, tagged with the module it came from.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error("ktheory: {0}")]
    KTheory(#[from] KTheoryError),
    #[error("monoid: {0}")]
    Monoid(#[from] MonoidError),
    #[error("classify: {0}")]
    Classify(#[from] ClassifyError),
    #[error("moves: {0}")]
    Moves(#[from] MoveError),
    #[error("symbolic: {0}")]
    Symbolic(#[from] SymbolicError),
    #[error("numtheory: {0}")]
    NumTheory(#[from] NumTheoryError),
    #[error("field: {0}")]
    Field(#[from] FieldError),
}

impl Error {
    /// Name of the originating module.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Graph(_) => "graph",
            Error::KTheory(_) => "ktheory",
            Error::Monoid(_) => "monoid",
            Error::Classify(_) => "classify",
            Error::Moves(_) => "moves",
            Error::Symbolic(_) => "symbolic",
            Error::NumTheory(_) => "numtheory",
            Error::Field(_) => "field",
        }
    }
}

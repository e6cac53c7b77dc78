use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid group for vertex {vertex:?}: {reason}")]
    InvalidGroup { vertex: String, reason: String },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("vertex mismatch: {0}")]
    VertexMismatch(String),

    #[error("invalid document: {0}")]
    Document(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),

    #[error("boundary-uncertain: {0}")]
    BoundaryUncertain(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

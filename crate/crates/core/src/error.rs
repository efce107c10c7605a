use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("matrix market parse error at line {line}: {msg}")]
    MatrixMarket { line: usize, msg: String },

    #[error("graph construction: {0}")]
    Graph(String),

    #[error("empty graph: {0}")]
    EmptyGraph(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("operator column {col} has no positive entry")]
    ZeroColumn { col: usize },

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("instance is trivially infeasible: {0}")]
    TriviallyInfeasible(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("oracle size bound exceeded: {0}")]
    SizeBound(String),

    #[error("oracle: problem is infeasible")]
    OracleInfeasible,

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("negative matrix entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },
}

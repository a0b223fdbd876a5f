use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid argument or value outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Input violates a structural pattern (wrong shape, broken constraint).
    #[error("structural error: {0}")]
    Structure(String),
    /// A claimed symmetry does not hold within tolerance.
    #[error("symmetry error: {0}")]
    Symmetry(String),
    /// An iterative numerical procedure failed to converge.
    #[error("numerical error: {0}")]
    Numerical(String),
    /// Invalid or inconsistent experiment configuration.
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

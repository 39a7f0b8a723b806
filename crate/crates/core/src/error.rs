use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("estimated relative error {estimate:e} exceeds the accuracy threshold")]
    Accuracy { estimate: f64 },
    #[error("branch error: {0}")]
    Branch(String),
    #[error("classification error: {0}")]
    Classification(String),
    #[error("transformation function vanishes near r = {r}")]
    Node { r: f64 },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("step size underflow at r = {r}")]
    Stiffness { r: f64 },
    #[error("solution overflow; last valid point r = {last_r}")]
    Overflow { last_r: f64 },
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

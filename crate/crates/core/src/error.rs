use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value out of supported range: {0}")]
    Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed factorization: {0}")]
    Validation(String),

    #[error("refusing x = {x} with v = {v}: worst-case intermediate needs log2 = {log2_bound:.3} >= 127 bits")]
    OverflowGuard { x: u128, v: u64, log2_bound: f64 },

    #[error(
        "verification failed for x = {x}: elementary gave {elementary}, brute force gave {brute}"
    )]
    Mismatch {
        x: u128,
        elementary: i128,
        brute: i128,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

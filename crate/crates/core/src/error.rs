use alloc::string::String;

/// Errors raised by the combinatorial, linear-algebra and channel layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    /// A configured size cap would be exceeded. `required` is the size the
    /// request needs, `cap` the configured bound.
    #[error("{what} requires size {}, which exceeds the cap of {cap}", size_text(*required))]
    ResourceLimit {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    #[error("matrix is not Hermitian (anti-Hermitian residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is numerically singular (eigenvalue {eigenvalue:.3e})")]
    Degenerate { eigenvalue: f64 },

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    #[error("state leaks out of the block support (leaked trace {leaked:.3e})")]
    SupportLeak { leaked: f64 },
}

fn size_text(required: u128) -> String {
    if required == u128::MAX {
        String::from("beyond 2^128")
    } else {
        alloc::format!("{required}")
    }
}

pub type Result<T> = core::result::Result<T, Error>;

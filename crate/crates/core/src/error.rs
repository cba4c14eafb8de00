use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("the zero polynomial has no well-defined roots or factors")]
    ZeroPolynomial,

    /// `|tr(A)|² ≤ 4`: the construction is only claimed for `|tr(A)| > 2`.
    #[error("trace gate failed: |tr(A)|^2 = {trace_norm_squared} <= 4, but the hypothesis requires |tr(A)| > 2")]
    TraceGate { trace_norm_squared: BigInt },

    #[error("polynomial {0} has no positive real root")]
    NoPositiveRoot(String),

    /// A mathematical invariant that must hold failed. Always a bug.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_gate(&self) -> bool {
        matches!(self, Error::TraceGate { .. })
    }
}

//! Exact q-series positivity toolkit.
//!
//! Everything here is integer/rational arithmetic end to end: dense
//! polynomials in `q` over arbitrary-precision integers ([`qpoly`]),
//! Gaussian binomials and Pochhammer products ([`qseries`]), the
//! hook-difference polynomial families `D_{K,i}(N,M;alpha,beta)` and their
//! `G` specialization ([`dseries`]), a brute-force partition oracle over
//! Young diagrams ([`partitions`]), five positivity-preserving kernel
//! transforms and the lift identities built from them ([`transforms`]),
//! and a verification harness with non-negativity sweeps ([`harness`]).

pub mod dseries;
pub mod harness;
pub mod partitions;
pub mod qpoly;
pub mod qseries;
pub mod transforms;

pub use dseries::{DParams, Rational, Regime, RegimeKind};
pub use qpoly::Polynomial;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Polynomial division left a remainder where exactness was guaranteed.
    #[error("non-exact division: {0}")]
    NonExact(String),
    /// A rational exponent failed its integrality assertion.
    #[error("non-integral exponent: {0}")]
    NonIntegralExponent(String),
    /// A parameter violated its stated range or validity condition.
    #[error("parameter out of range: {0}")]
    Range(String),
    /// A size parameter came out negative for the requested instance.
    #[error("negative size: {0}")]
    NegativeSize(String),
    /// The partition oracle was asked for non-integer hook parameters.
    #[error("non-combinatorial parameters: {0}")]
    NonCombinatorial(String),
    /// Index parity precondition violated.
    #[error("parity violation: {0}")]
    Parity(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

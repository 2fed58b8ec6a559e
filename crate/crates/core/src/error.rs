//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The photon-number cutoff is too small for the requested coherent
    /// amplitudes.
    #[error(
        "truncation error: n_max = {n_max} leaves a photon-number tail of \
         {tail:.3e} (bound {bound:.1e}); need n_max >= {required_n_max}"
    )]
    Truncation {
        n_max: usize,
        tail: f64,
        bound: f64,
        required_n_max: usize,
    },

    /// The integrator lost more norm than the configured tolerance allows.
    #[error(
        "integration failure: norm drift {drift:.3e} exceeds tolerance \
         {tolerance:.3e} (dt = {dt:.3e})"
    )]
    Integration { drift: f64, tolerance: f64, dt: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

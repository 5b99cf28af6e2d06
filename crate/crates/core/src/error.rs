//! Error type for recoverable failures surfaced to callers of the kernel.
//!
//! Contract violations inside the kernel (mismatched truncation orders,
//! mixing cyclotomic orders, broken internal cross-checks) panic instead:
//! they indicate bugs, not bad input.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum UhhError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

pub type Result<T> = std::result::Result<T, UhhError>;

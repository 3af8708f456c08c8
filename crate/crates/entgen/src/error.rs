//! Crate-wide error type.
//!
//! Every fallible public operation returns [`Result`]. Variants separate
//! caller mistakes (bad dimensions, invalid model parameters, malformed
//! configuration) from internal faults, so the command-line layer can map
//! them to distinct exit codes.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, EntgenError>;

/// Errors produced by validation, model construction, and numerics.
#[derive(Debug, Error)]
pub enum EntgenError {
    /// A matrix or vector had the wrong shape for the requested operation.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An input that must be Hermitian was not, within tolerance.
    #[error(
        "matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} exceeds tolerance {tol:.3e}"
    )]
    NotHermitian {
        /// Largest `|a_ij - conj(a_ji)|` over all entries.
        max_asymmetry: f64,
        /// Tolerance the asymmetry was compared against.
        tol: f64,
    },

    /// Model parameters violate a documented precondition.
    #[error("invalid model: {0}")]
    InvalidModel(String),

    /// A numerical routine was driven outside its documented contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Configuration file could not be parsed or validated.
    #[error("config error: {0}")]
    Config(String),

    /// Underlying I/O failure (file read/write).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_carry_their_category_and_payload() {
        let e = EntgenError::Dimension("expected 6×6".into());
        assert_eq!(e.to_string(), "dimension error: expected 6×6");
        let e = EntgenError::NotHermitian { max_asymmetry: 2e-3, tol: 1e-10 };
        let text = e.to_string();
        assert!(text.contains("not Hermitian"));
        assert!(text.contains("2.000e-3"));
        let e = EntgenError::Config("missing field `regime`".into());
        assert!(e.to_string().starts_with("config error:"));
    }

    #[test]
    fn io_errors_convert_automatically() {
        fn read_missing() -> Result<String> {
            Ok(std::fs::read_to_string("/nonexistent/entgen-test-path")?)
        }
        assert!(matches!(read_missing(), Err(EntgenError::Io(_))));
    }
}

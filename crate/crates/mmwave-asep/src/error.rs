//! Error type shared across the crate.

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the analytic pipeline and its supporting machinery.
///
/// `InvalidParameter` is returned eagerly by constructors and entry points
/// when an input violates a documented precondition. `NumericFailure` means
/// an algorithm gave up honestly (series ran out of terms, quadrature ran
/// out of subdivisions, cancellation exhausted the working precision) rather
/// than returning a value it cannot stand behind.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An input violates a documented precondition (non-finite, out of range,
    /// inconsistent with another parameter, ...).
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        /// Name of the offending parameter or field.
        name: &'static str,
        /// Human-readable description of the violated constraint.
        reason: String,
    },

    /// A numerical routine could not reach the requested accuracy.
    #[error("numeric failure in {op}: {detail}")]
    NumericFailure {
        /// The operation that failed (e.g. "hyp1f2", "integrate_finite").
        op: &'static str,
        /// What went wrong, with enough numbers to reproduce.
        detail: String,
    },

    /// An I/O or serialization problem while reading config or writing output.
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed configuration file.
    #[error("config parse failure: {0}")]
    Config(#[from] serde_json::Error),
}

impl Error {
    /// Shorthand used by constructors throughout the crate.
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Shorthand for numeric failures.
    pub(crate) fn numeric(op: &'static str, detail: impl Into<String>) -> Self {
        Error::NumericFailure {
            op,
            detail: detail.into(),
        }
    }
}

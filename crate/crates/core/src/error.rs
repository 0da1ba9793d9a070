//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by evaluators, group enumeration and the identity catalog.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// A linear constraint (balancing condition) required by a series or
    /// identity does not hold on the supplied parameters.
    #[error("balancing condition violated: {0}")]
    Balancing(String),

    /// A denominator factor vanishes (or falls below the magnitude floor)
    /// somewhere over the summation range.
    #[error("pole in denominator factor {factor} at index {index}")]
    Pole {
        /// Human-readable description of the offending factor.
        factor: String,
        /// Summation index (or multi-index) at which it vanishes.
        index: String,
    },

    /// Input outside the domain of the function (non-finite, too close to a
    /// pole of Gamma, nome of modulus >= 1, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or configuration that does not terminate / converge under the
    /// documented rules.
    #[error("constraint error: {0}")]
    Constraint(String),

    /// Group closure exceeded the element cap (wrong generators or a
    /// non-finite group).
    #[error("group enumeration exceeded cap of {cap} elements")]
    GroupGrowth {
        /// The configured element cap.
        cap: usize,
    },

    /// A named generator could not be resolved.
    #[error("unknown generator name: {0}")]
    UnknownGenerator(String),

    /// Subgroup generator not contained in the enumerated group.
    #[error("generator not in group: {0}")]
    GeneratorNotInGroup(String),

    /// Point sampling failed to find an admissible configuration.
    #[error("sampler gave up after {retries} retries: {reason}")]
    SamplerExhausted {
        /// Number of attempts made.
        retries: usize,
        /// Why candidate points kept being rejected.
        reason: String,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

//! Evaluation and machine certification of multivariate hypergeometric
//! series identities and their symmetry groups.
//!
//! The crate has four layers:
//!
//! - [`rational`] / [`bracket`] / [`gamma`]: exact rational arithmetic,
//!   rising factorials, the odd bracket functions `[[x]]` with their shifted
//!   factorials, and a real Gamma evaluator;
//! - [`series`]: evaluators for terminating balanced 4F3 sums, their
//!   multivariate rectangular/triangular extensions, the elliptic 10E9 /
//!   general one-dimensional series, the multivariate elliptic series, and
//!   the symmetric truncated 3F2 form;
//! - [`coxeter`]: integer-matrix realizations of the invariance groups,
//!   finite enumeration, relation certification and double-coset
//!   decomposition;
//! - [`catalog`]: every transformation identity as data (parameter map +
//!   variable rule + prefactor + balancing condition), with exact or
//!   tolerance-bounded verification, invariant forms, composition replay,
//!   degeneration pairing and empirical typo resolution.
//!
//! Ordinary identities are certified with residual exactly zero over big
//! rationals; elliptic identities are certified in complex double precision
//! against explicit tolerances.

pub mod bracket;
pub mod catalog;
pub mod coxeter;
pub mod error;
pub mod gamma;
pub mod rational;
pub mod series;

pub use bracket::{bracket, riemann_residual, BracketClass, EllipticParams};
pub use error::{Error, Result};
pub use gamma::gamma_real;
pub use rational::{pochhammer, pochhammer_reflect, Rational};

//! Exact computational geometry for tropical polytopes.
//!
//! The crate works throughout with exact arithmetic: tropical data lives in
//! `(Q, max, +)` with rational coordinates, and ordinary (classical) geometry
//! is carried out over an ordered field of Puiseux series in a parameter `t`
//! that is taken to be infinitely large.  The two worlds are connected by the
//! componentwise degree map, which sends the classical convex hull of a lift
//! back onto the tropical convex hull downstairs.
//!
//! Module overview:
//!
//! * [`field`] — the [`field::OrderedField`] abstraction shared by exact
//!   rationals and Puiseux series.
//! * [`puiseux`] — Puiseux polynomials and quotients with rational exponents,
//!   ordered by leading behaviour at `t = ∞`.
//! * [`tropical`] — tropical projective points, hyperplanes, halfspaces,
//!   tropical determinants and general position.
//! * [`hull`] — double-description convex hulls over any [`field::OrderedField`]:
//!   facets, face lattices, bounded subcomplexes, orientations.
//! * [`covector`] — the covector (type) decomposition of tropical projective
//!   space induced by a point configuration.
//! * [`lift`] — lifts of tropical point configurations to the Puiseux field,
//!   degree images of their faces, and halfspace images of facets.
//! * [`faces`] — boundary face theory of tropical polytopes: J-facets,
//!   lift-stable faces, directions, and edge sign vectors.
//! * [`homology`] — integer chain complexes, Smith normal form, reduced
//!   homology.
//! * [`resolution`] — cellular resolutions of monomial ideals from bounded
//!   complexes of lifted generator sets, with Scarf and Taylor comparisons.
//! * [`fixtures`] — small named configurations used by the test suite, the
//!   benchmarks and the examples.

pub mod covector;
pub mod faces;
pub mod field;
pub mod fixtures;
pub mod homology;
pub mod hull;
pub mod lift;
pub mod par;
pub mod puiseux;
pub mod resolution;
pub mod tropical;

use num_rational::BigRational;

/// Exact rational scalar used for all tropical coordinates and exponents.
pub type Rat = BigRational;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input data had inconsistent or unsupported dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// An operation received an empty collection it cannot work with.
    #[error("empty input: {0}")]
    EmptyInput(String),
    /// Division by zero in an exact field.
    #[error("division by zero")]
    DivisionByZero,
    /// A quotient of Puiseux polynomials was evaluated at a pole.
    #[error("evaluation at a pole: {0}")]
    Pole(String),
    /// Numeric evaluation needs a root that does not exist exactly.
    #[error("no exact root: {0}")]
    NoExactRoot(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
    /// The argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An internal structural invariant failed; this is a bug, not bad input.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    /// A bounded search ran out of budget before reaching a certain answer.
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
}

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Convenience constructor for small rationals.
pub fn rat(n: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::from(BigInt::from(n))
}

/// Convenience constructor for `p/q` rationals. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(p), BigInt::from(q))
}

//! Exact generalized Stirling numbers of the second kind and a rational
//! approximation scheme for the Riemann zeta function at integers.
//!
//! Every quantity is held as an exact [`Rational`]. Transcendental values
//! (`e^x`, incomplete gamma, hypergeometric and polylogarithm series, the
//! zeta values themselves) are carried as [`Ball`] enclosures whose radius is
//! a certified bound on the truncation error.
//!
//! Module map:
//!
//! * [`arith`] and [`ball`]: exact rationals, combinatorial primitives and
//!   ball arithmetic (`exp`, `ln`).
//! * [`stirling`]: signed first-kind Stirling numbers, the generalized
//!   second-kind numbers `S_n^p` by three routes, and the `g_n` family.
//! * [`series`]: `pFp[1..1; 2..2; t]`, incomplete gamma, polylogarithms and
//!   the generating-function identities.
//! * [`tails`]: closed-form enclosures for tails of series weighted by
//!   first-kind Stirling numbers.
//! * [`zeta`]: the approximant `ζ_N(p)`, an independent zeta oracle, the split
//!   representation and the error decomposition.
//! * [`verify`]: runnable identity checks grouped into suites.

pub mod arith;
pub mod ball;
mod error;
pub mod series;
pub mod stirling;
pub mod tails;
pub mod verify;
pub mod zeta;

pub use arith::Rational;
pub use ball::Ball;
pub use error::{Error, Result};

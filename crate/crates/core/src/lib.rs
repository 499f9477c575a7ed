//! Quadratic Dirichlet L-functions over F_q\[T\] for monic irreducible moduli.
//!
//! The library computes, for a fixed odd prime q and monic irreducible
//! P of odd degree 2g+1:
//!
//! - exact arithmetic in F_q\[T\] ([`algebra`]),
//! - the quadratic residue symbol and the character chi_P(f) = (P/f)
//!   ([`characters`]),
//! - the L-polynomial L(u, chi_P) of degree 2g with integer coefficients,
//!   and its 2g zeros on the circle |u| = q^{-1/2} ([`lfunction`]),
//! - a truncated multivariate power-series ring used to extract the k-fold
//!   residues that define the moment polynomials Q_k(x) ([`series`]),
//! - conjecture-side evaluators: zeta_A, Euler products A_k, Q_k, ratios
//!   predictions and one-level density formulas ([`conjecture`]),
//! - brute-force ensemble sweeps over all of P_{2g+1,q} with deterministic
//!   parallelism, compared against the predictions ([`ensemble`]).
//!
//! All ensemble computations are exact integer arithmetic up to the final
//! floating-point evaluation, and every sweep is bit-reproducible across
//! worker counts.

pub mod algebra;
pub mod characters;
pub mod conjecture;
pub mod ensemble;
pub mod error;
pub mod lfunction;
pub mod series;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::Error;
pub use num_complex::Complex64;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

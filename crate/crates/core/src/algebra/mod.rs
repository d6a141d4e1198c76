//! Exact rational arithmetic and the ring of homogeneous binary polynomials.
//!
//! Polynomials are dense: a degree-`d` form is stored as the `d + 1`
//! coefficients of `p^d, p^(d-1) q, ..., q^d`. Quantics carry their
//! coefficients in the binomial convention `U = sum binom(N,n) a_n p^(N-n) q^n`
//! and expand into raw [`HomogeneousPoly`] coefficients on demand.

mod float;
mod poly;
mod quantic;
mod rational;

pub use float::FloatPoly;
pub use poly::{jacobian, poisson, HomogeneousPoly};
pub use quantic::BinaryQuantic;
pub use rational::{binomial, format_rational, parse_rational, rational_to_f64, Rational};

//! Lyapunov exponents of modular functions along Farey paths.
//!
//! The crate computes cycle integrals of weakly holomorphic modular functions over closed
//! geodesics, the limsup exponents they define along continued fraction paths, and the
//! Farey parametrization of Markov irrationalities.

// `!(x > 0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cfword;
pub mod cycint;
pub mod error;
pub mod farey;
pub mod lyap;
pub mod modfun;
pub mod real;
pub mod verify;

pub use error::{Error, Result};
pub use real::Real;

/// Arbitrary precision integers.
pub type Int = num_bigint::BigInt;
/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// The binary64 arc integrator used throughout.
pub type Integrator = cycint::ArcIntegrator<f64>;
/// Binary64 q-expansions.
pub type Series = modfun::FourierSeries<f64>;

//! Newton-polyhedron analysis and decay-rate prediction for multilinear
//! oscillatory integral forms, with a numeric back end that validates the
//! predictions.
//!
//! The pipeline: a polynomial phase `S` (module [`phase`]) determines a Newton
//! polyhedron `N(S)` (module [`newton`]), whose distance along the direction
//! derived from a tuple of Lebesgue exponents drives the predicted decay of
//! the oscillatory form Λ_d (module [`decay`]). Nondegeneracy of `S` — the
//! mixed derivative of every compact-face restriction vanishing nowhere off
//! the coordinate hyperplanes — is decided numerically (module [`nondeg`]).
//! The [`numeric`] module hosts oscillatory quadrature, the dyadic min-sum
//! evaluator, Monte Carlo sublevel volumes, and log–log rate fitting used to
//! check the predictions empirically.
//!
//! All combinatorial geometry runs in exact rational arithmetic; floats enter
//! only through coefficients and quadrature.

pub mod decay;
mod error;
pub mod newton;
pub mod nondeg;
pub mod numeric;
pub mod phase;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational scalar used throughout the geometry.
pub type Rat = num_rational::BigRational;

/// Phase polynomial with double-precision coefficients, the canonical
/// interchange form.
pub type Phase64 = phase::Phase<f64>;

/// Newton polyhedron over exact rationals.
pub type Polyhedron = newton::NewtonPolyhedron<Rat>;

/// Exponent tuple over exact rationals.
pub type Exponents = decay::ExponentTuple<Rat>;

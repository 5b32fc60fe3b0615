//! Floating-point verification layer.
//!
//! Everything in [`crate::newton`] and [`crate::decay`] is exact arithmetic;
//! this module is the measuring side of the project.  It evaluates the
//! oscillatory forms whose decay the exact layer predicts
//! ([`quadrature`]), builds the dyadic model sums that explain *why* the
//! predicted rates appear ([`dyadic`]), estimates sublevel-set volumes by
//! Monte Carlo and grid counting ([`sublevel`]), and fits decay rates with
//! logarithmic corrections to measured data ([`fit`]).
//!
//! Determinism is a design requirement throughout: random draws come from a
//! counter-based generator ([`rng`]) so results are reproducible across runs
//! and thread counts, and all parallel reductions happen in index order.

pub mod dyadic;
pub mod fit;
pub mod gauss;
pub mod quadrature;
pub mod rng;
pub mod sublevel;
pub mod testfn;

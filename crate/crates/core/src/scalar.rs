//! Scalar abstractions used across the crate.
//!
//! Geometry (Newton polyhedra, linear programs, exponent algebra) runs over an
//! [`Exact`] field so that facet normals, distances and Hölder exponents come
//! out as true rationals. Numerics (quadrature, Monte Carlo, curve fitting)
//! run over a [`Real`] floating type. [`Coeff`] is the common denominator
//! demanded of polynomial coefficients, which live in both worlds.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Floating-point scalar for numerical work (`f32`, `f64`).
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

/// Exact ordered field for combinatorial geometry (`BigRational`,
/// `Ratio<i128>`). Floats do not qualify: they lack `Ord`.
pub trait Exact:
    Num
    + Signed
    + Ord
    + Clone
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Exact for T where
    T: Num
        + Signed
        + Ord
        + Clone
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Minimal bound for polynomial coefficients; satisfied by every `Real` and
/// every `Exact` type.
pub trait Coeff: Num + Clone + FromPrimitive + PartialOrd + Debug + Send + Sync + 'static {}

impl<T> Coeff for T where T: Num + Clone + FromPrimitive + PartialOrd + Debug + Send + Sync + 'static
{}

/// Embeds a small integer into an exact field.
pub fn exact_int<F: Exact>(n: i64) -> F {
    F::from_i64(n).expect("small integer embeds into exact field")
}

/// Embeds a small rational into an exact field.
pub fn exact_ratio<F: Exact>(num: i64, den: i64) -> F {
    assert!(den != 0, "zero denominator");
    exact_int::<F>(num) / exact_int::<F>(den)
}

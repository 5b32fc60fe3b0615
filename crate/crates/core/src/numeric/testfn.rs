//! Input profiles for the oscillatory form.
//!
//! The Loomis–Whitney form pairs the oscillation `e^{i λ S(x)}` with inputs
//! `f_j` that each depend on the *hatted* variables — every coordinate
//! except `x_j`.  All the inputs we need are tensor products of one-axis
//! profiles, so this module works with the per-axis profile `g_k` and
//! derives everything else: the integrand weight on axis `k` is the product
//! of the `g_k` factors contributed by each `f_j` with `j ≠ k`, and
//! `‖f_j‖_{p_j}` is `Π_{k≠j} ‖g_k‖_{p_j}`.
//!
//! For the extremizing families the `g_k` are indicators of `[0, λ^{-n_k}]`
//! built from a supporting normal `n`; their powers are again indicators, so
//! the integrand is simply the indicator of the box and the norms are exact
//! powers of `λ`.  A fixed smooth bump and the constant one cover the
//! remaining experiments.


use crate::decay::{ExponentTuple, PExp};
use crate::error::{Error, Result};
use crate::numeric::gauss;
use crate::scalar::Exact;

/// The quartic bump `16 t^2 (1-t)^2` on `[0, 1]`, zero outside.  It vanishes
/// to first order at both endpoints, so extending by zero is C^1, and its
/// peak value is exactly 1 at `t = 1/2`.
pub fn bump(t: f64) -> f64 {
    if !(0.0..=1.0).contains(&t) {
        return 0.0;
    }
    let s = t * (1.0 - t);
    16.0 * s * s
}

/// `∫_0^1 bump = 8/15`.
pub const BUMP_MASS: f64 = 8.0 / 15.0;

/// Smooth cutoff multiplying the whole integrand, one axis at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    /// Product of [`bump`] over the axes.
    Bump,
    /// No cutoff: integrate over the full cube.
    One,
}

impl Cutoff {
    pub fn axis_weight(&self, t: f64) -> f64 {
        match self {
            Cutoff::Bump => bump(t),
            Cutoff::One => 1.0,
        }
    }
}

/// One-axis profile.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    /// Indicator of `[0, width]` with `0 < width <= 1`.
    Indicator { width: f64 },
    /// The quartic bump.
    Bump,
    /// Constant one on `[0, 1]`.
    One,
}

impl Factor {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Factor::Indicator { width } => {
                if (0.0..=*width).contains(&t) {
                    1.0
                } else {
                    0.0
                }
            }
            Factor::Bump => bump(t),
            Factor::One => {
                if (0.0..=1.0).contains(&t) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Right end of the support; integration can stop there.
    pub fn width(&self) -> f64 {
        match self {
            Factor::Indicator { width } => *width,
            Factor::Bump | Factor::One => 1.0,
        }
    }

    /// Lebesgue norm on `[0, 1]`.  Indicator and constant norms are closed
    /// form; the bump norm for fractional exponents falls back to a 64-point
    /// quadrature (exact for integer exponents up to 31).
    pub fn lp_norm<F: Exact>(&self, p: &PExp<F>) -> f64 {
        match (self, p) {
            (Factor::Indicator { width }, PExp::Finite(q)) => {
                let q = q.to_f64().expect("exponent fits in f64");
                width.powf(1.0 / q)
            }
            (Factor::Indicator { .. }, PExp::Infinite) => 1.0,
            (Factor::One, _) => 1.0,
            (Factor::Bump, PExp::Infinite) => 1.0,
            (Factor::Bump, PExp::Finite(q)) => {
                let q = q.to_f64().expect("exponent fits in f64");
                let (nodes, weights) = gauss::gauss_legendre(64);
                let integral: f64 = gauss::on_interval(0.0, 1.0, &nodes, &weights)
                    .iter()
                    .map(|&(t, w)| w * bump(t).powf(q))
                    .sum();
                integral.powf(1.0 / q)
            }
        }
    }
}

/// The extremizing family for a supporting normal `n`: indicators of
/// `[0, λ^{-n_j}]` on each axis.  Entries of the normal must be nonnegative.
pub fn sharpness_family<F: Exact>(normal: &[F], lambda: f64) -> Result<Vec<Factor>> {
    if !(lambda >= 1.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!(
            "sharpness family needs lambda >= 1, got {lambda}"
        )));
    }
    normal
        .iter()
        .map(|n| {
            let n = n
                .to_f64()
                .ok_or_else(|| Error::InvalidInput("normal entry does not fit in f64".into()))?;
            if n < 0.0 {
                return Err(Error::InvalidInput(format!(
                    "sharpness family needs a nonnegative normal, got entry {n}"
                )));
            }
            Ok(Factor::Indicator {
                width: lambda.powf(-n),
            })
        })
        .collect()
}

/// `‖f_1‖_{p_1} ⋯ ‖f_d‖_{p_d}` where `f_j = ⊗_{k≠j} g_k` is the input on
/// the hatted variables built from the per-axis profiles `g_k`, so
/// `‖f_j‖_{p_j} = Π_{k≠j} ‖g_k‖_{p_j}`.
///
/// For an indicator family with widths `λ^{-n_k}` this is exactly
/// `λ^{1/δ − Σn_k}` whenever `n` is tight at the Newton-distance point of
/// the tuple's direction.
pub fn norm_product<F: Exact>(factors: &[Factor], p: &ExponentTuple<F>) -> Result<f64> {
    if factors.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: factors.len(),
        });
    }
    Ok(p
        .entries()
        .iter()
        .enumerate()
        .map(|(j, q)| {
            factors
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, g)| g.lp_norm(q))
                .product::<f64>()
        })
        .product())
}

//! Dyadic model sums.
//!
//! Splitting the unit cube into shells `x_k ~ 2^{-j_k}` with `j_k ≥ 1` turns
//! the oscillatory form into a sum over multi-indices `j`, where each box
//! contributes at most the smaller of two bounds: its share of the input
//! norms, `2^{-j·v}`, and the same share times the oscillation gain
//! `(λ 2^{-j·α})^{-1/γ}` at the best vertex `α` of the Newton polyhedron.
//! Summing the minimum over a truncated range of `j` reproduces the
//! predicted decay rates, including the logarithmic factors, and
//! [`dyadic_min_sum`] computes exactly that model sum so experiments can
//! compare against it.
//!
//! [`tail_bound_check`] verifies the discarded tail: beyond the truncation
//! index the plain geometric sum `Σ 2^{-j v}` is already below the target
//! power `λ^{-1/δ}` times an explicit constant, and the check certifies the
//! exact inequality rather than trusting rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::phase::MultiIndex;
use crate::scalar::exact_int;
use crate::Rat;

/// Upper limit on the number of dyadic boxes one call may enumerate.
const MAX_BOXES: u128 = 10_000_000;

/// The truncated dyadic model sum at `λ = 2^m`.
///
/// `direction` is the direction `v` the decay is measured in, `delta` the
/// Newton distance along it; both must be positive.  The shells start at
/// `j_k = 1` (they tile `(0,1]^d`), and the truncation caps are
/// `j_k <= ceil(m / (δ v_k))`, the range on which the box bounds can still
/// exceed the target power.
pub fn dyadic_min_sum(
    vertices: &[MultiIndex],
    direction: &[Rat],
    delta: &Rat,
    m: u32,
) -> Result<f64> {
    let d = direction.len();
    if vertices.is_empty() {
        return Err(Error::InvalidInput("model sum needs at least one vertex".into()));
    }
    for v in vertices {
        if v.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: v.dim(),
            });
        }
    }
    if direction.iter().any(|v| !v.is_positive()) {
        return Err(Error::InvalidInput("direction entries must be positive".into()));
    }
    if !delta.is_positive() {
        return Err(Error::InvalidInput("distance must be positive".into()));
    }
    if m == 0 {
        return Err(Error::InvalidInput("scale exponent m must be at least 1".into()));
    }

    let m_rat = exact_int::<Rat>(m as i64);
    let caps: Vec<u64> = direction
        .iter()
        .map(|v| {
            let cap = (&m_rat / (delta * v)).ceil();
            cap.to_integer().to_u64().ok_or_else(|| {
                Error::InvalidInput("truncation cap does not fit in u64".into())
            })
        })
        .collect::<Result<_>>()?;
    let boxes = caps
        .iter()
        .fold(1u128, |acc, &c| acc.saturating_mul(c.max(1) as u128));
    if boxes > MAX_BOXES {
        return Err(Error::InvalidInput(format!(
            "truncated range holds {boxes} boxes, over the {MAX_BOXES} limit"
        )));
    }

    Ok(min_sum_with_caps(vertices, direction, m, &caps))
}

/// The model sum over the fixed index box `1 <= j_k <= caps[k]`.
///
/// Separated from the cap computation so the monotonicity of the summand in
/// `m` can be tested on a fixed truncation range.  Dispatches to an exact
/// integer evaluation over the common denominator of the direction whenever
/// everything fits comfortably in `i128`, which is every realistic input;
/// the rational loop remains as the fallback and as the oracle the fast
/// path is tested against.
pub(crate) fn min_sum_with_caps(
    vertices: &[MultiIndex],
    direction: &[Rat],
    m: u32,
    caps: &[u64],
) -> f64 {
    if caps.iter().any(|&c| c == 0) {
        return 0.0;
    }
    let lcm = direction
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Option<Vec<i128>> = direction
        .iter()
        .map(|v| ((v.numer() * &lcm) / v.denom()).to_i128())
        .collect();
    // Generous margins: with these limits every dot product and exponent
    // numerator stays far below i128 overflow.
    let small = |n: i128| n.abs() <= 1 << 32;
    match (lcm.to_i128(), scaled) {
        (Some(l), Some(nums))
            if small(l)
                && nums.iter().copied().all(small)
                && caps.iter().all(|&c| c <= 1 << 24) =>
        {
            min_sum_ints(vertices, &nums, l, m, caps)
        }
        _ => min_sum_rats(vertices, direction, m, caps),
    }
}

/// Integer core: the direction is `nums / l`, so the box exponent is
/// `(-γ·j·nums + min(0, min_i j·α^i - m)·l) / (l·γ)` exactly.
fn min_sum_ints(
    vertices: &[MultiIndex],
    nums: &[i128],
    l: i128,
    m: u32,
    caps: &[u64],
) -> f64 {
    let d = nums.len();
    let gamma = 1i128 << (d - 1);
    let denom = (l * gamma) as f64;
    let m_scaled = i128::from(m);
    let alphas: Vec<Vec<i128>> = vertices
        .iter()
        .map(|a| a.entries().iter().map(|&e| i128::from(e)).collect())
        .collect();

    let mut j = vec![1u64; d];
    // Running j·nums and j·α^i, updated as the odometer steps.
    let mut norm_dot: i128 = nums.iter().sum();
    let mut vertex_dots: Vec<i128> = alphas.iter().map(|a| a.iter().sum()).collect();
    let mut total = 0.0f64;
    loop {
        let best = *vertex_dots.iter().min().expect("vertex list is nonempty");
        let mut numer = -norm_dot * gamma;
        if best < m_scaled {
            numer += (best - m_scaled) * l;
        }
        total += 2f64.powf(numer as f64 / denom);

        // Advance the odometer, last axis fastest.
        let mut axis = d;
        loop {
            if axis == 0 {
                return total;
            }
            axis -= 1;
            if j[axis] < caps[axis] {
                j[axis] += 1;
                norm_dot += nums[axis];
                for (dot, a) in vertex_dots.iter_mut().zip(&alphas) {
                    *dot += a[axis];
                }
                break;
            }
            let rewind = i128::from(j[axis] - 1);
            norm_dot -= rewind * nums[axis];
            for (dot, a) in vertex_dots.iter_mut().zip(&alphas) {
                *dot -= rewind * a[axis];
            }
            j[axis] = 1;
        }
    }
}

/// Rational fallback, also the oracle for the integer core.
fn min_sum_rats(vertices: &[MultiIndex], direction: &[Rat], m: u32, caps: &[u64]) -> f64 {
    let d = direction.len();
    let gamma = exact_int::<Rat>(1i64 << (d - 1));
    let m_rat = exact_int::<Rat>(m as i64);

    let mut j = vec![1u64; d];
    let mut total = 0.0f64;
    loop {
        // Norm share of the box: exponent -j·v.
        let norm_exp: Rat = j
            .iter()
            .zip(direction)
            .map(|(&jk, vk)| -(exact_int::<Rat>(jk as i64) * vk))
            .sum();
        // Best vertex for the oscillation bound: the smallest j·α.
        let best: u64 = vertices
            .iter()
            .map(|a| {
                a.entries()
                    .iter()
                    .zip(&j)
                    .map(|(&ak, &jk)| ak as u64 * jk)
                    .sum()
            })
            .min()
            .expect("vertex list is nonempty");
        let osc_gain = (exact_int::<Rat>(best as i64) - &m_rat) / &gamma;
        let exp = if osc_gain < Rat::zero() {
            norm_exp + osc_gain
        } else {
            norm_exp
        };
        total += 2f64.powf(exp.to_f64().expect("exponent fits in f64"));

        // Advance the odometer, last axis fastest.
        let mut axis = d;
        loop {
            if axis == 0 {
                return total;
            }
            axis -= 1;
            if j[axis] < caps[axis] {
                j[axis] += 1;
                break;
            }
            j[axis] = 1;
        }
    }
}

/// Certificate that the tail of a one-direction dyadic sum is controlled.
#[derive(Debug, Clone, PartialEq)]
pub struct TailCheck {
    /// Tail sum divided by the target power `λ^{-1/δ}`.
    pub ratio: f64,
    /// The claimed constant `1 / (1 - 2^{-v})`.
    pub bound: f64,
}

/// Compares `Σ_{j >= j₀} 2^{-j v}` against `2^{-m/δ} / (1 - 2^{-v})` at
/// `λ = 2^m`, where `j₀ = ceil(m / (δ v))` is the truncation index.
///
/// The exponent gap `j₀ v - m/δ` is computed in exact arithmetic and is
/// provably nonnegative, so `ratio <= bound` holds by construction; the
/// returned pair lets callers assert it on concrete cases.
pub fn tail_bound_check(delta: &Rat, v: &Rat, m: u32) -> Result<TailCheck> {
    if !delta.is_positive() || !v.is_positive() {
        return Err(Error::InvalidInput(
            "tail check needs positive distance and direction".into(),
        ));
    }
    if m == 0 {
        return Err(Error::InvalidInput("scale exponent m must be at least 1".into()));
    }
    let m_rat = exact_int::<Rat>(m as i64);
    let j0 = (&m_rat / (delta * v)).ceil();
    // gap = j₀ v - m/δ >= 0 exactly, by the definition of ceil.
    let gap = &j0 * v - &m_rat / delta;
    debug_assert!(gap >= Rat::zero());

    let vf = v.to_f64().expect("direction fits in f64");
    let bound = 1.0 / (1.0 - 2f64.powf(-vf));
    let ratio = bound * 2f64.powf(-gap.to_f64().expect("gap fits in f64"));
    Ok(TailCheck { ratio, bound })
}

//! Sublevel-set volume estimates.
//!
//! The decay of the oscillatory form transfers to bounds on the measure of
//! `{x in [0,1]^d : |S(x)| <= ε}`, so experiments need an independent way to
//! measure that volume.  Two estimators are provided: Monte Carlo with the
//! counter-based generator (deterministic for a fixed seed, whatever the
//! thread count, since hits are summed in integers) and a midpoint grid
//! count run at two resolutions, whose difference doubles as the error
//! estimate.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::rng::CounterRng;
use crate::phase::Phase;

const MAX_GRID_POINTS: u128 = 200_000_000;

/// Estimated measure of a sublevel set.
#[derive(Debug, Clone, PartialEq)]
pub struct SublevelEstimate {
    pub measure: f64,
    /// Monte Carlo: one standard error.  Grid: the change from the coarse to
    /// the fine resolution.
    pub uncertainty: f64,
    /// False when no sample landed in the set, in which case `uncertainty`
    /// only gives the rule-of-three upper bound `3/n`.
    pub conclusive: bool,
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon <= 1.0) || !epsilon.is_finite() {
        return Err(Error::InvalidInput(format!(
            "sublevel threshold must lie in (0, 1], got {epsilon}"
        )));
    }
    Ok(())
}

/// Collects terms once so the hot loop avoids map lookups.
fn compiled_terms(phase: &Phase<f64>) -> Vec<(Vec<u32>, f64)> {
    phase
        .terms()
        .map(|(m, &c)| (m.entries().to_vec(), c))
        .collect()
}

#[inline]
fn eval_terms(terms: &[(Vec<u32>, f64)], x: &[f64]) -> f64 {
    terms
        .iter()
        .map(|(e, c)| {
            c * e
                .iter()
                .zip(x)
                .map(|(&a, &xi)| xi.powi(a as i32))
                .product::<f64>()
        })
        .sum()
}

/// Monte Carlo estimate of `|{ |S| <= ε }|` from `samples` uniform points.
pub fn monte_carlo(
    phase: &Phase<f64>,
    epsilon: f64,
    samples: u64,
    seed: u64,
) -> Result<SublevelEstimate> {
    check_epsilon(epsilon)?;
    if samples == 0 {
        return Err(Error::InvalidInput("sample count must be positive".into()));
    }
    let d = phase.dim();
    let terms = compiled_terms(phase);
    let rng = CounterRng::new(seed);

    let hits: u64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let x: Vec<f64> = (0..d as u32).map(|j| rng.coord(i, d as u32, j)).collect();
            u64::from(eval_terms(&terms, &x).abs() <= epsilon)
        })
        .sum();

    let n = samples as f64;
    if hits == 0 {
        return Ok(SublevelEstimate {
            measure: 0.0,
            uncertainty: 3.0 / n,
            conclusive: false,
        });
    }
    let p = hits as f64 / n;
    Ok(SublevelEstimate {
        measure: p,
        uncertainty: (p * (1.0 - p) / n).sqrt(),
        conclusive: true,
    })
}

/// Midpoint-grid estimate, counted at `cells_per_axis` and twice that; the
/// finer count is returned and the difference reported as the uncertainty.
pub fn grid_estimate(
    phase: &Phase<f64>,
    epsilon: f64,
    cells_per_axis: usize,
) -> Result<SublevelEstimate> {
    check_epsilon(epsilon)?;
    if cells_per_axis < 2 {
        return Err(Error::InvalidInput(
            "grid needs at least 2 cells per axis".into(),
        ));
    }
    let d = phase.dim();
    let fine_cells = 2 * cells_per_axis;
    if (fine_cells as u128).pow(d as u32) > MAX_GRID_POINTS {
        return Err(Error::BudgetExceeded {
            points: (fine_cells as u128).pow(d as u32),
            cap: MAX_GRID_POINTS,
        });
    }
    let terms = compiled_terms(phase);

    let fraction = |n: usize| -> f64 {
        let hits: u64 = (0..n)
            .into_par_iter()
            .map(|i0| {
                let mut idx = vec![0usize; d];
                idx[0] = i0;
                let mut x = vec![0.0f64; d];
                let mut count = 0u64;
                loop {
                    for (xi, &k) in x.iter_mut().zip(&idx) {
                        *xi = (k as f64 + 0.5) / n as f64;
                    }
                    count += u64::from(eval_terms(&terms, &x).abs() <= epsilon);
                    // Odometer over axes 1..d, last fastest.
                    let mut axis = d;
                    loop {
                        if axis == 1 {
                            return count;
                        }
                        axis -= 1;
                        if idx[axis] + 1 < n {
                            idx[axis] += 1;
                            break;
                        }
                        idx[axis] = 0;
                    }
                }
            })
            .sum();
        hits as f64 / (n as f64).powi(d as i32)
    };

    let coarse = fraction(cells_per_axis);
    let fine = fraction(fine_cells);
    Ok(SublevelEstimate {
        measure: fine,
        uncertainty: (fine - coarse).abs(),
        conclusive: fine > 0.0,
    })
}

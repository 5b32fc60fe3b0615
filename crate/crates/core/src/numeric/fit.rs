//! Fitting decay rates with logarithmic corrections.
//!
//! Measured quantities here decay like `C t^{-r} (log t)^s` with an integer
//! log power `s`, and the interesting part of an experiment is usually `r`
//! and `s`, not `C`.  Fitting all three jointly is ill-conditioned (the log
//! factor is nearly collinear with a small change of `r` over any finite
//! range), so we fix `s` to each candidate in turn, solve the remaining
//! two-parameter least-squares problem in log space, and keep the candidate
//! with the smallest residual.  Ties prefer the smaller log power.

use crate::error::{Error, Result};

/// Best fit of `value = constant * t^{-rate} * (log t)^{log_power}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub rate: f64,
    pub log_power: u32,
    pub constant: f64,
    /// Largest `|predicted - observed| / observed` over the samples, for the
    /// winning candidate.
    pub max_rel_residual: f64,
}

/// Least-squares fit over `(t, value)` samples, trying each candidate log
/// power.  Requires at least four samples, all with `t > 1` and `value > 0`.
pub fn rate_fit(samples: &[(f64, f64)], log_powers: &[u32]) -> Result<RateFit> {
    if samples.len() < 4 {
        return Err(Error::InvalidInput(format!(
            "rate fit needs at least 4 samples, got {}",
            samples.len()
        )));
    }
    if log_powers.is_empty() {
        return Err(Error::InvalidInput(
            "rate fit needs at least one candidate log power".into(),
        ));
    }
    for &(t, v) in samples {
        if !(t > 1.0) || !t.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rate fit needs t > 1, got t = {t}"
            )));
        }
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rate fit needs positive values, got {v} at t = {t}"
            )));
        }
    }

    let xs: Vec<f64> = samples.iter().map(|&(t, _)| t.ln()).collect();
    let lls: Vec<f64> = samples.iter().map(|&(t, _)| t.ln().ln()).collect();
    let lvs: Vec<f64> = samples.iter().map(|&(_, v)| v.ln()).collect();

    let n = samples.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let x_var: f64 = xs.iter().map(|x| (x - x_mean) * (x - x_mean)).sum();
    if x_var <= 0.0 {
        return Err(Error::InvalidInput(
            "rate fit needs at least two distinct t values".into(),
        ));
    }

    let mut candidates: Vec<u32> = log_powers.to_vec();
    candidates.sort_unstable();
    candidates.dedup();

    let mut best: Option<(f64, u32, f64, f64)> = None; // (sse, s, slope, intercept)
    for &s in &candidates {
        // With s fixed, fit y = intercept + slope * x where
        // y = log(value) - s * log(log t).
        let ys: Vec<f64> = lvs
            .iter()
            .zip(&lls)
            .map(|(&lv, &ll)| lv - s as f64 * ll)
            .collect();
        let y_mean = ys.iter().sum::<f64>() / n;
        let cov: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| (x - x_mean) * (y - y_mean))
            .sum();
        let slope = cov / x_var;
        let intercept = y_mean - slope * x_mean;
        let sse: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| {
                let r = y - (intercept + slope * x);
                r * r
            })
            .sum();
        // Strict improvement only, so equal residuals keep the smaller s.
        if best.is_none_or(|(b, _, _, _)| sse < b) {
            best = Some((sse, s, slope, intercept));
        }
    }

    let (_, log_power, slope, intercept) = best.expect("candidate list is nonempty");
    let constant = intercept.exp();
    let rate = -slope;
    let max_rel_residual = samples
        .iter()
        .zip(&xs)
        .zip(&lls)
        .map(|((&(_, v), &x), &ll)| {
            let pred = (intercept + slope * x + log_power as f64 * ll).exp();
            ((pred - v) / v).abs()
        })
        .fold(0.0, f64::max);

    Ok(RateFit {
        rate,
        log_power,
        constant,
        max_rel_residual,
    })
}

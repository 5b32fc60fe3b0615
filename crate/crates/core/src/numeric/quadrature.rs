//! Oscillatory quadrature for `∫ f_1(x_1)⋯f_d(x_d) ψ(x) e^{iλS(x)} dx`.
//!
//! The integrand oscillates, so plain quadrature needs resolution
//! proportional to the total phase sweep.  We bound the sweep along each
//! axis by the corner estimate `λ Σ_α |c_α| α_j u^α` (where `u_k` is the
//! right end of the support of `f_k`), cut each axis into roughly four
//! panels per wavelength — never fewer than four panels — and put a 5-point
//! Gauss–Legendre rule on every panel.  Restricting to the support first
//! matters: the extremizing families concentrate on boxes of side `λ^{-n_j}`
//! where the sweep stays bounded, so their cost does not grow with `λ`.
//!
//! Every evaluation runs twice, at base and doubled resolution; the doubled
//! result is returned, with `|fine - coarse|` as the error estimate and a
//! 1% relative agreement test as the convergence flag.
//!
//! General phases are supported in dimensions 2 and 3.  Single-term phases
//! are also supported in dimension 4 through a cheaper path that integrates
//! the innermost axis as a one-dimensional oscillatory integral with panel
//! counts adapted to the local coefficient, instead of the worst case over
//! the whole box.
//!
//! Cost is predicted before any work happens; if the two runs would exceed
//! the caller's point budget the evaluation is refused.  Parallel partial
//! sums are reduced in index order, so results are independent of the
//! thread count.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::gauss;
use crate::numeric::testfn::{Cutoff, Factor};
use crate::phase::Phase;

/// Default cap on total integrand evaluations per call.
pub const DEFAULT_MAX_POINTS: u128 = 400_000_000;

const NODES_PER_PANEL: usize = 5;
/// Panels per wavelength of phase sweep.
const OVERSAMPLE: usize = 4;
/// Panel floor per axis, for nearly constant phases.
const MIN_PANELS: usize = 4;
/// Relative agreement between the two resolutions that counts as converged.
const REL_TOL: f64 = 0.01;

/// Outcome of one evaluation of the form at a fixed `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatoryResult {
    /// Modulus of the integral at the finer resolution.
    pub value: f64,
    pub real: f64,
    pub imag: f64,
    /// `|fine - coarse|` between the two resolutions.
    pub error: f64,
    /// Whether the two resolutions agree to 1% relative.
    pub converged: bool,
    /// Total integrand evaluations spent.
    pub points: u128,
}

/// Resolved discretization for one evaluation: the base panel counts per
/// axis (the convergence check reruns everything at twice these), with the
/// factor supports and the phase sweep already folded in.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    pub lambda: f64,
    pub cutoff: Cutoff,
    /// Base panels per axis; at least four panels per wavelength of phase
    /// sweep along that axis, never fewer than four total.
    pub panels_per_axis: Vec<usize>,
    pub nodes_per_panel: usize,
}

impl QuadratureSpec {
    /// Validates the inputs and picks panel counts from the corner bound on
    /// the phase sweep over the factor supports.
    pub fn auto(
        phase: &Phase<f64>,
        factors: &[Factor],
        cutoff: Cutoff,
        lambda: f64,
    ) -> Result<Self> {
        let d = phase.dim();
        if factors.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: factors.len(),
            });
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidInput(format!(
                "lambda must be finite and nonnegative, got {lambda}"
            )));
        }
        let widths: Vec<f64> = factors.iter().map(Factor::width).collect();
        for &w in &widths {
            if !(w > 0.0 && w <= 1.0) {
                return Err(Error::InvalidInput(format!(
                    "factor support must lie in (0, 1], got width {w}"
                )));
            }
        }
        let single_term = phase.num_terms() == 1;
        if d > 4 || (d == 4 && !single_term) {
            return Err(Error::InvalidInput(format!(
                "oscillatory quadrature handles general phases in dimensions 2-3 \
                 and single-term phases in dimension 4; got {} terms in dimension {d}",
                phase.num_terms()
            )));
        }
        let panels_per_axis = axis_variations(phase, &widths, lambda)
            .iter()
            .map(|&v| panels_for(v, 1))
            .collect();
        Ok(Self {
            lambda,
            cutoff,
            panels_per_axis,
            nodes_per_panel: NODES_PER_PANEL,
        })
    }
}

/// Evaluates the form with an automatically chosen discretization; see
/// [`eval_with_spec`].
pub fn eval_lambda_form(
    phase: &Phase<f64>,
    factors: &[Factor],
    cutoff: Cutoff,
    lambda: f64,
    max_points: u128,
) -> Result<OscillatoryResult> {
    let spec = QuadratureSpec::auto(phase, factors, cutoff, lambda)?;
    eval_with_spec(phase, factors, &spec, max_points)
}

/// Evaluates `∫ Π_k g_k(x_k) ψ(x) e^{iλS(x)} dx` over the support of the
/// per-axis profiles inside `[0,1]^d`, at the spec's resolution and at twice
/// it.  Refuses to start if the two runs together would exceed `max_points`
/// integrand evaluations.
pub fn eval_with_spec(
    phase: &Phase<f64>,
    factors: &[Factor],
    spec: &QuadratureSpec,
    max_points: u128,
) -> Result<OscillatoryResult> {
    let lambda = spec.lambda;
    let cutoff = spec.cutoff;
    let widths: Vec<f64> = factors.iter().map(Factor::width).collect();
    let coarse_plan = spec.panels_per_axis.clone();
    let fine_plan: Vec<usize> = coarse_plan.iter().map(|&p| 2 * p).collect();
    let single_term = phase.num_terms() == 1;

    let estimate = if single_term {
        monomial_budget(phase, &widths, lambda, &coarse_plan, &fine_plan)
    } else {
        tensor_points(&coarse_plan).saturating_add(tensor_points(&fine_plan))
    };
    if estimate > max_points {
        return Err(Error::BudgetExceeded {
            points: estimate,
            cap: max_points,
        });
    }

    let ((coarse, pts_coarse), (fine, pts_fine)) = if single_term {
        (
            run_monomial(phase, factors, cutoff, lambda, &widths, &coarse_plan, 1),
            run_monomial(phase, factors, cutoff, lambda, &widths, &fine_plan, 2),
        )
    } else {
        (
            run_general(phase, factors, cutoff, lambda, &widths, &coarse_plan),
            run_general(phase, factors, cutoff, lambda, &widths, &fine_plan),
        )
    };

    let error = (fine - coarse).norm();
    let converged = error <= REL_TOL * fine.norm() + 1e-15;
    Ok(OscillatoryResult {
        value: fine.norm(),
        real: fine.re,
        imag: fine.im,
        error,
        converged,
        points: pts_coarse.saturating_add(pts_fine),
    })
}

/// Corner bound `λ Σ_α |c_α| α_j u^α` on the phase sweep along axis `j`.
fn axis_variations(phase: &Phase<f64>, widths: &[f64], lambda: f64) -> Vec<f64> {
    (0..widths.len())
        .map(|j| {
            lambda
                * phase
                    .terms()
                    .map(|(m, c)| {
                        let e = m.entries();
                        c.abs()
                            * e[j] as f64
                            * widths
                                .iter()
                                .zip(e)
                                .map(|(&u, &a)| u.powi(a as i32))
                                .product::<f64>()
                    })
                    .sum::<f64>()
        })
        .collect()
}

fn panels_for(variation: f64, scale: usize) -> usize {
    let per_wavelength = (variation / TAU).ceil() as usize;
    scale * MIN_PANELS.max(OVERSAMPLE * per_wavelength)
}

fn tensor_points(plan: &[usize]) -> u128 {
    plan.iter()
        .fold(1u128, |acc, &p| acc.saturating_mul((p * NODES_PER_PANEL) as u128))
}

/// Quadrature points along one axis: `panels` equal panels over `[0, u]`,
/// Gauss–Legendre nodes in each, factor and cutoff folded into the weights.
fn axis_points(
    u: f64,
    panels: usize,
    factor: &Factor,
    cutoff: Cutoff,
    gl: &(Vec<f64>, Vec<f64>),
) -> Vec<(f64, f64)> {
    let h = u / panels as f64;
    let mut out = Vec::with_capacity(panels * gl.0.len());
    for p in 0..panels {
        let lo = p as f64 * h;
        for (x, w) in gauss::on_interval(lo, lo + h, &gl.0, &gl.1) {
            out.push((x, w * factor.eval(x) * cutoff.axis_weight(x)));
        }
    }
    out
}

/// Tabulated phase evaluation: per axis, per quadrature point, the powers
/// `x^e` for every exponent `e` the phase uses on that axis.  Evaluation is
/// then a handful of table lookups per term.
struct Evaluator {
    terms: Vec<(f64, Vec<usize>)>,
    tables: Vec<Vec<Vec<f64>>>,
}

impl Evaluator {
    fn new(phase: &Phase<f64>, axes: &[Vec<(f64, f64)>]) -> Self {
        let d = axes.len();
        let mut exponents: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); d];
        for (m, _) in phase.terms() {
            for (j, &e) in m.entries().iter().enumerate() {
                exponents[j].insert(e);
            }
        }
        let slots: Vec<Vec<u32>> = exponents.iter().map(|s| s.iter().copied().collect()).collect();
        let terms = phase
            .terms()
            .map(|(m, &c)| {
                let slot_of = m
                    .entries()
                    .iter()
                    .enumerate()
                    .map(|(j, e)| slots[j].binary_search(e).expect("exponent was inserted"))
                    .collect();
                (c, slot_of)
            })
            .collect();
        let tables = axes
            .iter()
            .enumerate()
            .map(|(j, pts)| {
                pts.iter()
                    .map(|&(x, _)| slots[j].iter().map(|&e| x.powi(e as i32)).collect())
                    .collect()
            })
            .collect();
        Self { terms, tables }
    }

    #[inline]
    fn eval(&self, idx: &[usize]) -> f64 {
        self.terms
            .iter()
            .map(|(c, slot_of)| {
                c * slot_of
                    .iter()
                    .enumerate()
                    .map(|(j, &s)| self.tables[j][idx[j]][s])
                    .product::<f64>()
            })
            .sum()
    }
}

fn run_general(
    phase: &Phase<f64>,
    factors: &[Factor],
    cutoff: Cutoff,
    lambda: f64,
    widths: &[f64],
    plan: &[usize],
) -> (Complex64, u128) {
    let gl = gauss::gauss_legendre(NODES_PER_PANEL);
    let axes: Vec<Vec<(f64, f64)>> = (0..widths.len())
        .map(|j| axis_points(widths[j], plan[j], &factors[j], cutoff, &gl))
        .collect();
    let ev = Evaluator::new(phase, &axes);
    let d = axes.len();

    let partials: Vec<Complex64> = (0..axes[0].len())
        .into_par_iter()
        .map(|i0| {
            let mut idx = vec![0usize; d];
            idx[0] = i0;
            sum_slab(&ev, &axes, lambda, 1, &mut idx, axes[0][i0].1)
        })
        .collect();
    let total = partials.into_iter().fold(Complex64::new(0.0, 0.0), |a, b| a + b);
    let points = axes.iter().fold(1u128, |acc, a| acc.saturating_mul(a.len() as u128));
    (total, points)
}

fn sum_slab(
    ev: &Evaluator,
    axes: &[Vec<(f64, f64)>],
    lambda: f64,
    axis: usize,
    idx: &mut Vec<usize>,
    weight: f64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    if axis == axes.len() - 1 {
        for k in 0..axes[axis].len() {
            idx[axis] = k;
            let (sin, cos) = (lambda * ev.eval(idx)).sin_cos();
            let w = weight * axes[axis][k].1;
            acc += Complex64::new(w * cos, w * sin);
        }
    } else {
        for k in 0..axes[axis].len() {
            idx[axis] = k;
            acc += sum_slab(ev, axes, lambda, axis + 1, idx, weight * axes[axis][k].1);
        }
    }
    acc
}

/// Worst-case point count for the single-term path: full tensor over the
/// outer axes times the inner panel count at the largest coefficient.
fn monomial_budget(
    phase: &Phase<f64>,
    widths: &[f64],
    lambda: f64,
    coarse: &[usize],
    fine: &[usize],
) -> u128 {
    let d = widths.len();
    let (m, c) = phase.terms().next().expect("single-term phase");
    let sweep = lambda
        * c.abs()
        * widths
            .iter()
            .zip(m.entries())
            .map(|(&u, &a)| u.powi(a as i32))
            .product::<f64>();
    let outer = |plan: &[usize]| tensor_points(&plan[..d - 1]);
    outer(coarse)
        .saturating_mul((panels_for(sweep, 1) * NODES_PER_PANEL) as u128)
        .saturating_add(outer(fine).saturating_mul((panels_for(sweep, 2) * NODES_PER_PANEL) as u128))
}

/// Single-term path: tensor quadrature over axes `0..d-1`, and a
/// one-dimensional oscillatory integral in the last axis whose panel count
/// adapts to the local coefficient `A = λ c Π x_j^{α_j}`.
fn run_monomial(
    phase: &Phase<f64>,
    factors: &[Factor],
    cutoff: Cutoff,
    lambda: f64,
    widths: &[f64],
    plan: &[usize],
    scale: usize,
) -> (Complex64, u128) {
    let d = widths.len();
    let (m, &coeff) = phase.terms().next().expect("single-term phase");
    let alpha = m.entries();
    let gl = gauss::gauss_legendre(NODES_PER_PANEL);

    // Outer axes carry (x^{α_j}, weight) so the leaf only multiplies.
    let outer: Vec<Vec<(f64, f64)>> = (0..d - 1)
        .map(|j| {
            axis_points(widths[j], plan[j], &factors[j], cutoff, &gl)
                .into_iter()
                .map(|(x, w)| (x.powi(alpha[j] as i32), w))
                .collect()
        })
        .collect();

    let inner = InnerAxis {
        exp: alpha[d - 1],
        u: widths[d - 1],
        factor: &factors[d - 1],
        cutoff,
        gl: &gl,
        scale,
    };

    let partials: Vec<(Complex64, u128)> = (0..outer[0].len())
        .into_par_iter()
        .map(|i0| {
            let (pow, w) = outer[0][i0];
            mono_slab(&outer, 1, lambda * coeff * pow, w, &inner)
        })
        .collect();
    partials
        .into_iter()
        .fold((Complex64::new(0.0, 0.0), 0u128), |(s, n), (ps, pn)| {
            (s + ps, n.saturating_add(pn))
        })
}

struct InnerAxis<'a> {
    exp: u32,
    u: f64,
    factor: &'a Factor,
    cutoff: Cutoff,
    gl: &'a (Vec<f64>, Vec<f64>),
    scale: usize,
}

impl InnerAxis<'_> {
    /// `∫_0^u g(t) e^{i A t^exp} dt` with panels matched to the sweep `|A| u^exp`.
    fn integrate(&self, a: f64, weight: f64) -> (Complex64, u128) {
        let sweep = a.abs() * self.u.powi(self.exp as i32);
        let panels = panels_for(sweep, self.scale);
        let h = self.u / panels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            let lo = p as f64 * h;
            for (t, w) in gauss::on_interval(lo, lo + h, &self.gl.0, &self.gl.1) {
                let g = w * self.factor.eval(t) * self.cutoff.axis_weight(t);
                let (sin, cos) = (a * t.powi(self.exp as i32)).sin_cos();
                acc += Complex64::new(g * cos, g * sin);
            }
        }
        (weight * acc, (panels * NODES_PER_PANEL) as u128)
    }
}

fn mono_slab(
    outer: &[Vec<(f64, f64)>],
    axis: usize,
    a: f64,
    weight: f64,
    inner: &InnerAxis<'_>,
) -> (Complex64, u128) {
    if axis == outer.len() {
        return inner.integrate(a, weight);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut points = 0u128;
    for &(pow, w) in &outer[axis] {
        let (s, n) = mono_slab(outer, axis + 1, a * pow, weight * w, inner);
        acc += s;
        points = points.saturating_add(n);
    }
    (acc, points)
}

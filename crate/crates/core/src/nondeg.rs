//! Nondegeneracy of a phase: the mixed derivative of each compact-face
//! restriction must not vanish off the coordinate hyperplanes. Also the
//! small-scale growth checks for derivative upper bounds and mixed-derivative
//! lower bounds that the decay machinery relies on.

use crate::error::{Error, Result};
use crate::newton::NewtonPolyhedron;
use crate::phase::{MultiIndex, Phase};
use crate::Rat;

/// A grid value of |D S_F| below this counts as a vanishing derivative.
const VANISH_TOL: f64 = 1e-9;

/// Default scan resolution per dimension. Finer grids catch thinner zero
/// sets but the point count grows like (2/h)^d, so higher dimensions back
/// off; callers can always override within (0, 0.1].
pub fn default_grid(dim: usize) -> f64 {
    match dim {
        0..=3 => 1.0 / 64.0,
        4 => 1.0 / 16.0,
        _ => 1.0 / 10.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Nondegenerate,
    Degenerate,
}

/// A point with all coordinates off the hyperplanes (|x_j| ≥ grid step)
/// where some compact-face mixed derivative vanishes.
#[derive(Debug, Clone)]
pub struct Witness {
    pub point: Vec<f64>,
    /// Value of the offending mixed derivative at `point`.
    pub value: f64,
    /// Vertices of the compact face whose restriction degenerates.
    pub face_vertices: Vec<MultiIndex>,
}

#[derive(Debug, Clone)]
pub struct NondegeneracyReport {
    pub status: Status,
    pub witness: Option<Witness>,
    /// Resolution the verdict was reached at.
    pub grid_h: f64,
}

impl NondegeneracyReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.status == Status::Nondegenerate
    }
}

/// Checks every compact face F of the Newton polyhedron of `phase` for zeros
/// of D S_F = ∂₁⋯∂_d S_F away from the coordinate hyperplanes.
///
/// The scan walks the grid {±h, ±2h, …, ±1}^d looking for values below
/// 1e-9 in magnitude and for sign changes along axis-parallel edges, which
/// are then sharpened by bisection. Edges that straddle a coordinate
/// hyperplane are ignored: a sign flip across x_j = 0 is exactly where a
/// nondegenerate derivative is allowed to vanish. Faces, lines, and grid
/// values are all visited in a fixed order, so the reported witness is
/// deterministic.
pub fn check_nondegenerate(
    phase: &Phase<f64>,
    grid_h: Option<f64>,
) -> Result<NondegeneracyReport> {
    let h = grid_h.unwrap_or_else(|| default_grid(phase.dim()));
    if !(h > 0.0 && h <= 0.1) {
        return Err(Error::InvalidInput(format!(
            "grid step must lie in (0, 0.1], got {h}"
        )));
    }
    let poly = NewtonPolyhedron::<Rat>::of_phase(phase)?;
    for face in poly.compact_faces() {
        let deriv = phase.face_restriction(&face.members)?.mixed_derivative();
        if deriv.is_zero() {
            // The derivative collapsed identically; any interior point works
            // as a witness. Report the grid corner closest to the origin.
            let point = vec![h; phase.dim()];
            return Ok(NondegeneracyReport {
                status: Status::Degenerate,
                witness: Some(Witness {
                    point,
                    value: 0.0,
                    face_vertices: face.vertices,
                }),
                grid_h: h,
            });
        }
        if let Some((point, value)) = scan_for_zero(&deriv, h) {
            return Ok(NondegeneracyReport {
                status: Status::Degenerate,
                witness: Some(Witness {
                    point,
                    value,
                    face_vertices: face.vertices,
                }),
                grid_h: h,
            });
        }
    }
    Ok(NondegeneracyReport {
        status: Status::Nondegenerate,
        witness: None,
        grid_h: h,
    })
}

/// Grid coordinates −Nh, …, −h, h, …, Nh in ascending order.
fn grid_values(h: f64) -> Vec<f64> {
    let n = (1.0 / h).floor() as i64;
    (-n..=n)
        .filter(|&j| j != 0)
        .map(|j| j as f64 * h)
        .collect()
}

/// First zero (direct hit or bisected sign change) of `deriv` on the grid,
/// in deterministic scan order, or None if the face looks clean.
fn scan_for_zero(deriv: &Phase<f64>, h: f64) -> Option<(Vec<f64>, f64)> {
    let d = deriv.dim();
    let vals = grid_values(h);
    let eval = |x: &[f64]| deriv.eval(x).expect("scan points match the phase dimension");

    for axis in 0..d {
        let others: Vec<usize> = (0..d).filter(|&k| k != axis).collect();
        let mut idx = vec![0usize; others.len()];
        let mut point = vec![0.0; d];
        loop {
            for (&slot, &k) in idx.iter().zip(&others) {
                point[k] = vals[slot];
            }
            let mut prev: Option<(f64, f64)> = None;
            for &t in &vals {
                point[axis] = t;
                let v = eval(&point);
                // Every grid point is visited during the first pass; direct
                // hits are claimed there so later passes only add edges.
                if axis == 0 && v.abs() < VANISH_TOL {
                    return Some((point, v));
                }
                if let Some((pt, pv)) = prev {
                    let same_side = (pt > 0.0) == (t > 0.0);
                    if same_side && pv.signum() * v.signum() < 0.0 {
                        return Some(bisect_edge(deriv, &point, axis, pt, t));
                    }
                }
                prev = Some((t, v));
            }
            // Odometer over the remaining axes, last one fastest.
            let mut carry = idx.len();
            while carry > 0 {
                idx[carry - 1] += 1;
                if idx[carry - 1] < vals.len() {
                    break;
                }
                idx[carry - 1] = 0;
                carry -= 1;
            }
            if carry == 0 {
                break;
            }
        }
    }
    None
}

/// Sharpens a sign change of `deriv` along `axis` between `lo` and `hi`
/// (same sign, so the zero is interior to the edge and off the hyperplanes).
fn bisect_edge(
    deriv: &Phase<f64>,
    point: &[f64],
    axis: usize,
    mut lo: f64,
    mut hi: f64,
) -> (Vec<f64>, f64) {
    let mut p = point.to_vec();
    let value = |p: &mut Vec<f64>, t: f64| {
        p[axis] = t;
        deriv.eval(p).expect("bisection stays in dimension")
    };
    let mut flo = value(&mut p, lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let v = value(&mut p, mid);
        if v.abs() < VANISH_TOL {
            return (p, v);
        }
        if (flo < 0.0) == (v < 0.0) {
            lo = mid;
            flo = v;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    let v = value(&mut p, mid);
    (p, v)
}

/// Per-scale constants from a growth check; `spread` is the largest constant
/// divided by the smallest, so exactly scale-uniform behaviour gives 1.
#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub constants: Vec<f64>,
    pub spread: f64,
}

fn finish_report(constants: Vec<f64>) -> GrowthReport {
    let max = constants.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = constants.iter().cloned().fold(f64::INFINITY, f64::min);
    GrowthReport {
        spread: max / min,
        constants,
    }
}

fn check_scale_entry(scale: f64) -> Result<()> {
    if !(scale > 0.0 && scale <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "scales must lie in (0, 1/2], got {scale}"
        )));
    }
    Ok(())
}

/// Five equally spaced samples of [a, b].
fn probe_interval(a: f64, b: f64) -> [f64; 5] {
    let step = (b - a) / 4.0;
    [a, a + step, a + 2.0 * step, a + 3.0 * step, b]
}

/// Largest value of |∂^β S(x)| / max_vertex |x^{α−β}| over the boxes
/// Π [ε, 4ε], one constant per scale ε. Bounded constants across scales are
/// the quantitative form of the upper growth bound |∂^β S| ≲ Σ_vertices
/// |x^{α−β}| near the origin.
pub fn check_upper_growth(
    phase: &Phase<f64>,
    beta: &MultiIndex,
    scales: &[f64],
) -> Result<GrowthReport> {
    if scales.is_empty() {
        return Err(Error::InvalidInput("at least one scale is required".into()));
    }
    for &s in scales {
        check_scale_entry(s)?;
    }
    let poly = NewtonPolyhedron::<Rat>::of_phase(phase)?;
    let deriv = phase.partial_derivative(beta)?;
    let vertices = poly.vertices().to_vec();
    let d = phase.dim();

    let mut constants = Vec::with_capacity(scales.len());
    for &eps in scales {
        let axis_vals = probe_interval(eps, 4.0 * eps);
        let mut best = 0.0f64;
        let mut idx = vec![0usize; d];
        loop {
            let x: Vec<f64> = idx.iter().map(|&i| axis_vals[i]).collect();
            let num = deriv.eval(&x).expect("probe point has the right dimension").abs();
            let den = vertices
                .iter()
                .map(|alpha| monomial_abs(&x, alpha, beta))
                .fold(0.0f64, f64::max);
            best = best.max(num / den);
            if !advance(&mut idx, axis_vals.len()) {
                break;
            }
        }
        constants.push(best);
    }
    Ok(finish_report(constants))
}

/// Smallest value of |D S(x)| over Π [ε_j, 2ε_j], divided by
/// max_vertex ε^{α−1}, one constant per scale vector ε. Strictly positive,
/// scale-uniform constants witness the lower bound |D S| ≳ max_vertex
/// ε^{α−1} that nondegenerate phases satisfy, so the phase is required to be
/// nondegenerate up front.
pub fn check_lower_growth(
    phase: &Phase<f64>,
    scales: &[Vec<f64>],
    grid_h: Option<f64>,
) -> Result<GrowthReport> {
    if scales.is_empty() {
        return Err(Error::InvalidInput("at least one scale is required".into()));
    }
    let d = phase.dim();
    for s in scales {
        if s.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: s.len(),
            });
        }
        for &e in s {
            check_scale_entry(e)?;
        }
    }
    let report = check_nondegenerate(phase, grid_h)?;
    if let Some(w) = report.witness {
        return Err(Error::DegeneratePhase { witness: w.point });
    }
    let poly = NewtonPolyhedron::<Rat>::of_phase(phase)?;
    let vertices = poly.vertices().to_vec();
    let deriv = phase.mixed_derivative();
    let ones = MultiIndex::new(vec![1; d]);

    let mut constants = Vec::with_capacity(scales.len());
    for eps in scales {
        let axis_vals: Vec<[f64; 5]> = eps
            .iter()
            .map(|&e| probe_interval(e, 2.0 * e))
            .collect();
        let mut worst = f64::INFINITY;
        let mut idx = vec![0usize; d];
        loop {
            let x: Vec<f64> = idx
                .iter()
                .zip(&axis_vals)
                .map(|(&i, vals)| vals[i])
                .collect();
            let num = deriv.eval(&x).expect("probe point has the right dimension").abs();
            worst = worst.min(num);
            if !advance(&mut idx, 5) {
                break;
            }
        }
        let den = vertices
            .iter()
            .map(|alpha| monomial_abs(eps, alpha, &ones))
            .fold(0.0f64, f64::max);
        constants.push(worst / den);
    }
    Ok(finish_report(constants))
}

/// |x^{α−β}| with the difference taken entrywise in ℤ (negative powers are
/// fine: all probe points are strictly positive).
fn monomial_abs(x: &[f64], alpha: &MultiIndex, beta: &MultiIndex) -> f64 {
    x.iter()
        .zip(alpha.entries().iter().zip(beta.entries()))
        .map(|(&xj, (&aj, &bj))| xj.powi(aj as i32 - bj as i32))
        .product::<f64>()
        .abs()
}

fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}

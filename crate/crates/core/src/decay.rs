//! Decay-rate prediction for the multilinear oscillatory forms: exponent
//! tuples and their integrability hypotheses, the Newton-distance regimes,
//! interpolation between tuples, sharpness exponents, and the transfer from
//! oscillatory decay to sublevel-set bounds.
//!
//! Everything exponent- and distance-valued stays exact; only the bound
//! constants that are genuinely transcendental come out as `f64`.

use std::fmt;

use crate::error::{Error, Result};
use crate::newton::NewtonPolyhedron;
use crate::phase::{Phase, MAX_DIM};
use crate::scalar::{exact_int, Exact};
use crate::{nondeg, Rat};

/// A Lebesgue exponent in [1, ∞].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PExp<F> {
    Finite(F),
    Infinite,
}

impl<F: Exact> PExp<F> {
    /// 1/p, with 1/∞ = 0.
    pub fn reciprocal(&self) -> F {
        match self {
            PExp::Finite(p) => F::one() / p.clone(),
            PExp::Infinite => F::zero(),
        }
    }

    /// Rebuilds p from 1/p; zero maps back to ∞.
    pub fn from_reciprocal(r: F) -> Self {
        if r.is_zero() {
            PExp::Infinite
        } else {
            PExp::Finite(F::one() / r)
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, PExp::Finite(_))
    }

    fn at_least(&self, bound: &F) -> bool {
        match self {
            PExp::Finite(p) => p >= bound,
            PExp::Infinite => true,
        }
    }
}

impl<F: fmt::Display> fmt::Display for PExp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExp::Finite(p) => write!(f, "{p}"),
            PExp::Infinite => write!(f, "inf"),
        }
    }
}

/// An exponent tuple (p₁, …, p_d), one entry per function in the form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTuple<F: Exact> {
    entries: Vec<PExp<F>>,
}

impl<F: Exact> ExponentTuple<F> {
    pub fn new(entries: Vec<PExp<F>>) -> Result<Self> {
        let d = entries.len();
        if !(2..=MAX_DIM).contains(&d) {
            return Err(Error::InvalidExponents(format!(
                "tuple length must be between 2 and {MAX_DIM}, got {d}"
            )));
        }
        for (j, p) in entries.iter().enumerate() {
            if !p.at_least(&F::one()) {
                return Err(Error::InvalidExponents(format!(
                    "p_{} = {} is below 1",
                    j + 1,
                    p
                )));
            }
        }
        Ok(ExponentTuple { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[PExp<F>] {
        &self.entries
    }

    pub fn all_infinite(&self) -> bool {
        self.entries.iter().all(|p| !p.is_finite())
    }

    /// P = Σ 1/p_j.
    pub fn reciprocal_sum(&self) -> F {
        self.entries
            .iter()
            .fold(F::zero(), |acc, p| acc + p.reciprocal())
    }

    /// The scaling direction v_j = 1 − P + 1/p_j attached to the tuple. The
    /// decay machinery needs every entry strictly positive; callers check
    /// via `validate_hypotheses`.
    pub fn direction(&self) -> Vec<F> {
        let p = self.reciprocal_sum();
        self.entries
            .iter()
            .map(|e| F::one() - p.clone() + e.reciprocal())
            .collect()
    }
}

impl<F: Exact> fmt::Display for ExponentTuple<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The critical constant-tuple exponent p(d) = (d−1)·2^{d−1} / (2^{d−1} − 1):
/// the smallest p with (p, …, p) admissible on the diagonal.
pub fn on_diagonal_threshold<F: Exact>(dim: usize) -> F {
    assert!((2..=MAX_DIM).contains(&dim), "dimension out of range");
    let pow = exact_int::<F>(1 << (dim - 1));
    exact_int::<F>(dim as i64 - 1) * pow.clone() / (pow - F::one())
}

/// The distance threshold 2^{d−1} that separates the decay regimes.
pub fn critical_distance<F: Exact>(dim: usize) -> F {
    assert!((2..=MAX_DIM).contains(&dim), "dimension out of range");
    exact_int(1 << (dim - 1))
}

/// The extreme admissible tuple (2^{d−1}, 2^{d−1}, 2^{d−2}, …, 4, 2), which
/// has Σ 1/p_j = 1 exactly.
pub fn off_diagonal_tuple<F: Exact>(dim: usize) -> ExponentTuple<F> {
    assert!((2..=MAX_DIM).contains(&dim), "dimension out of range");
    let mut entries = vec![PExp::Finite(exact_int(1 << (dim - 1))); 2];
    for j in 3..=dim {
        entries.push(PExp::Finite(exact_int(1 << (dim + 1 - j))));
    }
    ExponentTuple::new(entries).expect("the extreme tuple is always admissible")
}

/// Diagnostics from checking a tuple against both integrability hypotheses.
/// The two regimes are not exclusive: large tuples satisfy both.
#[derive(Debug, Clone)]
pub struct HypothesisReport<F> {
    pub reciprocal_sum: F,
    pub direction: Vec<F>,
    /// p(d), the on-diagonal threshold for this dimension.
    pub threshold: F,
    /// p₁, p₂ ≥ 2^{d−1} and p_j ≥ 2^{d+1−j} for 3 ≤ j ≤ d.
    pub off_diagonal: bool,
    /// Every p_j ≥ p(d).
    pub on_diagonal: bool,
    /// Every direction entry is strictly positive, i.e. Σ 1/p_j < 1 + min 1/p_j.
    pub direction_positive: bool,
}

impl<F> HypothesisReport<F> {
    pub fn admissible(&self) -> bool {
        (self.off_diagonal || self.on_diagonal) && self.direction_positive
    }
}

pub fn validate_hypotheses<F: Exact>(p: &ExponentTuple<F>) -> HypothesisReport<F> {
    let d = p.dim();
    let threshold = on_diagonal_threshold::<F>(d);
    let big = critical_distance::<F>(d);
    let entries = p.entries();

    let mut off_diagonal = entries[0].at_least(&big) && entries[1].at_least(&big);
    for j in 3..=d {
        off_diagonal &= entries[j - 1].at_least(&exact_int(1 << (d + 1 - j)));
    }
    let on_diagonal = entries.iter().all(|e| e.at_least(&threshold));

    let direction = p.direction();
    let direction_positive = direction.iter().all(|v| *v > F::zero());
    HypothesisReport {
        reciprocal_sum: p.reciprocal_sum(),
        direction,
        threshold,
        off_diagonal,
        on_diagonal,
        direction_positive,
    }
}

/// Where the Newton distance δ sits relative to the threshold 2^{d−1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Above,
    Critical,
    Below,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Above => "above",
            Regime::Critical => "critical",
            Regime::Below => "below",
        })
    }
}

/// Predicted decay |Λ(λ)| ≲ λ^{−rate} · log^{log_power}(λ) for the form with
/// the given tuple, together with the geometry that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecayEstimate<F> {
    pub rate: F,
    pub log_power: u32,
    pub regime: Regime,
    /// Newton distance along the tuple's direction.
    pub delta: F,
    /// Codimension of the minimal face met at the boundary point.
    pub codim: usize,
}

impl<F: Exact> DecayEstimate<F> {
    /// JSON view with exact values rendered as strings; `k` is the
    /// codimension.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rate": self.rate.to_string(),
            "log_power": self.log_power,
            "regime": self.regime.to_string(),
            "delta": self.delta.to_string(),
            "k": self.codim,
        })
    }
}

/// Regime split for a Newton distance δ met at a face of codimension k:
///
/// * δ > 2^{d−1}: rate 1/δ with log power k − 1;
/// * δ = 2^{d−1}: rate 1/δ with log power d;
/// * δ < 2^{d−1}: rate 2^{1−d} with no log.
pub fn estimate_for_distance<F: Exact>(delta: F, codim: usize, dim: usize) -> DecayEstimate<F> {
    let gamma = critical_distance::<F>(dim);
    if delta > gamma {
        DecayEstimate {
            rate: F::one() / delta.clone(),
            log_power: (codim - 1) as u32,
            regime: Regime::Above,
            delta,
            codim,
        }
    } else if delta == gamma {
        DecayEstimate {
            rate: F::one() / delta.clone(),
            log_power: dim as u32,
            regime: Regime::Critical,
            delta,
            codim,
        }
    } else {
        DecayEstimate {
            rate: F::one() / gamma,
            log_power: 0,
            regime: Regime::Below,
            delta,
            codim,
        }
    }
}

/// Geometry-only prediction: hypotheses, direction, Newton distance, regime.
/// The caller is responsible for nondegeneracy of the phase the polyhedron
/// came from; `predict` wraps this with that check.
pub fn predict_for_polyhedron<F: Exact>(
    poly: &NewtonPolyhedron<F>,
    p: &ExponentTuple<F>,
) -> Result<DecayEstimate<F>> {
    if p.dim() != poly.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            got: p.dim(),
        });
    }
    let hyp = validate_hypotheses(p);
    if !hyp.direction_positive {
        return Err(Error::InvalidExponents(format!(
            "tuple {p} has Σ 1/p_j = {} and a non-positive scaling direction",
            hyp.reciprocal_sum
        )));
    }
    if !(hyp.off_diagonal || hyp.on_diagonal) {
        return Err(Error::InvalidExponents(format!(
            "tuple {p} satisfies neither integrability hypothesis \
             (needs p₁, p₂ ≥ 2^(d−1) with the dyadic tail, or all p_j ≥ {})",
            hyp.threshold
        )));
    }
    let (delta, point) = poly.newton_distance(&hyp.direction)?;
    Ok(estimate_for_distance(delta, point.codim, poly.dim()))
}

/// Full prediction for a phase: nondegeneracy first (a degenerate phase gets
/// no prediction, only a witness), then the geometry. `grid_h` overrides the
/// dimension-dependent default scan resolution.
pub fn predict(
    phase: &Phase<f64>,
    p: &ExponentTuple<Rat>,
    grid_h: Option<f64>,
) -> Result<DecayEstimate<Rat>> {
    let report = nondeg::check_nondegenerate(phase, grid_h)?;
    if let Some(w) = report.witness {
        return Err(Error::DegeneratePhase { witness: w.point });
    }
    let poly = NewtonPolyhedron::<Rat>::of_phase(phase)?;
    predict_for_polyhedron(&poly, p)
}

/// Interpolates 1/q_j = θ₁/p_j + (1−θ₁)/a_j between a tuple and an anchor.
pub fn interpolate_with<F: Exact>(
    p: &ExponentTuple<F>,
    anchor: &ExponentTuple<F>,
    theta1: &F,
) -> Result<ExponentTuple<F>> {
    if p.dim() != anchor.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            got: anchor.dim(),
        });
    }
    if *theta1 < F::zero() || *theta1 > F::one() {
        return Err(Error::InvalidInput(format!(
            "interpolation weight must lie in [0, 1], got {theta1}"
        )));
    }
    let theta2 = F::one() - theta1.clone();
    let entries = p
        .entries()
        .iter()
        .zip(anchor.entries())
        .map(|(pj, aj)| {
            PExp::from_reciprocal(
                theta1.clone() * pj.reciprocal() + theta2.clone() * aj.reciprocal(),
            )
        })
        .collect();
    ExponentTuple::new(entries)
}

/// Interpolation against the constant tuple (d−1, …, d−1), the anchor whose
/// own scaling direction is zero. That choice is what makes the distance
/// identity below exact.
pub fn interpolate_tuple<F: Exact>(p: &ExponentTuple<F>, theta1: &F) -> Result<ExponentTuple<F>> {
    let d = p.dim();
    let anchor = ExponentTuple::new(vec![PExp::Finite(exact_int(d as i64 - 1)); d])?;
    interpolate_with(p, &anchor, theta1)
}

/// Both sides of the interpolation identity δ(q) = δ(p)/θ₁ for
/// q = `interpolate_tuple`(p, θ₁), evaluated exactly on a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationIdentity<F> {
    pub delta_base: F,
    pub delta_interpolated: F,
    pub holds: bool,
}

pub fn interpolated_delta_identity<F: Exact>(
    poly: &NewtonPolyhedron<F>,
    p: &ExponentTuple<F>,
    theta1: &F,
) -> Result<InterpolationIdentity<F>> {
    if *theta1 <= F::zero() || *theta1 > F::one() {
        return Err(Error::InvalidInput(format!(
            "interpolation weight must lie in (0, 1], got {theta1}"
        )));
    }
    let q = interpolate_tuple(p, theta1)?;
    let (delta_base, _) = poly.newton_distance(&p.direction())?;
    let (delta_interpolated, _) = poly.newton_distance(&q.direction())?;
    let holds = delta_interpolated.clone() * theta1.clone() == delta_base;
    Ok(InterpolationIdentity {
        delta_base,
        delta_interpolated,
        holds,
    })
}

/// Sublevel-set bound |{x ∈ [0,1]^d : |S(x)| ≤ ε}| ≤ C·constant·ε^exponent·
/// ln^{log_power}(2 + 1/ε) transferred from a decay estimate. The factor
/// (2/ln 2)^s absorbs the submultiplicativity loss ln(2+uv) ≤ (2/ln 2)·
/// ln(2+u)·ln(2+v) incurred once per log power when splitting ε dyadically.
#[derive(Debug, Clone, PartialEq)]
pub struct SublevelBound<F> {
    pub epsilon_exponent: F,
    pub log_power: u32,
    pub constant: f64,
}

pub fn decay_to_sublevel<F: Exact>(estimate: &DecayEstimate<F>) -> Result<SublevelBound<F>> {
    if estimate.rate <= F::zero() {
        return Err(Error::InvalidInput(
            "sublevel transfer needs a strictly positive decay rate".into(),
        ));
    }
    Ok(SublevelBound {
        epsilon_exponent: estimate.rate.clone(),
        log_power: estimate.log_power,
        constant: (2.0 / std::f64::consts::LN_2).powi(estimate.log_power as i32),
    })
}

/// Predicted sharpness exponents for the single-scale test functions built
/// from a supporting normal n at the boundary point δv:
///
/// * the product of norms scales like λ^{1/δ − Σn_j},
/// * the form itself like λ^{−Σn_j},
/// * their ratio like λ^{−1/δ}, matching the predicted decay rate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpnessPrediction<F> {
    pub norm_product_exponent: F,
    pub form_exponent: F,
    pub ratio_exponent: F,
}

pub fn sharpness_prediction<F: Exact>(
    poly: &NewtonPolyhedron<F>,
    p: &ExponentTuple<F>,
    normal: &[F],
) -> Result<SharpnessPrediction<F>> {
    if normal.len() != poly.dim() {
        return Err(Error::DimensionMismatch {
            expected: poly.dim(),
            got: normal.len(),
        });
    }
    let hyp = validate_hypotheses(p);
    if !hyp.direction_positive {
        return Err(Error::InvalidExponents(format!(
            "tuple {p} has a non-positive scaling direction"
        )));
    }
    let (delta, point) = poly.newton_distance(&hyp.direction)?;
    if normal.iter().any(|c| *c < F::zero()) {
        return Err(Error::InvalidInput(
            "supporting normal must be componentwise nonnegative".into(),
        ));
    }
    let level = dot(normal, &point.coords);
    if level != F::one() {
        return Err(Error::InvalidInput(format!(
            "normal is not tight at the boundary point: n·δv = {level} ≠ 1"
        )));
    }
    for w in poly.vertex_coords() {
        if dot(normal, &w) < F::one() {
            return Err(Error::InvalidInput(
                "normal does not support the polyhedron at level 1".into(),
            ));
        }
    }
    let weight = normal.iter().fold(F::zero(), |a, b| a + b.clone());
    Ok(SharpnessPrediction {
        norm_product_exponent: F::one() / delta.clone() - weight.clone(),
        form_exponent: F::zero() - weight,
        ratio_exponent: F::zero() - F::one() / delta,
    })
}

fn dot<F: Exact>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::MultiIndex;
    use crate::scalar::exact_ratio;

    fn fin(n: i64, d: i64) -> PExp<Rat> {
        PExp::Finite(exact_ratio(n, d))
    }

    fn tuple(entries: &[(i64, i64)]) -> ExponentTuple<Rat> {
        ExponentTuple::new(entries.iter().map(|&(n, d)| fin(n, d)).collect()).unwrap()
    }

    fn inf_tuple(d: usize) -> ExponentTuple<Rat> {
        ExponentTuple::new(vec![PExp::Infinite; d]).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rat {
        exact_ratio(n, d)
    }

    fn poly(points: &[&[u32]]) -> NewtonPolyhedron<Rat> {
        let pts: Vec<MultiIndex> = points
            .iter()
            .map(|p| MultiIndex::new(p.to_vec()))
            .collect();
        NewtonPolyhedron::build(&pts).unwrap()
    }

    fn phase(dim: usize, terms: &[(&[u32], f64)]) -> Phase<f64> {
        Phase::new(
            dim,
            terms
                .iter()
                .map(|(alpha, c)| (MultiIndex::new(alpha.to_vec()), *c))
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_thresholds_are_exact() {
        assert_eq!(on_diagonal_threshold::<Rat>(2), rat(2, 1));
        assert_eq!(on_diagonal_threshold::<Rat>(3), rat(8, 3));
        assert_eq!(on_diagonal_threshold::<Rat>(4), rat(24, 7));
        assert_eq!(on_diagonal_threshold::<Rat>(5), rat(64, 15));
        assert_eq!(on_diagonal_threshold::<Rat>(6), rat(160, 31));
    }

    #[test]
    fn extreme_tuple_has_unit_reciprocal_sum() {
        assert_eq!(off_diagonal_tuple::<Rat>(3), tuple(&[(4, 1), (4, 1), (2, 1)]));
        assert_eq!(
            off_diagonal_tuple::<Rat>(4),
            tuple(&[(8, 1), (8, 1), (4, 1), (2, 1)])
        );
        for d in 2..=6 {
            assert_eq!(off_diagonal_tuple::<Rat>(d).reciprocal_sum(), rat(1, 1));
        }
    }

    #[test]
    fn diagonal_tuple_direction_is_the_dyadic_constant() {
        // At the threshold tuple (p(d), …, p(d)) every direction entry is
        // exactly 2^{1−d}.
        for d in 2..=6usize {
            let p = ExponentTuple::new(vec![
                PExp::Finite(on_diagonal_threshold::<Rat>(d));
                d
            ])
            .unwrap();
            let expect = rat(1, 1 << (d - 1));
            assert!(p.direction().into_iter().all(|v| v == expect));
        }
    }

    #[test]
    fn extreme_tuple_direction_in_three_dimensions() {
        let v = off_diagonal_tuple::<Rat>(3).direction();
        assert_eq!(v, vec![rat(1, 4), rat(1, 4), rat(1, 2)]);
    }

    #[test]
    fn hypotheses_split_as_expected() {
        let on_only = tuple(&[(8, 3), (8, 3), (8, 3)]);
        let h = validate_hypotheses(&on_only);
        assert!(h.on_diagonal && !h.off_diagonal && h.direction_positive);
        assert!(h.admissible());
        assert_eq!(h.reciprocal_sum, rat(9, 8));

        let off_only = off_diagonal_tuple::<Rat>(3);
        let h = validate_hypotheses(&off_only);
        assert!(h.off_diagonal && !h.on_diagonal && h.direction_positive);

        let both = tuple(&[(4, 1), (4, 1), (4, 1)]);
        let h = validate_hypotheses(&both);
        assert!(h.off_diagonal && h.on_diagonal);

        let neither = tuple(&[(2, 1), (2, 1), (2, 1)]);
        let h = validate_hypotheses(&neither);
        assert!(!h.off_diagonal && !h.on_diagonal && !h.direction_positive);
        assert!(h.direction.into_iter().all(|v| v == rat(0, 1)));

        let h = validate_hypotheses(&inf_tuple(3));
        assert!(h.off_diagonal && h.on_diagonal && h.direction_positive);
        assert!(h.direction.into_iter().all(|v| v == rat(1, 1)));
    }

    #[test]
    fn tuples_below_one_are_rejected() {
        assert!(ExponentTuple::new(vec![fin(1, 2), fin(4, 1)]).is_err());
        assert!(ExponentTuple::<Rat>::new(vec![PExp::Infinite]).is_err());
        assert!(ExponentTuple::<Rat>::new(vec![PExp::Infinite; 7]).is_err());
    }

    #[test]
    fn product_phase_at_the_threshold_is_critical() {
        let s = phase(3, &[(&[1, 1, 1], 1.0)]);
        let est = predict(&s, &tuple(&[(8, 3), (8, 3), (8, 3)]), None).unwrap();
        assert_eq!(est.delta, rat(4, 1));
        assert_eq!(est.rate, rat(1, 4));
        assert_eq!(est.regime, Regime::Critical);
        assert_eq!(est.log_power, 3);
        assert_eq!(est.codim, 3);
        let json = est.to_json();
        assert_eq!(json["rate"], "1/4");
        assert_eq!(json["log_power"], 3);
        assert_eq!(json["regime"], "critical");
        assert_eq!(json["delta"], "4");
        assert_eq!(json["k"], 3);
    }

    #[test]
    fn squared_product_phase_lands_above_the_threshold() {
        let s = phase(3, &[(&[2, 2, 2], 1.0)]);
        let est = predict(&s, &tuple(&[(8, 3), (8, 3), (8, 3)]), None).unwrap();
        assert_eq!(est.delta, rat(8, 1));
        assert_eq!(est.regime, Regime::Above);
        assert_eq!(est.rate, rat(1, 8));
        assert_eq!(est.codim, 3);
        assert_eq!(est.log_power, 2);
    }

    #[test]
    fn sup_norm_tuple_lands_below_the_threshold() {
        // All-∞ tuple: direction (1,1,1), δ = 1 < 4, so the rate saturates
        // at 2^{1−d} with no log.
        let s = phase(3, &[(&[1, 1, 1], 1.0)]);
        let est = predict(&s, &inf_tuple(3), None).unwrap();
        assert_eq!(est.delta, rat(1, 1));
        assert_eq!(est.regime, Regime::Below);
        assert_eq!(est.rate, rat(1, 4));
        assert_eq!(est.log_power, 0);
    }

    #[test]
    fn products_are_critical_at_the_threshold_in_all_dimensions() {
        for d in 3..=5usize {
            let s = phase(d, &[(&vec![1u32; d][..], 1.0)]);
            let p = ExponentTuple::new(vec![
                PExp::Finite(on_diagonal_threshold::<Rat>(d));
                d
            ])
            .unwrap();
            let est = predict(&s, &p, None).unwrap();
            assert_eq!(est.regime, Regime::Critical);
            assert_eq!(est.rate, rat(1, 1 << (d - 1)));
            assert_eq!(est.log_power, d as u32);
        }
    }

    #[test]
    fn degenerate_phases_get_a_witness_not_a_prediction() {
        let s = phase(3, &[(&[2, 1, 1], 1.0), (&[1, 2, 1], 1.0)]);
        let err = predict(&s, &tuple(&[(4, 1), (4, 1), (4, 1)]), None).unwrap_err();
        match err {
            Error::DegeneratePhase { witness } => {
                assert!((witness[0] + witness[1]).abs() < 1e-8)
            }
            other => panic!("expected degeneracy, got {other}"),
        }
    }

    #[test]
    fn inadmissible_tuples_are_refused() {
        let s = phase(3, &[(&[1, 1, 1], 1.0)]);
        let err = predict(&s, &tuple(&[(2, 1), (2, 1), (2, 1)]), None).unwrap_err();
        assert!(matches!(err, Error::InvalidExponents(_)));
        // Admissible hypotheses but wrong dimension count.
        let err = predict(&s, &tuple(&[(4, 1), (4, 1)]), None).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn hypotheses_gate_runs_before_geometry() {
        // (3, 4, 4): p₁ < 4 kills the off-diagonal clause and 3 > 8/3 keeps
        // the on-diagonal one only if every entry clears it; p₂ = p₃ = 4 do,
        // p₁ = 3 does too. So this one is admissible on-diagonal…
        let h = validate_hypotheses(&tuple(&[(3, 1), (4, 1), (4, 1)]));
        assert!(h.on_diagonal && !h.off_diagonal);
        // …while (5/2, 4, 4) fails both clauses with a positive direction.
        let p = tuple(&[(5, 2), (4, 1), (4, 1)]);
        let h = validate_hypotheses(&p);
        assert!(!h.on_diagonal && !h.off_diagonal && h.direction_positive);
        let err = predict_for_polyhedron(&poly(&[&[1, 1, 1]]), &p).unwrap_err();
        assert!(matches!(err, Error::InvalidExponents(_)));
    }

    #[test]
    fn interpolation_matches_the_worked_four_dimensional_example() {
        let p = tuple(&[(8, 1), (4, 1), (4, 1), (2, 1)]);
        let anchor = ExponentTuple::new(vec![
            PExp::Finite(on_diagonal_threshold::<Rat>(4));
            4
        ])
        .unwrap();
        let q = interpolate_with(&p, &anchor, &rat(1, 2)).unwrap();
        assert_eq!(
            q,
            tuple(&[(48, 10), (48, 13), (48, 13), (48, 19)])
        );
        // The constant (d−1)-anchor is a genuinely different interpolation.
        let q = interpolate_tuple(&p, &rat(1, 2)).unwrap();
        assert_eq!(q.entries()[0], fin(48, 11));
    }

    #[test]
    fn interpolating_a_sup_norm_tuple_hits_finite_exponents() {
        let q = interpolate_tuple(&inf_tuple(3), &rat(2, 3)).unwrap();
        assert_eq!(q, tuple(&[(6, 1), (6, 1), (6, 1)]));
        // θ₁ = 1 returns the original tuple.
        let q = interpolate_tuple(&inf_tuple(3), &rat(1, 1)).unwrap();
        assert!(q.all_infinite());
    }

    #[test]
    fn distance_identity_holds_on_the_quartic_edge_polyhedron() {
        let p = poly(&[&[4, 1, 1], &[1, 1, 4]]);
        let id = interpolated_delta_identity(&p, &inf_tuple(3), &rat(2, 3)).unwrap();
        assert_eq!(id.delta_base, rat(5, 2));
        assert_eq!(id.delta_interpolated, rat(15, 4));
        assert!(id.holds);
    }

    #[test]
    fn distance_identity_holds_across_a_corpus() {
        let polys = [
            poly(&[&[1, 1, 1]]),
            poly(&[&[2, 2, 2]]),
            poly(&[&[4, 1, 1], &[1, 1, 4]]),
            poly(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]),
        ];
        let tuples = [
            tuple(&[(8, 3), (8, 3), (8, 3)]),
            off_diagonal_tuple::<Rat>(3),
            inf_tuple(3),
            tuple(&[(4, 1), (4, 1), (4, 1)]),
        ];
        let weights = [rat(1, 4), rat(1, 2), rat(3, 4)];
        for poly in &polys {
            for p in &tuples {
                for theta in &weights {
                    let id = interpolated_delta_identity(poly, p, theta).unwrap();
                    assert!(id.holds, "identity failed for {p} at θ₁ = {theta}");
                }
            }
        }
    }

    #[test]
    fn identity_rejects_degenerate_weights() {
        let p = poly(&[&[1, 1, 1]]);
        assert!(interpolated_delta_identity(&p, &inf_tuple(3), &rat(0, 1)).is_err());
        assert!(interpolated_delta_identity(&p, &inf_tuple(3), &rat(5, 4)).is_err());
    }

    #[test]
    fn sublevel_transfer_copies_rate_and_pays_for_logs() {
        let est = estimate_for_distance(rat(4, 1), 3, 3);
        let bound = decay_to_sublevel(&est).unwrap();
        assert_eq!(bound.epsilon_exponent, rat(1, 4));
        assert_eq!(bound.log_power, 3);
        let expect = (2.0 / std::f64::consts::LN_2).powi(3);
        assert!((bound.constant - expect).abs() < 1e-12);

        let zero_rate = DecayEstimate {
            rate: rat(0, 1),
            log_power: 0,
            regime: Regime::Below,
            delta: rat(1, 1),
            codim: 1,
        };
        assert!(decay_to_sublevel(&zero_rate).is_err());
    }

    #[test]
    fn log_submultiplicativity_grid_check() {
        // x + y ≤ (2/ln 2)·x·y for x, y ≥ ln 2, with equality at the corner:
        // the inequality the sublevel constant (2/ln 2)^s leans on.
        let ln2 = std::f64::consts::LN_2;
        let c = 2.0 / ln2;
        let n = 100;
        for i in 0..n {
            for j in 0..n {
                let x = ln2 + (20.0 - ln2) * i as f64 / (n - 1) as f64;
                let y = ln2 + (20.0 - ln2) * j as f64 / (n - 1) as f64;
                assert!(x + y <= c * x * y + 1e-12, "failed at ({x}, {y})");
            }
        }
        assert!((2.0 * ln2 - c * ln2 * ln2).abs() < 1e-12);
    }

    #[test]
    fn sharpness_exponents_for_the_product_phase() {
        let p = poly(&[&[1, 1, 1]]);
        let diag = tuple(&[(8, 3), (8, 3), (8, 3)]);
        let n = vec![rat(1, 3), rat(1, 3), rat(1, 3)];
        let s = sharpness_prediction(&p, &diag, &n).unwrap();
        assert_eq!(s.norm_product_exponent, rat(-3, 4));
        assert_eq!(s.form_exponent, rat(-1, 1));
        assert_eq!(s.ratio_exponent, rat(-1, 4));
        // A single axis facet normal is tight at (1,1,1) and supporting too;
        // any supporting normal is accepted.
        let e1 = vec![rat(1, 1), rat(0, 1), rat(0, 1)];
        let s = sharpness_prediction(&p, &diag, &e1).unwrap();
        assert_eq!(s.norm_product_exponent, rat(-3, 4));
    }

    #[test]
    fn sharpness_with_the_extreme_tuple_uses_the_mean_normal() {
        let p = poly(&[&[1, 1, 1]]);
        let off = off_diagonal_tuple::<Rat>(3);
        let (delta, point) = p.newton_distance(&off.direction()).unwrap();
        assert_eq!(delta, rat(4, 1));
        assert_eq!(point.coords, vec![rat(1, 1), rat(1, 1), rat(2, 1)]);
        let n = p.supporting_normal_at(&point).unwrap();
        assert_eq!(n, vec![rat(1, 2), rat(1, 2), rat(0, 1)]);
        let s = sharpness_prediction(&p, &off, &n).unwrap();
        assert_eq!(s.norm_product_exponent, rat(-3, 4));
        assert_eq!(s.form_exponent, rat(-1, 1));
        assert_eq!(s.ratio_exponent, rat(-1, 4));
    }

    #[test]
    fn sharpness_rejects_normals_that_do_not_support() {
        let p = poly(&[&[1, 1, 1]]);
        let off = off_diagonal_tuple::<Rat>(3);
        // Tight at the boundary point (1,1,2) but cuts off the vertex.
        let bad = vec![rat(0, 1), rat(0, 1), rat(1, 2)];
        assert!(sharpness_prediction(&p, &off, &bad).is_err());
        // Not tight at the boundary point at all.
        let e3 = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
        assert!(sharpness_prediction(&p, &off, &e3).is_err());
        // Negative entries are never a supporting direction here.
        let neg = vec![rat(1, 1), rat(1, 2), rat(-1, 2)];
        assert!(sharpness_prediction(&p, &off, &neg).is_err());
    }

    #[test]
    fn directions_permute_with_the_tuple() {
        let p = tuple(&[(8, 1), (4, 1), (2, 1)]);
        let v = p.direction();
        for perm in [[1usize, 0, 2], [2, 0, 1], [1, 2, 0]] {
            let permuted = ExponentTuple::new(
                perm.iter().map(|&i| p.entries()[i].clone()).collect(),
            )
            .unwrap();
            let pv = permuted.direction();
            for (slot, &src) in perm.iter().enumerate() {
                assert_eq!(pv[slot], v[src]);
            }
            // The on-diagonal clause ignores order; the off-diagonal one
            // is genuinely position-dependent.
            assert_eq!(
                validate_hypotheses(&permuted).on_diagonal,
                validate_hypotheses(&p).on_diagonal
            );
        }
    }

    #[test]
    fn distance_is_invariant_under_matching_permutations() {
        let gens: [&[u32]; 2] = [&[4, 1, 1], &[1, 1, 4]];
        let p = off_diagonal_tuple::<Rat>(3);
        let (delta, _) = poly(&gens)
            .newton_distance(&p.direction())
            .unwrap();
        let perm = [2usize, 0, 1];
        let permuted_gens: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| perm.iter().map(|&i| g[i]).collect())
            .collect();
        let permuted_poly = poly(&[&permuted_gens[0], &permuted_gens[1]]);
        let permuted_tuple = ExponentTuple::new(
            perm.iter().map(|&i| p.entries()[i].clone()).collect(),
        )
        .unwrap();
        let (permuted_delta, _) = permuted_poly
            .newton_distance(&permuted_tuple.direction())
            .unwrap();
        assert_eq!(delta, permuted_delta);
    }

    #[test]
    fn tuple_display_reads_naturally() {
        let p = ExponentTuple::new(vec![fin(8, 3), PExp::Infinite, fin(2, 1)]).unwrap();
        assert_eq!(p.to_string(), "(8/3, inf, 2)");
    }
}

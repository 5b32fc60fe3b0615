//! Sparse polynomial phases: evaluation, differentiation, and restriction to
//! subsets of terms.
//!
//! A phase is a finite sum Σ c_α x^α stored as a sorted map from exponent
//! vectors to nonzero coefficients. Exponents stay exact integers; only the
//! coefficients live in the scalar type, so all downstream geometry is exact
//! regardless of the coefficient field.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Coeff;
use crate::{Error, Result};

/// Largest ambient dimension the toolkit supports; face enumeration and
/// quadrature cost grow too quickly past this.
pub const MAX_DIM: usize = 6;

/// Exponent vector of a single monomial term. Ordered lexicographically,
/// which fixes the iteration and serialization order everywhere.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Total degree |α| = Σ α_j.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// True when every entry is ≥ 1, the admissibility requirement for the
    /// terms of a phase (as opposed to its derivatives).
    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&a| a >= 1)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, a) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Polynomial phase Σ c_α x^α in `dim` variables.
///
/// The zero polynomial (empty term map) is representable: it arises naturally
/// from differentiation. Phases fed to the Newton-polyhedron constructor must
/// additionally have every exponent ≥ 1 in every variable; that is checked at
/// that boundary, not here, so that derivative polynomials remain first-class
/// values.
#[derive(Clone, PartialEq, Debug)]
pub struct Phase<T: Coeff> {
    dim: usize,
    terms: BTreeMap<MultiIndex, T>,
}

impl<T: Coeff> Phase<T> {
    /// Builds a phase from `(α, c_α)` pairs. Rejects dimension mismatches,
    /// duplicate multi-indices, and zero coefficients.
    pub fn new(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, T)>) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidInput(format!(
                "dim must be between 2 and {MAX_DIM}, got {dim}"
            )));
        }
        let mut map = BTreeMap::new();
        for (alpha, coeff) in terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.dim(),
                });
            }
            if coeff.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "term {alpha} has zero coefficient"
                )));
            }
            match map.entry(alpha) {
                Entry::Vacant(slot) => {
                    slot.insert(coeff);
                }
                Entry::Occupied(slot) => {
                    return Err(Error::InvalidInput(format!(
                        "duplicate multi-index {}",
                        slot.key()
                    )));
                }
            }
        }
        Ok(Phase { dim, terms: map })
    }

    /// Single-term phase c·x^α.
    pub fn monomial(dim: usize, alpha: &[u32], coeff: T) -> Result<Self> {
        Self::new(dim, [(MultiIndex::new(alpha.to_vec()), coeff)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The support of the phase: its multi-indices in lexicographic order.
    pub fn support(&self) -> Vec<MultiIndex> {
        self.terms.keys().cloned().collect()
    }

    /// True when every term has every exponent ≥ 1 (and there is at least one
    /// term), the admissibility requirement for Newton-polyhedron input.
    pub fn all_exponents_positive(&self) -> bool {
        !self.terms.is_empty() && self.terms.keys().all(MultiIndex::all_positive)
    }

    /// Evaluates Σ c_α x^α.
    pub fn eval(&self, x: &[T]) -> Result<T> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let mut acc = T::zero();
        for (alpha, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (xj, &aj) in x.iter().zip(alpha.entries()) {
                term = term * num_traits::pow(xj.clone(), aj as usize);
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Exact partial derivative ∂^β S. Terms whose exponents drop below zero
    /// vanish; the result may be the zero polynomial.
    pub fn partial_derivative(&self, beta: &MultiIndex) -> Result<Self> {
        if beta.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: beta.dim(),
            });
        }
        let mut out = BTreeMap::new();
        for (alpha, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut shifted = Vec::with_capacity(self.dim);
            let mut alive = true;
            for (&aj, &bj) in alpha.entries().iter().zip(beta.entries()) {
                if aj < bj {
                    alive = false;
                    break;
                }
                // Falling factorial α_j (α_j − 1) ⋯ (α_j − β_j + 1), applied
                // factor by factor so exact coefficient types stay exact.
                for i in 0..bj {
                    c = c * T::from_u32(aj - i).expect("small integer fits any coefficient type");
                }
                shifted.push(aj - bj);
            }
            if alive {
                out.insert(MultiIndex::new(shifted), c);
            }
        }
        Ok(Phase {
            dim: self.dim,
            terms: out,
        })
    }

    /// The mixed derivative D_d S = ∂_1 ⋯ ∂_d S.
    pub fn mixed_derivative(&self) -> Self {
        let ones = MultiIndex::new(vec![1; self.dim]);
        self.partial_derivative(&ones)
            .expect("all-ones index has the phase's own dimension")
    }

    /// Restriction to the listed terms: Σ_{α ∈ face} c_α x^α. Every listed
    /// index must be present in the phase.
    pub fn face_restriction(&self, face: &[MultiIndex]) -> Result<Self> {
        let mut out = BTreeMap::new();
        for alpha in face {
            match self.terms.get(alpha) {
                Some(c) => {
                    out.insert(alpha.clone(), c.clone());
                }
                None => {
                    return Err(Error::InvalidInput(format!(
                        "multi-index {alpha} is not a term of the phase"
                    )));
                }
            }
        }
        Ok(Phase {
            dim: self.dim,
            terms: out,
        })
    }

    /// a·self + b·other with exact term collection; cancelled terms vanish.
    pub fn scaled_add(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out: BTreeMap<MultiIndex, T> = BTreeMap::new();
        for (alpha, c) in &self.terms {
            out.insert(alpha.clone(), a.clone() * c.clone());
        }
        for (alpha, c) in &other.terms {
            let add = b.clone() * c.clone();
            match out.entry(alpha.clone()) {
                Entry::Vacant(slot) => {
                    slot.insert(add);
                }
                Entry::Occupied(mut slot) => {
                    let sum = slot.get().clone() + add;
                    if sum.is_zero() {
                        slot.remove();
                    } else {
                        *slot.get_mut() = sum;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Phase {
            dim: self.dim,
            terms: out,
        })
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for Phase<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·x^{alpha}")?;
        }
        Ok(())
    }
}

/// JSON interchange form: `{"dim": 3, "terms": [{"alpha": [1,1,1], "coeff": 1.0}]}`.
///
/// Emission is sorted lexicographically by `alpha`; parsing rejects duplicate
/// alphas, zero coefficients, and exponents below 1 (this is the entry point
/// for phases of the oscillatory form, which require every variable in every
/// term).
pub mod json {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct TermDto {
        alpha: Vec<u32>,
        coeff: f64,
    }

    #[derive(Serialize, Deserialize)]
    struct PhaseDto {
        dim: usize,
        terms: Vec<TermDto>,
    }

    pub fn to_json(phase: &Phase<f64>) -> String {
        let dto = PhaseDto {
            dim: phase.dim(),
            terms: phase
                .terms()
                .map(|(alpha, &coeff)| TermDto {
                    alpha: alpha.entries().to_vec(),
                    coeff,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("phase DTO serializes")
    }

    pub fn from_json(text: &str) -> Result<Phase<f64>> {
        let dto: PhaseDto = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("phase JSON: {e}")))?;
        let mut terms = Vec::with_capacity(dto.terms.len());
        for t in &dto.terms {
            let alpha = MultiIndex::new(t.alpha.clone());
            if !alpha.all_positive() {
                return Err(Error::InvalidInput(format!(
                    "terms.alpha {alpha}: every exponent must be ≥ 1"
                )));
            }
            if !t.coeff.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "terms.coeff for {alpha} must be finite"
                )));
            }
            terms.push((alpha, t.coeff));
        }
        Phase::new(dto.dim, terms)
    }
}

//! Newton polyhedra of phases with exponents ≥ 1: exact facets and vertices,
//! Newton distance along a prescribed direction, compact-face enumeration,
//! and convex decompositions of boundary points.
//!
//! The Newton polyhedron of a finite set A ⊂ ℤ₊^d is N(A) = conv(A) + ℝ₊^d.
//! Everything here runs in exact arithmetic over the scalar `F`, so results
//! are reproducible bit for bit and safe to compare with `==` in tests.

mod dd;
mod linalg;
mod lp;
pub mod oracle;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::phase::{MultiIndex, Phase, MAX_DIM};
use crate::scalar::{Coeff, Exact};

/// One facet inequality normal·x ≥ level of a Newton polyhedron.
///
/// Construction normalizes every facet to level 1 (possible because all
/// exponents are ≥ 1, which forces strictly positive levels), so `normal` is
/// directly the unit-level normal used by distance and decay formulas; the
/// `level` field keeps the inequality self-describing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet<F> {
    pub normal: Vec<F>,
    pub level: F,
}

/// The point δv where a ray from the origin leaves the complement of the
/// polyhedron, together with the facets containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint<F> {
    pub coords: Vec<F>,
    /// Indices into `NewtonPolyhedron::facets` of the facets tight at `coords`.
    pub tight_facets: Vec<usize>,
    /// Rank of the tight facet normals; the codimension k of the minimal
    /// face containing the point, between 1 and d.
    pub codim: usize,
}

/// A compact face, recorded by its vertex set and by all generators lying on
/// it (the monomials that survive restriction to this face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactFace {
    pub dim: usize,
    pub vertices: Vec<MultiIndex>,
    pub members: Vec<MultiIndex>,
    /// Indices of the facets whose intersection cuts out this face.
    pub tight_facets: Vec<usize>,
}

/// A representation p = Σ θ_i w_i with θ_i > 0, Σ θ_i = 1. For boundary
/// points on noncompact minimal faces the representation is the trivial
/// singleton p = 1·p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<F> {
    pub vectors: Vec<Vec<F>>,
    pub coefficients: Vec<F>,
}

/// Newton polyhedron with exact facet and vertex structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron<F: Exact> {
    dim: usize,
    generators: Vec<MultiIndex>,
    vertices: Vec<MultiIndex>,
    facets: Vec<Facet<F>>,
}

fn dot<F: Exact>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

fn exact_coords<F: Exact>(mi: &MultiIndex) -> Vec<F> {
    mi.entries()
        .iter()
        .map(|&e| F::from_u32(e).expect("exponent fits in the scalar type"))
        .collect()
}

impl<F: Exact> NewtonPolyhedron<F> {
    /// Builds the Newton polyhedron of an explicit exponent set. Duplicates
    /// are merged; every entry must be ≥ 1.
    pub fn build(points: &[MultiIndex]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::InvalidInput("cannot build a polyhedron from no points".into()))?;
        let dim = first.dim();
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidInput(format!(
                "dimension must be between 2 and {MAX_DIM}, got {dim}"
            )));
        }
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if !p.all_positive() {
                return Err(Error::InvalidInput(format!(
                    "exponent {p} has an entry < 1; the polyhedron requires all entries ≥ 1"
                )));
            }
        }

        // Deduplicate and order the generators once; everything downstream
        // (vertex filtering, face enumeration) relies on this lex order.
        let generators: Vec<MultiIndex> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if dim + generators.len() > 128 {
            return Err(Error::InvalidInput(format!(
                "too many distinct exponents ({}) for dimension {dim}",
                generators.len()
            )));
        }
        let coords: Vec<Vec<F>> = generators.iter().map(exact_coords).collect();

        let mut facets: Vec<Facet<F>> = dd::upward_hull_facets(&coords)
            .into_iter()
            .map(|(normal, level)| {
                let normal = normal
                    .into_iter()
                    .map(|x| x / level.clone())
                    .collect::<Vec<F>>();
                Facet {
                    normal,
                    level: F::one(),
                }
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        facets.dedup();

        // A generator is a vertex exactly when it is not already in the
        // polyhedron spanned by the others.
        let mut vertices = Vec::new();
        for (i, g) in coords.iter().enumerate() {
            let others: Vec<Vec<F>> = coords
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| c.clone())
                .collect();
            if others.is_empty() || !lp::membership(&others, g) {
                vertices.push(generators[i].clone());
            }
        }

        let poly = NewtonPolyhedron {
            dim,
            generators,
            vertices,
            facets,
        };
        debug_assert!(poly.coords_of(&poly.generators).iter().all(|g| poly.contains(g)));
        Ok(poly)
    }

    /// Newton polyhedron of the support of a phase; requires every exponent
    /// of the phase to be ≥ 1 in each variable.
    pub fn of_phase<T: Coeff>(phase: &Phase<T>) -> Result<Self> {
        Self::build(&phase.support())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[MultiIndex] {
        &self.generators
    }

    pub fn vertices(&self) -> &[MultiIndex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<F>] {
        &self.facets
    }

    pub fn vertex_coords(&self) -> Vec<Vec<F>> {
        self.coords_of(&self.vertices)
    }

    fn coords_of(&self, points: &[MultiIndex]) -> Vec<Vec<F>> {
        points.iter().map(exact_coords).collect()
    }

    /// Whether x satisfies every facet inequality.
    pub fn contains(&self, x: &[F]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.facets
            .iter()
            .all(|f| dot(&f.normal, x) >= f.level)
    }

    /// Indices of the facets tight at x.
    pub fn tight_facets_at(&self, x: &[F]) -> Vec<usize> {
        assert_eq!(x.len(), self.dim);
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| dot(&f.normal, x) == f.level)
            .map(|(i, _)| i)
            .collect()
    }

    fn mask_of(&self, tight: &[usize]) -> u128 {
        tight.iter().fold(0u128, |m, &i| m | (1 << i))
    }

    /// Newton distance along a strictly positive direction v: the smallest
    /// δ > 0 with δv inside the polyhedron, returned exactly together with
    /// the boundary point δv.
    pub fn newton_distance(&self, v: &[F]) -> Result<(F, BoundaryPoint<F>)> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if v.iter().any(|x| *x <= F::zero()) {
            return Err(Error::InvalidInput(
                "direction must be strictly positive in every coordinate".into(),
            ));
        }
        // Along a positive ray the binding constraint is the facet reached
        // last: δ = max over facets of level / (v·normal).
        let delta = self
            .facets
            .iter()
            .map(|f| f.level.clone() / dot(v, &f.normal))
            .max()
            .expect("a Newton polyhedron always has at least one facet");
        let coords: Vec<F> = v.iter().map(|x| x.clone() * delta.clone()).collect();
        let tight_facets = self.tight_facets_at(&coords);
        debug_assert!(!tight_facets.is_empty());
        let normals: Vec<Vec<F>> = tight_facets
            .iter()
            .map(|&i| self.facets[i].normal.clone())
            .collect();
        let codim = linalg::rank(&normals);
        Ok((
            delta,
            BoundaryPoint {
                coords,
                tight_facets,
                codim,
            },
        ))
    }

    /// Whether the facet set `mask` pins every coordinate direction, i.e.
    /// the corresponding face has trivial recession cone and is compact.
    fn mask_is_compact(&self, mask: u128) -> bool {
        let mut covered = vec![false; self.dim];
        for (i, f) in self.facets.iter().enumerate() {
            if mask & (1 << i) == 0 {
                continue;
            }
            for (j, c) in f.normal.iter().enumerate() {
                if !c.is_zero() {
                    covered[j] = true;
                }
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// All compact faces, of every dimension, ordered by (dim, vertex list).
    ///
    /// Faces are generated as intersections of the vertex tight-facet masks:
    /// the tight set of a compact face is the intersection of the tight sets
    /// of its vertices, so closing the vertex masks under pairwise
    /// intersection enumerates every compact face exactly once. Masks rather
    /// than vertex sets are the face identity: distinct faces of the
    /// unbounded polyhedron can share a vertex set (an axis facet and one of
    /// its vertices, say), but never a tight set.
    pub fn compact_faces(&self) -> Vec<CompactFace> {
        let vertex_coords = self.vertex_coords();
        let vmasks: Vec<u128> = vertex_coords
            .iter()
            .map(|c| self.mask_of(&self.tight_facets_at(c)))
            .collect();

        let mut masks: BTreeSet<u128> = vmasks.iter().copied().filter(|&m| m != 0).collect();
        loop {
            let snapshot: Vec<u128> = masks.iter().copied().collect();
            let mut grew = false;
            for (i, &a) in snapshot.iter().enumerate() {
                for &b in &snapshot[i + 1..] {
                    let m = a & b;
                    if m != 0 && masks.insert(m) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }

        let gen_coords = self.coords_of(&self.generators);
        let mut faces = Vec::new();
        for &mask in &masks {
            if !self.mask_is_compact(mask) {
                continue;
            }
            let vert_idx: Vec<usize> = (0..self.vertices.len())
                .filter(|&i| vmasks[i] & mask == mask)
                .collect();
            debug_assert!(!vert_idx.is_empty());
            let on_face = |x: &[F]| {
                (0..self.facets.len())
                    .filter(|&i| mask & (1 << i) != 0)
                    .all(|i| dot(&self.facets[i].normal, x) == self.facets[i].level)
            };
            let members: Vec<MultiIndex> = self
                .generators
                .iter()
                .zip(&gen_coords)
                .filter(|(_, c)| on_face(c))
                .map(|(g, _)| g.clone())
                .collect();
            let base = &vertex_coords[vert_idx[0]];
            let diffs: Vec<Vec<F>> = vert_idx[1..]
                .iter()
                .map(|&i| {
                    vertex_coords[i]
                        .iter()
                        .zip(base)
                        .map(|(a, b)| a.clone() - b.clone())
                        .collect()
                })
                .collect();
            let tight_facets: Vec<usize> = (0..self.facets.len())
                .filter(|&i| mask & (1 << i) != 0)
                .collect();
            faces.push(CompactFace {
                dim: linalg::rank(&diffs),
                vertices: vert_idx.iter().map(|&i| self.vertices[i].clone()).collect(),
                members,
                tight_facets,
            });
        }
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    /// Convex decomposition of a boundary point.
    ///
    /// If the minimal face containing the point is noncompact the point only
    /// decomposes trivially and the singleton p = 1·p is returned. Otherwise
    /// the vertices of that face are listed in lex order and subsets are
    /// tried in lexicographic sequence order ({0} < {0,1} < {0,1,2} < {0,2}
    /// < {1} < …); the first subset that is affinely independent and gives
    /// strictly positive barycentric coordinates wins, which makes the
    /// result deterministic.
    pub fn convex_decomposition(&self, point: &BoundaryPoint<F>) -> Result<Decomposition<F>> {
        let p = &point.coords;
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        if !self.contains(p) {
            return Err(Error::InvalidInput(
                "decomposition needs a point of the polyhedron".into(),
            ));
        }
        let tight = self.tight_facets_at(p);
        if tight.is_empty() {
            return Err(Error::InvalidInput(
                "decomposition needs a boundary point, got an interior one".into(),
            ));
        }
        let mask = self.mask_of(&tight);
        if !self.mask_is_compact(mask) {
            return Ok(Decomposition {
                vectors: vec![p.clone()],
                coefficients: vec![F::one()],
            });
        }

        let vertex_coords = self.vertex_coords();
        let w: Vec<&Vec<F>> = vertex_coords
            .iter()
            .filter(|c| {
                tight
                    .iter()
                    .all(|&i| dot(&self.facets[i].normal, c) == self.facets[i].level)
            })
            .collect();
        debug_assert!(!w.is_empty(), "a compact face has at least one vertex");

        for subset in LexSubsets::new(w.len(), self.dim) {
            // Rows: one per coordinate, then the affine constraint Σθ = 1.
            let mut rows: Vec<Vec<F>> = (0..self.dim)
                .map(|r| subset.iter().map(|&s| w[s][r].clone()).collect())
                .collect();
            rows.push(vec![F::one(); subset.len()]);
            let mut rhs: Vec<F> = p.clone();
            rhs.push(F::one());
            if let Some(theta) = linalg::solve_unique(&rows, &rhs) {
                if theta.iter().all(|t| *t > F::zero()) {
                    return Ok(Decomposition {
                        vectors: subset.iter().map(|&s| w[s].clone()).collect(),
                        coefficients: theta,
                    });
                }
            }
        }
        Err(Error::InvalidInput(
            "no positive convex representation found for the boundary point".into(),
        ))
    }

    /// A supporting normal at a boundary point with n·p = 1: the average of
    /// the tight unit-level facet normals. Averaging preserves both
    /// tightness at p and validity on the whole polyhedron.
    pub fn supporting_normal_at(&self, point: &BoundaryPoint<F>) -> Result<Vec<F>> {
        let tight = self.tight_facets_at(&point.coords);
        if tight.is_empty() {
            return Err(Error::InvalidInput(
                "supporting normal needs a boundary point".into(),
            ));
        }
        let k = F::from_usize(tight.len()).expect("tight facet count fits in the scalar");
        let mut n = vec![F::zero(); self.dim];
        for &i in &tight {
            for (acc, c) in n.iter_mut().zip(&self.facets[i].normal) {
                *acc = acc.clone() + c.clone() / k.clone();
            }
        }
        Ok(n)
    }
}

/// Nonempty subsets of {0, …, n-1} of size ≤ cap in lexicographic sequence
/// order: {0}, {0,1}, {0,1,2}, …, {0,2}, …, {1}, {1,2}, ….
struct LexSubsets {
    n: usize,
    cap: usize,
    stack: Vec<usize>,
    primed: bool,
}

impl LexSubsets {
    fn new(n: usize, cap: usize) -> Self {
        LexSubsets {
            n,
            cap: cap.max(1),
            stack: Vec::new(),
            primed: false,
        }
    }
}

impl Iterator for LexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if !self.primed {
            if self.n == 0 {
                return None;
            }
            self.primed = true;
            self.stack.push(0);
            return Some(self.stack.clone());
        }
        let last = *self.stack.last()?;
        if self.stack.len() < self.cap && last + 1 < self.n {
            self.stack.push(last + 1);
            return Some(self.stack.clone());
        }
        loop {
            let last = self.stack.pop()?;
            if last + 1 < self.n {
                self.stack.push(last + 1);
                return Some(self.stack.clone());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact_int, exact_ratio};
    use crate::Rat;
    use num_traits::{One, Signed, ToPrimitive, Zero};
    use proptest::prelude::*;

    fn mi(entries: &[u32]) -> MultiIndex {
        MultiIndex::new(entries.to_vec())
    }

    fn poly(points: &[&[u32]]) -> NewtonPolyhedron<Rat> {
        let pts: Vec<MultiIndex> = points.iter().map(|p| mi(p)).collect();
        NewtonPolyhedron::build(&pts).expect("valid test polyhedron")
    }

    fn rat(n: i64, d: i64) -> Rat {
        exact_ratio(n, d)
    }

    fn rv(entries: &[i64]) -> Vec<Rat> {
        entries.iter().map(|&e| exact_int(e)).collect()
    }

    #[test]
    fn monomial_polyhedron_is_a_shifted_orthant() {
        let p = poly(&[&[1, 1, 1]]);
        assert_eq!(p.vertices(), &[mi(&[1, 1, 1])]);
        let normals: Vec<Vec<Rat>> = p.facets().iter().map(|f| f.normal.clone()).collect();
        assert_eq!(normals, vec![rv(&[0, 0, 1]), rv(&[0, 1, 0]), rv(&[1, 0, 0])]);
        assert!(p.facets().iter().all(|f| f.level == exact_int::<Rat>(1)));
    }

    #[test]
    fn two_vertex_phase_has_an_edge_facet() {
        // Support of x⁴yz + xyz⁴.
        let p = poly(&[&[4, 1, 1], &[1, 1, 4]]);
        assert_eq!(p.vertices(), &[mi(&[1, 1, 4]), mi(&[4, 1, 1])]);
        let edge = vec![rat(1, 5), rat(0, 1), rat(1, 5)];
        assert!(p.facets().iter().any(|f| f.normal == edge));
        assert_eq!(p.facets().len(), 4);
    }

    #[test]
    fn dominated_generators_are_not_vertices() {
        let p = poly(&[&[4, 1, 1], &[1, 1, 4], &[3, 2, 3]]);
        assert_eq!(p.generators().len(), 3);
        assert_eq!(p.vertices(), &[mi(&[1, 1, 4]), mi(&[4, 1, 1])]);
        // Facets agree with the polyhedron without the dominated point.
        assert_eq!(p.facets(), poly(&[&[4, 1, 1], &[1, 1, 4]]).facets());
    }

    #[test]
    fn duplicate_points_are_merged_before_vertex_filtering() {
        // With naive one-vs-rest membership a duplicated vertex would shadow
        // itself; deduplication has to happen first.
        let p = poly(&[&[2, 3], &[2, 3]]);
        assert_eq!(p.generators(), &[mi(&[2, 3])]);
        assert_eq!(p.vertices(), &[mi(&[2, 3])]);
    }

    #[test]
    fn zero_exponents_are_rejected() {
        let err = NewtonPolyhedron::<Rat>::build(&[mi(&[0, 1])]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn mixed_dimensions_are_rejected() {
        let err = NewtonPolyhedron::<Rat>::build(&[mi(&[1, 1]), mi(&[1, 1, 1])]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn distance_of_the_product_phase_is_one() {
        let p = poly(&[&[1, 1, 1]]);
        let (delta, bp) = p.newton_distance(&rv(&[1, 1, 1])).unwrap();
        assert_eq!(delta, exact_int::<Rat>(1));
        assert_eq!(bp.coords, rv(&[1, 1, 1]));
        assert_eq!(bp.tight_facets.len(), 3);
        assert_eq!(bp.codim, 3);
    }

    #[test]
    fn distance_scales_with_the_exponents() {
        let p = poly(&[&[2, 2, 2]]);
        let (delta, bp) = p.newton_distance(&rv(&[1, 1, 1])).unwrap();
        assert_eq!(delta, exact_int::<Rat>(2));
        assert_eq!(bp.codim, 3);
    }

    #[test]
    fn distance_picks_the_last_facet_crossed() {
        let p = poly(&[&[4, 1, 1], &[1, 1, 4]]);
        let (delta, bp) = p.newton_distance(&rv(&[1, 1, 1])).unwrap();
        assert_eq!(delta, rat(5, 2));
        assert_eq!(bp.coords, vec![rat(5, 2), rat(5, 2), rat(5, 2)]);
        // Only the edge facet x+z ≥ 5 is tight at (5/2, 5/2, 5/2).
        assert_eq!(bp.tight_facets.len(), 1);
        assert_eq!(bp.codim, 1);
    }

    #[test]
    fn distance_in_two_dimensions() {
        let p = poly(&[&[1, 2], &[3, 1]]);
        // Facets: x ≥ 1, y ≥ 1, x + 2y ≥ 5.
        let (delta, _) = p.newton_distance(&rv(&[1, 1])).unwrap();
        assert_eq!(delta, rat(5, 3));
    }

    #[test]
    fn distance_is_homogeneous_of_degree_minus_one() {
        let p = poly(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]);
        let v = vec![rat(1, 1), rat(3, 2), rat(2, 1)];
        let c = rat(7, 3);
        let cv: Vec<Rat> = v.iter().map(|x| x.clone() * c.clone()).collect();
        let (d1, _) = p.newton_distance(&v).unwrap();
        let (d2, _) = p.newton_distance(&cv).unwrap();
        assert_eq!(d2 * c, d1);
    }

    #[test]
    fn nonpositive_directions_are_rejected() {
        let p = poly(&[&[1, 1, 1]]);
        assert!(p.newton_distance(&rv(&[1, 0, 1])).is_err());
        assert!(p.newton_distance(&rv(&[1, -1, 1])).is_err());
        assert!(p.newton_distance(&rv(&[1, 1])).is_err());
    }

    #[test]
    fn monomial_has_a_single_compact_face() {
        let faces = poly(&[&[1, 1, 1]]).compact_faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].dim, 0);
        assert_eq!(faces[0].vertices, vec![mi(&[1, 1, 1])]);
        assert_eq!(faces[0].members, vec![mi(&[1, 1, 1])]);
    }

    #[test]
    fn edge_polyhedron_has_two_vertices_and_an_edge() {
        let faces = poly(&[&[4, 1, 1], &[1, 1, 4]]).compact_faces();
        let dims: Vec<usize> = faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 0, 1]);
        assert_eq!(faces[0].vertices, vec![mi(&[1, 1, 4])]);
        assert_eq!(faces[1].vertices, vec![mi(&[4, 1, 1])]);
        assert_eq!(faces[2].vertices, vec![mi(&[1, 1, 4]), mi(&[4, 1, 1])]);
        assert_eq!(faces[2].members, vec![mi(&[1, 1, 4]), mi(&[4, 1, 1])]);
    }

    #[test]
    fn triangle_has_seven_compact_faces() {
        let faces = poly(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]).compact_faces();
        let dims: Vec<usize> = faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 1, 1, 2]);
        let top = faces.last().unwrap();
        assert_eq!(top.vertices.len(), 3);
        assert_eq!(top.members.len(), 3);
    }

    #[test]
    fn degenerate_example_has_an_edge_through_both_monomials() {
        // Support of x²yz + xy²z.
        let faces = poly(&[&[2, 1, 1], &[1, 2, 1]]).compact_faces();
        let dims: Vec<usize> = faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![0, 0, 1]);
        assert_eq!(faces[2].members, vec![mi(&[1, 2, 1]), mi(&[2, 1, 1])]);
    }

    #[test]
    fn barycenter_decomposes_over_all_three_vertices() {
        let p = poly(&[&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]]);
        let (_, bp) = p.newton_distance(&rv(&[1, 1, 1])).unwrap();
        assert_eq!(bp.coords, vec![rat(4, 3), rat(4, 3), rat(4, 3)]);
        let dec = p.convex_decomposition(&bp).unwrap();
        assert_eq!(
            dec.vectors,
            vec![rv(&[1, 1, 2]), rv(&[1, 2, 1]), rv(&[2, 1, 1])]
        );
        assert_eq!(dec.coefficients, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
    }

    #[test]
    fn noncompact_minimal_face_gives_the_trivial_decomposition() {
        // At (5/2, 5/2, 5/2) only x+z ≥ 5 is tight and that facet is
        // unbounded in y, so the point decomposes only as itself.
        let p = poly(&[&[4, 1, 1], &[1, 1, 4]]);
        let (_, bp) = p.newton_distance(&rv(&[1, 1, 1])).unwrap();
        let dec = p.convex_decomposition(&bp).unwrap();
        assert_eq!(dec.vectors, vec![bp.coords.clone()]);
        assert_eq!(dec.coefficients, vec![exact_int::<Rat>(1)]);
    }

    #[test]
    fn edge_midpoint_decomposes_over_the_two_vertices() {
        let p = poly(&[&[4, 1, 1], &[1, 1, 4]]);
        let v = vec![rat(1, 1), rat(2, 5), rat(1, 1)];
        let (delta, bp) = p.newton_distance(&v).unwrap();
        assert_eq!(delta, rat(5, 2));
        assert_eq!(bp.coords, vec![rat(5, 2), rat(1, 1), rat(5, 2)]);
        let dec = p.convex_decomposition(&bp).unwrap();
        assert_eq!(dec.vectors, vec![rv(&[1, 1, 4]), rv(&[4, 1, 1])]);
        assert_eq!(dec.coefficients, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn vertex_boundary_point_decomposes_as_itself() {
        let p = poly(&[&[4, 1, 1], &[1, 1, 4]]);
        // Aim straight at the vertex (4,1,1): v proportional to it scaled to
        // reach at δ = 1 … any positive multiple works.
        let v = vec![rat(4, 1), rat(1, 1), rat(1, 1)];
        let (delta, bp) = p.newton_distance(&v).unwrap();
        assert_eq!(delta, exact_int::<Rat>(1));
        let dec = p.convex_decomposition(&bp).unwrap();
        assert_eq!(dec.vectors, vec![rv(&[4, 1, 1])]);
        assert_eq!(dec.coefficients, vec![exact_int::<Rat>(1)]);
    }

    #[test]
    fn interior_points_are_rejected_by_decomposition() {
        let p = poly(&[&[1, 1, 1]]);
        let inner = BoundaryPoint {
            coords: rv(&[2, 2, 2]),
            tight_facets: vec![],
            codim: 0,
        };
        assert!(p.convex_decomposition(&inner).is_err());
        let outer = BoundaryPoint {
            coords: vec![rat(1, 2), rat(1, 2), rat(1, 2)],
            tight_facets: vec![],
            codim: 0,
        };
        assert!(p.convex_decomposition(&outer).is_err());
    }

    #[test]
    fn supporting_normal_averages_the_tight_facets() {
        let p = poly(&[&[1, 1, 1]]);
        let (_, bp) = p.newton_distance(&rv(&[1, 1, 1])).unwrap();
        let n = p.supporting_normal_at(&bp).unwrap();
        assert_eq!(n, vec![rat(1, 3), rat(1, 3), rat(1, 3)]);
        // It supports the polyhedron at level 1.
        assert_eq!(dot(&n, &bp.coords), exact_int::<Rat>(1));
        for w in p.vertex_coords() {
            assert!(dot(&n, &w) >= exact_int::<Rat>(1));
        }
    }

    #[test]
    fn lex_subsets_enumerate_in_sequence_order() {
        let got: Vec<Vec<usize>> = LexSubsets::new(3, 3).collect();
        let expect: Vec<Vec<usize>> = vec![
            vec![0],
            vec![0, 1],
            vec![0, 1, 2],
            vec![0, 2],
            vec![1],
            vec![1, 2],
            vec![2],
        ];
        assert_eq!(got, expect);
        // The cap prunes deeper sequences but keeps the order.
        let capped: Vec<Vec<usize>> = LexSubsets::new(3, 2).collect();
        assert_eq!(
            capped,
            vec![vec![0], vec![0, 1], vec![0, 2], vec![1], vec![1, 2], vec![2]]
        );
    }

    #[test]
    fn distance_agrees_with_the_bisection_oracle() {
        let cases: Vec<(Vec<Vec<Rat>>, Vec<Rat>)> = vec![
            (vec![rv(&[4, 1, 1]), rv(&[1, 1, 4])], rv(&[1, 1, 1])),
            (vec![rv(&[2, 1, 1]), rv(&[1, 2, 1]), rv(&[1, 1, 2])], rv(&[1, 2, 3])),
            (vec![rv(&[1, 2]), rv(&[3, 1])], rv(&[2, 1])),
        ];
        for (gens, v) in cases {
            let mis: Vec<MultiIndex> = gens
                .iter()
                .map(|g| {
                    mi(&g.iter().map(|x| x.to_u32().unwrap()).collect::<Vec<u32>>())
                })
                .collect();
            let p = NewtonPolyhedron::<Rat>::build(&mis).unwrap();
            let (delta, _) = p.newton_distance(&v).unwrap();
            let approx = oracle::distance_by_bisection(&gens, &v, 50);
            let err = (approx - delta.clone()).abs();
            assert!(err <= delta * rat(1, 1 << 40));
        }
    }

    fn arb_points() -> impl Strategy<Value = Vec<MultiIndex>> {
        (2usize..=4).prop_flat_map(|d| {
            prop::collection::vec(prop::collection::vec(1u32..=9, d), 1..=6)
                .prop_map(|pts| pts.into_iter().map(MultiIndex::new).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn vertices_are_generators_and_span_the_hull(pts in arb_points()) {
            let p = NewtonPolyhedron::<Rat>::build(&pts).unwrap();
            let gens: std::collections::BTreeSet<_> = p.generators().iter().cloned().collect();
            for v in p.vertices() {
                prop_assert!(gens.contains(v));
            }
            // Every generator lies in the hull of the vertices alone.
            let vcs = p.vertex_coords();
            for g in p.coords_of(p.generators()) {
                prop_assert!(oracle::membership(&vcs, &g));
            }
        }

        #[test]
        fn every_facet_is_tight_on_some_generator(pts in arb_points()) {
            let p = NewtonPolyhedron::<Rat>::build(&pts).unwrap();
            let coords = p.coords_of(p.generators());
            for f in p.facets() {
                prop_assert!(coords.iter().all(|g| dot(&f.normal, g) >= f.level));
                prop_assert!(coords.iter().any(|g| dot(&f.normal, g) == f.level));
            }
        }

        #[test]
        fn distance_point_is_certified_by_the_membership_oracle(
            pts in arb_points(),
            vnum in prop::collection::vec(1i64..=9, 4),
        ) {
            let p = NewtonPolyhedron::<Rat>::build(&pts).unwrap();
            let v: Vec<Rat> = vnum[..p.dim()].iter().map(|&x| exact_int(x)).collect();
            let (delta, bp) = p.newton_distance(&v).unwrap();
            let gens = p.coords_of(p.generators());
            // δv is in the polyhedron…
            prop_assert!(oracle::membership(&gens, &bp.coords));
            // …and barely: pulling back by one part in 2^30 leaves it.
            let shrink = Rat::one() - rat(1, 1 << 30);
            let inside: Vec<Rat> = bp.coords.iter().map(|x| x.clone() * shrink.clone()).collect();
            prop_assert!(!oracle::membership(&gens, &inside));
            prop_assert!(delta > Rat::zero());
        }

        #[test]
        fn compact_face_members_satisfy_their_facets(pts in arb_points()) {
            let p = NewtonPolyhedron::<Rat>::build(&pts).unwrap();
            for face in p.compact_faces() {
                prop_assert!(!face.vertices.is_empty());
                prop_assert!(face.dim < p.dim());
                // Vertices of the face are members too.
                for v in &face.vertices {
                    prop_assert!(face.members.contains(v));
                }
            }
        }

        #[test]
        fn decomposition_reconstructs_the_boundary_point(
            pts in arb_points(),
            vnum in prop::collection::vec(1i64..=9, 4),
        ) {
            let p = NewtonPolyhedron::<Rat>::build(&pts).unwrap();
            let v: Vec<Rat> = vnum[..p.dim()].iter().map(|&x| exact_int(x)).collect();
            let (_, bp) = p.newton_distance(&v).unwrap();
            let dec = p.convex_decomposition(&bp).unwrap();
            prop_assert_eq!(dec.vectors.len(), dec.coefficients.len());
            let total = dec.coefficients.iter().fold(Rat::zero(), |a, b| a + b.clone());
            prop_assert_eq!(total, Rat::one());
            for t in &dec.coefficients {
                prop_assert!(*t > Rat::zero());
            }
            let mut rebuilt = vec![Rat::zero(); p.dim()];
            for (vecs, t) in dec.vectors.iter().zip(&dec.coefficients) {
                for (acc, x) in rebuilt.iter_mut().zip(vecs) {
                    *acc = acc.clone() + x.clone() * t.clone();
                }
            }
            prop_assert_eq!(rebuilt, bp.coords);
        }
    }
}

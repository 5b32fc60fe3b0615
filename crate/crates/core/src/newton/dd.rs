//! Facet enumeration for upward-closed hulls conv(points) + ℝ₊^d by the
//! double description method, run in exact arithmetic.
//!
//! The polyhedron is homogenized: points a become rays (1, a) and the
//! recession directions become rays (0, e_k) of a cone C ⊂ ℝ^{d+1}. The
//! extreme rays of the dual cone D = {y : y·v ≥ 0 for all generators v of C}
//! are exactly the facets of C: a dual ray y = (y₀, n) cuts the slice x₀ = 1
//! in the half-space n·x ≥ −y₀. Since every input point has all coordinates
//! ≥ 1 and n ≥ 0 is forced by the recession constraints, the level −y₀ is
//! strictly positive for every genuine facet; the single ray with n = 0 is
//! the artificial hyperplane x₀ ≥ 0 and is dropped.

use crate::scalar::Exact;

struct Ray<F> {
    v: Vec<F>,
    /// Tight-constraint bitmask over the constraints inserted so far.
    mask: u128,
}

fn dot<F: Exact>(a: &[F], b: &[F]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Divides a ray by the absolute value of its first nonzero entry, keeping
/// coordinates small and the representation canonical.
fn normalize<F: Exact>(v: &mut [F]) {
    if let Some(p) = v.iter().find(|x| !x.is_zero()) {
        let s = p.abs();
        for x in v.iter_mut() {
            *x = x.clone() / s.clone();
        }
    }
}

fn tight_mask<F: Exact>(v: &[F], constraints: &[Vec<F>]) -> u128 {
    let mut mask = 0u128;
    for (i, c) in constraints.iter().enumerate() {
        if dot(v, c).is_zero() {
            mask |= 1 << i;
        }
    }
    mask
}

/// Facet inequalities {x : n·x ≥ h} of conv(points) + ℝ₊^d, as (n, h) pairs
/// with n ≥ 0 componentwise and h > 0. Order is not specified; the caller
/// canonicalizes.
pub fn upward_hull_facets<F: Exact>(points: &[Vec<F>]) -> Vec<(Vec<F>, F)> {
    assert!(!points.is_empty(), "at least one generator required");
    let d = points[0].len();
    assert!(
        d + points.len() <= 128,
        "constraint count exceeds the 128-bit adjacency mask"
    );

    // Constraints on the dual cone = generators of the primal cone:
    // recession rays (0, e_k) first, then homogenized points (1, aⁱ).
    let mut constraints: Vec<Vec<F>> = Vec::with_capacity(d + points.len());
    for k in 0..d {
        let mut c = vec![F::zero(); d + 1];
        c[k + 1] = F::one();
        constraints.push(c);
    }
    for p in points {
        assert_eq!(p.len(), d, "ragged generator list");
        let mut c = Vec::with_capacity(d + 1);
        c.push(F::one());
        c.extend(p.iter().cloned());
        constraints.push(c);
    }

    // The dual of the cone spanned by the first point and all recession rays
    // is simplicial, with rays known in closed form: (−a¹_k, e_k) for each
    // axis and the artificial (1, 0).
    let nseed = d + 1; // constraints active at the start
    let mut rays: Vec<Ray<F>> = Vec::with_capacity(d + 1);
    for k in 0..d {
        let mut v = vec![F::zero(); d + 1];
        v[0] = -points[0][k].clone();
        v[k + 1] = F::one();
        rays.push(Ray { v, mask: 0 });
    }
    {
        let mut v = vec![F::zero(); d + 1];
        v[0] = F::one();
        rays.push(Ray { v, mask: 0 });
    }
    for r in rays.iter_mut() {
        r.mask = tight_mask(&r.v, &constraints[..nseed]);
    }

    for t in nseed..constraints.len() {
        let c = constraints[t].clone();
        let s: Vec<F> = rays.iter().map(|r| dot(&r.v, &c)).collect();
        if s.iter().all(|x| *x >= F::zero()) {
            // Constraint redundant for the current rays; just extend masks.
            for (r, si) in rays.iter_mut().zip(&s) {
                if si.is_zero() {
                    r.mask |= 1 << t;
                }
            }
            continue;
        }

        let plus: Vec<usize> = (0..rays.len()).filter(|&i| s[i] > F::zero()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| s[i] < F::zero()).collect();

        let mut fresh: Vec<Vec<F>> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                // Combinatorial adjacency: p and q span an edge iff no third
                // ray is tight on everything p and q are jointly tight on.
                let z = rays[p].mask & rays[q].mask;
                let blocked = (0..rays.len())
                    .any(|r| r != p && r != q && rays[r].mask & z == z);
                if blocked {
                    continue;
                }
                let mut v: Vec<F> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[q].v)
                    .map(|(vp, vq)| s[p].clone() * vq.clone() - s[q].clone() * vp.clone())
                    .collect();
                normalize(&mut v);
                fresh.push(v);
            }
        }

        let mut next: Vec<Ray<F>> = Vec::with_capacity(rays.len() + fresh.len());
        for (i, r) in rays.into_iter().enumerate() {
            if s[i] < F::zero() {
                continue;
            }
            let mut r = r;
            if s[i].is_zero() {
                r.mask |= 1 << t;
            }
            next.push(r);
        }
        for v in fresh {
            let mask = tight_mask(&v, &constraints[..=t]);
            next.push(Ray { v, mask });
        }
        rays = next;
    }

    let mut facets = Vec::new();
    for r in rays {
        let (head, normal) = r.v.split_first().expect("rays live in ℝ^{d+1}");
        if normal.iter().all(|x| x.is_zero()) {
            // The artificial facet x₀ ≥ 0 of the homogenization.
            continue;
        }
        debug_assert!(normal.iter().all(|x| *x >= F::zero()));
        let level = -head.clone();
        assert!(
            level > F::zero(),
            "facet level must be positive when all generators are ≥ 1"
        );
        facets.push((normal.to_vec(), level));
    }
    facets
}

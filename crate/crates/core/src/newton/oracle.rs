//! Slow reference routines, deliberately independent of the facet pipeline,
//! used by tests to cross-check the exact geometry.

use crate::scalar::Exact;

pub use super::lp::membership;

/// Newton distance along `v`, computed by exact bracketing and bisection on
/// the membership oracle alone. Returns the upper end of the final bracket,
/// which overestimates the true distance by at most a factor 1 + 2^(1-iters).
///
/// `generators` are the exponent points of the polyhedron (all entries ≥ 1)
/// and `v` must be strictly positive.
pub fn distance_by_bisection<F: Exact>(generators: &[Vec<F>], v: &[F], iters: u32) -> F {
    assert!(v.iter().all(|x| *x > F::zero()));
    let scaled = |t: &F| -> Vec<F> {
        v.iter().map(|vj| vj.clone() * t.clone()).collect::<Vec<F>>()
    };
    let mut hi = F::one();
    let mut guard = 0;
    while !membership(generators, &scaled(&hi)) {
        hi = hi.clone() + hi;
        guard += 1;
        assert!(guard < 64, "failed to bracket the Newton distance");
    }
    let mut lo = F::zero();
    let two = F::one() + F::one();
    for _ in 0..iters {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if membership(generators, &scaled(&mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

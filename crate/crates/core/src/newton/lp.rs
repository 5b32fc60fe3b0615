//! Exact phase-1 simplex, used as the vertex classifier and as the
//! independent membership oracle behind the geometric routines.

use crate::scalar::Exact;

/// Feasibility of {A·y = b, y ≥ 0}, decided by a phase-1 simplex with
/// Bland's rule in exact arithmetic (no tolerances, guaranteed termination).
pub fn feasible_eq<F: Exact>(a: &[Vec<F>], b: &[F]) -> bool {
    let mrows = a.len();
    assert_eq!(b.len(), mrows, "rhs length must match row count");
    if mrows == 0 {
        return true;
    }
    let nvars = a[0].len();
    let width = nvars + mrows + 1; // variables, artificials, rhs

    // Canonical tableau with b ≥ 0 and an artificial basis.
    let mut tab: Vec<Vec<F>> = Vec::with_capacity(mrows);
    for (r, row) in a.iter().enumerate() {
        assert_eq!(row.len(), nvars, "ragged constraint matrix");
        let flip = b[r] < F::zero();
        let mut t = Vec::with_capacity(width);
        for v in row {
            t.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..mrows {
            t.push(if k == r { F::one() } else { F::zero() });
        }
        t.push(if flip { -b[r].clone() } else { b[r].clone() });
        tab.push(t);
    }
    let mut basis: Vec<usize> = (nvars..nvars + mrows).collect();

    // Reduced-cost row for minimizing the sum of artificials: variables get
    // −Σ_r a_rj, artificials 0 (they are basic at cost 1).
    let mut obj = vec![F::zero(); width];
    for j in 0..width {
        let mut s = F::zero();
        for row in &tab {
            s = s + row[j].clone();
        }
        if j < nvars || j == width - 1 {
            obj[j] = -s;
        }
    }

    loop {
        // Bland: entering column is the smallest index with negative reduced cost.
        let Some(enter) = (0..nvars + mrows).find(|&j| obj[j] < F::zero()) else {
            break;
        };
        // Ratio test, ties broken by smallest basis variable (Bland).
        let mut leave: Option<usize> = None;
        for r in 0..mrows {
            if tab[r][enter] > F::zero() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let cand = tab[r][width - 1].clone() / tab[r][enter].clone();
                        let best = tab[l][width - 1].clone() / tab[l][enter].clone();
                        cand < best || (cand == best && basis[r] < basis[l])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
        }
        let Some(lr) = leave else {
            // Phase-1 objective is bounded below by zero, so an unbounded
            // direction is impossible; bail out conservatively.
            debug_assert!(false, "unbounded phase-1 simplex");
            return false;
        };

        // Pivot on (lr, enter).
        let pivot = tab[lr][enter].clone();
        for c in 0..width {
            tab[lr][c] = tab[lr][c].clone() / pivot.clone();
        }
        for r in 0..mrows {
            if r != lr && !tab[r][enter].is_zero() {
                let f = tab[r][enter].clone();
                for c in 0..width {
                    let sub = f.clone() * tab[lr][c].clone();
                    tab[r][c] = tab[r][c].clone() - sub;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for c in 0..width {
                let sub = f.clone() * tab[lr][c].clone();
                obj[c] = obj[c].clone() - sub;
            }
        }
        basis[lr] = enter;
    }

    // Feasible iff no artificial carries positive value at optimum.
    (0..mrows).all(|r| basis[r] < nvars || tab[r][width - 1].is_zero())
}

/// Membership of `point` in conv(generators) + ℝ₊^d: feasibility of
/// Σθ_i a^i + s = x, Σθ_i = 1, θ ≥ 0, s ≥ 0.
pub fn membership<F: Exact>(generators: &[Vec<F>], point: &[F]) -> bool {
    let d = point.len();
    let m = generators.len();
    if m == 0 {
        return false;
    }
    let mut a: Vec<Vec<F>> = Vec::with_capacity(d + 1);
    for k in 0..d {
        let mut row = Vec::with_capacity(m + d);
        for g in generators {
            row.push(g[k].clone());
        }
        for s in 0..d {
            row.push(if s == k { F::one() } else { F::zero() });
        }
        a.push(row);
    }
    let mut convex = vec![F::one(); m];
    convex.extend(std::iter::repeat(F::zero()).take(d));
    a.push(convex);

    let mut b: Vec<F> = point.to_vec();
    b.push(F::one());
    feasible_eq(&a, &b)
}

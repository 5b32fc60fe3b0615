//! Small exact-arithmetic linear algebra: rank and linear solves by fraction-
//! free-enough Gaussian elimination. Matrices here are tiny (at most d+1 ≤ 7
//! rows), so clarity beats asymptotics.

use crate::scalar::Exact;

/// Rank of the row set, computed by Gaussian elimination with exact pivots.
pub fn rank<F: Exact>(rows: &[Vec<F>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone() / m[r][col].clone();
            for c in col..ncols {
                let sub = f.clone() * m[r][c].clone();
                m[i][c] = m[i][c].clone() - sub;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves A·x = b exactly for a (possibly tall) system with `rows × cols`
/// matrix A. Returns the solution only when it exists and is unique, i.e.
/// A has full column rank and the system is consistent.
pub fn solve_unique<F: Exact>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let nrows = a.len();
    if nrows == 0 || b.len() != nrows {
        return None;
    }
    let ncols = a[0].len();
    // Augmented matrix [A | b].
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][col].clone();
        for c in col..=ncols {
            m[r][c] = m[r][c].clone() / pivot.clone();
        }
        for i in 0..nrows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..=ncols {
                    let sub = f.clone() * m[r][c].clone();
                    m[i][c] = m[i][c].clone() - sub;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }

    if pivot_cols.len() < ncols {
        return None; // rank-deficient: no unique solution
    }
    // Consistency: rows beyond the rank must have zero right-hand side.
    for row in m.iter().skip(r) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![F::zero(); ncols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = m[i][ncols].clone();
    }
    Some(x)
}

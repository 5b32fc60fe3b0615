//! Gauss–Legendre quadrature rules.
//!
//! Nodes are the roots of the Legendre polynomial `P_n`, found by Newton
//! iteration from the classical Chebyshev-based initial guess; weights are
//! `2 / ((1 - x^2) P_n'(x)^2)`.  An n-point rule integrates polynomials of
//! degree `2n - 1` exactly, which is what makes the cross-checks against
//! closed-form polynomial integrals in the tests exact to rounding.

/// `P_n(x)` and its derivative, by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    // Derivative identity: (1 - x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x)).
    let dp = n as f64 * (p0 - x * p1) / (1.0 - x * x);
    (p1, dp)
}

/// Nodes and weights of the n-point rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi's initial guess for the i-th root (counted from +1).
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = -p / d;
            x += dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // The middle node of an odd rule is exactly zero.
        nodes[n / 2] = 0.0;
        let (_, dp) = legendre(n, 0.0);
        weights[n / 2] = 2.0 / (dp * dp);
    }
    (nodes, weights)
}

/// The rule mapped to `[a, b]`: returns `(point, weight)` pairs.
pub fn on_interval(a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> Vec<(f64, f64)> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| (mid + half * x, half * w))
        .collect()
}

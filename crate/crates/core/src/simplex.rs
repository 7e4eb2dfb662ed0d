//! Phase-1 simplex for small linear feasibility problems `Aλ = b, λ ≥ 0`.
//!
//! Dense tableau with Bland's rule, which guarantees termination and makes
//! the pivot sequence deterministic. Sized for the stabilizer-polytope
//! membership problem (9 equalities, 12 unknowns); no attempt at sparsity.

use alloc::vec;
use alloc::vec::Vec;

const PIVOT_TOL: f64 = 1e-11;

/// Minimizes the sum of artificial variables for `Aλ = b, λ ≥ 0` and
/// returns the optimum. The system is feasible iff the optimum is ~0.
///
/// `a` is row-major m×n.
pub fn phase1_infeasibility(a: &[f64], m: usize, n: usize, b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), m * n);
    debug_assert_eq!(b.len(), m);
    let cols = n + m;
    let mut t = vec![0.0f64; m * cols];
    let mut rhs = vec![0.0f64; m];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i * cols + j] = sign * a[i * n + j];
        }
        t[i * cols + n + i] = 1.0;
        rhs[i] = sign * b[i];
    }
    let mut basis: Vec<usize> = (n..cols).collect();

    loop {
        // Reduced cost z_j - c_j with phase-1 costs (0 on original columns,
        // 1 on artificials); positive means entering j improves.
        let mut enter = None;
        for j in 0..cols {
            let cj = if j >= n { 1.0 } else { 0.0 };
            let zj: f64 = (0..m)
                .filter(|&i| basis[i] >= n)
                .map(|i| t[i * cols + j])
                .sum();
            if zj - cj > PIVOT_TOL {
                enter = Some(j); // Bland: first improving index
                break;
            }
        }
        let Some(enter) = enter else { break };

        // Ratio test; ties broken by smallest basis index (Bland).
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..m {
            let aie = t[i * cols + enter];
            if aie > PIVOT_TOL {
                let ratio = rhs[i] / aie;
                let cand = (ratio, basis[i], i);
                if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                    best = Some(cand);
                }
            }
        }
        let Some((_, _, piv)) = best else { break };

        let p = t[piv * cols + enter];
        for j in 0..cols {
            t[piv * cols + j] /= p;
        }
        rhs[piv] /= p;
        for i in 0..m {
            if i != piv {
                let f = t[i * cols + enter];
                if f != 0.0 {
                    for j in 0..cols {
                        t[i * cols + j] -= f * t[piv * cols + j];
                    }
                    rhs[i] -= f * rhs[piv];
                }
            }
        }
        basis[piv] = enter;
    }

    (0..m)
        .filter(|&i| basis[i] >= n)
        .map(|i| rhs[i])
        .sum::<f64>()
        .max(0.0)
}

//! Dense primal simplex for small LPs in the form
//! `maximize c.x  subject to  A x <= b, x >= 0` with `b >= 0`.
//!
//! The slack basis is immediately feasible, and Bland's rule keeps the
//! pivoting finite. Used as an independent route for checking transport
//! optima via duality; instances are tiny.

use crate::error::{GraphError, Result};

const EPS: f64 = 1e-11;

pub(crate) fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<f64> {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|&bi| bi >= -EPS), "rhs must be nonnegative");

    // Tableau: columns [x_0..x_{n-1}, s_0..s_{m-1} | rhs]; last row is the
    // objective in reduced form (negated costs).
    let cols = n + m + 1;
    let mut t = vec![vec![0.0f64; cols]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][cols - 1] = b[i].max(0.0);
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let max_pivots = 1000 + 50 * (n + m) * (n + m);
    for _ in 0..max_pivots {
        // Bland: smallest-index column with negative reduced cost.
        let Some(entering) = (0..n + m).find(|&j| t[m][j] < -EPS) else {
            return Ok(t[m][cols - 1]);
        };
        // Ratio test; ties by smallest basis variable.
        let mut pivot_row = None;
        let mut best_ratio = f64::INFINITY;
        for i in 0..m {
            if t[i][entering] > EPS {
                let ratio = t[i][cols - 1] / t[i][entering];
                let better = ratio < best_ratio - EPS
                    || (ratio < best_ratio + EPS
                        && pivot_row.map_or(true, |p: usize| basis[i] < basis[p]));
                if better {
                    best_ratio = ratio;
                    pivot_row = Some(i);
                }
            }
        }
        let Some(r) = pivot_row else {
            return Err(GraphError::TransportFailure("unbounded dual LP".into()));
        };
        let piv = t[r][entering];
        for v in t[r].iter_mut() {
            *v /= piv;
        }
        for i in 0..=m {
            if i != r && t[i][entering].abs() > 0.0 {
                let factor = t[i][entering];
                for j in 0..cols {
                    t[i][j] -= factor * t[r][j];
                }
            }
        }
        basis[r] = entering;
    }
    Err(GraphError::TransportFailure(
        "simplex pivot limit exceeded".into(),
    ))
}

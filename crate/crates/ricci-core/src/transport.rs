//! Exact optimal transport on small dense instances via the transportation
//! simplex (northwest-corner start, MODI pivoting).

use crate::error::{GraphError, Result};

const RC_TOL: f64 = 1e-11;

/// Solves `min sum x_ij c_ij` subject to row sums = `supply`, column sums =
/// `demand`, `x >= 0`. Supplies and demands must balance. Returns the dense
/// plan and its cost.
pub(crate) fn solve_transportation(
    supply: &[f64],
    demand: &[f64],
    cost: &[Vec<f64>],
) -> Result<(Vec<Vec<f64>>, f64)> {
    let nm = supply.len();
    let nn = demand.len();
    assert!(nm > 0 && nn > 0, "empty marginals");
    debug_assert!(
        (supply.iter().sum::<f64>() - demand.iter().sum::<f64>()).abs() < 1e-9,
        "unbalanced transportation problem"
    );

    let mut x = vec![vec![0.0f64; nn]; nm];
    let mut in_basis = vec![vec![false; nn]; nm];
    let mut basis: Vec<(usize, usize)> = Vec::with_capacity(nm + nn - 1);

    // Northwest corner: walks from (0,0) to (nm-1,nn-1) in nm+nn-1 steps,
    // possibly leaving degenerate zero-mass cells in the basis.
    let mut rem_s = supply.to_vec();
    let mut rem_d = demand.to_vec();
    let (mut i, mut j) = (0, 0);
    loop {
        let t = rem_s[i].min(rem_d[j]).max(0.0);
        x[i][j] = t;
        in_basis[i][j] = true;
        basis.push((i, j));
        rem_s[i] -= t;
        rem_d[j] -= t;
        if i == nm - 1 && j == nn - 1 {
            break;
        }
        if (rem_s[i] <= rem_d[j] && i < nm - 1) || j == nn - 1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    debug_assert_eq!(basis.len(), nm + nn - 1);

    let max_pivots = 1000 + 50 * nm * nn;
    let bland_after = max_pivots / 2;
    for pivot in 0..max_pivots + 1 {
        if pivot == max_pivots {
            return Err(GraphError::TransportFailure(format!(
                "pivot limit {max_pivots} exceeded on {nm}x{nn} instance"
            )));
        }
        // Potentials from the basis spanning tree: u_i + v_j = c_ij.
        let mut u = vec![f64::NAN; nm];
        let mut v = vec![f64::NAN; nn];
        let mut row_cells: Vec<Vec<usize>> = vec![Vec::new(); nm];
        let mut col_cells: Vec<Vec<usize>> = vec![Vec::new(); nn];
        for (bi, &(r, c)) in basis.iter().enumerate() {
            row_cells[r].push(bi);
            col_cells[c].push(bi);
        }
        u[0] = 0.0;
        let mut stack: Vec<(bool, usize)> = vec![(true, 0)]; // (is_row, index)
        while let Some((is_row, idx)) = stack.pop() {
            let cells = if is_row { &row_cells[idx] } else { &col_cells[idx] };
            for &bi in cells {
                let (r, c) = basis[bi];
                if is_row && v[c].is_nan() {
                    v[c] = cost[r][c] - u[r];
                    stack.push((false, c));
                } else if !is_row && u[r].is_nan() {
                    u[r] = cost[r][c] - v[c];
                    stack.push((true, r));
                }
            }
        }
        debug_assert!(u.iter().all(|t| !t.is_nan()) && v.iter().all(|t| !t.is_nan()));

        // Entering cell: most-negative reduced cost at first, Bland's rule
        // (first negative) if pivoting drags on.
        let mut entering: Option<(usize, usize)> = None;
        let mut best = -RC_TOL;
        'scan: for r in 0..nm {
            for c in 0..nn {
                if in_basis[r][c] {
                    continue;
                }
                let rc = cost[r][c] - u[r] - v[c];
                if pivot >= bland_after {
                    if rc < -RC_TOL {
                        entering = Some((r, c));
                        break 'scan;
                    }
                } else if rc < best {
                    best = rc;
                    entering = Some((r, c));
                }
            }
        }
        let Some((er, ec)) = entering else { break };

        // Unique cycle: path from row `er` to col `ec` through the basis tree.
        let cycle = basis_path(&basis, &row_cells, &col_cells, nm, nn, er, ec);

        // The cycle alternates +/- starting at the entering cell (+); the
        // first path cell shares the entering row, so even positions lose.
        let mut theta = f64::INFINITY;
        let mut leaving = usize::MAX;
        for (pos, &bi) in cycle.iter().enumerate() {
            if pos % 2 == 1 {
                continue;
            }
            let (r, c) = basis[bi];
            if x[r][c] < theta - 1e-15
                || (x[r][c] < theta + 1e-15
                    && (leaving == usize::MAX || basis[bi] < basis[leaving]))
            {
                theta = x[r][c];
                leaving = bi;
            }
        }
        debug_assert!(leaving != usize::MAX);
        x[er][ec] += theta;
        for (pos, &bi) in cycle.iter().enumerate() {
            let (r, c) = basis[bi];
            if pos % 2 == 0 {
                x[r][c] = (x[r][c] - theta).max(0.0);
            } else {
                x[r][c] += theta;
            }
        }
        let (lr, lc) = basis[leaving];
        in_basis[lr][lc] = false;
        in_basis[er][ec] = true;
        basis[leaving] = (er, ec);
    }

    let total: f64 = basis.iter().map(|&(r, c)| x[r][c] * cost[r][c]).sum();
    Ok((x, total))
}

/// Basis cells forming the tree path from row `er` to col `ec`, alternating
/// row/col moves. Position 0 is the first step away from the entering cell.
fn basis_path(
    basis: &[(usize, usize)],
    row_cells: &[Vec<usize>],
    col_cells: &[Vec<usize>],
    nm: usize,
    _nn: usize,
    er: usize,
    ec: usize,
) -> Vec<usize> {
    // Tree nodes: rows 0..nm, cols nm..nm+nn. BFS from row `er` to col `ec`.
    let row_node = |r: usize| r;
    let col_node = |c: usize| nm + c;
    let total = nm + _nn;
    let mut prev_cell = vec![usize::MAX; total];
    let mut prev_node = vec![usize::MAX; total];
    let mut seen = vec![false; total];
    let start = row_node(er);
    let target = col_node(ec);
    seen[start] = true;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        if node == target {
            break;
        }
        let cells = if node < nm {
            &row_cells[node]
        } else {
            &col_cells[node - nm]
        };
        for &bi in cells {
            let (r, c) = basis[bi];
            let next = if node < nm { col_node(c) } else { row_node(r) };
            if !seen[next] {
                seen[next] = true;
                prev_cell[next] = bi;
                prev_node[next] = node;
                queue.push_back(next);
            }
        }
    }
    debug_assert!(seen[target], "basis must span rows and columns");
    let mut path = Vec::new();
    let mut node = target;
    while node != start {
        path.push(prev_cell[node]);
        node = prev_node[node];
    }
    path.reverse();
    path
}

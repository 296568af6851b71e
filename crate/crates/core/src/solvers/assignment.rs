//! Exact maximum-weight perfect assignment via the O(n^3) potential /
//! augmenting-path method, used to round doubly stochastic matrices.

use ndarray::Array2;

use crate::perm::Permutation;

/// Minimum-cost perfect assignment; returns `row -> col`. Ties resolve
/// toward the smaller column index (scan order).
pub fn min_cost_assignment(cost: &Array2<f64>) -> Vec<usize> {
    let n = cost.nrows();
    assert_eq!(n, cost.ncols(), "cost matrix must be square");
    // 1-indexed potentials with a virtual 0 column, the classical scheme.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut match_col = vec![0usize; n + 1]; // col -> row (1-based, 0 = free)
    for i in 1..=n {
        match_col[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = match_col[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[[i0 - 1, j - 1]] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[match_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if match_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            match_col[j0] = match_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[match_col[j] - 1] = j - 1;
    }
    assignment
}

/// Maximum-weight perfect assignment on `weights`, as a permutation
/// (`pi(i)` = column assigned to row `i`).
pub fn max_weight_assignment(weights: &Array2<f64>) -> Permutation {
    let cost = weights.mapv(|w| -w);
    Permutation::from_zero_based(min_cost_assignment(&cost))
        .expect("assignment is a bijection by construction")
}

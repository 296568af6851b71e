//! Alternating row/column normalization onto the Birkhoff polytope.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonnegative matrix with row and column sums within `residual` of 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoublyStochastic {
    entries: Array2<f64>,
    residual: f64,
    iterations: usize,
}

impl DoublyStochastic {
    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }
}

fn max_sum_residual(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        worst = worst.max((m.row(i).sum() - 1.0).abs());
        worst = worst.max((m.column(i).sum() - 1.0).abs());
    }
    worst
}

/// Alternately rescales rows and columns of a strictly positive matrix until
/// every row and column sum is within `tol` of 1, or `iters` passes elapse.
pub fn sinkhorn_normalize(m: &Array2<f64>, iters: usize, tol: f64) -> Result<DoublyStochastic> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    for &x in m.iter() {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::NonPositiveEntry(x));
        }
    }
    let mut s = m.clone();
    let mut used = 0;
    let mut residual = max_sum_residual(&s);
    for it in 1..=iters {
        for i in 0..n {
            let sum = s.row(i).sum();
            s.row_mut(i).mapv_inplace(|x| x / sum);
        }
        for j in 0..n {
            let sum = s.column(j).sum();
            s.column_mut(j).mapv_inplace(|x| x / sum);
        }
        used = it;
        residual = max_sum_residual(&s);
        if residual <= tol {
            break;
        }
    }
    Ok(DoublyStochastic {
        entries: s,
        residual,
        iterations: used,
    })
}

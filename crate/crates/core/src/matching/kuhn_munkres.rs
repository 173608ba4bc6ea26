//! Kuhn-Munkres (Hungarian) assignment solver.
//!
//! Shortest augmenting path formulation with row/column potentials. Rows are
//! added one at a time; each insertion runs a Dijkstra-like scan over the
//! columns, so an `R x C` problem (`R <= C`) costs `O(R^2 C)`. This is the
//! same optimum as padding to `C x C` with zero-weight dummy rows, without
//! paying for the dummies.

use super::WeightMatrix;
use crate::{Error, Result};

/// Optimal row-to-column matching and its total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentSolution {
    /// `columns[r]` is the column matched to row `r`.
    pub columns: Vec<usize>,
    pub value: f64,
}

/// Maximum-weight matching that covers every row.
pub fn solve_assignment(weights: &WeightMatrix) -> Result<AssignmentSolution> {
    let (rows, cols) = (weights.rows(), weights.cols());
    if rows > cols {
        return Err(Error::MoreRowsThanColumns { rows, cols });
    }
    for r in 0..rows {
        if let Some(c) = weights.row(r).iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFinite { row: r, col: c });
        }
    }
    if rows == 0 {
        return Ok(AssignmentSolution { columns: Vec::new(), value: 0.0 });
    }

    // Minimise (top - w) >= 0; same argmax as maximising w.
    let top = weights.as_slice().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cost = |r: usize, c: usize| top - weights.get(r, c);
    let columns = min_cost_rows(rows, cols, cost);
    let value = columns.iter().enumerate().map(|(r, &c)| weights.get(r, c)).sum();
    Ok(AssignmentSolution { columns, value })
}

/// Minimum-cost assignment for `rows <= cols`; index 0 of the internal arrays
/// is a sentinel column.
fn min_cost_rows(rows: usize, cols: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    let mut u = vec![0.0f64; rows + 1];
    let mut v = vec![0.0f64; cols + 1];
    // row_of[j]: 1-based row matched to 1-based column j, 0 when free
    let mut row_of = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    let mut minv = vec![f64::INFINITY; cols + 1];
    let mut used = vec![false; cols + 1];

    for i in 1..=rows {
        row_of[0] = i;
        let mut j0 = 0usize;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        // augment along the alternating path back to the sentinel
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut columns = vec![0usize; rows];
    for j in 1..=cols {
        if row_of[j] != 0 {
            columns[row_of[j] - 1] = j - 1;
        }
    }
    columns
}

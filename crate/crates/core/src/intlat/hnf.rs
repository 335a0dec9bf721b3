use super::matrix::{neg, IntMatrix};
use crate::error::Result;

/// Column-style Hermite normal form of the lattice spanned by the columns of `a`.
///
/// Returns a basis as a list of columns `h_0, ..., h_{r-1}` in lower echelon
/// form: the pivot (first nonzero) row of `h_j` strictly increases with `j`,
/// each pivot is positive, and in every pivot row the entries of the earlier
/// columns lie in `[0, pivot)`. The result depends only on the lattice.
pub fn column_hnf(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut col = 0;

    for row in 0..m {
        if col == n {
            break;
        }
        // gcd-reduce h[row][col..] into h[row][col]
        loop {
            let pivot = (col..n).filter(|&j| h.get(row, j) != 0).min_by_key(|&j| (h.get(row, j).unsigned_abs(), j));
            let Some(pj) = pivot else { break };
            h.swap_cols(col, pj);
            let p = h.get(row, col);
            let mut done = true;
            for j in col + 1..n {
                let q = h.get(row, j) / p;
                if q != 0 {
                    h.add_col_multiple(j, col, neg(q)?)?;
                }
                if h.get(row, j) != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        let p = h.get(row, col);
        if p == 0 {
            continue;
        }
        if p < 0 {
            h.negate_col(col)?;
        }
        let p = h.get(row, col);
        for l in 0..col {
            let q = h.get(row, l).div_euclid(p);
            if q != 0 {
                h.add_col_multiple(l, col, neg(q)?)?;
            }
        }
        col += 1;
    }
    Ok((0..col).map(|j| h.column(j)).collect())
}

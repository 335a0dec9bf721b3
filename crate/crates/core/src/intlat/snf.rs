//! Smith normal form with unimodular transforms.
//!
//! The working matrix is driven to diagonal form by alternating row and
//! column Hermite passes, then the diagonal is repaired into a divisibility
//! chain with 2x2 gcd/lcm transforms. Inside each pass the pivot is the
//! nonzero entry of minimal absolute value, ties going to the smallest index.
//! Finally the rows of `U` and columns of `V` that act on the nonzero part of
//! `D` are size-reduced against the kernel rows/columns, which leaves
//! `U * A * V` unchanged. Every step is deterministic.
//!
//! Arithmetic runs in checked `i128`; the transforms are returned as `i64`
//! matrices, and anything that does not fit is reported as [`Error::Overflow`].

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `U * A * V = D`, with `U`, `V` unimodular and `D` diagonal, nonnegative,
/// and `d_i | d_{i+1}` along the nonzero prefix of the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&x| x != 0).count()
    }
}

type Rows = Vec<Vec<i128>>;

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

/// `target -= q * source`, entrywise.
fn sub_multiple(target: &mut [i128], source: &[i128], q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (t, &s) in target.iter_mut().zip(source) {
        *t = ck(t.checked_sub(ck(q.checked_mul(s))?))?;
    }
    Ok(())
}

fn negate(row: &mut [i128]) -> Result<()> {
    for x in row {
        *x = ck(x.checked_neg())?;
    }
    Ok(())
}

fn identity(n: usize) -> Rows {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn transpose(a: &Rows, cols: usize) -> Rows {
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

fn is_diagonal(a: &Rows) -> bool {
    a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| i == j || x == 0))
}

/// Row-style Hermite pass: `a` becomes upper echelon with positive pivots
/// and entries above each pivot in `[0, pivot)`; `u` receives the same row
/// operations.
fn row_hermite(a: &mut Rows, u: &mut Rows) -> Result<()> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let pivot = (r..m).filter(|&i| a[i][c] != 0).min_by_key(|&i| (a[i][c].unsigned_abs(), i));
            let Some(pi) = pivot else { break };
            a.swap(r, pi);
            u.swap(r, pi);
            let p = a[r][c];
            let mut clean = true;
            for i in r + 1..m {
                let q = a[i][c] / p;
                if q != 0 {
                    let (head, tail) = a.split_at_mut(i);
                    sub_multiple(&mut tail[0], &head[r], q)?;
                    let (head, tail) = u.split_at_mut(i);
                    sub_multiple(&mut tail[0], &head[r], q)?;
                }
                clean &= a[i][c] == 0;
            }
            if clean {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            negate(&mut a[r])?;
            negate(&mut u[r])?;
        }
        let p = a[r][c];
        for i in 0..r {
            let q = a[i][c].div_euclid(p);
            if q != 0 {
                let (head, tail) = a.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], q)?;
                let (head, tail) = u.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], q)?;
            }
        }
        r += 1;
    }
    Ok(())
}

fn gcd_ext(a: i128, b: i128) -> Result<(i128, i128, i128)> {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, ck(r0.checked_sub(ck(q.checked_mul(r1))?))?);
        (s0, s1) = (s1, ck(s0.checked_sub(ck(q.checked_mul(s1))?))?);
        (t0, t1) = (t1, ck(t0.checked_sub(ck(q.checked_mul(t1))?))?);
    }
    Ok((r0, s0, t0))
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (&x, &y)| ck(acc.checked_add(ck(x.checked_mul(y))?)))
}

/// Nearest integer to `x / y` for `y > 0`, halves rounding down.
fn round_div(x: i128, y: i128) -> i128 {
    let q = x.div_euclid(y);
    let r = x.rem_euclid(y);
    if 2 * r > y {
        q + 1
    } else {
        q
    }
}

/// Size-reduces `rows` against the lattice spanned by `basis`.
fn reduce_against(rows: &mut [Vec<i128>], basis: &[Vec<i128>]) -> Result<()> {
    const MAX_SWEEPS: usize = 64;
    let norms: Vec<i128> = basis.iter().map(|k| dot(k, k)).collect::<Result<_>>()?;
    for _ in 0..MAX_SWEEPS {
        let mut changed = false;
        for (k, &kk) in basis.iter().zip(&norms) {
            for row in rows.iter_mut() {
                let q = round_div(dot(row, k)?, kk);
                if q != 0 {
                    sub_multiple(row, k, q)?;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(())
}

fn to_matrix(rows: &Rows, cols: usize) -> Result<IntMatrix> {
    let data =
        rows.iter().flatten().map(|&x| i64::try_from(x).map_err(|_| Error::Overflow)).collect::<Result<Vec<i64>>>()?;
    IntMatrix::new(rows.len(), cols, data)
}

pub fn smith_normal_form(a: &IntMatrix) -> Result<SnfDecomposition> {
    let (m, n) = (a.rows(), a.cols());
    let mut d: Rows = a.to_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect();
    let mut u = identity(m);
    // V is accumulated transposed so column operations become row operations
    let mut vt = identity(n);

    loop {
        row_hermite(&mut d, &mut u)?;
        if is_diagonal(&d) {
            break;
        }
        let mut dt = transpose(&d, n);
        row_hermite(&mut dt, &mut vt)?;
        d = transpose(&dt, m);
        if is_diagonal(&d) {
            break;
        }
    }

    let r = (0..m.min(n)).take_while(|&i| d[i][i] != 0).count();
    debug_assert!((r..m.min(n)).all(|i| d[i][i] == 0));
    for i in 0..r {
        for j in i + 1..r {
            let (x, y) = (d[i][i], d[j][j]);
            if y % x == 0 {
                continue;
            }
            // [s t; -y/g x/g] diag(x, y) [1 -t*y/g; 1 s*x/g] = diag(g, x*y/g)
            let (g, s, t) = gcd_ext(x, y)?;
            let (yg, xg) = (y / g, x / g);
            let (ui, uj) = (u[i].clone(), u[j].clone());
            for c in 0..m {
                u[i][c] = ck(ck(s.checked_mul(ui[c]))?.checked_add(ck(t.checked_mul(uj[c]))?))?;
                u[j][c] = ck(ck(xg.checked_mul(uj[c]))?.checked_sub(ck(yg.checked_mul(ui[c]))?))?;
            }
            let (vi, vj) = (vt[i].clone(), vt[j].clone());
            let (tyg, sxg) = (ck(t.checked_mul(yg))?, ck(s.checked_mul(xg))?);
            for c in 0..n {
                vt[i][c] = ck(vi[c].checked_add(vj[c]))?;
                vt[j][c] = ck(ck(sxg.checked_mul(vj[c]))?.checked_sub(ck(tyg.checked_mul(vi[c]))?))?;
            }
            d[i][i] = g;
            d[j][j] = ck(xg.checked_mul(y))?;
        }
    }

    let (u_live, u_kernel) = u.split_at_mut(r);
    reduce_against(u_live, u_kernel)?;
    let (v_live, v_kernel) = vt.split_at_mut(r);
    reduce_against(v_live, v_kernel)?;

    Ok(SnfDecomposition { u: to_matrix(&u, m)?, d: to_matrix(&d, n)?, v: to_matrix(&transpose(&vt, n), n)? })
}

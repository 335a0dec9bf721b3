//! Slow, independent verifiers for the lattice and action computations.
//!
//! Nothing here calls into the Smith/Hermite machinery of [`crate::intlat`];
//! the only shared pieces are the plain data types. These functions exist to
//! cross-check the main code paths in tests and are not used by them.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::intlat::{AbelianGroupInvariants, IntMatrix};

fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Panics if the matrix is not square or an intermediate leaves `i128`.
pub fn determinant(m: &IntMatrix) -> i128 {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a: Vec<Vec<i128>> = m.to_rows().iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .expect("determinant oracle left i128 range");
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

const PRIMES: [i128; 9] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
    2_305_843_009_213_693_951,
    1_152_921_504_606_846_883,
    576_460_752_303_423_433,
    288_230_376_151_711_717,
    144_115_188_075_855_859,
    72_057_594_037_927_931,
];

fn pow_mod(mut b: i128, mut e: i128, p: i128) -> i128 {
    let mut acc = 1i128;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn det_mod(m: &IntMatrix, p: i128) -> i128 {
    let n = m.rows();
    let mut a: Vec<Vec<i128>> =
        m.to_rows().iter().map(|r| r.iter().map(|&x| i128::from(x).rem_euclid(p)).collect()).collect();
    let mut det = 1i128;
    for k in 0..n {
        let Some(s) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if s != k {
            a.swap(k, s);
            det = (p - det) % p;
        }
        det = det * a[k][k] % p;
        let inv = pow_mod(a[k][k], p - 2, p);
        for i in k + 1..n {
            let f = a[i][k] * inv % p;
            if f == 0 {
                continue;
            }
            let pivot_row = a[k].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(k) {
                *x = (*x - f * y % p).rem_euclid(p);
            }
        }
    }
    det
}

/// `|det m| == 1`, decided by determinants modulo large primes whose product
/// exceeds twice the Hadamard bound. Works for entries far beyond the range
/// of [`determinant`].
pub fn is_unimodular(m: &IntMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let log_hadamard: f64 =
        (0..m.rows()).map(|i| m.row(i).iter().map(|&x| (x as f64).powi(2)).sum::<f64>().sqrt().max(1.0).log2()).sum();
    let mut covered = 0.0;
    let mut sign = None;
    for &p in &PRIMES {
        let d = det_mod(m, p);
        let s = if d == 1 {
            1
        } else if d == p - 1 {
            -1
        } else {
            return false;
        };
        if *sign.get_or_insert(s) != s {
            return false;
        }
        covered += (p as f64).log2();
        if covered > log_hadamard + 2.0 {
            return true;
        }
    }
    panic!("unimodularity oracle needs more primes for this matrix");
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k x k` minors of the matrix with the given rows, taking every choice of `k` columns.
fn maximal_minors(rows: &[Vec<i64>]) -> Vec<i128> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    subsets(n, k)
        .into_iter()
        .map(|cols| {
            let sub: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
            determinant(&IntMatrix::from_rows(&sub).expect("nonempty minor"))
        })
        .collect()
}

/// Outcome of [`coset_enumeration`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CosetResult {
    Group(AbelianGroupInvariants),
    Inconclusive,
}

const COSET_BOX_LIMIT: i128 = 2_000_000;

fn prime_factors(mut n: i128) -> Vec<i128> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Structure of `Z^n / L`, with `L` spanned by the columns, found by listing cosets.
///
/// Let `M` be the smallest nonzero `n x n` minor of the generators in
/// absolute value; `M * Z^n` lies in `L`, so the cosets live in the box
/// `(Z/M)^n`. The image of `L` there is found by closure under adding
/// generators, every box point is labelled with its coset, and the group
/// structure is read off from how many cosets each `p^k` kills. Returns
/// `Inconclusive` for rank-deficient input, `n > 3`, a box that is too large,
/// or a quotient with more than `bound` elements.
pub fn coset_enumeration(generators: &IntMatrix, bound: i64) -> CosetResult {
    let n = generators.rows();
    if n > 3 {
        return CosetResult::Inconclusive;
    }
    let columns = generators.columns();
    let rows: Vec<Vec<i64>> = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let modulus = if columns.len() < n {
        0
    } else {
        maximal_minors(&rows).into_iter().map(i128::abs).filter(|&d| d != 0).min().unwrap_or(0)
    };
    if modulus == 0 {
        return CosetResult::Inconclusive;
    }
    let size = match modulus.checked_pow(n as u32) {
        Some(s) if s <= COSET_BOX_LIMIT => s as usize,
        _ => return CosetResult::Inconclusive,
    };

    let m = modulus;
    // points of the box as fixed arrays; coordinates past n stay zero
    let encode = |p: &[i128; 3]| p[..n].iter().fold(0usize, |acc, &x| acc * m as usize + x.rem_euclid(m) as usize);
    let decode = |mut idx: usize| {
        let mut p = [0i128; 3];
        for slot in p[..n].iter_mut().rev() {
            *slot = (idx % m as usize) as i128;
            idx /= m as usize;
        }
        p
    };
    let add = |a: usize, b: &[i128; 3]| {
        let pa = decode(a);
        encode(&[pa[0] + b[0], pa[1] + b[1], pa[2] + b[2]])
    };

    let gens: Vec<[i128; 3]> = columns
        .iter()
        .map(|c| {
            let mut g = [0i128; 3];
            for (slot, &x) in g.iter_mut().zip(c) {
                *slot = i128::from(x);
            }
            g
        })
        .collect();
    let mut in_sub = vec![false; size];
    let mut subgroup = vec![0usize];
    in_sub[subgroup[0]] = true;
    let mut frontier = subgroup.clone();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = add(x, g);
            if !in_sub[y] {
                in_sub[y] = true;
                subgroup.push(y);
                frontier.push(y);
            }
        }
    }
    let order = size / subgroup.len();
    if order as i128 > i128::from(bound) {
        return CosetResult::Inconclusive;
    }

    let mut label = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for p in 0..size {
        if label[p] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(p);
        let pv = decode(p);
        for &h in &subgroup {
            label[add(h, &pv)] = id;
        }
    }
    debug_assert_eq!(reps.len(), order);

    // |G[k]|: cosets c with k * c = 0
    let killed_by = |k: i128| {
        reps.iter()
            .filter(|&&r| {
                let p = decode(r);
                in_sub[encode(&[p[0] * k, p[1] * k, p[2] * k])]
            })
            .count() as i128
    };

    let mut per_prime: Vec<(i128, Vec<u32>)> = Vec::new();
    for p in prime_factors(order as i128) {
        // c_k = log_p |G[p^k]| = sum_i min(k, e_i)
        let mut logs = vec![0u32];
        let mut pk = 1i128;
        loop {
            pk *= p;
            let mut count = killed_by(pk);
            let mut l = 0;
            while count > 1 {
                count /= p;
                l += 1;
            }
            if l == *logs.last().unwrap() {
                break;
            }
            logs.push(l);
        }
        // number of cyclic p-factors with exponent >= k is c_k - c_{k-1}
        let ge: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let count = ge.first().copied().unwrap_or(0) as usize;
        let mut exps: Vec<u32> = (0..count).map(|i| ge.iter().filter(|&&c| c as usize > i).count() as u32).collect();
        exps.sort_unstable();
        per_prime.push((p, exps));
    }
    let width = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let factors: Vec<i64> = (0..width)
        .map(|slot| {
            per_prime
                .iter()
                .map(|(p, exps)| {
                    let pad = width - exps.len();
                    if slot < pad {
                        1
                    } else {
                        p.pow(exps[slot - pad])
                    }
                })
                .product::<i128>() as i64
        })
        .collect();
    CosetResult::Group(AbelianGroupInvariants::new(&factors, 0))
}

type Q = Ratio<i128>;

/// Reduced row echelon form over the rationals, with the pivot columns.
fn rref(rows: &[Vec<i64>]) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut a: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from(i128::from(x))).collect()).collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let lead = a[r][c];
        for x in a[r].iter_mut() {
            *x /= lead;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    (a, pivots)
}

/// Rational rank of a list of integer vectors.
pub fn rational_rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rref(vectors).1.len()
}

/// A rational basis of `{x : A x = 0}` from Gaussian elimination with exact
/// fractions, one vector per free column, cleared to primitive integer
/// vectors with positive first nonzero entry.
pub fn kernel_by_elimination(a: &IntMatrix) -> Vec<Vec<i64>> {
    let (r, pivots) = rref(&a.to_rows());
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); n];
            x[f] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -r[row][f];
            }
            let lcm = x.iter().fold(1i128, |l, q| l.lcm(q.denom()));
            let ints: Vec<i128> = x.iter().map(|q| (q * lcm).to_integer()).collect();
            let g = ints.iter().fold(0, |g, &v| gcd(g, v));
            let sign = if ints.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) { -1 } else { 1 };
            ints.iter().map(|&v| (sign * v / g) as i64).collect()
        })
        .collect()
}

/// Whether `candidate` is a basis of the full integer kernel lattice of `a`.
///
/// Checks that every candidate vector is annihilated by `a`, that the
/// candidates and the elimination basis span the same rational space with
/// the same dimension, and that the candidates span a saturated lattice (the
/// gcd of their maximal minors is 1). Together these force the candidate
/// lattice to equal `ker(a) ∩ Z^n`, which contains every elimination vector.
pub fn kernel_lattices_coincide(a: &IntMatrix, candidate: &[Vec<i64>]) -> bool {
    let reference = kernel_by_elimination(a);
    if candidate.len() != reference.len() {
        return false;
    }
    if candidate.is_empty() {
        return true;
    }
    let annihilated = candidate.iter().all(|x| {
        x.len() == a.cols()
            && (0..a.rows())
                .all(|i| a.row(i).iter().zip(x).map(|(&p, &q)| i128::from(p) * i128::from(q)).sum::<i128>() == 0)
    });
    if !annihilated || rational_rank(candidate) != candidate.len() {
        return false;
    }
    let mut joint = candidate.to_vec();
    joint.extend(reference.iter().cloned());
    if rational_rank(&joint) != candidate.len() {
        return false;
    }
    maximal_minors(candidate).into_iter().fold(0, gcd) == 1
}

fn permutations3() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

fn units(r: i64) -> Vec<i64> {
    if r == 1 {
        return vec![0];
    }
    (1..r).filter(|&m| gcd(i128::from(m), i128::from(r)) == 1).collect()
}

/// Whether `m * e1 + c * (1, 1, 1) ≡ π(e2) (mod r)` for some unit `m`,
/// shift `c` and coordinate permutation `π`, by exhaustive search.
pub fn action_equivalence_search(r: i64, e1: [i64; 3], e2: [i64; 3]) -> bool {
    assert!(r >= 1);
    for m in units(r) {
        for c in 0..r {
            let t: Vec<i64> = e1.iter().map(|&e| (m * e + c).rem_euclid(r)).collect();
            for pi in permutations3() {
                if (0..3).all(|i| t[i] == e2[pi[i]].rem_euclid(r)) {
                    return true;
                }
            }
        }
    }
    false
}

/// Smallest `a` in `1..=r` such that some unit `m` and shift `c` carry the
/// exponents to `(0, a + 1, a)` mod `r`, coordinate order fixed. Forms where
/// `a` or `a + 1` shares a factor with `r` are not accepted.
pub fn p2_normal_form_search(r: i64, e: [i64; 3]) -> Option<i64> {
    let mut best = None;
    for m in units(r) {
        for c in 0..r {
            let t: Vec<i64> = e.iter().map(|&x| (m * x + c).rem_euclid(r)).collect();
            if t[0] == 0 && (t[2] + 1).rem_euclid(r) == t[1] {
                let a = if t[2] == 0 { r } else { t[2] };
                let coprime = |x: i64| r == 1 || gcd(i128::from(x), i128::from(r)) == 1;
                if !coprime(a) || !coprime(a + 1) {
                    continue;
                }
                best = Some(best.map_or(a, |b: i64| b.min(a)));
            }
        }
    }
    best
}

/// Iterates "if `d > 1` divides every `a_j` with `j != i` and is coprime to
/// `a_i`, divide those `a_j` by `d`" to a fixed point, after removing the
/// global gcd.
pub fn fletcher_wellform(a: &[i64]) -> Vec<i64> {
    assert!(a.iter().all(|&x| x >= 1));
    let mut w: Vec<i128> = a.iter().map(|&x| i128::from(x)).collect();
    let g = w.iter().fold(0, |g, &x| gcd(g, x));
    w.iter_mut().for_each(|x| *x /= g);
    loop {
        let mut changed = false;
        for i in 0..w.len() {
            let d = w.iter().enumerate().filter(|&(j, _)| j != i).fold(0, |g, (_, &x)| gcd(g, x));
            if d > 1 && gcd(d, w[i]) == 1 {
                for (j, x) in w.iter_mut().enumerate() {
                    if j != i {
                        *x /= d;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            return w.into_iter().map(|x| x as i64).collect();
        }
    }
}

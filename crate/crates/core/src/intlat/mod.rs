//! Exact integer linear algebra: gcds, Smith and Hermite normal forms,
//! integer kernels, and invariants of lattice quotients `Z^n / L`.

mod hnf;
mod matrix;
mod snf;

use std::fmt;

pub use hnf::column_hnf;
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfDecomposition};

pub(crate) use matrix::{mul, neg, sub};

use crate::error::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    // only gcd(i64::MIN, 0) or gcd(i64::MIN, i64::MIN) can exceed i64::MAX
    i64::try_from(a).unwrap_or(i64::MAX)
}

/// Nonnegative gcd of all entries; zero iff every entry is zero.
pub fn gcd_vector(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, sub(r0, mul(q, r1)?)?);
        (s0, s1) = (s1, sub(s0, mul(q, s1)?)?);
        (t0, t1) = (t1, sub(t0, mul(q, t1)?)?);
    }
    if r0 < 0 {
        Ok((neg(r0)?, neg(s0)?, neg(t0)?))
    } else {
        Ok((r0, s0, t0))
    }
}

/// Inverse of `x` modulo `r`, as a residue in `0..r`, or `None` if `x` is not a unit.
pub fn mod_inverse(x: i64, r: i64) -> Option<i64> {
    let (g, s, _) = extended_gcd(x.rem_euclid(r), r).ok()?;
    (g == 1).then(|| s.rem_euclid(r))
}

pub fn primitivize(v: &[i64]) -> Result<Vec<i64>> {
    let g = gcd_vector(v);
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

pub fn is_primitive(v: &[i64]) -> bool {
    gcd_vector(v) == 1
}

/// A finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`
/// with `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianGroupInvariants {
    torsion: Vec<i64>,
    free_rank: usize,
}

impl AbelianGroupInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Builds the group from invariant factors; entries equal to 1 are dropped.
    ///
    /// Panics if the remaining factors are not a divisibility chain of integers > 1.
    pub fn new(factors: &[i64], free_rank: usize) -> Self {
        let torsion: Vec<i64> = factors.iter().copied().filter(|&t| t != 1).collect();
        assert!(torsion.iter().all(|&t| t > 1), "invariant factors must be positive: {factors:?}");
        assert!(
            torsion.windows(2).all(|w| w[1] % w[0] == 0),
            "invariant factors must form a divisibility chain: {factors:?}"
        );
        Self { torsion, free_rank }
    }

    pub fn cyclic(order: i64) -> Self {
        Self::new(&[order], 0)
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn order(&self) -> Result<LatticeIndex> {
        if self.free_rank > 0 {
            return Ok(LatticeIndex::Infinite);
        }
        self.torsion.iter().try_fold(1i64, |acc, &t| mul(acc, t)).map(LatticeIndex::Finite)
    }
}

impl fmt::Display for AbelianGroupInvariants {
    /// `trivial`, `Z/3`, `Z/2 x Z/6`, `Z^2 x Z/4`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" x "))
    }
}

/// Index of a sublattice: finite, or infinite when the rank drops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeIndex {
    Finite(i64),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(self) -> Option<i64> {
        match self {
            LatticeIndex::Finite(k) => Some(k),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(k) => write!(f, "{k}"),
            LatticeIndex::Infinite => write!(f, "infinite"),
        }
    }
}

pub fn rank(a: &IntMatrix) -> Result<usize> {
    Ok(smith_normal_form(a)?.rank())
}

/// Invariants of `Z^n / L`, where `n = generators.rows()` and `L` is the
/// span of the columns.
pub fn quotient_invariants(generators: &IntMatrix) -> Result<AbelianGroupInvariants> {
    let snf = smith_normal_form(generators)?;
    let r = snf.rank();
    let diag = snf.diagonal();
    Ok(AbelianGroupInvariants::new(&diag[..r], generators.rows() - r))
}

/// Same as [`quotient_invariants`] but accepts an empty generator list.
pub fn quotient_invariants_of_columns<C: AsRef<[i64]>>(n: usize, columns: &[C]) -> Result<AbelianGroupInvariants> {
    if columns.is_empty() {
        return Ok(AbelianGroupInvariants::new(&[], n));
    }
    quotient_invariants(&IntMatrix::from_columns(columns)?)
}

pub fn sublattice_index(generators: &IntMatrix) -> Result<LatticeIndex> {
    quotient_invariants(generators)?.order()
}

/// A basis of the lattice `{x in Z^cols : A x = 0}`.
///
/// Vectors are primitive, have a positive first nonzero entry, and are sorted
/// lexicographically. The basis is the Hermite basis of the kernel, so it
/// depends only on the kernel lattice.
pub fn integer_kernel(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let snf = smith_normal_form(a)?;
    let r = snf.rank();
    let n = a.cols();
    if r == n {
        return Ok(Vec::new());
    }
    let raw: Vec<Vec<i64>> = (r..n).map(|j| snf.v.column(j)).collect();
    let mut basis = column_hnf(&IntMatrix::from_columns(&raw)?)?;
    for b in &mut basis {
        debug_assert!(is_primitive(b));
        if b.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            for x in b.iter_mut() {
                *x = neg(*x)?;
            }
        }
    }
    basis.sort();
    Ok(basis)
}

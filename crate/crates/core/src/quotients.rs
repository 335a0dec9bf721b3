//! Finite group actions on projective space.
//!
//! A cyclic action `ε · x_i = ε^{e_i} x_i` of `μ_r` on `P^n` corresponds to
//! extending `Z^{n+1}` by the vector `(1/r)(e_0, ..., e_n)`. In the plane,
//! every action that is free in codimension 1 can be brought to the shape
//! `(0, a + 1, a)`, and the quotient `P^2 / μ_r` is the fwps with rays
//! `(1, 0), (a, r), (-1 - a, -r)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat::{extended_gcd, gcd, gcd_vector, mod_inverse, mul, neg, sub};
use crate::par::{self, Execution};
use crate::pi11::universal_cover;
use crate::toric::{validate_fwps, FwpsFan, WeightVector};

fn check_modulus(r: i64) -> Result<()> {
    if r < 1 {
        return Err(Error::InvalidModulus(r));
    }
    Ok(())
}

fn mul_mod(x: i64, y: i64, r: i64) -> i64 {
    (i128::from(x) * i128::from(y)).rem_euclid(i128::from(r)) as i64
}

fn sub_mod(x: i64, y: i64, r: i64) -> i64 {
    (i128::from(x) - i128::from(y)).rem_euclid(i128::from(r)) as i64
}

/// `μ_r` acting on homogeneous coordinates by `ε · x_i = ε^{exponents[i]} x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiagonalAction {
    r: i64,
    exponents: Vec<i64>,
}

impl DiagonalAction {
    /// Exponents are stored as least nonnegative residues.
    pub fn new(r: i64, exponents: &[i64]) -> Result<Self> {
        check_modulus(r)?;
        Ok(Self { r, exponents: exponents.iter().map(|e| e.rem_euclid(r)).collect() })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// The same group acting through the generator `ε^m`.
    pub fn scaled(&self, m: i64) -> Self {
        let exponents = self.exponents.iter().map(|&e| mul_mod(e, m, self.r)).collect();
        Self { r: self.r, exponents }
    }
}

impl fmt::Display for DiagonalAction {
    /// `1/7 (0, 3, 5)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.exponents.iter().map(i64::to_string).collect();
        write!(f, "1/{} ({})", self.r, e.join(", "))
    }
}

/// The plane action `(z_0 : ε^{a+1} z_1 : ε^a z_2)` of `μ_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct P2ActionNormalForm {
    pub r: i64,
    pub a: i64,
}

impl P2ActionNormalForm {
    /// Requires `r >= 1`, `a` in `1..=r` and `gcd(a, r) = gcd(a + 1, r) = 1`.
    pub fn new(r: i64, a: i64) -> Result<Self> {
        check_modulus(r)?;
        let coprime = |x: i64| gcd(x, r) == 1;
        if !(1..=r).contains(&a) || !coprime(a) || !coprime(a + 1) {
            return Err(Error::InvalidNormalForm { r, a });
        }
        Ok(Self { r, a })
    }

    pub fn action(&self) -> DiagonalAction {
        DiagonalAction { r: self.r, exponents: vec![0, (self.a + 1) % self.r, self.a % self.r] }
    }
}

impl fmt::Display for P2ActionNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r = {}, a = {}", self.r, self.a)
    }
}

/// `P(a_0, ..., a_n) = P^n / (μ_{a_0} × ... × μ_{a_n})`, where the `i`-th
/// factor multiplies coordinate `i` by a primitive `a_i`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductQuotientPresentation {
    pub group_orders: Vec<i64>,
}

impl ProductQuotientPresentation {
    /// One generator per coordinate, acting on that coordinate alone.
    pub fn generators(&self) -> Vec<DiagonalAction> {
        let n = self.group_orders.len();
        self.group_orders
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let mut e = vec![0; n];
                e[i] = 1 % r;
                DiagonalAction { r, exponents: e }
            })
            .collect()
    }

    /// Generators of nontrivial factors only.
    pub fn nontrivial_generators(&self) -> Vec<DiagonalAction> {
        self.generators().into_iter().filter(|g| g.r > 1).collect()
    }

    pub fn order(&self) -> Result<i64> {
        self.group_orders.iter().try_fold(1, |acc, &a| mul(acc, a))
    }

    pub fn is_trivial(&self) -> bool {
        self.group_orders.iter().all(|&a| a == 1)
    }
}

pub fn wps_as_pn_quotient(a: &WeightVector) -> ProductQuotientPresentation {
    ProductQuotientPresentation { group_orders: a.as_slice().to_vec() }
}

fn check_extension(r: i64, numerators: &[i64]) -> Result<()> {
    check_modulus(r)?;
    let g = gcd(gcd_vector(numerators), r);
    if g != 1 {
        return Err(Error::DegenerateExtension { gcd: g });
    }
    Ok(())
}

/// The action whose kernel of `T → T / μ_r` corresponds to adjoining
/// `(1/r)(numerators)` to `Z^{n+1}`.
pub fn action_from_extension(r: i64, numerators: &[i64]) -> Result<DiagonalAction> {
    check_extension(r, numerators)?;
    DiagonalAction::new(r, numerators)
}

/// Inverse of [`action_from_extension`]: `(r, numerators)` with numerators reduced mod `r`.
pub fn extension_from_action(action: &DiagonalAction) -> Result<(i64, Vec<i64>)> {
    check_extension(action.r, &action.exponents)?;
    Ok((action.r, action.exponents.clone()))
}

/// Whether two actions adjoin the same lattice to `Z^{n+1}`, i.e. whether
/// one numerator vector is a unit multiple of the other modulo `r`. This is
/// the case exactly when the two actions differ by the choice of generator.
pub fn same_extension(x: &DiagonalAction, y: &DiagonalAction) -> Result<bool> {
    extension_from_action(x)?;
    extension_from_action(y)?;
    if x.r != y.r || x.exponents.len() != y.exponents.len() {
        return Ok(false);
    }
    let r = x.r;
    Ok((1..=r).filter(|&m| gcd(m, r) == 1).any(|m| x.scaled(m) == *y))
}

/// Normal form of a plane action that is free outside finitely many points.
///
/// With the coordinate order fixed, `m · e + c · (1, 1, 1) = (0, a + 1, a)`
/// forces `m = (e_1 - e_2)^{-1}` and `a = m (e_2 - e_0)` mod `r`, so the
/// form is unique. `a` is reported in `1..=r`; for `r = 1` that is `a = 1`.
pub fn normalize_p2_action(r: i64, exponents: &[i64]) -> Result<P2ActionNormalForm> {
    check_modulus(r)?;
    let &[e0, e1, e2] = exponents else {
        return Err(Error::DimensionMismatch { expected: 3, found: exponents.len() });
    };
    for (x, y) in [(e1, e0), (e2, e0), (e1, e2)] {
        let difference = sub_mod(x, y, r);
        if gcd(difference, r) != 1 {
            return Err(Error::NotFreeInCodim1 { r, difference });
        }
    }
    let m = mod_inverse(sub_mod(e1, e2, r), r).expect("difference checked to be a unit");
    let a = mul_mod(m, sub_mod(e2, e0, r), r);
    P2ActionNormalForm::new(r, if a == 0 { r } else { a })
}

/// The fan of `P^2 / μ_r` for the action `(0, a + 1, a)`: rays
/// `(1, 0), (a, r), (-1 - a, -r)` in this order.
pub fn fwps_from_p2_action(nf: &P2ActionNormalForm) -> Result<FwpsFan> {
    let (r, a) = (nf.r, nf.a);
    let last = vec![sub(-1, a)?, neg(r)?];
    validate_fwps(&[vec![1, 0], vec![a, r], last])
}

/// Recognizes a 2-dimensional fwps covered by `P^2` as `P^2 / μ_r`.
///
/// A unimodular change of basis sends the first ray to `(1, 0)` and the second
/// to `(x, r)` with `r > 0`; a shear then makes `x = a` with `a` in `1..=r`,
/// which is the shape produced by [`fwps_from_p2_action`].
pub fn classify_p2_quotient(fan: &FwpsFan) -> Result<P2ActionNormalForm> {
    if fan.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, found: fan.dim() });
    }
    let cover = universal_cover(fan)?;
    if cover.cover_weights.as_slice() != [1, 1, 1] {
        return Err(Error::CoverNotP2 { weights: cover.cover_weights.as_slice().to_vec() });
    }
    let rays = fan.ray_vectors();
    let (p, q) = (rays[0][0], rays[0][1]);
    let (g, s, t) = extended_gcd(p, q)?;
    debug_assert_eq!(g, 1, "rays are primitive");
    // [[s, t], [-q, p]] has determinant 1 and sends (p, q) to (1, 0)
    let (u, v) = (rays[1][0], rays[1][1]);
    let x = i128::from(s) * i128::from(u) + i128::from(t) * i128::from(v);
    let y = (i128::from(p) * i128::from(v) - i128::from(q) * i128::from(u)).abs();
    let r = i64::try_from(y).map_err(|_| Error::Overflow)?;
    debug_assert_eq!(r, cover.index);
    let a = x.rem_euclid(y) as i64;
    let a = if a == 0 { r } else { a };
    normalize_p2_action(r, &[0, a + 1, a])
}

/// One entry of the sweep over plane quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P2QuotientRecord {
    pub r: i64,
    pub a: i64,
    pub rays: Vec<Vec<i64>>,
    pub index: i64,
}

/// All normal forms with `r <= max_r`, sorted by `(r, a)`, each with its fan
/// and cover index. Every record is checked to classify back to itself.
pub fn enumerate_p2_quotients(max_r: i64, execution: Execution) -> Result<Vec<P2QuotientRecord>> {
    check_modulus(max_r)?;
    let forms: Vec<P2ActionNormalForm> =
        (1..=max_r).flat_map(|r| (1..=r).filter_map(move |a| P2ActionNormalForm::new(r, a).ok())).collect();
    par::map(&forms, execution, |nf| {
        let fan = fwps_from_p2_action(nf)?;
        let index = universal_cover(&fan)?.index;
        let back = classify_p2_quotient(&fan)?;
        assert_eq!(back, *nf, "plane quotient failed to classify back to itself");
        Ok(P2QuotientRecord { r: nf.r, a: nf.a, rays: fan.ray_vectors(), index })
    })
    .into_iter()
    .collect()
}

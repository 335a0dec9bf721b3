//! Fans, fake weighted projective space fans, and weight vectors.
//!
//! A fake weighted projective space of dimension `n` is given by `n + 1`
//! primitive rays `v_0, ..., v_n` in `Z^n` that span `R^n` and admit a
//! relation `a_0 v_0 + ... + a_n v_n = 0` with every `a_i > 0`. Its maximal
//! cones are the `n + 1` cones spanned by all rays but one. Ray order is
//! significant: weights are always reported positionally.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlat::{gcd_vector, integer_kernel, is_primitive, primitivize, rank, smith_normal_form, IntMatrix};

/// A primitive lattice vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Ray(Vec<i64>);

impl Ray {
    pub fn new(v: Vec<i64>) -> Result<Self> {
        if is_primitive(&v) {
            Ok(Self(v))
        } else if v.iter().all(|&x| x == 0) {
            Err(Error::ZeroVector)
        } else {
            Err(Error::NotPrimitive(0))
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl AsRef<[i64]> for Ray {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

fn check_rays(dim: usize, rays: &[Vec<i64>]) -> Result<Vec<Ray>> {
    for r in rays {
        if r.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
        }
    }
    rays.iter().enumerate().map(|(i, r)| Ray::new(r.clone()).map_err(|_| Error::NotPrimitive(i))).collect()
}

/// A fan, recorded by its rays and optionally its maximal cones.
///
/// Completeness and simpliciality are not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Ray>,
    max_cones: Option<Vec<Vec<usize>>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let rays = check_rays(dim, &rays)?;
        for i in 0..rays.len() {
            if let Some(j) = (i + 1..rays.len()).find(|&j| rays[i] == rays[j]) {
                return Err(Error::DuplicateRay(i, j));
            }
        }
        if let Some(cones) = &max_cones {
            for (c, cone) in cones.iter().enumerate() {
                if let Some(&index) = cone.iter().find(|&&i| i >= rays.len()) {
                    return Err(Error::InvalidConeIndex { cone: c, index, rays: rays.len() });
                }
            }
        }
        Ok(Self { dim, rays, max_cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn max_cones(&self) -> Option<&[Vec<usize>]> {
        self.max_cones.as_deref()
    }
}

/// Positive weights `a_0, ..., a_n` with `gcd = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    /// Validates positivity and divides out the global gcd, so `(2, 2, 2)`
    /// becomes `(1, 1, 1)`.
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::TooFewWeights);
        }
        if let Some(i) = weights.iter().position(|&a| a < 1) {
            return Err(Error::NonPositiveWeight(i));
        }
        let g = gcd_vector(&weights);
        Ok(Self(weights.into_iter().map(|a| a / g).collect()))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every `n` of the `n + 1` entries are coprime.
    pub fn is_well_formed(&self) -> bool {
        (0..self.0.len()).all(|skip| {
            let rest: Vec<i64> = self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &a)| a).collect();
            gcd_vector(&rest) == 1
        })
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A validated fake weighted projective space fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FwpsFan {
    dim: usize,
    rays: Vec<Ray>,
    weights: WeightVector,
}

impl FwpsFan {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray_vectors(&self) -> Vec<Vec<i64>> {
        self.rays.iter().map(|r| r.0.clone()).collect()
    }

    /// The `dim x (dim + 1)` matrix whose columns are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.rays).expect("validated fan has a nonempty ray matrix")
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    /// The maximal cones `cone(v_0, .., v_{i-1}, v_{i+1}, .., v_n)`, as index sets.
    pub fn max_cones(&self) -> Vec<Vec<usize>> {
        let n = self.rays.len();
        (0..n).map(|skip| (0..n).filter(|&i| i != skip).collect()).collect()
    }

    pub fn to_fan(&self) -> Fan {
        Fan { dim: self.dim, rays: self.rays.clone(), max_cones: Some(self.max_cones()) }
    }
}

impl From<&FwpsFan> for Fan {
    fn from(f: &FwpsFan) -> Self {
        f.to_fan()
    }
}

/// Checks the fwps conditions and caches the positive relation.
///
/// Checks run in order: shape, ray count, primitivity, spanning, positivity.
pub fn validate_fwps(rays: &[Vec<i64>]) -> Result<FwpsFan> {
    let dim = rays.first().map_or(0, Vec::len);
    if dim == 0 {
        return Err(Error::WrongCount { dim, count: rays.len() });
    }
    if let Some(bad) = rays.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.len() });
    }
    if rays.len() != dim + 1 {
        return Err(Error::WrongCount { dim, count: rays.len() });
    }
    let rays = check_rays(dim, rays)?;
    let m = IntMatrix::from_columns(&rays)?;
    let r = rank(&m)?;
    if r < dim {
        return Err(Error::NotSpanning { rank: r, dim });
    }
    // rank dim with dim + 1 columns: the kernel is a single primitive vector
    // whose first nonzero entry is positive
    let kernel = integer_kernel(&m)?;
    debug_assert_eq!(kernel.len(), 1);
    let relation = kernel.into_iter().next().ok_or(Error::NoPositiveRelation)?;
    if relation.iter().any(|&a| a <= 0) {
        return Err(Error::NoPositiveRelation);
    }
    Ok(FwpsFan { dim, rays, weights: WeightVector(relation) })
}

/// The primitive positive relation `sum a_i v_i = 0`, in ray order.
pub fn weights_from_rays(fan: &FwpsFan) -> WeightVector {
    fan.weights.clone()
}

/// A genuine weighted projective space fan for the given weights.
///
/// `Z^{n+1} / Z a` is identified with `Z^n` through the left transform of the
/// Smith form of the column `a`, which carries `a` to `e_0`; the rays are the
/// images of the standard basis with the first coordinate dropped, made
/// primitive. The rays generate `Z^n`.
pub fn fan_from_weights(a: &WeightVector) -> Result<FwpsFan> {
    let column = IntMatrix::from_columns(&[a.as_slice()])?;
    let snf = smith_normal_form(&column)?;
    let n = a.len() - 1;
    let rays: Vec<Vec<i64>> = (0..=n).map(|i| primitivize(&snf.u.column(i)[1..])).collect::<Result<_>>()?;
    validate_fwps(&rays)
}

/// Canonical well-formed representative of `P(a)`.
pub fn wellform_weights(a: &[i64]) -> Result<WeightVector> {
    let w = WeightVector::new(a.to_vec())?;
    Ok(weights_from_rays(&fan_from_weights(&w)?))
}

/// `#rays - dim` for a complete simplicial fan.
pub fn picard_rank(fan: &Fan) -> Result<usize> {
    let rays = fan.rays().len();
    rays.checked_sub(fan.dim()).ok_or(Error::Underflow { rays, dim: fan.dim() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlat::{sublattice_index, LatticeIndex};
    use proptest::prelude::*;

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let f = validate_fwps(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(f.weights(), &w(&[1, 1, 1]));
        let f = validate_fwps(&[vec![1, -1], vec![1, 2], vec![-2, -1]]).unwrap();
        assert_eq!(f.weights(), &w(&[1, 1, 1]));
        assert_eq!(validate_fwps(&[vec![1, 0], vec![0, 1], vec![-1, 0]]), Err(Error::NoPositiveRelation));
    }

    #[test]
    fn validate_error_paths() {
        assert_eq!(validate_fwps(&[vec![1, 0], vec![0, 1]]), Err(Error::WrongCount { dim: 2, count: 2 }));
        assert_eq!(validate_fwps(&[vec![2, 0], vec![0, 1], vec![-1, -1]]), Err(Error::NotPrimitive(0)));
        assert_eq!(validate_fwps(&[vec![1, 0], vec![-1, 0], vec![1, 0]]), Err(Error::NotSpanning { rank: 1, dim: 2 }));
        assert_eq!(
            validate_fwps(&[vec![1, 0], vec![0, 1, 2], vec![-1, -1]]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
        assert_eq!(validate_fwps(&[]), Err(Error::WrongCount { dim: 0, count: 0 }));
        assert_eq!(validate_fwps(&[vec![0, 0], vec![0, 1], vec![-1, -1]]), Err(Error::NotPrimitive(0)));
    }

    #[test]
    fn weights_examples() {
        let f = validate_fwps(&[vec![1, 0], vec![0, 1], vec![-1, -2]]).unwrap();
        assert_eq!(weights_from_rays(&f), w(&[1, 2, 1]));
        let f = validate_fwps(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(weights_from_rays(&f), w(&[1, 1, 1]));
        // rays as printed in the worked example: not summing to zero
        let f = validate_fwps(&[vec![1, -1], vec![1, 2], vec![-2, 1]]).unwrap();
        assert_eq!(weights_from_rays(&f), w(&[5, 1, 3]));
    }

    #[test]
    fn projective_line() {
        let f = validate_fwps(&[vec![1], vec![-1]]).unwrap();
        assert_eq!(f.weights(), &w(&[1, 1]));
        let g = fan_from_weights(&w(&[1, 1])).unwrap();
        assert_eq!(g.weights(), &w(&[1, 1]));
        assert_eq!(validate_fwps(&[vec![1], vec![1]]), Err(Error::NoPositiveRelation));
    }

    #[test]
    fn fan_from_weights_examples() {
        let p2 = fan_from_weights(&w(&[1, 1, 1])).unwrap();
        assert_eq!(p2.weights(), &w(&[1, 1, 1]));
        assert_eq!(sublattice_index(&p2.ray_matrix()).unwrap(), LatticeIndex::Finite(1));
        // pinned output of the deterministic construction
        assert_eq!(p2.ray_vectors(), vec![vec![-1, -1], vec![1, 0], vec![0, 1]]);

        let f = fan_from_weights(&w(&[1, 1, 2])).unwrap();
        assert_eq!(f.weights(), &w(&[1, 1, 2]));
        assert_eq!(sublattice_index(&f.ray_matrix()).unwrap(), LatticeIndex::Finite(1));

        let scaled = fan_from_weights(&WeightVector::new(vec![2, 2, 2]).unwrap()).unwrap();
        assert_eq!(scaled, p2);
    }

    #[test]
    fn wellform_examples() {
        assert_eq!(wellform_weights(&[2, 2, 2]).unwrap(), w(&[1, 1, 1]));
        assert_eq!(wellform_weights(&[1, 1, 1]).unwrap(), w(&[1, 1, 1]));
        assert_eq!(wellform_weights(&[1, 2, 2]).unwrap(), w(&[1, 1, 1]));
        assert_eq!(wellform_weights(&[6, 10, 15]).unwrap(), w(&[1, 1, 1]));
        assert_eq!(wellform_weights(&[1, 0, 1]), Err(Error::NonPositiveWeight(1)));
    }

    #[test]
    fn weight_vector_rejects_bad_input() {
        assert_eq!(WeightVector::new(vec![1]), Err(Error::TooFewWeights));
        assert_eq!(WeightVector::new(vec![1, -2]), Err(Error::NonPositiveWeight(1)));
        assert!(w(&[1, 2, 3]).is_well_formed());
        assert!(!w(&[1, 2, 2]).is_well_formed());
    }

    #[test]
    fn picard_examples() {
        let f = validate_fwps(&[vec![1, -1], vec![1, 2], vec![-2, -1]]).unwrap();
        assert_eq!(picard_rank(&f.to_fan()).unwrap(), 1);
        let f = fan_from_weights(&w(&[1, 2, 3, 4])).unwrap();
        assert_eq!(picard_rank(&f.to_fan()).unwrap(), 1);
        let five = Fan::new(2, vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, 0], vec![0, -1]], None).unwrap();
        assert_eq!(picard_rank(&five).unwrap(), 3);
        let short = Fan::new(3, vec![vec![1, 0, 0]], None).unwrap();
        assert_eq!(picard_rank(&short), Err(Error::Underflow { rays: 1, dim: 3 }));
    }

    #[test]
    fn fan_validation() {
        assert_eq!(Fan::new(2, vec![vec![1, 0], vec![1, 0]], None), Err(Error::DuplicateRay(0, 1)));
        assert_eq!(
            Fan::new(2, vec![vec![1, 0], vec![0, 1]], Some(vec![vec![0, 2]])),
            Err(Error::InvalidConeIndex { cone: 0, index: 2, rays: 2 })
        );
        let f = validate_fwps(&[vec![1, 0], vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(f.max_cones(), vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    fn weights_strategy() -> impl Strategy<Value = WeightVector> {
        prop::collection::vec(1i64..=20, 2..=5).prop_map(|v| WeightVector::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn relation_holds(v in weights_strategy()) {
            let f = fan_from_weights(&v).unwrap();
            let m = f.ray_matrix();
            prop_assert!(m.mul_vec(f.weights().as_slice()).unwrap().iter().all(|&x| x == 0));
            prop_assert_eq!(gcd_vector(f.weights().as_slice()), 1);
            prop_assert!(f.weights().is_well_formed());
            prop_assert_eq!(sublattice_index(&m).unwrap(), LatticeIndex::Finite(1));
        }

        #[test]
        fn well_formed_round_trip(v in weights_strategy()) {
            prop_assume!(v.is_well_formed());
            let f = fan_from_weights(&v).unwrap();
            prop_assert_eq!(weights_from_rays(&f), v);
        }
    }
}

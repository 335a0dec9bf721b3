//! Fundamental group in codimension 1 and the universal cover.
//!
//! For a toric variety with fan rays `v_i` in `N = Z^n`, the group
//! `π₁¹` is `N / N'` where `N'` is spanned by the rays. An fwps is an honest
//! weighted projective space exactly when this group is trivial; otherwise
//! the rays, written in a basis of `N'`, give the fan of `P(a)` and `N / N'`
//! acts on it as the deck group.

use serde::Serialize;

use crate::error::Result;
use crate::intlat::{column_hnf, quotient_invariants_of_columns, AbelianGroupInvariants, IntMatrix};
use crate::par::{self, Execution};
use crate::toric::{weights_from_rays, Fan, FwpsFan, WeightVector};

/// `Z^dim / span(rays)`.
pub fn pi11_of_fan(fan: &Fan) -> Result<AbelianGroupInvariants> {
    let rays: Vec<&[i64]> = fan.rays().iter().map(|r| r.as_slice()).collect();
    quotient_invariants_of_columns(fan.dim(), &rays)
}

pub fn is_wps(fan: &FwpsFan) -> Result<bool> {
    Ok(pi11_of_fan(&fan.to_fan())?.is_trivial())
}

/// The universal cover in codimension 1 of an fwps `X`: the weighted
/// projective space `P(cover_weights)` with `X = P(cover_weights) / deck_group`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverDescription {
    pub cover_weights: WeightVector,
    #[serde(serialize_with = "display")]
    pub deck_group: AbelianGroupInvariants,
    /// Hermite basis of the sublattice spanned by the rays, one basis vector per column.
    #[serde(serialize_with = "columns")]
    pub sublattice_basis: IntMatrix,
    pub index: i64,
}

fn display<S: serde::Serializer>(g: &AbelianGroupInvariants, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(g)
}

fn columns<S: serde::Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.columns())
}

pub fn universal_cover(fan: &FwpsFan) -> Result<CoverDescription> {
    let rays = fan.ray_matrix();
    let deck_group = pi11_of_fan(&fan.to_fan())?;
    let basis = IntMatrix::from_columns(&column_hnf(&rays)?)?;
    let index = deck_group.order()?.finite().expect("the rays of an fwps span a full-rank sublattice");
    Ok(CoverDescription {
        // The linear relation among the rays does not depend on the lattice
        // they are written in.
        cover_weights: weights_from_rays(fan),
        deck_group,
        sublattice_basis: basis,
        index,
    })
}

/// [`universal_cover`] over a batch of fans.
pub fn universal_covers(fans: &[FwpsFan], execution: Execution) -> Vec<Result<CoverDescription>> {
    par::map(fans, execution, universal_cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{fan_from_weights, validate_fwps, wellform_weights};
    use proptest::prelude::*;

    fn fwps(rays: &[[i64; 2]]) -> FwpsFan {
        validate_fwps(&rays.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn index_three_quotient_of_p2() {
        let fan = fwps(&[[1, -1], [1, 2], [-2, -1]]);
        let cover = universal_cover(&fan).unwrap();
        assert_eq!(cover.index, 3);
        assert_eq!(cover.deck_group, AbelianGroupInvariants::cyclic(3));
        assert_eq!(cover.cover_weights.as_slice(), &[1, 1, 1]);
        assert_eq!(cover.sublattice_basis.columns(), vec![vec![1, 2], vec![0, 3]]);
        assert!(!is_wps(&fan).unwrap());
    }

    #[test]
    fn sign_flipped_ray_is_an_honest_wps() {
        let fan = fwps(&[[1, -1], [1, 2], [-2, 1]]);
        let cover = universal_cover(&fan).unwrap();
        assert_eq!(cover.index, 1);
        assert!(cover.deck_group.is_trivial());
        assert_eq!(cover.cover_weights.as_slice(), &[5, 1, 3]);
        assert!(is_wps(&fan).unwrap());
    }

    #[test]
    fn non_cyclic_deck_group() {
        // P^3 / (Z/2 x Z/2)
        // coordinates of e1, e2, e3, -e1-e2-e3 in the basis (e1+e2)/2, (e1+e3)/2, e1
        let rays = vec![vec![0, 0, 1], vec![2, 0, -1], vec![0, 2, -1], vec![-2, -2, 1]];
        let fan = validate_fwps(&rays).unwrap();
        let cover = universal_cover(&fan).unwrap();
        assert_eq!(cover.cover_weights.as_slice(), &[1, 1, 1, 1]);
        assert_eq!(cover.deck_group.torsion(), &[2, 2]);
        assert_eq!(cover.index, 4);
    }

    #[test]
    fn pi11_of_general_fans() {
        let fan = Fan::new(2, vec![], None).unwrap();
        assert_eq!(pi11_of_fan(&fan).unwrap(), AbelianGroupInvariants::new(&[], 2));
        let fan = Fan::new(2, vec![vec![1, 0], vec![1, 2]], None).unwrap();
        assert_eq!(pi11_of_fan(&fan).unwrap(), AbelianGroupInvariants::cyclic(2));
    }

    #[test]
    fn batch_matches_single() {
        let fans: Vec<FwpsFan> = [[1, 1, 1], [1, 2, 3], [2, 3, 5]]
            .iter()
            .map(|w| fan_from_weights(&WeightVector::new(w.to_vec()).unwrap()).unwrap())
            .collect();
        let seq = universal_covers(&fans, Execution::Sequential);
        let par = universal_covers(&fans, Execution::Parallel);
        assert_eq!(seq, par);
        assert!(seq.iter().all(|c| c.as_ref().unwrap().index == 1));
    }

    proptest! {
        #[test]
        fn fans_from_weights_are_simply_connected(w in prop::collection::vec(1i64..=20, 2..=5)) {
            prop_assume!(w.iter().fold(0, |g, &x| crate::intlat::gcd(g, x)) == 1);
            let a = WeightVector::new(w.clone()).unwrap();
            let fan = fan_from_weights(&a).unwrap();
            prop_assert!(is_wps(&fan).unwrap());
            prop_assert_eq!(universal_cover(&fan).unwrap().cover_weights, wellform_weights(&w).unwrap());
        }
    }
}

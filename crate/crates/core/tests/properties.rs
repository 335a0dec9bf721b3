use proptest::prelude::*;

use fwps::intlat::{integer_kernel, quotient_invariants, sublattice_index, IntMatrix, LatticeIndex};
use fwps::oracle::{
    coset_enumeration, determinant, fletcher_wellform, kernel_by_elimination, kernel_lattices_coincide, CosetResult,
};
use fwps::pi11::{is_wps, pi11_of_fan, universal_cover};
use fwps::toric::{fan_from_weights, validate_fwps, weights_from_rays, wellform_weights, Fan, WeightVector};

fn rays_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=3).prop_flat_map(|dim| prop::collection::vec(prop::collection::vec(-9i64..=9, dim), dim + 1))
}

fn square(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-12i64..=12, n), n)
        .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-9i64..=9, cols), rows).prop_map(|r| IntMatrix::from_rows(&r).unwrap())
}

fn weights() -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(1i64..=30, 2..=5).prop_map(|w| WeightVector::new(w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn validation_matches_rational_kernel(rays in rays_strategy()) {
        let dim = rays[0].len();
        let primitive = rays.iter().all(|r| r.iter().fold(0i64, |g, &x| fwps::intlat::gcd(g, x)) == 1);
        let m = IntMatrix::from_columns(&rays).unwrap();
        let kernel = kernel_by_elimination(&m);
        let positive = kernel.len() == 1
            && (kernel[0].iter().all(|&x| x > 0) || kernel[0].iter().all(|&x| x < 0));
        let accepted = validate_fwps(&rays);
        prop_assert_eq!(accepted.is_ok(), primitive && positive, "{:?} -> {:?}", rays, accepted);
        if let Ok(fan) = accepted {
            let a = fan.weights().as_slice();
            prop_assert!(a.iter().all(|&x| x >= 1));
            for j in 0..dim {
                prop_assert_eq!(a.iter().zip(&rays).map(|(w, r)| w * r[j]).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn cover_group_and_wps_decision_agree(rays in rays_strategy()) {
        let Ok(fan) = validate_fwps(&rays) else { return Ok(()) };
        let pi = pi11_of_fan(&fan.to_fan()).unwrap();
        let cover = universal_cover(&fan).unwrap();
        prop_assert_eq!(pi.free_rank(), 0);
        prop_assert_eq!(cover.index, pi.torsion().iter().product::<i64>());
        let wps = is_wps(&fan).unwrap();
        prop_assert_eq!(wps, cover.index == 1);
        prop_assert_eq!(wps, pi.is_trivial());
        prop_assert_eq!(i128::from(cover.index), determinant(&cover.sublattice_basis).abs());
    }

    #[test]
    fn cones_do_not_change_pi11(rays in rays_strategy()) {
        let Ok(fan) = validate_fwps(&rays) else { return Ok(()) };
        let bare = Fan::new(fan.dim(), fan.ray_vectors(), None).unwrap();
        let coned = fan.to_fan();
        prop_assert!(coned.max_cones().is_some());
        prop_assert_eq!(pi11_of_fan(&bare).unwrap(), pi11_of_fan(&coned).unwrap());
    }

    #[test]
    fn weight_fans_generate_the_lattice(a in weights()) {
        let fan = fan_from_weights(&a).unwrap();
        prop_assert_eq!(sublattice_index(&fan.ray_matrix()).unwrap(), LatticeIndex::Finite(1));
        prop_assert!(pi11_of_fan(&fan.to_fan()).unwrap().is_trivial());
        if a.is_well_formed() {
            prop_assert_eq!(weights_from_rays(&fan), a);
        }
    }

    #[test]
    fn cosets_agree_with_smith_form(a in prop_oneof![square(2), square(3)]) {
        let det = determinant(&a).abs();
        prop_assume!(det != 0 && det <= 60);
        let CosetResult::Group(g) = coset_enumeration(&a, 60) else {
            return Err(TestCaseError::fail(format!("inconclusive on {a:?}")));
        };
        prop_assert_eq!(g, quotient_invariants(&a).unwrap());
    }

    #[test]
    fn kernel_implementations_agree(a in prop_oneof![matrix(2, 3), matrix(3, 4)]) {
        let k = integer_kernel(&a).unwrap();
        prop_assert!(kernel_lattices_coincide(&a, &k), "{:?} vs {:?}", k, kernel_by_elimination(&a));
    }
}

#[test]
fn fletcher_agrees_with_wellform_on_small_triples() {
    for x in 1..=20 {
        for y in 1..=20 {
            for z in 1..=20 {
                let w = [x, y, z];
                assert_eq!(fletcher_wellform(&w), wellform_weights(&w).unwrap().as_slice(), "{w:?}");
            }
        }
    }
}

use milnor_core::milnor::{artin, random_diagram};
use milnor_core::nilgrp::{
    aut_apply, aut_compose, aut_degree, aut_invert, aut_restrict, deviation, johnson_kernel_to_sder, sder_to_kernel,
    Aut0Element, AutDegree, NilError,
};
use milnor_core::sder::{sder_basis, TangentialDerivation};
use milnor_core::series::{magnus, GroupWord};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn element(seed: u64, level: usize) -> Aut0Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    artin(&random_diagram(&mut rng, 12), level).unwrap()
}

fn degree_rank(d: AutDegree) -> usize {
    match d {
        AutDegree::Finite(i) => i,
        AutDegree::ExceedsLevel => usize::MAX,
    }
}

fn word() -> impl Strategy<Value = GroupWord> {
    prop::collection::vec((0u8..2, prop::bool::ANY), 0..8)
        .prop_map(|v| GroupWord::from_letters(v.into_iter().map(|(g, p)| (g, if p { 1 } else { -1 }))))
}

fn kernel_element(n: usize, coeffs: &[i64]) -> Aut0Element {
    let mut d = TangentialDerivation::zero(n);
    for (b, &c) in sder_basis(n).unwrap().iter().zip(coeffs) {
        d = d.try_add(&b.scale(&BigInt::from(c))).unwrap();
    }
    sder_to_kernel(&d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn group_laws(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>(), level in 1usize..=5) {
        let (a, b, c) = (element(s1, level), element(s2, level), element(s3, level));
        let ab = aut_compose(&a, &b).unwrap();
        prop_assert_eq!(
            aut_compose(&ab, &c).unwrap(),
            aut_compose(&a, &aut_compose(&b, &c).unwrap()).unwrap()
        );
        prop_assert!(aut_compose(&a, &aut_invert(&a)).unwrap().is_identity());
        prop_assert!(aut_compose(&aut_invert(&a), &a).unwrap().is_identity());
        prop_assert_eq!(ab.image_x() * ab.image_y(), magnus(&GroupWord::parse("x y").unwrap(), level));
        for m in 1..=level {
            prop_assert_eq!(
                aut_restrict(&ab, m).unwrap(),
                aut_compose(&aut_restrict(&a, m).unwrap(), &aut_restrict(&b, m).unwrap()).unwrap()
            );
        }
        prop_assert_eq!(Aut0Element::parse(&a.to_text()).unwrap(), a.clone());
        prop_assert!(degree_rank(aut_degree(&ab)) >= degree_rank(aut_degree(&a)).min(degree_rank(aut_degree(&b))));
    }

    #[test]
    fn kernel_membership_matches_johnson(seed in any::<u64>(), n in 1usize..=4) {
        let a = element(seed, n + 1);
        let in_kernel = aut_restrict(&a, n).unwrap().is_identity();
        match johnson_kernel_to_sder(&a) {
            Ok(d) => {
                prop_assert!(in_kernel);
                let k = sder_to_kernel(&d).unwrap();
                let diff = aut_compose(&a, &aut_invert(&k)).unwrap();
                prop_assert!(johnson_kernel_to_sder(&diff).unwrap().is_zero());
            }
            Err(e) => {
                prop_assert!(!in_kernel);
                prop_assert_eq!(e, NilError::NotInKernel { level: n });
            }
        }
    }

    #[test]
    fn apply_is_a_homomorphism(seed in any::<u64>(), u in word(), v in word()) {
        let a = element(seed, 4);
        prop_assert_eq!(aut_apply(&a, &u.concat(&v)), &aut_apply(&a, &u) * &aut_apply(&a, &v));
        let b = element(seed ^ 0x5555, 4);
        let ab = aut_compose(&a, &b).unwrap();
        prop_assert_eq!(aut_apply(&ab, &u), a.apply_series(&aut_apply(&b, &u)));
    }

    #[test]
    fn kernel_commutator_identity(n in 1usize..=4, coeffs in prop::collection::vec(-2i64..=2, 4), u in word(), v in word()) {
        let alpha = kernel_element(n, &coeffs);
        let lhs = deviation(&alpha, &u.concat(&v));
        let rhs = &deviation(&alpha, &u) * &deviation(&alpha, &v);
        // equality modulo weight n+2, i.e. at cap n+1
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn johnson_is_additive(n in 1usize..=4, c1 in prop::collection::vec(-2i64..=2, 4), c2 in prop::collection::vec(-2i64..=2, 4)) {
        let (a, b) = (kernel_element(n, &c1), kernel_element(n, &c2));
        let ab = aut_compose(&a, &b).unwrap();
        prop_assert_eq!(
            johnson_kernel_to_sder(&ab).unwrap(),
            johnson_kernel_to_sder(&a).unwrap().try_add(&johnson_kernel_to_sder(&b).unwrap()).unwrap()
        );
    }
}

#[test]
fn exact_sequence_levels_one_to_four() {
    for n in 1..=4 {
        for d in sder_basis(n).unwrap() {
            let k = sder_to_kernel(&d).unwrap();
            assert!(aut_restrict(&k, n).unwrap().is_identity());
            assert_eq!(johnson_kernel_to_sder(&k).unwrap(), d);
            assert!(matches!(aut_degree(&k), AutDegree::Finite(i) if i >= n));
        }
    }
}

//! Normal forms, projective equivalence and the field of moduli.

use genfermat::arrangement::{
    all_equivalences, is_general_position, lambda_to_arrangement, membership_xnd, normalize, pgl_equivalent,
    Arrangement, EquivalenceMode, LambdaParams, ProjectiveMap,
};
use genfermat::ff::{make_field, Field};
use genfermat::moduli::{entry_field_degree, field_of_moduli, frobenius_apply};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_lambda(f: &Field, d: usize, n: usize, seed: u64) -> LambdaParams {
    LambdaParams::random(f, d, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_form_is_pgl_invariant(seed in any::<u64>()) {
        let f = make_field(11, 1).unwrap();
        let lambda = random_lambda(&f, 2, 5, seed);
        let arr = lambda_to_arrangement(&lambda).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let t = ProjectiveMap::random(&f, 2, &mut rng);
        let moved = arr.apply(&t);
        let (_, back) = normalize(&moved).unwrap();
        prop_assert_eq!(back, lambda);
    }

    #[test]
    fn unlabeled_equivalence_finds_shuffled_images(seed in any::<u64>()) {
        let f = make_field(7, 1).unwrap();
        let lambda = random_lambda(&f, 2, 4, seed);
        let arr = lambda_to_arrangement(&lambda).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..arr.hyperplanes().len()).collect();
        order.shuffle(&mut rng);
        let image = arr.apply(&ProjectiveMap::random(&f, 2, &mut rng)).permuted(&order).unwrap();
        let eq = pgl_equivalent(&arr, &image, EquivalenceMode::Unlabeled).unwrap();
        prop_assert!(eq.is_some());
        let eq = eq.unwrap();
        for (j, h) in arr.hyperplanes().iter().enumerate() {
            prop_assert_eq!(&eq.map.apply_hyperplane(h), &image.hyperplanes()[eq.perm[j]]);
        }
    }

    #[test]
    fn frobenius_powers_compose(seed in any::<u64>(), a in 0u64..8, b in 0u64..8) {
        let f = make_field(3, 4).unwrap();
        let lambda = random_lambda(&f, 2, 5, seed);
        prop_assert_eq!(frobenius_apply(&frobenius_apply(&lambda, a), b), frobenius_apply(&lambda, a + b));
        prop_assert_eq!(frobenius_apply(&lambda, 4), lambda.clone());
        prop_assert!(membership_xnd(&frobenius_apply(&lambda, a)));
    }

    #[test]
    fn field_of_moduli_divides_entry_degree_and_is_pgl_invariant(seed in any::<u64>()) {
        let f = make_field(2, 4).unwrap();
        let lambda = random_lambda(&f, 1, 4, seed);
        let v = field_of_moduli(&lambda).unwrap();
        prop_assert_eq!(v.entry_field_degree % v.e, 0);
        prop_assert_eq!(v.entry_field_degree, entry_field_degree(&lambda));
        // relabel the arrangement and renormalize: same e
        let arr = lambda_to_arrangement(&lambda).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..arr.hyperplanes().len()).collect();
        order.shuffle(&mut rng);
        let (_, other) = normalize(&arr.apply(&ProjectiveMap::random(&f, 1, &mut rng)).permuted(&order).unwrap()).unwrap();
        prop_assert_eq!(field_of_moduli(&other).unwrap().e, v.e);
    }
}

#[test]
fn labeled_equivalence_is_rigid_for_frames() {
    let f = make_field(5, 1).unwrap();
    let lambda = LambdaParams::empty(&f, 2);
    let arr = lambda_to_arrangement(&lambda).unwrap();
    let eq = pgl_equivalent(&arr, &arr, EquivalenceMode::Labeled).unwrap().unwrap();
    assert!(eq.map.is_identity());
    // a frame of d + 2 = 4 lines has the full S_4 of symmetries
    assert_eq!(all_equivalences(&arr, &arr).unwrap().len(), 24);
}

#[test]
fn general_position_rejects_concurrent_lines() {
    let f = make_field(7, 1).unwrap();
    let bad =
        Arrangement::from_covectors(&f, 2, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
    assert!(!is_general_position(&bad));
    assert!(normalize(&bad).is_err());
    assert!(!membership_xnd(&LambdaParams::new(&f, 2, 4, vec![vec![1, 1]]).unwrap()));
    assert!(!membership_xnd(&LambdaParams::new(&f, 2, 4, vec![vec![0, 3]]).unwrap()));
    assert!(membership_xnd(&LambdaParams::new(&f, 2, 4, vec![vec![2, 3]]).unwrap()));
}

/// Rows `(α, β)` and `(α^σ, β^σ)`: Frobenius swaps the last two lines, so the
/// arrangement is defined over GF(7) although its entries are not.
#[test]
fn conjugate_rows_descend_to_the_prime_field() {
    let f = make_field(7, 2).unwrap();
    let mut found = 0;
    for a in 7..49u64 {
        for b in [8u64, 15, 23, 30] {
            let rows = vec![vec![a, b], vec![f.frobenius(a, 1), f.frobenius(b, 1)]];
            let lambda = LambdaParams::new(&f, 2, 5, rows).unwrap();
            if !membership_xnd(&lambda) {
                continue;
            }
            let v = field_of_moduli(&lambda).unwrap();
            assert_eq!(v.entry_field_degree, 2);
            assert_eq!(v.e, 1);
            assert_eq!(v.witness.perm[4..], [5, 4]);
            found += 1;
        }
    }
    assert!(found > 20);
}

#[test]
fn generic_quadratic_entries_need_the_quadratic_field() {
    let f = make_field(7, 2).unwrap();
    let mut counts = [0; 3];
    for seed in 0..40 {
        let lambda = random_lambda(&f, 2, 5, seed);
        let v = field_of_moduli(&lambda).unwrap();
        counts[v.e as usize] += 1;
    }
    assert!(counts[2] > counts[1]);
}

#[test]
fn reordering_must_be_a_permutation() {
    let f = make_field(7, 1).unwrap();
    let arr = lambda_to_arrangement(&LambdaParams::new(&f, 2, 4, vec![vec![2, 3]]).unwrap()).unwrap();
    assert!(arr.permuted(&[0, 1, 2, 3]).is_err());
    assert!(arr.permuted(&[0, 1, 2, 3, 3]).is_err());
    assert!(arr.permuted(&[4, 3, 2, 1, 0]).is_ok());
}

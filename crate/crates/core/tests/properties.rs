use num_bigint::BigInt;
use proptest::prelude::*;

use redheffer::vnk::{parse_cache, render_cache};
use redheffer::{
    build_a, det_exact, det_weighted, dirichlet_convolve, dirichlet_inverse, floor_log2,
    vnk_fast, vnk_naive_row, CoefficientSequence, FloorValueSet, ShiftedCharPoly, Variant,
    WeightVector,
};

fn sequence(len: usize) -> impl Strategy<Value = CoefficientSequence> {
    prop::collection::vec(-5i64..=5, len - 1).prop_map(|tail| {
        let mut v = vec![1];
        v.extend(tail);
        CoefficientSequence::from_i64(&v).unwrap()
    })
}

fn weights(len: usize) -> impl Strategy<Value = WeightVector<BigInt>> {
    prop::collection::vec(-5i64..=5, len - 1).prop_map(|tail| {
        let mut v = vec![1];
        v.extend(tail);
        WeightVector::from_i64(&v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn convolution_commutes_and_associates(
        (a, b, c) in (1usize..60).prop_flat_map(|n| (sequence(n), sequence(n), sequence(n)))
    ) {
        let n = a.len();
        let ab = dirichlet_convolve(&a, &b, n).unwrap();
        let ba = dirichlet_convolve(&b, &a, n).unwrap();
        prop_assert_eq!(&ab, &ba);
        let ab = CoefficientSequence::new(ab).unwrap();
        let bc = CoefficientSequence::new(dirichlet_convolve(&b, &c, n).unwrap()).unwrap();
        prop_assert_eq!(
            dirichlet_convolve(&ab, &c, n).unwrap(),
            dirichlet_convolve(&a, &bc, n).unwrap()
        );
    }

    #[test]
    fn inverse_is_an_involution(a in (1usize..80).prop_flat_map(sequence)) {
        let b = dirichlet_inverse(&a);
        let product = dirichlet_convolve(&a, &b, a.len()).unwrap();
        prop_assert_eq!(product, CoefficientSequence::identity(a.len()).into_values());
        prop_assert_eq!(dirichlet_inverse(&b), a);
    }

    #[test]
    fn weighted_determinants_match_dense(
        (a, w) in (1usize..40).prop_flat_map(|n| (sequence(n), weights(n)))
    ) {
        let n = a.len();
        for variant in [Variant::A, Variant::Atilde] {
            prop_assert_eq!(
                det_weighted(&a, &w, n, variant).unwrap(),
                det_exact(&build_a(&a, &w, n, variant).unwrap())
            );
        }
    }

    #[test]
    fn charpoly_constant_term_is_signed_determinant(
        (a, w) in (1usize..48).prop_flat_map(|n| (sequence(n), weights(n)))
    ) {
        let n = a.len();
        let row = vnk_naive_row(&a, &w, n).unwrap();
        let p = ShiftedCharPoly::from_values(n as u64, &row).unwrap().expand();
        let signed = if n % 2 == 0 { p.coeff(0) } else { -p.coeff(0) };
        prop_assert_eq!(signed, det_weighted(&a, &w, n, Variant::A).unwrap());
    }

    #[test]
    fn fast_engine_matches_definition(n in 1u64..4000) {
        let unit_row = vnk_naive_row(
            &CoefficientSequence::unit(n as usize),
            &WeightVector::<BigInt>::unit(n as usize),
            n as usize,
        )
        .unwrap();
        prop_assert_eq!(vnk_fast(n).row(n), unit_row);
    }

    #[test]
    fn floor_set_is_closed(n in 1u64..1_000_000_000_000, i in 1u64..10_000) {
        let set = FloorValueSet::new(n);
        let m = set.value(set.slot_of(n / i.min(n)).unwrap());
        prop_assert_eq!(m, n / i.min(n));
        for d in [2u64, 3, 7] {
            prop_assert!(set.slot_of(m / d).is_some() || m / d == 0);
        }
    }

    #[test]
    fn cache_round_trips(n in 1u64..200_000) {
        let table = vnk_fast(n);
        let text = render_cache(&table);
        let parsed = parse_cache(&text).unwrap();
        prop_assert_eq!(render_cache(&parsed), text);
        prop_assert_eq!(parsed.r(), floor_log2(n));
    }
}

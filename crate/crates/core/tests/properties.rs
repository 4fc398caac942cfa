mod common;

use common::*;
use conelab::ideal::Ideal;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms_leibniz_and_substitution(
        (a, b, c) in (poly(ring(3), 4, 3), poly(ring(3), 4, 3), poly(ring(3), 3, 2))
    ) {
        check_ring_laws(&a, &b, &c)?;
    }

    #[test]
    fn gcd_and_squarefree_reassembly(
        (a, b, c) in (poly(ring(3), 3, 2), poly(ring(3), 3, 2), poly(ring(3), 2, 2))
    ) {
        check_gcd_and_squarefree(&a, &b, &c)?;
    }

    #[test]
    fn groebner_invariants((i, h) in (ideal(ring(4), 3), poly(ring(4), 4, 3))) {
        check_groebner(&i, &h)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dimension_matches_subset_enumeration(
        g in prop::collection::vec(poly(ring(5), 2, 2), 1..=3)
    ) {
        check_dimension(&Ideal::new(&ring(5), g).unwrap())?;
    }

    #[test]
    fn resolutions_of_graded_ideals(
        g in prop::collection::vec(homogeneous(ring(4), 2, 3), 1..=4)
    ) {
        check_resolution(&Ideal::new(&ring(4), g).unwrap())?;
    }

    #[test]
    fn resolutions_of_arbitrary_ideals(i in ideal(ring(3), 3)) {
        check_resolution(&i)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn colon_intersection_saturation_laws(
        (i, j, k, f) in (small_ideal(ring(3)), small_ideal(ring(3)), small_ideal(ring(3)), poly(ring(3), 2, 2))
    ) {
        check_ideal_laws(&i, &j, &k, &f)?;
    }
}

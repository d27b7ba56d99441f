mod common;

use common::props::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn hnf_round_trip_and_idempotence(input in tall_input()) {
        hnf_round_trip(input)?;
    }

    #[test]
    fn unimodular_transforms_preserve_lattices(input in unimodular_input()) {
        unimodular_invariance(input)?;
    }

    #[test]
    fn lattice_membership_two_routes(input in membership_input()) {
        lattice_membership(input)?;
    }

    #[test]
    fn order_membership_two_routes(input in order_element_input()) {
        order_membership(input)?;
    }

    #[test]
    fn content_is_multiplicative(input in pair_with_bases()) {
        content_multiplicativity(input)?;
    }

    #[test]
    fn induced_generator_determinant(input in generator_input()) {
        generator_determinant(input)?;
    }

    #[test]
    fn reports_round_trip_through_json(input in report_input()) {
        report_round_trip(input)?;
    }
}

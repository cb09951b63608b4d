use proptest::prelude::*;
use wallcross_core::arith::{int, VPoly, VRatFunc};
use wallcross_core::qdilog::{check_conjugation, check_exp_sum, check_functional_eq, check_pentagon, epsilon};
use wallcross_core::quiver::kronecker::{kronecker_arena, kronecker_transport, Direction};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn identities_hold_at_every_degree(n in 1u32..=12) {
        prop_assert!(check_pentagon(n).unwrap().is_zero());
        prop_assert!(check_exp_sum(n).unwrap().is_zero());
        prop_assert!(check_functional_eq(n).unwrap().is_zero());
        prop_assert!(check_conjugation(n).unwrap().is_zero());
    }

    #[test]
    fn epsilon_recurrence(l in 1u32..=30) {
        let factor = VRatFunc::from_poly(VPoly::monomial(2 * l as i64, int(1)).sub(&VPoly::one()));
        prop_assert_eq!(epsilon(l).mul(&factor), epsilon(l - 1).shift(1));
    }
}

#[test]
fn quantum_pentagon_exponents() {
    let arena = kronecker_arena(1, 8).unwrap();
    let (_, out) = kronecker_transport::<VRatFunc>(&arena, Direction::Increasing).unwrap();
    let table: Vec<(Vec<i64>, VRatFunc)> = out.table();
    let one = VRatFunc::one();
    assert_eq!(table, vec![(vec![1, 0], one.clone()), (vec![0, 1], one.clone()), (vec![1, 1], one)]);
}

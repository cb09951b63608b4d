use proptest::prelude::*;
use std::sync::Arc;
use wallcross_core::arith::{rat, Rational, VPoly, VRatFunc};
use wallcross_core::lattice::{SkewLattice, Truncation};
use wallcross_core::series::{ClassicalSeries, QuantumSeries, TorusArena, TorusAuto, TorusSeries};

const BOUND: u32 = 4;

fn arena(k: i64) -> Arc<TorusArena> {
    TorusArena::new(SkewLattice::rank2(k), Truncation::orthant(2, BOUND)).unwrap()
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

/// Coefficients for every point of the rank-2 orthant of degree ≤ 4, constant term included.
fn coeffs() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rat(), 15)
}

fn laurent() -> impl Strategy<Value = VRatFunc> {
    (-2i64..=2, prop::collection::vec(small_rat(), 0..3)).prop_map(|(lo, c)| VRatFunc::from_poly(VPoly::from_dense(lo, c)))
}

fn classical(a: &Arc<TorusArena>, c: &[Rational], constant: bool) -> ClassicalSeries {
    let mut s = TorusSeries::zero(a);
    for (i, x) in c.iter().enumerate().take(a.len()) {
        if i > 0 || constant {
            s.set_at(i, x.clone());
        }
    }
    s
}

fn quantum(a: &Arc<TorusArena>, c: &[VRatFunc]) -> QuantumSeries {
    let mut s = TorusSeries::zero(a);
    for (i, x) in c.iter().enumerate().take(a.len()) {
        s.set_at(i, x.clone());
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn quantum_product_is_associative(k in -2i64..=2, x in prop::collection::vec(laurent(), 15),
                                      y in prop::collection::vec(laurent(), 15), z in prop::collection::vec(laurent(), 15)) {
        let a = arena(k);
        let (x, y, z) = (quantum(&a, &x), quantum(&a, &y), quantum(&a, &z));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn classical_product_is_commutative_and_associative(k in -2i64..=2, x in coeffs(), y in coeffs(), z in coeffs()) {
        let a = arena(k);
        let (x, y, z) = (classical(&a, &x, true), classical(&a, &y, true), classical(&a, &z, true));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn t_auto_is_a_poisson_map(k in 1i64..=2, g in prop::sample::select(vec![vec![1i64, 0], vec![0, 1], vec![1, 1]]),
                               c in small_rat(), x in coeffs(), y in coeffs()) {
        let a = arena(k);
        let phi = TorusAuto::t_auto(&a, &g, &c).unwrap();
        let (x, y) = (classical(&a, &x, true), classical(&a, &y, true));
        let lhs = phi.apply(&x).unwrap().poisson(&phi.apply(&y).unwrap()).unwrap();
        let rhs = phi.apply(&x.poisson(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_auto_exponents_add(k in 1i64..=2, g in prop::sample::select(vec![vec![1i64, 0], vec![0, 1], vec![1, 1], vec![2, 1]]),
                            c1 in small_rat(), c2 in small_rat()) {
        let a = arena(k);
        let t1 = TorusAuto::t_auto(&a, &g, &c1).unwrap();
        let t2 = TorusAuto::t_auto(&a, &g, &c2).unwrap();
        let sum = TorusAuto::t_auto(&a, &g, &(&c1 + &c2)).unwrap();
        let composed = t1.compose(&t2).unwrap();
        prop_assert_eq!(composed.units(), sum.units());
    }

    #[test]
    fn exp_and_log_are_inverse(k in -2i64..=2, x in coeffs(), q in prop::collection::vec(laurent(), 15)) {
        let a = arena(k);
        let x = classical(&a, &x, false);
        prop_assert_eq!(&x.exp().unwrap().log().unwrap(), &x);
        let mut q = quantum(&a, &q);
        q.set_at(0, VRatFunc::zero());
        prop_assert_eq!(&q.exp().unwrap().log().unwrap(), &q);
    }
}

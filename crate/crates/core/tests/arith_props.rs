use proptest::prelude::*;
use wallcross_core::arith::{int, jet_eval, rat, Expr, Rational, VPoly, VRatFunc};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn vpoly() -> impl Strategy<Value = VPoly> {
    (-3i64..=3, prop::collection::vec(small_rat(), 0..5)).prop_map(|(lo, c)| VPoly::from_dense(lo, c))
}

fn vratfunc() -> impl Strategy<Value = VRatFunc> {
    (vpoly(), vpoly()).prop_filter_map("zero denominator", |(n, d)| VRatFunc::normalize(n, d).ok())
}

/// Polynomials of total degree ≤ 2 in three variables.
fn quadratic() -> impl Strategy<Value = Expr> {
    let term = (small_rat(), 0usize..3, 0usize..3, 0u8..3).prop_map(|(c, i, j, shape)| {
        let c = Expr::Const(c);
        match shape {
            0 => c,
            1 => c * Expr::var(i),
            _ => c * Expr::var(i) * Expr::var(j),
        }
    });
    prop::collection::vec(term, 1..6).prop_map(|ts| ts.into_iter().reduce(|a, b| a + b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_field_laws(f in vratfunc(), g in vratfunc()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&g).sub(&g), f);
    }

    #[test]
    fn limit_after_clearing_poles(p in vpoly(), k in 0u32..4) {
        let f = VRatFunc::from_poly(p.clone());
        let clear = VPoly::from_dense(0, vec![int(-1), int(0), int(1)]).pow(k);
        let g = VRatFunc::normalize(p.clone(), clear).unwrap();
        prop_assert_eq!(g.limit_at_minus_one(k).unwrap(), f.eval(&int(-1)).unwrap());
    }

    #[test]
    fn jet_matches_central_differences(e in quadratic(), x in prop::collection::vec(small_rat(), 3), h in small_rat()) {
        prop_assume!(h != int(0));
        let jet = jet_eval(&e, &x).unwrap();
        for i in 0..3 {
            let mut up = x.clone();
            let mut down = x.clone();
            up[i] += &h;
            down[i] -= &h;
            let diff = (e.eval(&up).unwrap() - e.eval(&down).unwrap()) / (int(2) * &h);
            prop_assert_eq!(&diff, &jet.partials[i]);
        }
        prop_assert_eq!(jet.value, e.eval(&x).unwrap());
    }
}

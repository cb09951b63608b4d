use proptest::prelude::*;
use std::collections::BTreeSet;
use wallcross_core::arith::{rat, GaussRational};
use wallcross_core::lattice::{Charge, RayOrder, SkewLattice, Truncation};

fn skew(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(-3i64..=3, n * n).prop_map(move |x| {
        let mut b = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                b[i][j] = x[i * n + j];
                b[j][i] = -x[i * n + j];
            }
        }
        b
    })
}

fn upper_charge(n: usize) -> impl Strategy<Value = Charge> {
    prop::collection::vec((-6i64..=6, 1i64..=4, 1i64..=6, 1i64..=4), n).prop_map(|v| {
        Charge::new(v.into_iter().map(|(a, b, c, d)| GaussRational::new(rat(a, b), rat(c, d))).collect())
    })
}

fn cone_point(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=3, n).prop_filter("nonzero", |v| v.iter().any(|&x| x > 0))
}

fn weakly_before(o: RayOrder) -> bool {
    o != RayOrder::After
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pairing_is_antisymmetric(b in skew(3), g1 in prop::collection::vec(-4i64..=4, 3), g2 in prop::collection::vec(-4i64..=4, 3)) {
        let lat = SkewLattice::new(b).unwrap();
        prop_assert_eq!(lat.skew_pair(&g1, &g2).unwrap(), -lat.skew_pair(&g2, &g1).unwrap());
    }

    #[test]
    fn clockwise_order_is_a_total_preorder(z in upper_charge(3), a in cone_point(3), b in cone_point(3), c in cone_point(3)) {
        let ab = z.clockwise_cmp(&a, &b).unwrap();
        let ba = z.clockwise_cmp(&b, &a).unwrap();
        prop_assert_eq!(z.clockwise_cmp(&a, &a).unwrap(), RayOrder::Same);
        prop_assert!(weakly_before(ab) || weakly_before(ba));
        prop_assert_eq!(ab == RayOrder::Same, ba == RayOrder::Same);
        let bc = z.clockwise_cmp(&b, &c).unwrap();
        if weakly_before(ab) && weakly_before(bc) {
            prop_assert!(weakly_before(z.clockwise_cmp(&a, &c).unwrap()));
        }
        if ab == RayOrder::Same && bc == RayOrder::Same {
            prop_assert_eq!(z.clockwise_cmp(&a, &c).unwrap(), RayOrder::Same);
        }
    }

    #[test]
    fn double_lattice_restrictions(b in skew(3), g1 in prop::collection::vec(-4i64..=4, 3), g2 in prop::collection::vec(-4i64..=4, 3)) {
        let lat = SkewLattice::new(b).unwrap();
        let d = lat.double();
        let pad = |g: &[i64], front: bool| -> Vec<i64> {
            let z = vec![0; g.len()];
            if front { [g, &z].concat() } else { [&z, g].concat() }
        };
        prop_assert_eq!(d.pair(&pad(&g1, true), &pad(&g2, true)), lat.pair(&g1, &g2));
        prop_assert_eq!(d.pair(&pad(&g1, false), &pad(&g2, false)), 0);
    }

    #[test]
    fn cone_is_closed_under_addition(
        gens in prop::collection::vec(prop::collection::vec(0i64..=2, 2), 1..4),
        degree in prop::collection::vec(1i64..=2, 2),
        bound in 1u32..7,
    ) {
        let gens: Vec<Vec<i64>> = gens.into_iter().filter(|g| g.iter().any(|&x| x > 0)).collect();
        prop_assume!(!gens.is_empty());
        let t = Truncation::new(gens, degree, bound).unwrap();
        let pts = t.enumerate_cone();
        let set: BTreeSet<Vec<i64>> = pts.iter().map(|(p, _)| p.clone()).collect();
        for (a, da) in &pts {
            prop_assert!(*da >= 1 && *da <= bound as i64);
            for (b, db) in &pts {
                if da + db <= bound as i64 {
                    let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    prop_assert!(set.contains(&s), "{:?} + {:?}", a, b);
                }
            }
        }
    }
}

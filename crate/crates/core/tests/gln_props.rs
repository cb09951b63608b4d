use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wallcross_core::arith::{rat, GaussRational};
use wallcross_core::gln::{
    engine_check, gln_transport, monodromy_trial, random_contractible_loop, random_skew, ConfigPath, GlnStability,
};

fn config(n: usize) -> impl Strategy<Value = Vec<GaussRational>> {
    prop::collection::vec((-8i64..=8, -8i64..=8), n).prop_map(|v| {
        v.into_iter().map(|(a, b)| GaussRational::new(rat(a, 1), rat(b, 1))).collect()
    })
}

fn path(n: usize) -> impl Strategy<Value = Vec<Vec<GaussRational>>> {
    prop::collection::vec(config(n), 2..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Going out along a path and back restores the data; every crossing
    /// replayed in the matrix arena keeps the unipotent product.
    #[test]
    fn path_then_reverse_is_identity(n in 3usize..=4, pts in (3usize..=4).prop_flat_map(path), seed in any::<u64>()) {
        let pts: Vec<Vec<GaussRational>> = pts.into_iter().map(|c| c.into_iter().take(n).collect()).collect();
        prop_assume!(pts.iter().all(|c| c.len() == n));
        let Ok(p) = ConfigPath::new(pts) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Ok(s) = GlnStability::new(p.points[0].clone(), random_skew(&mut rng, n)) else { return Ok(()) };
        let Ok((mid, log)) = gln_transport(&s, &p) else { return Ok(()) };
        let (back, _) = gln_transport(&mid, &p.reversed()).unwrap();
        prop_assert_eq!(back.a, s.a.clone());
        let mut a = s.a.clone();
        for c in &log {
            prop_assert!(engine_check(&p, &a, c).unwrap());
            wallcross_core::gln::apply_crossing(&mut a, c);
        }
        prop_assert_eq!(a, mid.a);
    }

    #[test]
    fn contractible_loops_have_trivial_monodromy(n in 3usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_contractible_loop(&mut rng, n);
        let s = GlnStability::new(p.points[0].clone(), random_skew(&mut rng, n)).unwrap();
        match monodromy_trial(&s, &p) {
            Ok(t) => prop_assert!(t.identity && t.engine_agrees),
            Err(_) => {}
        }
    }
}

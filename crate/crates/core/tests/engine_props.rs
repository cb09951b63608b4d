use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;
use wallcross_core::arith::{rat, GaussRational, Rational, VPoly, VRatFunc};
use wallcross_core::engine::{GroupArena, StabilityData, TorusFlavor};
use wallcross_core::lattice::{Charge, RayOrder, SkewLattice, Truncation};
use wallcross_core::sampling::{path_independent, random_generic_charge, random_stability, SampleCoeff, SampleShape};
use wallcross_core::series::{QuantumSeries, TorusArena, TorusAuto, TorusSeries};

const SHAPE: SampleShape = SampleShape { max_rank: 3, max_bound: 10, max_support: 8 };
const SMALL: SampleShape = SampleShape { max_rank: 3, max_bound: 5, max_support: 6 };

fn factorize_assemble<C: SampleCoeff>(seed: u64, shape: SampleShape) -> std::result::Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sd: StabilityData<C> = random_stability(&mut rng, shape).unwrap();
    let g = sd.assemble().unwrap();
    prop_assert_eq!(StabilityData::<C>::factorize(&sd.arena, &g, &sd.charge).unwrap(), sd);
    Ok(())
}

/// `A_{V₁}·A_{V₂} = A_V`, splitting the support at the ray of one of its points.
fn split_product<C: SampleCoeff>(seed: u64, pick: usize) -> std::result::Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sd: StabilityData<C> = random_stability(&mut rng, SMALL).unwrap();
    let pts: Vec<usize> = sd.omega.keys().copied().collect();
    let cut = sd.arena.point(pts[pick % pts.len()]).to_vec();
    let (mut v1, mut v2) = (BTreeMap::new(), BTreeMap::new());
    for (p, c) in &sd.omega {
        let before = sd.charge.clockwise_cmp(sd.arena.point(*p), &cut).unwrap() == RayOrder::Before;
        if before { v1.insert(*p, c.clone()) } else { v2.insert(*p, c.clone()) };
    }
    let a1 = StabilityData::new(&sd.arena, sd.charge.clone(), v1).unwrap().assemble().unwrap();
    let a2 = StabilityData::new(&sd.arena, sd.charge.clone(), v2).unwrap().assemble().unwrap();
    let flavor = C::Arena::new(&sd.arena);
    prop_assert_eq!(flavor.mul(&a1, &a2, sd.arena.bound()), sd.assemble().unwrap());
    Ok(())
}

fn arena(k: i64, n: u32) -> Arc<TorusArena> {
    TorusArena::new(SkewLattice::rank2(k), Truncation::orthant(2, n)).unwrap()
}

/// Cross product of `Z_t(a)` and `Z_t(b)` on the straight path, as `c₀ + c₁t + c₂t²`.
fn cross_poly(z0: &Charge, z1: &Charge, a: &[i64], b: &[i64]) -> [Rational; 3] {
    let (a0, a1, b0, b1) = (z0.eval(a), z1.eval(a).sub(&z0.eval(a)), z0.eval(b), z1.eval(b).sub(&z0.eval(b)));
    let x = GaussRational::cross;
    [x(&a0, &b0), x(&a0, &b1) + x(&a1, &b0), x(&a1, &b1)]
}

/// Whether the quadratic vanishes somewhere on `[0, 1]`.
fn vanishes_on_unit_interval(c: &[Rational; 3]) -> bool {
    let zero = Rational::from_integer(0.into());
    let one = Rational::from_integer(1.into());
    let eval = |t: &Rational| &c[0] + &c[1] * t + &c[2] * t * t;
    let (f0, f1) = (eval(&zero), eval(&one));
    if f0 == zero || f1 == zero || (f0 < zero) != (f1 < zero) {
        return true;
    }
    if c[2] == zero {
        return false;
    }
    let t = -&c[1] / (Rational::from_integer(2.into()) * &c[2]);
    t > zero && t < one && (eval(&t) <= zero) != (f0 < zero)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classical_factorize_inverts_assemble(seed in any::<u64>()) {
        factorize_assemble::<Rational>(seed, SHAPE)?;
    }

    #[test]
    fn quantum_factorize_inverts_assemble(seed in any::<u64>()) {
        factorize_assemble::<VRatFunc>(seed, SMALL)?;
    }

    #[test]
    fn classical_assemble_inverts_factorize(k in 1i64..=3, seed in any::<u64>(),
                                            ts in prop::collection::vec((0i64..4, 0i64..4, -4i64..=4, 1i64..=3), 1..6)) {
        let a = arena(k, 6);
        let mut g = TorusAuto::identity(&a);
        for (x, y, n, d) in ts {
            if x + y == 0 { continue; }
            g = g.compose(&TorusAuto::t_auto(&a, &[x, y], &rat(n, d)).unwrap()).unwrap();
        }
        let z = random_generic_charge::<Rational, _>(&mut ChaCha8Rng::seed_from_u64(seed), &a).unwrap();
        let sd = StabilityData::<Rational>::factorize(&a, &g, &z).unwrap();
        let back = sd.assemble().unwrap();
        prop_assert_eq!(back.units(), g.units());
    }

    #[test]
    fn quantum_assemble_inverts_factorize(k in -2i64..=2, seed in any::<u64>(),
                                          c in prop::collection::vec((-2i64..=2, -3i64..=3, 1i64..=3), 27)) {
        let a = arena(k, 5);
        let mut g: QuantumSeries = TorusSeries::one(&a);
        for (i, (e, n, d)) in c.into_iter().enumerate().take(a.len()).skip(1) {
            g.set_at(i, VRatFunc::from_poly(VPoly::monomial(e, rat(n, d))));
        }
        let z = random_generic_charge::<VRatFunc, _>(&mut ChaCha8Rng::seed_from_u64(seed), &a).unwrap();
        let sd = StabilityData::<VRatFunc>::factorize(&a, &g, &z).unwrap();
        prop_assert_eq!(sd.assemble().unwrap(), g);
    }

    #[test]
    fn factorization_property(seed in any::<u64>(), pick in 0usize..8, quantum in any::<bool>()) {
        if quantum { split_product::<VRatFunc>(seed, pick)?; } else { split_product::<Rational>(seed, pick)?; }
    }

    #[test]
    fn transport_is_path_independent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sd: StabilityData<Rational> = random_stability(&mut rng, SMALL).unwrap();
        prop_assert!(path_independent(&mut rng, &sd).unwrap());
        let sd: StabilityData<VRatFunc> = random_stability(&mut rng, SMALL).unwrap();
        prop_assert!(path_independent(&mut rng, &sd).unwrap());
    }

    /// Points outside every rank-2 sublattice that degenerates on the
    /// straight path keep their Ω.
    #[test]
    fn points_off_the_walls_are_unchanged(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sd: StabilityData<Rational> = random_stability(&mut rng, SMALL).unwrap();
        let z1 = random_generic_charge::<Rational, _>(&mut rng, &sd.arena).unwrap();
        let out = sd.transport(&z1).unwrap();
        let a = &sd.arena;
        let pts: Vec<&[i64]> = (1..a.len()).map(|i| a.point(i)).collect();
        let mut walls: Vec<(&[i64], &[i64])> = Vec::new();
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                let c = cross_poly(&sd.charge, &z1, p, q);
                let proportional = c.iter().all(|x| *x == Rational::from_integer(0.into()));
                if !proportional && vanishes_on_unit_interval(&c) {
                    walls.push((p, q));
                }
            }
        }
        // γ lies in span(p, q) iff the 3×3 minors vanish; rank ≤ 3 keeps this small.
        let in_span = |g: &[i64], p: &[i64], q: &[i64]| -> bool {
            let n = g.len();
            let m = |r: [&[i64]; 3], i: usize, j: usize, k: usize| {
                r[0][i] * (r[1][j] * r[2][k] - r[1][k] * r[2][j]) - r[0][j] * (r[1][i] * r[2][k] - r[1][k] * r[2][i])
                    + r[0][k] * (r[1][i] * r[2][j] - r[1][j] * r[2][i])
            };
            n < 3 || m([g, p, q], 0, 1, 2) == 0
        };
        for (i, g) in pts.iter().enumerate() {
            if !walls.iter().any(|(p, q)| in_span(g, p, q)) {
                let idx = i + 1;
                prop_assert_eq!(out.omega.get(&idx), sd.omega.get(&idx), "{:?}", g);
            }
        }
    }
}

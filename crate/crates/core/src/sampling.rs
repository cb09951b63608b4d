//! Random stability data for round-trip and path-independence checks.

use crate::arith::{rat, GaussRational, Rational, VRatFunc, VPoly};
use crate::engine::{FlavorCoeff, StabilityData};
use crate::error::{Error, Result};
use crate::lattice::{Charge, SkewLattice, Truncation};
use crate::series::TorusArena;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Coefficients that can be drawn at random.
pub trait SampleCoeff: FlavorCoeff {
    /// A nonzero value with small numerators, denominators and exponents.
    fn sample<R: Rng>(rng: &mut R) -> Self;
}

fn small_nonzero<R: Rng>(rng: &mut R) -> Rational {
    let n = *[-3, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
    rat(n, rng.gen_range(1..=3))
}

impl SampleCoeff for Rational {
    fn sample<R: Rng>(rng: &mut R) -> Self {
        small_nonzero(rng)
    }
}

impl SampleCoeff for VRatFunc {
    fn sample<R: Rng>(rng: &mut R) -> Self {
        let mut p = VPoly::zero();
        for _ in 0..rng.gen_range(1..=2) {
            p = p.add(&VPoly::monomial(rng.gen_range(-2..=2), small_nonzero(rng)));
        }
        if p.is_zero() {
            p = VPoly::one();
        }
        VRatFunc::from_poly(p)
    }
}

/// Shape limits for [`random_stability`].
#[derive(Clone, Copy, Debug)]
pub struct SampleShape {
    pub max_rank: usize,
    pub max_bound: u32,
    pub max_support: usize,
}

/// A charge with `Im Z > 0` on every basis vector.
pub fn random_charge<R: Rng>(rng: &mut R, rank: usize) -> Charge {
    Charge::new(
        (0..rank)
            .map(|_| {
                let re = rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
                let im = rat(rng.gen_range(1..=6), rng.gen_range(1..=4));
                GaussRational::new(re, im)
            })
            .collect(),
    )
}

fn random_form<R: Rng>(rng: &mut R, rank: usize) -> Vec<Vec<i64>> {
    let mut b = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in i + 1..rank {
            let x = rng.gen_range(-2..=2);
            b[i][j] = x;
            b[j][i] = -x;
        }
    }
    b
}

/// A random charge that is generic for `arena` in the given flavor.
pub fn random_generic_charge<C: FlavorCoeff, R: Rng>(rng: &mut R, arena: &Arc<TorusArena>) -> Result<Charge> {
    loop {
        let z = random_charge(rng, arena.lattice().rank());
        match StabilityData::<C>::new(arena, z.clone(), BTreeMap::new()) {
            Ok(_) => return Ok(z),
            Err(Error::NonGenericCharge(_)) => continue,
            Err(e) => return Err(e),
        }
    }
}

/// Random data on a random orthant arena within `shape`. Lattices with a
/// cone point in the kernel of the form are redrawn for the classical flavor.
pub fn random_stability<C: SampleCoeff, R: Rng>(rng: &mut R, shape: SampleShape) -> Result<StabilityData<C>> {
    loop {
        let rank = rng.gen_range(1..=shape.max_rank);
        let lattice = SkewLattice::new(random_form(rng, rank))?;
        let bound = rng.gen_range(1..=shape.max_bound);
        let arena = TorusArena::new(lattice, Truncation::orthant(rank, bound))?;
        let z = match random_generic_charge::<C, R>(rng, &arena) {
            Ok(z) => z,
            Err(Error::DegenerateDirection(_)) => continue,
            Err(e) => return Err(e),
        };
        let mut pts: Vec<usize> = (1..arena.len()).collect();
        pts.shuffle(rng);
        let k = rng.gen_range(1..=shape.max_support.min(pts.len()));
        let omega: BTreeMap<usize, C> = pts[..k].iter().map(|&p| (p, C::sample(rng))).collect();
        return StabilityData::new(&arena, z, omega);
    }
}

/// Outcome of the two round trips on one sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    /// `factorize(assemble(Ω)) = Ω`.
    pub factorize_assemble: bool,
    /// `assemble(factorize(g)) = g` for `g` the product at another charge.
    pub assemble_factorize: bool,
}

impl RoundTrip {
    pub fn passed(&self) -> bool {
        self.factorize_assemble && self.assemble_factorize
    }
}

pub fn round_trip<C: SampleCoeff, R: Rng>(rng: &mut R, sd: &StabilityData<C>) -> Result<RoundTrip> {
    let g = sd.assemble()?;
    let back = StabilityData::<C>::factorize(&sd.arena, &g, &sd.charge)?;
    let z2 = random_generic_charge::<C, R>(rng, &sd.arena)?;
    let other = StabilityData::<C>::factorize(&sd.arena, &g, &z2)?;
    Ok(RoundTrip { factorize_assemble: back.omega == sd.omega, assemble_factorize: other.assemble()? == g })
}

/// Transport `z₁ → z₃` directly and through a random `z₂`.
pub fn path_independent<C: SampleCoeff, R: Rng>(rng: &mut R, sd: &StabilityData<C>) -> Result<bool> {
    let z2 = random_generic_charge::<C, R>(rng, &sd.arena)?;
    let z3 = random_generic_charge::<C, R>(rng, &sd.arena)?;
    let direct = sd.transport(&z3)?;
    let via = sd.transport(&z2)?.transport(&z3)?;
    Ok(direct.omega == via.omega)
}

//! Assembly of slope-ordered products and their unique factorization.
//!
//! The algorithms are generic over a [`GroupArena`]: a pro-nilpotent group
//! graded by a finite set of support points, each with a positive degree.
//! Three arenas are provided: classical torus automorphisms, quantum torus
//! units, and unipotent matrices.

mod matrix;
mod mobius;
mod stability;
mod torus;

pub use matrix::{elementary, exp_nilpotent, matmul, Matrix, MatrixArena};
pub use mobius::{a_from_omega, log_e_coeff, omega_from_a, omega_q_from_a, a_q_from_omega_q};
pub use stability::{quasiclassical, QuasiClassical, StabilityData};
pub use torus::{ClassicalArena, FlavorCoeff, QuantumArena, TorusFlavor};

use crate::arith::{Field, GaussRational};
use crate::lattice::{check_half_plane, cmp_charges, RayOrder};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// A graded group in which slope-ordered products are formed.
pub trait GroupArena: Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    type Coeff: Field;

    /// Support point ids.
    fn points(&self) -> Vec<usize>;
    fn degree(&self, p: usize) -> u32;
    fn bound(&self) -> u32;
    fn identity(&self) -> Self::Elem;
    /// `exp(Σ a(γ))` for the points of one ray, keeping degrees `≤ bound`.
    fn ray_factor(&self, a: &[(usize, Self::Coeff)], bound: u32) -> Result<Self::Elem>;
    /// `x·y` keeping degrees `≤ bound`.
    fn mul(&self, x: &Self::Elem, y: &Self::Elem, bound: u32) -> Self::Elem;
    /// Degree-`d` part of `current⁻¹·target`, given that the two agree below `d`.
    fn defect(&self, target: &Self::Elem, current: &Self::Elem, d: u32) -> Result<Vec<(usize, Self::Coeff)>>;
    /// Rejects rays whose points cannot share one exponential factor.
    fn check_ray(&self, _points: &[usize]) -> Result<()> {
        Ok(())
    }
}

/// Support points grouped into rays of collinear charge, in clockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct RayPlan {
    rays: Vec<Vec<usize>>,
}

impl RayPlan {
    /// Groups `arena.points()` by charge ray. Every charge must be nonzero and
    /// all of them must fit in one open half-plane.
    pub fn new<A: GroupArena>(arena: &A, charge: impl Fn(usize) -> (GaussRational, Vec<i64>)) -> Result<Self> {
        let pts = arena.points();
        let mut zs = Vec::with_capacity(pts.len());
        for &p in &pts {
            let (z, label) = charge(p);
            if z.is_zero() {
                return Err(Error::ZeroCharge(label));
            }
            zs.push(z);
        }
        check_half_plane(&zs)?;
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&i, &j| match cmp_charges(&zs[i], &zs[j]).expect("nonzero charges") {
            RayOrder::Before => std::cmp::Ordering::Less,
            RayOrder::Same => std::cmp::Ordering::Equal,
            RayOrder::After => std::cmp::Ordering::Greater,
        });
        let mut rays: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<usize> = None;
        for i in order {
            match last {
                Some(l) if cmp_charges(&zs[l], &zs[i]) == Some(RayOrder::Same) => {
                    rays.last_mut().unwrap().push(pts[i]);
                }
                _ => rays.push(vec![pts[i]]),
            }
            last = Some(i);
        }
        for r in &mut rays {
            r.sort_unstable();
            arena.check_ray(r)?;
        }
        Ok(RayPlan { rays })
    }

    pub fn rays(&self) -> &[Vec<usize>] {
        &self.rays
    }
}

/// Per-ray Lie-algebra coefficients `a(γ)`, rays in clockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct RayData<C> {
    pub rays: Vec<(Vec<usize>, BTreeMap<usize, C>)>,
}

impl<C: Field> RayData<C> {
    /// All nonzero coefficients keyed by point id.
    pub fn flatten(&self) -> BTreeMap<usize, C> {
        self.rays.iter().flat_map(|(_, m)| m.iter().map(|(k, v)| (*k, v.clone()))).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.iter().all(|(_, m)| m.is_empty())
    }
}

/// The ordered product `Π→ exp(Σ_{γ∈l} a(γ))` over the rays `l` of `plan`.
pub fn assemble_a<A: GroupArena>(
    arena: &A,
    plan: &RayPlan,
    a: &BTreeMap<usize, A::Coeff>,
    bound: u32,
) -> Result<A::Elem> {
    let mut acc = arena.identity();
    for ray in plan.rays.iter().rev() {
        let coeffs: Vec<(usize, A::Coeff)> = ray
            .iter()
            .filter(|&&p| arena.degree(p) <= bound)
            .filter_map(|p| a.get(p).filter(|c| !c.fis_zero()).map(|c| (*p, c.clone())))
            .collect();
        if coeffs.is_empty() {
            continue;
        }
        let f = arena.ray_factor(&coeffs, bound)?;
        acc = arena.mul(&f, &acc, bound);
    }
    Ok(acc)
}

/// Unique factorization of `target` into per-ray exponentials, degree by degree.
pub fn factorize_a<A: GroupArena>(arena: &A, plan: &RayPlan, target: &A::Elem) -> Result<RayData<A::Coeff>> {
    let mut a: BTreeMap<usize, A::Coeff> = BTreeMap::new();
    for d in 1..=arena.bound() {
        let current = assemble_a(arena, plan, &a, d)?;
        for (p, c) in arena.defect(target, &current, d)? {
            if !c.fis_zero() {
                a.insert(p, c);
            }
        }
    }
    Ok(RayData {
        rays: plan
            .rays
            .iter()
            .map(|r| (r.clone(), r.iter().filter_map(|p| a.get(p).map(|c| (*p, c.clone()))).collect()))
            .collect(),
    })
}

use super::torus::{ray_multiples, FlavorCoeff, TorusFlavor};
use super::{assemble_a, factorize_a, GroupArena, RayData, RayPlan};
use crate::arith::{Rational, VRatFunc};
use crate::error::{Error, Result};
use crate::lattice::Charge;
use crate::series::TorusArena;
use std::collections::BTreeMap;
use std::sync::Arc;

type Elem<C> = <<C as FlavorCoeff>::Arena as GroupArena>::Elem;

/// A central charge together with multiplicities `Ω(γ)` on the cone points
/// of a torus arena. `omega` is keyed by arena point index.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityData<C> {
    pub arena: Arc<TorusArena>,
    pub charge: Charge,
    pub omega: BTreeMap<usize, C>,
}

impl<C: FlavorCoeff> StabilityData<C> {
    pub fn new(arena: &Arc<TorusArena>, charge: Charge, omega: BTreeMap<usize, C>) -> Result<Self> {
        let n = arena.lattice().rank();
        if charge.rank() != n {
            return Err(Error::DimensionMismatch { expected: n, got: charge.rank() });
        }
        let omega = omega.into_iter().filter(|(_, c)| !c.fis_zero()).collect();
        let sd = StabilityData { arena: arena.clone(), charge, omega };
        sd.plan()?;
        Ok(sd)
    }

    /// Builds the data from `(γ, Ω(γ))` pairs; each `γ` must be a cone point.
    pub fn from_points(arena: &Arc<TorusArena>, charge: Charge, omega: &[(Vec<i64>, C)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, c) in omega {
            let i = arena.index_of(g).filter(|&i| i > 0).ok_or_else(|| Error::OutsideTruncation(g.clone()))?;
            map.insert(i, c.clone());
        }
        Self::new(arena, charge, map)
    }

    pub fn omega_at(&self, gamma: &[i64]) -> C {
        self.arena.index_of(gamma).and_then(|i| self.omega.get(&i).cloned()).unwrap_or_else(C::fzero)
    }

    /// Nonzero entries in arena order.
    pub fn table(&self) -> Vec<(Vec<i64>, C)> {
        self.omega.iter().map(|(i, c)| (self.arena.point(*i).to_vec(), c.clone())).collect()
    }

    fn flavor(&self) -> C::Arena {
        C::Arena::new(&self.arena)
    }

    fn plan(&self) -> Result<RayPlan> {
        plan_for(&self.flavor(), &self.arena, &self.charge)
    }

    /// Per-ray Lie coefficients `a(γ)` of this data.
    pub fn a_coefficients(&self) -> Result<BTreeMap<usize, C>> {
        let plan = self.plan()?;
        let mut a = BTreeMap::new();
        for ray in plan.rays() {
            let (_, mult) = ray_multiples(&self.arena, ray)?;
            if !mult.iter().any(|(p, _)| self.omega.contains_key(p)) {
                continue;
            }
            let top = mult.iter().map(|(_, m)| *m).max().unwrap_or(0) as usize;
            let mut om = vec![C::fzero(); top];
            for (p, m) in &mult {
                if let Some(c) = self.omega.get(p) {
                    om[*m as usize - 1] = c.clone();
                }
            }
            let av = <C::Arena as TorusFlavor>::a_from_omega_ray(&om);
            for (p, m) in &mult {
                let c = &av[*m as usize - 1];
                if !c.fis_zero() {
                    a.insert(*p, c.clone());
                }
            }
        }
        Ok(a)
    }

    /// The clockwise-ordered product of the per-ray factors.
    pub fn assemble(&self) -> Result<Elem<C>> {
        let flavor = self.flavor();
        let plan = self.plan()?;
        assemble_a(&flavor, &plan, &self.a_coefficients()?, self.arena.bound())
    }

    /// The unique stability data at `charge` whose product is `elem`.
    pub fn factorize(arena: &Arc<TorusArena>, elem: &Elem<C>, charge: &Charge) -> Result<Self> {
        let flavor = C::Arena::new(arena);
        let plan = plan_for(&flavor, arena, charge)?;
        let rd = factorize_a(&flavor, &plan, elem)?;
        Self::new(arena, charge.clone(), omega_from_ray_data::<C>(arena, &rd)?)
    }

    /// The data at `z_new` with the same total product.
    pub fn transport(&self, z_new: &Charge) -> Result<Self> {
        Self::factorize(&self.arena, &self.assemble()?, z_new)
    }
}

fn plan_for<A: GroupArena>(flavor: &A, arena: &TorusArena, charge: &Charge) -> Result<RayPlan> {
    RayPlan::new(flavor, |p| {
        let g = arena.point(p);
        (charge.eval(g), g.to_vec())
    })
}

fn omega_from_ray_data<C: FlavorCoeff>(arena: &TorusArena, rd: &RayData<C>) -> Result<BTreeMap<usize, C>> {
    let mut omega = BTreeMap::new();
    for (ray, a) in &rd.rays {
        if a.is_empty() {
            continue;
        }
        let (_, mult) = ray_multiples(arena, ray)?;
        let top = mult.iter().map(|(_, m)| *m).max().unwrap_or(0) as usize;
        let mut av = vec![C::fzero(); top];
        for (p, m) in &mult {
            if let Some(c) = a.get(p) {
                av[*m as usize - 1] = c.clone();
            }
        }
        let om = <C::Arena as TorusFlavor>::omega_from_a_ray(&av);
        for (p, m) in &mult {
            let c = &om[*m as usize - 1];
            if !c.fis_zero() {
                omega.insert(*p, c.clone());
            }
        }
    }
    Ok(omega)
}

/// Result of specializing quantum data at `v = −1`.
#[derive(Clone, Debug)]
pub struct QuasiClassical {
    pub data: StabilityData<Rational>,
    /// Points whose `(q − 1)·a_q(γ)` still has a pole at `v = −1`.
    pub poles: Vec<(Vec<i64>, String)>,
}

/// `a(γ) = lim_{v→−1} (v² − 1)·a_q(γ)`, then Möbius back to classical `Ω`.
pub fn quasiclassical(sd: &StabilityData<VRatFunc>) -> Result<QuasiClassical> {
    let aq = sd.a_coefficients()?;
    let mut poles = Vec::new();
    let mut a: BTreeMap<usize, Rational> = BTreeMap::new();
    for (p, x) in &aq {
        match x.limit_at_minus_one(1) {
            Ok(r) => {
                a.insert(*p, r);
            }
            Err(e) => poles.push((sd.arena.point(*p).to_vec(), e.to_string())),
        }
    }
    let classical = <Rational as FlavorCoeff>::Arena::new(&sd.arena);
    let plan = plan_for(&classical, &sd.arena, &sd.charge)?;
    let rd = RayData {
        rays: plan
            .rays()
            .iter()
            .map(|r| (r.clone(), r.iter().filter_map(|p| a.get(p).map(|c| (*p, c.clone()))).collect()))
            .collect(),
    };
    let omega = omega_from_ray_data::<Rational>(&sd.arena, &rd)?;
    Ok(QuasiClassical {
        data: StabilityData { arena: sd.arena.clone(), charge: sd.charge.clone(), omega },
        poles,
    })
}

use super::torus::{ClassicalSeries, TorusArena};
use super::uni::UniSeries;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::Arc;

/// Formal Poisson automorphism of the classical torus.
///
/// `φ(e_μ) = U(μ)·e_μ` with `U(μ) = Π u_i^{μ_i}`, where `u_i` is the unit
/// series attached to the i-th standard basis vector. Automorphisms that
/// come from a single ray also remember `(γ₀, L)` with
/// `U(μ) = exp(<γ₀, μ> L(e_{γ₀}))`, which makes them cheap to apply.
#[derive(Clone, Debug)]
pub struct TorusAuto {
    arena: Arc<TorusArena>,
    units: Vec<ClassicalSeries>,
    ray: Option<(Vec<i64>, UniSeries<Rational>)>,
}

impl PartialEq for TorusAuto {
    fn eq(&self, o: &Self) -> bool {
        self.units == o.units
    }
}

impl TorusAuto {
    pub fn identity(arena: &Arc<TorusArena>) -> Self {
        let n = arena.lattice().rank();
        TorusAuto { arena: arena.clone(), units: vec![ClassicalSeries::one(arena); n], ray: None }
    }

    /// Builds the automorphism from explicit unit series `u_i`.
    pub fn from_units(arena: &Arc<TorusArena>, units: Vec<ClassicalSeries>) -> Result<Self> {
        let n = arena.lattice().rank();
        if units.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: units.len() });
        }
        for u in &units {
            if !Arc::ptr_eq(u.arena(), arena) && u.arena().truncation() != arena.truncation() {
                return Err(Error::ArenaMismatch);
            }
            if *u.constant_term() != int(1) {
                return Err(Error::WrongConstantTerm("automorphism unit"));
            }
        }
        Ok(TorusAuto { arena: arena.clone(), units, ray: None })
    }

    /// `e_μ ↦ exp(<γ₀, μ> L(e_{γ₀}))·e_μ`, keeping degrees `≤ bound`.
    pub fn from_ray(arena: &Arc<TorusArena>, gamma0: &[i64], l: UniSeries<Rational>, bound: u32) -> Result<Self> {
        let n = arena.lattice().rank();
        let mut units = Vec::with_capacity(n);
        let mut basis = vec![0i64; n];
        for i in 0..n {
            basis[i] = 1;
            let s = arena.lattice().pair(gamma0, &basis);
            basis[i] = 0;
            units.push(ray_power(arena, gamma0, &l, s)?.truncate(bound));
        }
        Ok(TorusAuto { arena: arena.clone(), units, ray: Some((gamma0.to_vec(), l)) })
    }

    /// `T_γ^c: e_μ ↦ (1 − e_γ)^{c<γ, μ>} e_μ`.
    pub fn t_auto(arena: &Arc<TorusArena>, gamma: &[i64], c: &Rational) -> Result<Self> {
        let d = arena.truncation().degree(gamma);
        if d < 1 || arena.index_of(gamma).is_none() {
            return Err(Error::OutsideTruncation(gamma.to_vec()));
        }
        let order = arena.bound() as usize / d as usize;
        let one_minus = UniSeries::from_coeffs(order, vec![int(1), int(-1)]);
        let l = one_minus.log()?.scale(c);
        Self::from_ray(arena, gamma, l, arena.bound())
    }

    pub fn arena(&self) -> &Arc<TorusArena> {
        &self.arena
    }

    pub fn units(&self) -> &[ClassicalSeries] {
        &self.units
    }

    pub fn is_identity(&self) -> bool {
        self.units.iter().all(|u| u.nonzero_indices() == [0])
    }

    pub fn apply(&self, a: &ClassicalSeries) -> Result<ClassicalSeries> {
        if a.arena().truncation() != self.arena.truncation() || a.arena().lattice() != self.arena.lattice() {
            return Err(Error::ArenaMismatch);
        }
        Ok(self.apply_bounded(a, self.arena.bound()))
    }

    /// `φ(a)` keeping degrees `≤ bound`.
    pub fn apply_bounded(&self, a: &ClassicalSeries, bound: u32) -> ClassicalSeries {
        let arena = &self.arena;
        let mut out = ClassicalSeries::zero(arena);
        let mut cache: HashMap<i64, ClassicalSeries> = HashMap::new();
        let mut memo: HashMap<Vec<i64>, ClassicalSeries> = HashMap::new();
        for i in a.nonzero_indices() {
            let dmu = arena.degree(i);
            if dmu > bound {
                continue;
            }
            let mu = arena.point(i).to_vec();
            let u = match &self.ray {
                Some((g0, l)) => {
                    let s = arena.lattice().pair(g0, &mu);
                    cache
                        .entry(s)
                        .or_insert_with(|| ray_power(arena, g0, l, s).expect("unit series").truncate(bound))
                        .clone()
                }
                None => self.monomial_unit(&mu, bound, &mut memo),
            };
            let c = a.coeff_at(i);
            for j in u.nonzero_indices() {
                if arena.degree(j) + dmu > bound {
                    continue;
                }
                if let Some(k) = arena.sum_index(j, i) {
                    let sign = if arena.pairing(j, i).rem_euclid(2) == 1 { -1 } else { 1 };
                    let term = u.coeff_at(j) * c * int(sign);
                    let cur = out.coeff_at(k).clone();
                    out.set_at(k, cur + term);
                }
            }
        }
        out
    }

    fn monomial_unit(&self, mu: &[i64], bound: u32, memo: &mut HashMap<Vec<i64>, ClassicalSeries>) -> ClassicalSeries {
        if let Some(u) = memo.get(mu) {
            return u.clone();
        }
        let res = match mu.iter().position(|&x| x != 0) {
            None => ClassicalSeries::one(&self.arena),
            Some(j) => {
                let mut rest = mu.to_vec();
                let f = if mu[j] > 0 {
                    rest[j] -= 1;
                    self.units[j].clone()
                } else {
                    rest[j] += 1;
                    self.units[j].inv().expect("unit series").truncate(bound)
                };
                self.monomial_unit(&rest, bound, memo).mul_bounded(&f, bound)
            }
        };
        memo.insert(mu.to_vec(), res.clone());
        res
    }

    /// `self ∘ other`: apply `other` to functions first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.arena.truncation() != other.arena.truncation() || self.arena.lattice() != other.arena.lattice() {
            return Err(Error::ArenaMismatch);
        }
        Ok(self.compose_bounded(other, self.arena.bound()))
    }

    /// `self ∘ other` keeping degrees `≤ bound`.
    pub fn compose_bounded(&self, other: &Self, bound: u32) -> Self {
        let ray = match (&self.ray, &other.ray) {
            (Some((g1, l1)), Some((g2, l2))) if g1 == g2 => Some((g1.clone(), l1.add(l2))),
            _ => None,
        };
        let units = self
            .units
            .iter()
            .zip(&other.units)
            .map(|(mine, theirs)| mine.mul_bounded(&self.apply_bounded(theirs, bound), bound))
            .collect();
        TorusAuto { arena: self.arena.clone(), units, ray }
    }

    /// Inverse automorphism, so that `φ ∘ φ⁻¹ = φ⁻¹ ∘ φ = id` within the truncation.
    pub fn invert(&self) -> Result<Self> {
        if let Some((g0, l)) = &self.ray {
            return Self::from_ray(&self.arena, g0, l.scale(&int(-1)), self.arena.bound());
        }
        // χ ∘ φ = id means u^χ_i = χ(u^φ_i)⁻¹; each pass fixes one more degree.
        let mut chi = Self::identity(&self.arena);
        for _ in 0..self.arena.bound() {
            let units = self.units.iter().map(|u| chi.apply_bounded(u, self.arena.bound()).inv()).collect::<Result<Vec<_>>>()?;
            chi = TorusAuto { arena: self.arena.clone(), units, ray: None };
        }
        Ok(chi)
    }

    /// Keeps only degrees `≤ bound` in every unit.
    pub fn truncate(&self, bound: u32) -> Self {
        TorusAuto {
            arena: self.arena.clone(),
            units: self.units.iter().map(|u| u.truncate(bound)).collect(),
            ray: self.ray.clone(),
        }
    }
}

/// `exp(s·L(e_{γ₀}))` embedded in the arena.
fn ray_power(arena: &Arc<TorusArena>, gamma0: &[i64], l: &UniSeries<Rational>, s: i64) -> Result<ClassicalSeries> {
    if s == 0 {
        return Ok(ClassicalSeries::one(arena));
    }
    let e = l.scale(&int(s)).exp()?;
    Ok(ClassicalSeries::from_ray(arena, gamma0, &e))
}

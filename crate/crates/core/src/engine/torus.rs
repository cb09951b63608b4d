use super::mobius::{a_from_omega, a_q_from_omega_q, omega_from_a, omega_q_from_a};
use super::GroupArena;
use crate::arith::{int, Field, Rational, TorusCoeff, VRatFunc};
use crate::error::{Error, Result};
use crate::series::{QuantumSeries, TorusArena, TorusAuto, UniSeries};
use num_integer::Integer;
use std::sync::Arc;

/// A torus arena together with its per-ray Ω ↔ a conversion.
pub trait TorusFlavor: GroupArena + Sized
where
    Self::Coeff: TorusCoeff,
{
    fn new(torus: &Arc<TorusArena>) -> Self;
    fn torus(&self) -> &Arc<TorusArena>;
    /// Entry `m − 1` of input and output belongs to `mγ₀`.
    fn a_from_omega_ray(omega: &[Self::Coeff]) -> Vec<Self::Coeff>;
    fn omega_from_a_ray(a: &[Self::Coeff]) -> Vec<Self::Coeff>;
}

/// Coefficient rings that come with a torus arena.
pub trait FlavorCoeff: TorusCoeff {
    type Arena: TorusFlavor<Coeff = Self>;
}

impl FlavorCoeff for Rational {
    type Arena = ClassicalArena;
}

impl FlavorCoeff for VRatFunc {
    type Arena = QuantumArena;
}

/// The primitive vector `γ₀` of a ray and the multiple `m` of each point.
pub(crate) fn ray_multiples(torus: &TorusArena, points: &[usize]) -> Result<(Vec<i64>, Vec<(usize, u64)>)> {
    let first = torus.point(points[0]);
    let g = first.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let gamma0: Vec<i64> = first.iter().map(|x| x / g).collect();
    let mut out = Vec::with_capacity(points.len());
    for &p in points {
        let v = torus.point(p);
        let i = gamma0.iter().position(|&x| x != 0).expect("nonzero point");
        let m = v[i] / gamma0[i];
        if m < 1 || v.iter().zip(&gamma0).any(|(a, b)| *a != m * b) {
            return Err(Error::NonGenericCharge(format!("{:?} and {:?} share a ray but are not proportional", first, v)));
        }
        out.push((p, m as u64));
    }
    Ok((gamma0, out))
}

fn ray_series<C: Field>(torus: &TorusArena, gamma0: &[i64], a: &[(usize, C)], bound: u32, weight: bool) -> Result<UniSeries<C>> {
    let d0 = torus.truncation().degree(gamma0).max(1) as u32;
    let order = (bound / d0) as usize;
    let pts: Vec<usize> = a.iter().map(|(p, _)| *p).collect();
    let (_, mult) = ray_multiples(torus, &pts)?;
    let mut l = UniSeries::zero(order);
    for ((_, c), (_, m)) in a.iter().zip(mult) {
        let m = m as usize;
        if m <= order {
            let x = if weight { c.fscale(&int(m as i64)) } else { c.clone() };
            l.set(m, x);
        }
    }
    Ok(l)
}

/// Classical torus automorphisms; the ray factor of `Σ A_m e_{mγ₀}` is
/// `e_μ ↦ exp(<γ₀, μ> Σ m A_m e_{mγ₀})·e_μ`.
#[derive(Clone, Debug)]
pub struct ClassicalArena {
    torus: Arc<TorusArena>,
}

impl GroupArena for ClassicalArena {
    type Elem = TorusAuto;
    type Coeff = Rational;

    fn points(&self) -> Vec<usize> {
        (1..self.torus.len()).collect()
    }

    fn degree(&self, p: usize) -> u32 {
        self.torus.degree(p)
    }

    fn bound(&self) -> u32 {
        self.torus.bound()
    }

    fn identity(&self) -> TorusAuto {
        TorusAuto::identity(&self.torus)
    }

    fn ray_factor(&self, a: &[(usize, Rational)], bound: u32) -> Result<TorusAuto> {
        let pts: Vec<usize> = a.iter().map(|(p, _)| *p).collect();
        let (gamma0, _) = ray_multiples(&self.torus, &pts)?;
        let l = ray_series(&self.torus, &gamma0, a, bound, true)?;
        TorusAuto::from_ray(&self.torus, &gamma0, l, bound)
    }

    fn mul(&self, x: &TorusAuto, y: &TorusAuto, bound: u32) -> TorusAuto {
        x.compose_bounded(y, bound)
    }

    /// Reads `h_γ` from `u^A_i − u^P_i = Σ <γ, e_i> h_γ e_γ` in degree `d`.
    fn defect(&self, target: &TorusAuto, current: &TorusAuto, d: u32) -> Result<Vec<(usize, Rational)>> {
        let lat = self.torus.lattice();
        let n = lat.rank();
        let mut out = Vec::new();
        for p in self.torus.points_of_degree(d) {
            let gamma = self.torus.point(p);
            let mut h: Option<Rational> = None;
            let mut basis = vec![0i64; n];
            let mut pairs = Vec::with_capacity(n);
            for i in 0..n {
                basis[i] = 1;
                pairs.push(lat.pair(gamma, &basis));
                basis[i] = 0;
            }
            for (i, &s) in pairs.iter().enumerate() {
                if s != 0 {
                    let diff = target.units()[i].coeff_at(p) - current.units()[i].coeff_at(p);
                    h = Some(diff / int(s));
                    break;
                }
            }
            let h = h.ok_or_else(|| Error::DegenerateDirection(gamma.to_vec()))?;
            for (i, &s) in pairs.iter().enumerate() {
                let diff = target.units()[i].coeff_at(p) - current.units()[i].coeff_at(p);
                if diff != &h * int(s) {
                    return Err(Error::InconsistentDefect(gamma.to_vec()));
                }
            }
            out.push((p, h));
        }
        Ok(out)
    }

    fn check_ray(&self, points: &[usize]) -> Result<()> {
        ray_multiples(&self.torus, points)?;
        let lat = self.torus.lattice();
        for &p in points {
            let gamma = self.torus.point(p);
            if lat.form().iter().all(|row| row.iter().zip(gamma).map(|(b, g)| b * g).sum::<i64>() == 0) {
                return Err(Error::DegenerateDirection(gamma.to_vec()));
            }
        }
        Ok(())
    }
}

impl TorusFlavor for ClassicalArena {
    fn new(torus: &Arc<TorusArena>) -> Self {
        ClassicalArena { torus: torus.clone() }
    }

    fn torus(&self) -> &Arc<TorusArena> {
        &self.torus
    }

    fn a_from_omega_ray(omega: &[Rational]) -> Vec<Rational> {
        a_from_omega(omega)
    }

    fn omega_from_a_ray(a: &[Rational]) -> Vec<Rational> {
        omega_from_a(a)
    }
}

/// Units of the quantum torus; the ray factor is `exp(Σ a_q(γ) ê_γ)`.
#[derive(Clone, Debug)]
pub struct QuantumArena {
    torus: Arc<TorusArena>,
}

impl GroupArena for QuantumArena {
    type Elem = QuantumSeries;
    type Coeff = VRatFunc;

    fn points(&self) -> Vec<usize> {
        (1..self.torus.len()).collect()
    }

    fn degree(&self, p: usize) -> u32 {
        self.torus.degree(p)
    }

    fn bound(&self) -> u32 {
        self.torus.bound()
    }

    fn identity(&self) -> QuantumSeries {
        QuantumSeries::one(&self.torus)
    }

    fn ray_factor(&self, a: &[(usize, VRatFunc)], bound: u32) -> Result<QuantumSeries> {
        let pts: Vec<usize> = a.iter().map(|(p, _)| *p).collect();
        let (gamma0, _) = ray_multiples(&self.torus, &pts)?;
        // ê_{mγ₀} and ê_{m'γ₀} commute and multiply without twist along a ray
        let e = ray_series(&self.torus, &gamma0, a, bound, false)?.exp()?;
        Ok(QuantumSeries::from_ray(&self.torus, &gamma0, &e).truncate(bound))
    }

    fn mul(&self, x: &QuantumSeries, y: &QuantumSeries, bound: u32) -> QuantumSeries {
        x.mul_bounded(y, bound)
    }

    fn defect(&self, target: &QuantumSeries, current: &QuantumSeries, d: u32) -> Result<Vec<(usize, VRatFunc)>> {
        Ok(self
            .torus
            .points_of_degree(d)
            .map(|p| (p, target.coeff_at(p).sub(current.coeff_at(p))))
            .collect())
    }

    fn check_ray(&self, points: &[usize]) -> Result<()> {
        ray_multiples(&self.torus, points).map(|_| ())
    }
}

impl TorusFlavor for QuantumArena {
    fn new(torus: &Arc<TorusArena>) -> Self {
        QuantumArena { torus: torus.clone() }
    }

    fn torus(&self) -> &Arc<TorusArena> {
        &self.torus
    }

    fn a_from_omega_ray(omega: &[VRatFunc]) -> Vec<VRatFunc> {
        a_q_from_omega_q(omega)
    }

    fn omega_from_a_ray(a: &[VRatFunc]) -> Vec<VRatFunc> {
        omega_q_from_a(a)
    }
}

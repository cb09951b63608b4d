//! The quantum dilogarithm `𝐄(x) = Σ ε_l x^l` and its identities.

use crate::arith::{int, VPoly, VRatFunc};
use crate::error::{Error, Result};
use crate::lattice::{SkewLattice, Truncation};
use crate::quiver::Quiver;
use crate::series::{QuantumSeries, TorusArena, UniSeries};
use std::sync::Arc;

/// `ε_l = v^l / Π_{m=1..l} (v^{2m} − 1)`.
pub fn epsilon(l: u32) -> VRatFunc {
    let mut den = VPoly::one();
    for m in 1..=l {
        den = den.mul(&VPoly::monomial(2 * m as i64, int(1)).sub(&VPoly::one()));
    }
    VRatFunc::normalize(VPoly::monomial(l as i64, int(1)), den).expect("nonzero denominator")
}

/// `𝐄(t)` as a one-variable series of the given order.
pub fn e_series(order: usize) -> UniSeries<VRatFunc> {
    UniSeries::from_coeffs(order, (0..=order as u32).map(epsilon).collect())
}

/// `𝐄(a)` for `a = c·ê_γ` a single monomial.
pub fn e_of(a: &QuantumSeries) -> Result<QuantumSeries> {
    let nz = a.nonzero_indices();
    if nz.len() > 1 || nz.first() == Some(&0) {
        return Err(Error::MultiRay);
    }
    let arena = a.arena();
    let bound = arena.bound();
    let mut acc = QuantumSeries::one(arena);
    let mut power = QuantumSeries::one(arena);
    for l in 1..=bound {
        power = power.mul_bounded(a, bound);
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power.scale(&epsilon(l)))?;
    }
    Ok(acc)
}

fn rank2_arena(n: u32) -> Arc<TorusArena> {
    TorusArena::new(SkewLattice::rank2(1), Truncation::orthant(2, n)).expect("orthant arena")
}

fn mono(arena: &Arc<TorusArena>, g: &[i64]) -> QuantumSeries {
    QuantumSeries::monomial(arena, g, VRatFunc::one()).expect("cone point")
}

/// `𝐄(x₁)𝐄(x₂) − 𝐄(x₂)𝐄(x₁₂)𝐄(x₁)` with `x₁₂ = q^{−1/2} x₁x₂`.
pub fn check_pentagon(n: u32) -> Result<QuantumSeries> {
    let a = rank2_arena(n);
    let x1 = mono(&a, &[1, 0]);
    let x2 = mono(&a, &[0, 1]);
    let x12 = x1.mul(&x2)?.scale(&VRatFunc::monomial(-1, int(1)));
    let (e1, e2, e12) = (e_of(&x1)?, e_of(&x2)?, e_of(&x12)?);
    e1.mul(&e2)?.sub(&e2.mul(&e12)?.mul(&e1)?)
}

/// `𝐄(x₂)𝐄(x₁) − Σ ε_l (x₁ + x₂)^l`.
pub fn check_exp_sum(n: u32) -> Result<QuantumSeries> {
    let a = rank2_arena(n);
    let x1 = mono(&a, &[1, 0]);
    let x2 = mono(&a, &[0, 1]);
    let s = x1.add(&x2)?;
    let mut rhs = QuantumSeries::one(&a);
    let mut power = QuantumSeries::one(&a);
    for l in 1..=n {
        power = power.mul(&s)?;
        rhs = rhs.add(&power.scale(&epsilon(l)))?;
    }
    e_of(&x2)?.mul(&e_of(&x1)?)?.sub(&rhs)
}

fn line_arena(n: u32) -> Arc<TorusArena> {
    TorusArena::new(SkewLattice::new(vec![vec![0]]).expect("rank one"), Truncation::orthant(1, n)).expect("line arena")
}

/// `𝐄(qx) − (1 + v x)𝐄(x)`.
pub fn check_functional_eq(n: u32) -> Result<QuantumSeries> {
    let a = line_arena(n.max(1));
    let x = mono(&a, &[1]);
    let lhs = e_of(&x.scale(&VRatFunc::monomial(2, int(1))))?;
    let rhs = QuantumSeries::one(&a).add(&x.scale(&VRatFunc::monomial(1, int(1))))?.mul(&e_of(&x)?)?;
    lhs.sub(&rhs)
}

/// Outcome of the product-formula check.
#[derive(Clone, Debug)]
pub struct ProductFormula {
    /// `𝐄(x) − Π_{n<M}(1 + v^{2n+1}x)^{−1}·𝐄(q^M x)`; zero when the finite identity holds.
    pub finite_residual: QuantumSeries,
    /// Number of factors `M`.
    pub factors: u32,
    /// Least `v`-adic valuation among the coefficients of `𝐄(x) − Π_{n<M}(1 + v^{2n+1}x)^{−1}`.
    pub tail_valuation: Option<i64>,
}

/// The infinite product formula: the finite identity for `M = N + 1` factors,
/// plus the `v`-adic size of the truncated tail.
pub fn check_product_formula(n: u32) -> Result<ProductFormula> {
    let a = line_arena(n.max(1));
    let x = mono(&a, &[1]);
    let m = n + 1;
    let mut prod = QuantumSeries::one(&a);
    for k in 0..m {
        let f = QuantumSeries::one(&a).add(&x.scale(&VRatFunc::monomial(2 * k as i64 + 1, int(1))))?;
        prod = prod.mul(&f.inv()?)?;
    }
    let e = e_of(&x)?;
    let shifted = e_of(&x.scale(&VRatFunc::monomial(2 * m as i64, int(1))))?;
    let finite_residual = e.sub(&prod.mul(&shifted)?)?;
    let tail = e.sub(&prod)?;
    let tail_valuation = tail.terms().filter_map(|(_, c)| c.v_adic_valuation()).min();
    Ok(ProductFormula { finite_residual, factors: m, tail_valuation })
}

/// Residuals of the two conjugation formulas and of the homomorphism check.
#[derive(Clone, Debug)]
pub struct Conjugation {
    /// `𝐄(x₁) x₂ 𝐄(x₁)^{−1} − x₂(1 + v x₁)`.
    pub on_x2: QuantumSeries,
    /// `𝐄(x₁) x₁ 𝐄(x₁)^{−1} − x₁`.
    pub on_x1: QuantumSeries,
    /// `Ad(x₁x₂²) − Ad(x₁)Ad(x₂)²`.
    pub multiplicative: QuantumSeries,
}

impl Conjugation {
    pub fn is_zero(&self) -> bool {
        self.on_x2.is_zero() && self.on_x1.is_zero() && self.multiplicative.is_zero()
    }
}

pub fn check_conjugation(n: u32) -> Result<Conjugation> {
    let a = rank2_arena(n);
    let x1 = mono(&a, &[1, 0]);
    let x2 = mono(&a, &[0, 1]);
    let e = e_of(&x1)?;
    let e_inv = e.inv()?;
    let ad = |y: &QuantumSeries| -> Result<QuantumSeries> { e.mul(y)?.mul(&e_inv) };
    let expect = x2.mul(&QuantumSeries::one(&a).add(&x1.scale(&VRatFunc::monomial(1, int(1))))?)?;
    let on_x2 = ad(&x2)?.sub(&expect)?;
    let on_x1 = ad(&x1)?.sub(&x1)?;
    let word = x1.mul(&x2)?.mul(&x2)?;
    let ad2 = ad(&x2)?;
    let multiplicative = ad(&word)?.sub(&ad(&x1)?.mul(&ad2)?.mul(&ad2)?)?;
    Ok(Conjugation { on_x2, on_x1, multiplicative })
}

/// `𝐄_Q = Π 𝐄(ê_i)` for an acyclic quiver, in `order` or, by default, with
/// sinks first so that every arrow points from a later factor to an earlier one.
pub fn e_q_acyclic(q: &Quiver, n: u32, order: Option<&[usize]>) -> Result<QuantumSeries> {
    let default = q.sink_order()?;
    let order = match order {
        Some(o) => {
            let pos: Vec<usize> = (0..q.len()).map(|v| o.iter().position(|&x| x == v).unwrap_or(usize::MAX)).collect();
            if pos.contains(&usize::MAX) || o.len() != q.len() {
                return Err(Error::Input("order must list every vertex once".into()));
            }
            for i in 0..q.len() {
                for j in 0..q.len() {
                    if q.arrows()[i][j] > 0 && pos[j] > pos[i] {
                        return Err(Error::Input(format!("arrow {i} -> {j} violates the order")));
                    }
                }
            }
            o.to_vec()
        }
        None => default,
    };
    let arena = TorusArena::new(q.lattice(), Truncation::orthant(q.len(), n))?;
    let mut acc = QuantumSeries::one(&arena);
    for v in order {
        let mut g = vec![0i64; q.len()];
        g[v] = 1;
        acc = acc.mul(&e_of(&mono(&arena, &g))?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Field};

    #[test]
    fn first_coefficients() {
        let v2m1 = VPoly::from_dense(0, vec![int(-1), int(0), int(1)]);
        assert_eq!(epsilon(1), VRatFunc::normalize(VPoly::v(), v2m1).unwrap());
        assert_eq!(epsilon(0), VRatFunc::one());
        // v⁴ / ((v⁴ − 1)(v⁴ − v²)), straight from the product over j
        let den = VPoly::from_dense(0, vec![int(-1), int(0), int(0), int(0), int(1)])
            .mul(&VPoly::from_dense(2, vec![int(-1), int(0), int(1)]));
        assert_eq!(epsilon(2), VRatFunc::normalize(VPoly::monomial(4, int(1)), den).unwrap());
    }

    #[test]
    fn recurrence() {
        for l in 1..8 {
            let lhs = epsilon(l).mul(&VRatFunc::from_poly(VPoly::monomial(2 * l as i64, int(1)).sub(&VPoly::one())));
            let rhs = epsilon(l - 1).mul(&VRatFunc::monomial(1, int(1)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn e_of_zero_is_one() {
        let a = rank2_arena(3);
        assert_eq!(e_of(&QuantumSeries::zero(&a)).unwrap(), QuantumSeries::one(&a));
        let two = mono(&a, &[1, 0]).add(&mono(&a, &[0, 1])).unwrap();
        assert!(matches!(e_of(&two), Err(Error::MultiRay)));
    }

    #[test]
    fn low_degree_identities() {
        assert!(check_pentagon(1).unwrap().is_zero());
        assert!(check_exp_sum(1).unwrap().is_zero());
        assert!(check_functional_eq(0).unwrap().is_zero());
        assert!(check_conjugation(3).unwrap().is_zero());
        let p = check_product_formula(0).unwrap();
        assert!(p.finite_residual.is_zero());
    }

    #[test]
    fn functional_eq_degree_one() {
        // ε₁(v² − 1) = v at degree 1: v³/(v²−1) − v/(v²−1) − v = 0
        let e1 = epsilon(1);
        let lhs = e1.mul(&VRatFunc::monomial(2, int(1))).sub(&e1).sub(&VRatFunc::monomial(1, int(1)));
        assert!(lhs.is_zero());
        assert_eq!(e1.eval(&int(2)), Some(rat(2, 3)));
        assert!(!e1.fis_zero());
    }
}

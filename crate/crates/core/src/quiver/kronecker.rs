//! DT invariants of the Kronecker quiver and the diagonal series `F_k`.

use crate::arith::{binom, int, is_integer, GaussRational, Rational, VRatFunc};
use crate::engine::{FlavorCoeff, StabilityData};
use crate::error::Result;
use crate::lattice::{Charge, SkewLattice, Truncation};
use crate::series::{TorusArena, UniSeries};
use num_rational::BigRational;
use std::sync::Arc;

/// Which chamber the two simple states start in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Start with `Arg Z(1,0) > Arg Z(0,1)` and cross to the other side.
    Increasing,
    /// The reverse crossing.
    Decreasing,
}

/// `Z(1,0) = −1 + i`, `Z(0,1) = 1 + i`.
pub fn decreasing_charge() -> Charge {
    Charge::new(vec![GaussRational::from_ints(-1, 1), GaussRational::from_ints(1, 1)])
}

/// `Z(1,0) = 1 + i`, `Z(0,1) = −1 + i`.
pub fn increasing_charge() -> Charge {
    Charge::new(vec![GaussRational::from_ints(1, 1), GaussRational::from_ints(-1, 1)])
}

/// Rank-2 lattice with `<(1,0),(0,1)> = k`, graded by total degree.
pub fn kronecker_arena(k: i64, n: u32) -> Result<Arc<TorusArena>> {
    TorusArena::new(SkewLattice::rank2(k), Truncation::orthant(2, n))
}

/// Input data `Ω(1,0) = Ω(0,1) = 1` and its transport across the wall.
pub fn kronecker_transport<C: FlavorCoeff>(
    arena: &Arc<TorusArena>,
    direction: Direction,
) -> Result<(StabilityData<C>, StabilityData<C>)> {
    let (from, to) = match direction {
        Direction::Increasing => (decreasing_charge(), increasing_charge()),
        Direction::Decreasing => (increasing_charge(), decreasing_charge()),
    };
    let input = StabilityData::from_points(arena, from, &[(vec![1, 0], C::fone()), (vec![0, 1], C::fone())])?;
    let output = input.transport(&to)?;
    Ok((input, output))
}

/// The classical table `d(a, b, k)` with integrality and round-trip checks.
#[derive(Clone, Debug)]
pub struct KroneckerTable {
    pub k: i64,
    pub n: u32,
    /// Nonzero entries in degree order.
    pub omega: Vec<((i64, i64), Rational)>,
    pub all_integer: bool,
    /// Reassembling the output reproduces the input product exactly.
    pub recomposes: bool,
}

pub fn kronecker_dt(k: i64, n: u32, direction: Direction) -> Result<KroneckerTable> {
    let arena = kronecker_arena(k, n)?;
    let (input, output) = kronecker_transport::<Rational>(&arena, direction)?;
    let recomposes = output.assemble()? == input.assemble()?;
    let omega: Vec<((i64, i64), Rational)> = output.table().into_iter().map(|(g, c)| ((g[0], g[1]), c)).collect();
    let all_integer = omega.iter().all(|(_, c)| is_integer(c));
    Ok(KroneckerTable { k, n, omega, all_integer, recomposes })
}

/// Classification of a quantum exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantumClass {
    LaurentPolynomial,
    PoleFreeAtMinusOne,
    Other,
}

pub fn classify_quantum(x: &VRatFunc) -> QuantumClass {
    if x.is_laurent() {
        QuantumClass::LaurentPolynomial
    } else if x.eval(&int(-1)).is_some() {
        QuantumClass::PoleFreeAtMinusOne
    } else {
        QuantumClass::Other
    }
}

/// `F_k(t) = Σ_n binom((k−1)²n + k − 1, n) tⁿ / ((k−2)n + 1)`.
pub fn f_k_series(k: u64, order: usize) -> UniSeries<Rational> {
    let c = (0..=order as u64)
        .map(|n| {
            let top = (k - 1) * (k - 1) * n + k - 1;
            BigRational::new(binom(top, n), ((k - 2) * n + 1).into())
        })
        .collect();
    UniSeries::from_coeffs(order, c)
}

/// Residuals of the algebraic equation and of the exponential form.
#[derive(Clone, Debug)]
pub struct FkCheck {
    pub algebraic: UniSeries<Rational>,
    pub exp_form: UniSeries<Rational>,
}

/// `F(1 − tF^{k−2})^k − 1` to order `n_alg`, and
/// `F − exp(Σ binom((k−1)²n, n)·k/(k−1)²·tⁿ/n)` to order `n_exp`.
pub fn check_f_k(k: u64, n_alg: usize, n_exp: usize) -> Result<FkCheck> {
    let f = f_k_series(k, n_alg);
    let t = UniSeries::monomial(n_alg, 1, int(1));
    let inner = UniSeries::one(n_alg).sub(&t.mul(&f.pow(k as u32 - 2)));
    let algebraic = f.mul(&inner.pow(k as u32)).sub(&UniSeries::one(n_alg));

    let kk = ((k - 1) * (k - 1)) as i64;
    let mut l = UniSeries::zero(n_exp);
    for n in 1..=n_exp as u64 {
        let c = BigRational::from(binom((k - 1) * (k - 1) * n, n)) * int(k as i64) / int(kk * n as i64);
        l.set(n as usize, c);
    }
    let exp_form = f_k_series(k, n_exp).sub(&l.exp()?);
    Ok(FkCheck { algebraic, exp_form })
}

/// Comparison of the composed diagonal factors with the `F_k` map.
#[derive(Clone, Debug)]
pub struct SlopeOne {
    /// `G(t) = Π_m (1 − t^m)^{m Ω(m,m)}`, rewritten in the `(x, y)` chart.
    pub composed: UniSeries<Rational>,
    pub f_k: UniSeries<Rational>,
    pub matches: bool,
}

/// The diagonal ray acts by `x ↦ x·G(e_{(1,1)})^{−k}`, `y ↦ y·G(e_{(1,1)})^k`,
/// and `e_{(1,1)} = (−1)^k xy`, so the chart series is `G((−1)^k t)`.
pub fn check_slope_one(k: i64, n: u32) -> Result<SlopeOne> {
    let table = kronecker_dt(k, n, Direction::Increasing)?;
    let order = (n / 2) as usize;
    let mut g = UniSeries::one(order);
    for ((a, b), c) in &table.omega {
        if a == b {
            let m = *a as usize;
            let factor = UniSeries::one(order).sub(&UniSeries::monomial(order, m, int(1)));
            g = g.mul(&factor.pow_rational(&(c * int(m as i64)))?);
        }
    }
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    let composed = g.rescale(&sign);
    let f_k = f_k_series(k as u64, order);
    let matches = composed == f_k;
    Ok(SlopeOne { composed, f_k, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn f3_first_terms() {
        let f = f_k_series(3, 3);
        assert_eq!(f.coeff(0), &int(1));
        assert_eq!(f.coeff(1), &int(3));
        assert_eq!(f_k_series(4, 2).coeff(0), &int(1));
    }

    #[test]
    fn pentagon_table() {
        let t = kronecker_dt(1, 6, Direction::Increasing).unwrap();
        let got: Vec<((i64, i64), Rational)> = t.omega.clone();
        assert_eq!(got, vec![((1, 0), int(1)), ((0, 1), int(1)), ((1, 1), int(1))]);
        assert!(t.recomposes && t.all_integer);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_quantum(&VRatFunc::monomial(3, rat(1, 2))), QuantumClass::LaurentPolynomial);
        let e1 = crate::qdilog::epsilon(1);
        assert_eq!(classify_quantum(&e1), QuantumClass::Other);
    }
}

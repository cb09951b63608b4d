//! The `m`-loop quiver: closed-form invariants and the series `G_m`.

use crate::arith::{binom, divisors, int, mobius, Rational};
use crate::error::Result;
use crate::series::UniSeries;
use num_rational::BigRational;

/// `Ω_m(n) = (1/(m n²)) Σ_{d|n} μ(n/d) binom(md, d) (−1)^{(m−1)d+1}`.
pub fn loop_omega(m: u64, n: u64) -> Rational {
    let mut s = int(0);
    for d in divisors(n) {
        let sign = if ((m - 1) * d + 1) % 2 == 0 { 1 } else { -1 };
        s += BigRational::from(binom(m * d, d)) * int(mobius(n / d) * sign);
    }
    s / int((m * n * n) as i64)
}

/// `G_m(t) = Σ_n (−1)^{n(1−m)} binom(mn, n) tⁿ / ((m−1)n + 1)`.
pub fn g_m_series(m: u64, order: usize) -> UniSeries<Rational> {
    let c = (0..=order as u64)
        .map(|n| {
            let sign = if (n * (m + 1)) % 2 == 0 { 1 } else { -1 };
            BigRational::new(binom(m * n, n), ((m - 1) * n + 1).into()) * int(sign)
        })
        .collect();
    UniSeries::from_coeffs(order, c)
}

/// `Π_{n≤N} (1 − tⁿ)^{n Ω(n)}` for a table `omega[n−1] = Ω(n)`.
pub fn omega_product(omega: &[Rational], order: usize) -> Result<UniSeries<Rational>> {
    let mut acc = UniSeries::one(order);
    for (i, w) in omega.iter().enumerate().take(order) {
        let n = i + 1;
        let f = UniSeries::one(order).sub(&UniSeries::monomial(order, n, int(1)));
        acc = acc.mul(&f.pow_rational(&(w * int(n as i64)))?);
    }
    Ok(acc)
}

/// Residuals of the product identity and the algebraic equation
/// `G + (−1)^m t G^m − 1 = 0`.
#[derive(Clone, Debug)]
pub struct LoopCheck {
    pub m: u64,
    pub omega: Vec<Rational>,
    pub product: UniSeries<Rational>,
    pub algebraic: UniSeries<Rational>,
}

impl LoopCheck {
    pub fn is_zero(&self) -> bool {
        self.product.is_zero() && self.algebraic.is_zero()
    }
}

pub fn check_g_m(m: u64, order: usize) -> Result<LoopCheck> {
    let omega: Vec<Rational> = (1..=order as u64).map(|n| loop_omega(m, n)).collect();
    let g = g_m_series(m, order);
    let product = omega_product(&omega, order)?.sub(&g);
    let t = UniSeries::monomial(order, 1, int(if m % 2 == 0 { 1 } else { -1 }));
    let algebraic = g.add(&t.mul(&g.pow(m as u32))).sub(&UniSeries::one(order));
    Ok(LoopCheck { m, omega, product, algebraic })
}

/// `(1 − t)^{d−1}`, the generating series attached to the potential `x^d`.
pub fn one_loop_potential_series(d: u64, order: usize) -> UniSeries<Rational> {
    let c = (0..=order as u64)
        .map(|k| {
            let b = if k <= d - 1 { BigRational::from(binom(d - 1, k)) } else { int(0) };
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect();
    UniSeries::from_coeffs(order, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(loop_omega(1, 1), int(-1));
        assert_eq!(loop_omega(1, 2), int(0));
        assert_eq!(loop_omega(2, 1), int(1));
        assert_eq!(loop_omega(2, 2), int(-1));
        let g = g_m_series(2, 3);
        assert_eq!(g.coeffs(), &[int(1), int(-1), int(2), int(-5)]);
    }

    #[test]
    fn low_order_checks() {
        for m in 1..=3 {
            assert!(check_g_m(m, 6).unwrap().is_zero(), "m = {m}");
        }
    }

    #[test]
    fn potential_series_is_binomial() {
        let s = one_loop_potential_series(3, 4);
        assert_eq!(s.coeffs(), &[int(1), int(-2), int(1), int(0), int(0)]);
    }
}

//! Exact scalar arithmetic.
//!
//! Everything here is an immutable value type. [`Rational`] is the
//! arbitrary-precision rational from `num-rational`; the other types are
//! built on top of it.

mod gauss;
mod jet;
mod ratfunc;
mod vpoly;

pub use gauss::GaussRational;
pub use jet::{jet_eval, Expr, Jet1};
pub use ratfunc::VRatFunc;
pub use vpoly::VPoly;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Renders `"p/q"`, or `"p"` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Binomial coefficient `binom(r, k)` for rational `r`.
pub fn binom_rational(r: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * (r - int(j as i64)) / int(j as i64 + 1);
    }
    acc
}

/// Integer binomial coefficient as a `BigInt`; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// The operations the series and engine code needs from a coefficient ring.
///
/// Method names are prefixed with `f` so they never collide with the
/// `std::ops` or `num_traits` methods of the implementing types.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, rhs: &Self) -> Self;
    fn fsub(&self, rhs: &Self) -> Self;
    fn fmul(&self, rhs: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&int(n))
    }
    fn fadd_assign(&mut self, rhs: &Self) {
        *self = self.fadd(rhs);
    }
    fn fscale(&self, r: &Rational) -> Self {
        self.fmul(&Self::from_rational(r))
    }
}

/// Coefficients of a twisted torus: multiplication by the twist factor
/// attached to a pairing value (`(-1)^p` classically, `v^p` quantumly).
pub trait TorusCoeff: Field {
    fn twist(&self, pairing: i64) -> Self;
}

impl Field for Rational {
    fn fzero() -> Self {
        Rational::zero()
    }
    fn fone() -> Self {
        Rational::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn fsub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn fmul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn fadd_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
}

impl TorusCoeff for Rational {
    fn twist(&self, pairing: i64) -> Self {
        if pairing.rem_euclid(2) == 1 {
            -self
        } else {
            self.clone()
        }
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-7/2", "5", "0"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn rational_binomials() {
        assert_eq!(binom_rational(&int(-2), 3), int(-4));
        assert_eq!(binom_rational(&rat(1, 2), 2), rat(-1, 8));
        assert_eq!(binom(6, 1), BigInt::from(6));
        assert_eq!(binom(3, 5), BigInt::from(0));
    }
}

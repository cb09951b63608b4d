use super::vpoly::dense_gcd;
use super::{int, Field, Rational, TorusCoeff, VPoly};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// Element of `Q(v)` in canonical form.
///
/// The denominator is a polynomial with nonzero constant term and leading
/// coefficient 1, coprime to the numerator. The numerator may carry
/// negative powers of `v`. Canonical form makes `==` decide equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VRatFunc {
    num: VPoly,
    den: VPoly,
}

impl VRatFunc {
    pub fn zero() -> Self {
        VRatFunc { num: VPoly::zero(), den: VPoly::one() }
    }

    pub fn one() -> Self {
        VRatFunc::from_poly(VPoly::one())
    }

    pub fn from_poly(p: VPoly) -> Self {
        VRatFunc { num: p, den: VPoly::one() }
    }

    pub fn constant(r: Rational) -> Self {
        VRatFunc::from_poly(VPoly::constant(r))
    }

    /// `c·v^e`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        VRatFunc::from_poly(VPoly::monomial(e, c))
    }

    pub fn num(&self) -> &VPoly {
        &self.num
    }

    pub fn den(&self) -> &VPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// Reduces `n/d` to canonical form.
    pub fn normalize(n: VPoly, d: VPoly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if n.is_zero() {
            return Ok(VRatFunc::zero());
        }
        let shift = d.valuation();
        let d = d.shift(-shift);
        let n = n.shift(-shift);
        let g = dense_gcd(n.dense(), d.dense());
        let g = VPoly::from_dense(0, g);
        let (n, d) = if g.is_one() { (n, d) } else { (n.div_exact(&g), d.div_exact(&g)) };
        let lead = d.leading().unwrap().clone();
        if lead.is_one() {
            Ok(VRatFunc { num: n, den: d })
        } else {
            let inv = lead.recip();
            Ok(VRatFunc { num: n.scale(&inv), den: d.scale(&inv) })
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return VRatFunc::from_poly(n);
            }
            return reduce_against(n, self.den.clone());
        }
        if self.den.is_one() {
            return VRatFunc { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return VRatFunc { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = VPoly::from_dense(0, dense_gcd(self.den.dense(), o.den.dense()));
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            if num.is_zero() {
                return VRatFunc::zero();
            }
            return VRatFunc { num, den: self.den.mul(&o.den) };
        }
        let a = self.den.div_exact(&g);
        let b = o.den.div_exact(&g);
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        if num.is_zero() {
            return VRatFunc::zero();
        }
        let h = VPoly::from_dense(0, dense_gcd(num.dense(), g.dense()));
        if h.is_one() {
            VRatFunc { num, den: g.mul(&a).mul(&b) }
        } else {
            VRatFunc { num: num.div_exact(&h), den: g.div_exact(&h).mul(&a).mul(&b) }
        }
    }

    pub fn neg(&self) -> Self {
        VRatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return VRatFunc::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return VRatFunc::from_poly(self.num.mul(&o.num));
        }
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        VRatFunc { num: n1.mul(&n2), den: d1.mul(&d2) }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return VRatFunc::zero();
        }
        VRatFunc { num: self.num.scale(r), den: self.den.clone() }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        VRatFunc { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        VRatFunc::normalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = VRatFunc::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Evaluates at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        if x.is_zero() && self.num.valuation() < 0 {
            return None;
        }
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Order of vanishing at `v = 0` (numerator valuation; the denominator is a unit there).
    pub fn v_adic_valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.num.valuation())
        }
    }

    /// `lim_{v→−1} (v²−1)^order · f(v)`.
    pub fn limit_at_minus_one(&self, order: u32) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        let plus_one = [int(1), int(1)];
        let mut den = self.den.dense().to_vec();
        let mut mult = 0u32;
        loop {
            let (q, r) = super::vpoly::dense_divrem(&den, &plus_one);
            if r.iter().all(|x| x.is_zero()) && den.len() > 1 {
                den = q;
                mult += 1;
            } else {
                break;
            }
        }
        if mult > order {
            return Err(Error::PoleRemains { order: mult, cleared: order });
        }
        // (v²−1)^order / (v+1)^mult = (v−1)^order · (v+1)^(order−mult)
        let minus_one = -Rational::one();
        let factor = num_traits::pow(int(-2), order as usize)
            * num_traits::pow(Rational::zero(), (order - mult) as usize);
        let den_val = VPoly::from_dense(0, den).eval(&minus_one);
        let num_val = self.num.eval(&minus_one);
        Ok(num_val * factor / den_val)
    }
}

/// Returns `(n/g, d/g)` with `g = gcd(n, d)`.
fn cancel(n: &VPoly, d: &VPoly) -> (VPoly, VPoly) {
    if d.is_one() {
        return (n.clone(), d.clone());
    }
    let g = VPoly::from_dense(0, dense_gcd(n.dense(), d.dense()));
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g), d.div_exact(&g))
    }
}

fn reduce_against(n: VPoly, d: VPoly) -> VRatFunc {
    if n.is_zero() {
        return VRatFunc::zero();
    }
    let (n, d) = cancel(&n, &d);
    VRatFunc { num: n, den: d }
}

impl Field for VRatFunc {
    fn fzero() -> Self {
        VRatFunc::zero()
    }
    fn fone() -> Self {
        VRatFunc::one()
    }
    fn fis_zero(&self) -> bool {
        self.is_zero()
    }
    fn fadd(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn fsub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn fmul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn fneg(&self) -> Self {
        self.neg()
    }
    fn finv(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        VRatFunc::constant(r.clone())
    }
    fn fscale(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

impl TorusCoeff for VRatFunc {
    fn twist(&self, pairing: i64) -> Self {
        self.shift(pairing)
    }
}

impl fmt::Display for VRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn p(lo: i64, c: &[i64]) -> VPoly {
        VPoly::from_dense(lo, c.iter().map(|&x| int(x)).collect())
    }

    fn f(n: VPoly, d: VPoly) -> VRatFunc {
        VRatFunc::normalize(n, d).unwrap()
    }

    #[test]
    fn normalize_examples() {
        // (v² − 1)/(v − 1) = v + 1
        let a = f(p(0, &[-1, 0, 1]), p(0, &[-1, 1]));
        assert_eq!(a, VRatFunc::from_poly(p(0, &[1, 1])));
        assert_eq!(f(p(1, &[1]), p(1, &[1])), VRatFunc::one());
        // 2v³/4v: monic denominator forces the 1/2 into the numerator
        let c = f(p(3, &[2]), p(1, &[4]));
        assert_eq!(c.num(), &VPoly::monomial(2, rat(1, 2)));
        assert!(c.den().is_one());
        assert!(matches!(VRatFunc::normalize(VPoly::one(), VPoly::zero()), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn limits_at_minus_one() {
        let vsq1 = p(0, &[-1, 0, 1]);
        assert_eq!(f(VPoly::one(), vsq1.clone()).limit_at_minus_one(1).unwrap(), int(1));
        assert_eq!(f(VPoly::v(), vsq1.clone()).limit_at_minus_one(1).unwrap(), int(-1));
        let sq = vsq1.mul(&vsq1);
        assert!(matches!(
            f(VPoly::one(), sq).limit_at_minus_one(1),
            Err(Error::PoleRemains { order: 2, cleared: 1 })
        ));
        // no pole: (v²−1)·f vanishes
        assert_eq!(VRatFunc::from_poly(p(0, &[3, 1])).limit_at_minus_one(1).unwrap(), int(0));
        assert_eq!(VRatFunc::from_poly(p(0, &[3, 1])).limit_at_minus_one(0).unwrap(), int(2));
    }

    #[test]
    fn arithmetic_agrees_with_evaluation() {
        let a = f(p(0, &[1, 2]), p(0, &[-1, 0, 1]));
        let b = f(p(-1, &[3, 0, 1]), p(0, &[1, 1]));
        let x = rat(3, 7);
        let ev = |g: &VRatFunc| g.eval(&x).unwrap();
        assert_eq!(ev(&a.add(&b)), ev(&a) + ev(&b));
        assert_eq!(ev(&a.mul(&b)), ev(&a) * ev(&b));
        assert_eq!(ev(&a.div(&b).unwrap()), ev(&a) / ev(&b));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.sub(&a), VRatFunc::zero());
    }
}

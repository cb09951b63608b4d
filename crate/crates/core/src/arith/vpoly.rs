use super::{fmt_rational, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Laurent polynomial in `v` with rational coefficients.
///
/// Stored densely from the lowest exponent `lo`; the first and last stored
/// coefficients are nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VPoly {
    lo: i64,
    c: Vec<Rational>,
}

impl VPoly {
    pub fn zero() -> Self {
        VPoly { lo: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        VPoly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        VPoly::monomial(0, r)
    }

    pub fn monomial(exp: i64, r: Rational) -> Self {
        VPoly::from_dense(exp, vec![r])
    }

    /// `v`.
    pub fn v() -> Self {
        VPoly::monomial(1, Rational::one())
    }

    pub fn from_dense(lo: i64, c: Vec<Rational>) -> Self {
        let mut p = VPoly { lo, c };
        p.trim();
        p
    }

    pub fn from_map(m: &BTreeMap<i64, Rational>) -> Self {
        let Some((&lo, _)) = m.iter().next() else {
            return VPoly::zero();
        };
        let hi = *m.keys().next_back().unwrap();
        let mut c = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, r) in m {
            c[(e - lo) as usize] = r.clone();
        }
        VPoly::from_dense(lo, c)
    }

    pub fn to_map(&self) -> BTreeMap<i64, Rational> {
        self.terms().map(|(e, r)| (e, r.clone())).collect()
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead == self.c.len() {
            self.c.clear();
            self.lo = 0;
        } else if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn valuation(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn degree(&self) -> i64 {
        if self.c.is_empty() {
            0
        } else {
            self.lo + self.c.len() as i64 - 1
        }
    }

    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.lo || e > self.degree() || self.c.is_empty() {
            Rational::zero()
        } else {
            self.c[(e - self.lo) as usize].clone()
        }
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.c.last()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        let lo = self.lo;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(move |(i, r)| (lo + i as i64, r))
    }

    pub fn dense(&self) -> &[Rational] {
        &self.c
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        VPoly { lo: self.lo + k, c: self.c.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_scaled(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add_scaled(o, true)
    }

    fn add_scaled(&self, o: &Self, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg() } else { o.clone() };
        }
        let lo = self.lo.min(o.lo);
        let hi = self.degree().max(o.degree());
        let mut c = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] = x.clone();
        }
        for (i, x) in o.c.iter().enumerate() {
            let slot = &mut c[(o.lo - lo) as usize + i];
            if negate {
                *slot -= x;
            } else {
                *slot += x;
            }
        }
        VPoly::from_dense(lo, c)
    }

    pub fn neg(&self) -> Self {
        VPoly { lo: self.lo, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return VPoly::zero();
        }
        VPoly { lo: self.lo, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return VPoly::zero();
        }
        VPoly::from_dense(self.lo + o.lo, dense_mul(&self.c, &o.c))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = VPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut acc = Rational::zero();
        for r in self.c.iter().rev() {
            acc = acc * x + r;
        }
        if self.lo >= 0 {
            acc * num_traits::pow(x.clone(), self.lo as usize)
        } else {
            acc / num_traits::pow(x.clone(), (-self.lo) as usize)
        }
    }

    /// Divides out `g`, which must divide `self` exactly as Laurent polynomials.
    pub fn div_exact(&self, g: &Self) -> Self {
        if self.is_zero() {
            return VPoly::zero();
        }
        let (q, r) = dense_divrem(&self.c, &g.c);
        debug_assert!(r.iter().all(|x| x.is_zero()), "inexact division");
        VPoly::from_dense(self.lo - g.lo, q)
    }
}

pub(crate) fn dense_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Polynomial division of dense coefficient vectors (index = exponent).
pub(crate) fn dense_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut r: Vec<Rational> = a.to_vec();
    if a.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    (q, r)
}

fn dense_trim(mut a: Vec<Rational>) -> Vec<Rational> {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

/// Clears denominators and content: the primitive integer multiple of `a`.
fn primitive(a: &[Rational]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = a.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let g = if v.last().is_some_and(|c| c.is_negative()) { -g } else { g };
    v.into_iter().map(|c| c / &g).collect()
}

fn primitive_int(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let g = if v.last().is_some_and(|c| c.is_negative()) { -g } else { g };
    v.into_iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder of `a` by `b` over the integers, trimmed.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.pop().expect("nonempty");
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (j, y) in b[..db].iter().enumerate() {
            r[k + j] -= &c * y;
        }
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Monic gcd of two nonzero dense polynomials, by primitive remainder
/// sequences over the integers.
pub(crate) fn dense_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = primitive(&dense_trim(a.to_vec()));
    let mut y = primitive(&dense_trim(b.to_vec()));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![Rational::one()];
        }
        let r = prem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_int(r) };
    }
    let lead = Rational::from(x.last().unwrap().clone());
    x.into_iter().map(|c| Rational::from(c) / &lead).collect()
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, r) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let s = fmt_rational(r);
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = body == "1";
            match e {
                0 => write!(f, "{body}")?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if e == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "v^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(lo: i64, c: &[i64]) -> VPoly {
        VPoly::from_dense(lo, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn trims_zero_ends() {
        let a = p(-2, &[0, 0, 1, 2, 0]);
        assert_eq!(a.valuation(), 0);
        assert_eq!(a.degree(), 1);
        assert!(p(3, &[0, 0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = p(-1, &[1, 1]); // v^-1 + 1
        let b = p(0, &[-1, 1]); // v - 1
        assert_eq!(a.mul(&b), p(-1, &[-1, 0, 1]));
        assert_eq!(a.add(&a.neg()), VPoly::zero());
        assert_eq!(a.eval(&int(2)), rat(3, 2));
        assert_eq!(p(0, &[1, 1]).pow(3), p(0, &[1, 3, 3, 1]));
    }

    #[test]
    fn gcd_of_cyclotomics() {
        let a = p(0, &[-1, 0, 1]); // v^2 - 1
        let b = p(0, &[-1, 0, 0, 0, 1]); // v^4 - 1
        assert_eq!(dense_gcd(a.dense(), b.dense()), p(0, &[-1, 0, 1]).dense());
        let c = p(0, &[1, 1]);
        let d = p(0, &[2, 1]);
        assert_eq!(dense_gcd(c.dense(), d.dense()), vec![int(1)]);
    }

    #[test]
    fn display() {
        assert_eq!(p(-1, &[2, 0, -1]).to_string(), "-v + 2*v^-1");
        assert_eq!(VPoly::zero().to_string(), "0");
    }
}

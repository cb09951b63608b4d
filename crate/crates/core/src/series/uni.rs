use crate::arith::{int, Field, Rational};
use crate::error::{Error, Result};

/// One-variable power series `Σ_{k≤N} c_k t^k`, truncated at order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries<C> {
    c: Vec<C>,
}

impl<C: Field> UniSeries<C> {
    pub fn zero(order: usize) -> Self {
        UniSeries { c: vec![C::fzero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.c[0] = C::fone();
        s
    }

    /// `c·t^k` (zero if `k` exceeds the order).
    pub fn monomial(order: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.c[k] = c;
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<C>) -> Self {
        let mut s = Self::zero(order);
        for (k, x) in coeffs.into_iter().enumerate().take(order + 1) {
            s.c[k] = x;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.c[k]
    }

    pub fn set(&mut self, k: usize, x: C) {
        if k < self.c.len() {
            self.c[k] = x;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.fis_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        UniSeries { c: self.c.iter().zip(&o.c).map(|(a, b)| a.fadd(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        UniSeries { c: self.c.iter().zip(&o.c).map(|(a, b)| a.fsub(b)).collect() }
    }

    pub fn scale(&self, r: &C) -> Self {
        UniSeries { c: self.c.iter().map(|a| a.fmul(r)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.c.iter().enumerate() {
            if a.fis_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n + 1 - i) {
                if !b.fis_zero() {
                    out.c[i + j].fadd_assign(&a.fmul(b));
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Integer power, negative exponents through [`UniSeries::inv`].
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv()?.pow(k.unsigned_abs() as u32))
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let g0 = self.c[0].finv().ok_or(Error::NonInvertible)?;
        let n = self.order();
        let mut g = Self::zero(n);
        g.c[0] = g0.clone();
        for m in 1..=n {
            let mut s = C::fzero();
            for k in 1..=m {
                if !self.c[k].fis_zero() {
                    s.fadd_assign(&self.c[k].fmul(&g.c[m - k]));
                }
            }
            g.c[m] = s.fmul(&g0).fneg();
        }
        Ok(g)
    }

    /// `exp(f)` for `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.c[0].fis_zero() {
            return Err(Error::WrongConstantTerm("exp"));
        }
        let n = self.order();
        let mut e = Self::one(n);
        for m in 1..=n {
            let mut s = C::fzero();
            for k in 1..=m {
                if !self.c[k].fis_zero() {
                    s.fadd_assign(&self.c[k].fscale(&int(k as i64)).fmul(&e.c[m - k]));
                }
            }
            e.c[m] = s.fscale(&Rational::new(1.into(), (m as i64).into()));
        }
        Ok(e)
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if self.c[0] != C::fone() {
            return Err(Error::WrongConstantTerm("log"));
        }
        let n = self.order();
        let mut l = Self::zero(n);
        for m in 1..=n {
            let mut s = self.c[m].fscale(&int(m as i64));
            for k in 1..m {
                if !l.c[k].fis_zero() && !self.c[m - k].fis_zero() {
                    s = s.fsub(&l.c[k].fscale(&int(k as i64)).fmul(&self.c[m - k]));
                }
            }
            l.c[m] = s.fscale(&Rational::new(1.into(), (m as i64).into()));
        }
        Ok(l)
    }

    /// `f^r` for `f(0) = 1` and rational `r`.
    pub fn pow_rational(&self, r: &Rational) -> Result<Self> {
        self.log()?.scale(&C::from_rational(r)).exp()
    }

    /// `f(c·t)`.
    pub fn rescale(&self, c: &C) -> Self {
        let mut p = C::fone();
        let mut out = self.clone();
        for k in 0..self.c.len() {
            out.c[k] = self.c[k].fmul(&p);
            p = p.fmul(c);
        }
        out
    }

    /// `f(t^m)`.
    pub fn substitute_power(&self, m: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (k, x) in self.c.iter().enumerate() {
            if k * m <= n {
                out.c[k * m] = x.clone();
            } else {
                break;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn s(c: &[i64]) -> UniSeries<Rational> {
        UniSeries::from_coeffs(c.len() - 1, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let f = s(&[1, -1, 0, 0, 0]);
        assert_eq!(f.inv().unwrap(), s(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn exp_log_round_trip() {
        let f = s(&[0, 2, -1, 3, 0, 5]);
        let e = f.exp().unwrap();
        assert_eq!(e.log().unwrap(), f);
        let x = UniSeries::monomial(3, 1, int(1));
        let ex = x.exp().unwrap();
        assert_eq!(ex.coeffs(), &[int(1), int(1), rat(1, 2), rat(1, 6)]);
    }

    #[test]
    fn rational_powers() {
        let f = s(&[1, -1, 0, 0]);
        let sqrt = f.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(sqrt.mul(&sqrt), f);
        assert_eq!(f.pow_rational(&int(-2)).unwrap(), s(&[1, 2, 3, 4]));
        assert_eq!(f.powi(-2).unwrap(), s(&[1, 2, 3, 4]));
    }
}

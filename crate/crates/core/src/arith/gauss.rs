use super::{fmt_rational, int, Rational};
use num_traits::Zero;
use std::fmt;

/// A complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRational::new(int(re), int(im))
    }

    pub fn zero() -> Self {
        GaussRational::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational::new(&self.re * r, &self.im * r)
    }

    /// `re(a)·im(b) − im(a)·re(b)`: positive when `b` is counterclockwise from `a`.
    pub fn cross(a: &Self, b: &Self) -> Rational {
        &a.re * &b.im - &a.im * &b.re
    }

    pub fn dot(a: &Self, b: &Self) -> Rational {
        &a.re * &b.re + &a.im * &b.im
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rational(&self.re), fmt_rational(&self.im))
    }
}

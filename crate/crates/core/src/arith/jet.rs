use super::{int, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::ops;

/// Rational expression over numbered variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(usize),
    Const(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(int(n))
    }

    pub fn pow(self, k: i64) -> Expr {
        Expr::Pow(Box::new(self), k)
    }

    pub fn recip(self) -> Expr {
        Expr::Div(Box::new(Expr::int(1)), Box::new(self))
    }

    /// Plain value at `point`, without derivatives.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        Ok(match self {
            Expr::Var(i) => point[*i].clone(),
            Expr::Const(c) => c.clone(),
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            Expr::Div(a, b) => {
                let d = b.eval(point)?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                a.eval(point)? / d
            }
            Expr::Neg(a) => -a.eval(point)?,
            Expr::Pow(a, k) => {
                let x = a.eval(point)?;
                if *k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let p = num_traits::pow(x, k.unsigned_abs() as usize);
                if *k < 0 {
                    p.recip()
                } else {
                    p
                }
            }
        })
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

/// Value together with all first partial derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet1 {
    pub value: Rational,
    pub partials: Vec<Rational>,
}

impl Jet1 {
    fn constant(c: Rational, n: usize) -> Jet1 {
        Jet1 { value: c, partials: vec![Rational::zero(); n] }
    }

    fn variable(x: Rational, i: usize, n: usize) -> Jet1 {
        let mut j = Jet1::constant(x, n);
        j.partials[i] = Rational::one();
        j
    }

    fn zip(&self, o: &Jet1, f: impl Fn(&Rational, &Rational) -> Rational) -> Vec<Rational> {
        self.partials.iter().zip(&o.partials).map(|(a, b)| f(a, b)).collect()
    }

    fn mul(&self, o: &Jet1) -> Jet1 {
        Jet1 {
            value: &self.value * &o.value,
            partials: self.zip(o, |a, b| a * &o.value + &self.value * b),
        }
    }

    fn recip(&self) -> Result<Jet1> {
        if self.value.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = self.value.recip();
        let sq = &inv * &inv;
        Ok(Jet1 { value: inv, partials: self.partials.iter().map(|d| -(d * &sq)).collect() })
    }
}

/// Evaluates `expr` and its gradient at `point` exactly.
pub fn jet_eval(expr: &Expr, point: &[Rational]) -> Result<Jet1> {
    let n = point.len();
    Ok(match expr {
        Expr::Var(i) => Jet1::variable(point[*i].clone(), *i, n),
        Expr::Const(c) => Jet1::constant(c.clone(), n),
        Expr::Add(a, b) => {
            let (a, b) = (jet_eval(a, point)?, jet_eval(b, point)?);
            Jet1 { value: &a.value + &b.value, partials: a.zip(&b, |x, y| x + y) }
        }
        Expr::Sub(a, b) => {
            let (a, b) = (jet_eval(a, point)?, jet_eval(b, point)?);
            Jet1 { value: &a.value - &b.value, partials: a.zip(&b, |x, y| x - y) }
        }
        Expr::Mul(a, b) => jet_eval(a, point)?.mul(&jet_eval(b, point)?),
        Expr::Div(a, b) => jet_eval(a, point)?.mul(&jet_eval(b, point)?.recip()?),
        Expr::Neg(a) => {
            let a = jet_eval(a, point)?;
            Jet1 { value: -a.value, partials: a.partials.into_iter().map(|d| -d).collect() }
        }
        Expr::Pow(a, k) => {
            let base = jet_eval(a, point)?;
            let base = if *k < 0 { base.recip()? } else { base };
            let e = k.unsigned_abs() as usize;
            if e == 0 {
                return Ok(Jet1::constant(Rational::one(), n));
            }
            // d(x^e) = e·x^(e−1)·dx
            let low = num_traits::pow(base.value.clone(), e - 1);
            let coef = &low * int(e as i64);
            Jet1 {
                value: low * &base.value,
                partials: base.partials.iter().map(|d| d * &coef).collect(),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn x() -> Expr {
        Expr::var(0)
    }
    fn y() -> Expr {
        Expr::var(1)
    }

    #[test]
    fn product_rule() {
        let j = jet_eval(&(x() * y()), &[int(2), int(3)]).unwrap();
        assert_eq!(j.value, int(6));
        assert_eq!(j.partials, vec![int(3), int(2)]);
    }

    #[test]
    fn quotient_rule() {
        let e = (Expr::int(1) - Expr::var(0)).recip();
        let j = jet_eval(&e, &[int(2)]).unwrap();
        assert_eq!(j.value, int(-1));
        assert_eq!(j.partials, vec![int(1)]);
    }

    #[test]
    fn chain_rule() {
        let e = x() * (Expr::int(1) - y()).pow(2);
        let j = jet_eval(&e, &[int(1), int(3)]).unwrap();
        assert_eq!(j.value, int(4));
        assert_eq!(j.partials, vec![int(4), int(4)]);
    }

    #[test]
    fn negative_powers_and_poles() {
        let e = x().pow(-2);
        let j = jet_eval(&e, &[rat(1, 2)]).unwrap();
        assert_eq!(j.value, int(4));
        assert_eq!(j.partials, vec![int(-16)]);
        assert!(matches!(jet_eval(&e, &[int(0)]), Err(Error::DivisionByZero)));
        assert!(matches!(jet_eval(&(x() / (y() - y())), &[int(1), int(1)]), Err(Error::DivisionByZero)));
    }
}

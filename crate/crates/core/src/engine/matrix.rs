use super::GroupArena;
use crate::arith::Rational;
use crate::error::{Error, Result};
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<Rational>>;

/// Unipotent `n×n` matrices; support point `p` is the matrix unit
/// `E_{ij}` for `(i, j) = pairs[p]`.
#[derive(Clone, Debug)]
pub struct MatrixArena {
    n: usize,
    pairs: Vec<(usize, usize)>,
    degrees: Vec<u32>,
}

impl MatrixArena {
    /// Degrees must be positive and additive: `deg(ij) + deg(jk) = deg(ik)`
    /// whenever all three pairs are present.
    pub fn new(n: usize, pairs: Vec<(usize, usize)>, degrees: Vec<u32>) -> Result<Self> {
        if pairs.len() != degrees.len() {
            return Err(Error::DimensionMismatch { expected: pairs.len(), got: degrees.len() });
        }
        for (&(i, j), &d) in pairs.iter().zip(&degrees) {
            if i >= n || j >= n || i == j || d == 0 {
                return Err(Error::Input(format!("bad matrix unit ({i}, {j}) of degree {d}")));
            }
        }
        Ok(MatrixArena { n, pairs, degrees })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn point_of(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, j))
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

/// `exp(X)` for nilpotent `X`.
pub fn exp_nilpotent(x: &Matrix) -> Matrix {
    let n = x.len();
    let mut acc = identity(n);
    let mut term = identity(n);
    for k in 1..=n {
        term = matmul(&term, x);
        if term.iter().all(|r| r.iter().all(|c| c.is_zero())) {
            break;
        }
        let inv_k = Rational::new(1.into(), (k as i64).into());
        for i in 0..n {
            for j in 0..n {
                term[i][j] *= &inv_k;
                acc[i][j] += &term[i][j];
            }
        }
    }
    acc
}

impl GroupArena for MatrixArena {
    type Elem = Matrix;
    type Coeff = Rational;

    fn points(&self) -> Vec<usize> {
        (0..self.pairs.len()).collect()
    }

    fn degree(&self, p: usize) -> u32 {
        self.degrees[p]
    }

    fn bound(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    fn identity(&self) -> Matrix {
        identity(self.n)
    }

    fn ray_factor(&self, a: &[(usize, Rational)], _bound: u32) -> Result<Matrix> {
        let mut x = vec![vec![Rational::zero(); self.n]; self.n];
        for (p, c) in a {
            let (i, j) = self.pairs[*p];
            x[i][j] = c.clone();
        }
        Ok(exp_nilpotent(&x))
    }

    fn mul(&self, x: &Matrix, y: &Matrix, _bound: u32) -> Matrix {
        matmul(x, y)
    }

    fn defect(&self, target: &Matrix, current: &Matrix, d: u32) -> Result<Vec<(usize, Rational)>> {
        Ok((0..self.pairs.len())
            .filter(|&p| self.degrees[p] == d)
            .map(|p| {
                let (i, j) = self.pairs[p];
                (p, &target[i][j] - &current[i][j])
            })
            .collect())
    }
}

/// `exp(a E_ij) = I + a E_ij` for `i ≠ j`.
pub fn elementary(n: usize, i: usize, j: usize, a: &Rational) -> Matrix {
    let mut m = identity(n);
    m[i][j] += a;
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn exp_of_strictly_upper() {
        let mut x = vec![vec![int(0); 3]; 3];
        x[0][1] = int(1);
        x[1][2] = int(1);
        let e = exp_nilpotent(&x);
        assert_eq!(e[0][2], Rational::new(1.into(), 2.into()));
        assert_eq!(e[0][1], int(1));
    }
}

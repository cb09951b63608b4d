use super::uni::UniSeries;
use crate::arith::{int, Field, Rational, TorusCoeff, VRatFunc};
use crate::error::{Error, Result};
use crate::lattice::{SkewLattice, Truncation};
use std::collections::HashMap;
use std::sync::Arc;

const NONE: u32 = u32::MAX;

/// The support of a truncated torus: a lattice, a truncation cone, and the
/// precomputed addition and pairing tables of its points.
///
/// Index 0 is the origin; the rest follow `Truncation::enumerate_cone`.
#[derive(Debug)]
pub struct TorusArena {
    lattice: SkewLattice,
    trunc: Truncation,
    points: Vec<Vec<i64>>,
    degrees: Vec<u32>,
    index: HashMap<Vec<i64>, usize>,
    sum: Vec<u32>,
    pairing: Vec<i32>,
}

impl PartialEq for TorusArena {
    fn eq(&self, o: &Self) -> bool {
        self.lattice == o.lattice && self.trunc == o.trunc
    }
}

impl TorusArena {
    pub fn new(lattice: SkewLattice, trunc: Truncation) -> Result<Arc<Self>> {
        let n = lattice.rank();
        if trunc.degree_covector().len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: trunc.degree_covector().len() });
        }
        let mut points = vec![vec![0; n]];
        let mut degrees = vec![0u32];
        for (p, d) in trunc.enumerate_cone() {
            points.push(p);
            degrees.push(d as u32);
        }
        let index: HashMap<Vec<i64>, usize> =
            points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let k = points.len();
        let bound = trunc.bound();
        let mut sum = vec![NONE; k * k];
        let mut pairing = vec![0i32; k * k];
        for i in 0..k {
            for j in 0..k {
                if degrees[i] + degrees[j] > bound {
                    continue;
                }
                let s: Vec<i64> = points[i].iter().zip(&points[j]).map(|(a, b)| a + b).collect();
                if let Some(&idx) = index.get(&s) {
                    sum[i * k + j] = idx as u32;
                    pairing[i * k + j] = lattice.pair(&points[i], &points[j]) as i32;
                }
            }
        }
        Ok(Arc::new(TorusArena { lattice, trunc, points, degrees, index, sum, pairing }))
    }

    pub fn lattice(&self) -> &SkewLattice {
        &self.lattice
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn bound(&self) -> u32 {
        self.trunc.bound()
    }

    /// Number of points including the origin.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.points[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, gamma: &[i64]) -> Option<usize> {
        self.index.get(gamma).copied()
    }

    /// Index of `point(i) + point(j)` when it lies within the truncation.
    pub fn sum_index(&self, i: usize, j: usize) -> Option<usize> {
        let s = self.sum[i * self.len() + j];
        (s != NONE).then_some(s as usize)
    }

    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.pairing[i * self.len() + j] as i64
    }

    /// Indices of the points of degree exactly `d`.
    pub fn points_of_degree(&self, d: u32) -> impl Iterator<Item = usize> + '_ {
        (1..self.len()).filter(move |&i| self.degrees[i] == d)
    }

    fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Truncated series `Σ c_γ x_γ` on a torus arena.
///
/// With `C = Rational` the product carries the sign twist `(−1)^<a,b>`;
/// with `C = VRatFunc` it carries `v^<a,b>`. Coefficients are stored densely
/// per arena point; zero entries are simply absent from [`TorusSeries::terms`].
#[derive(Clone, Debug)]
pub struct TorusSeries<C> {
    arena: Arc<TorusArena>,
    c: Vec<C>,
}

pub type ClassicalSeries = TorusSeries<Rational>;
pub type QuantumSeries = TorusSeries<VRatFunc>;

impl<C: Field> PartialEq for TorusSeries<C> {
    fn eq(&self, o: &Self) -> bool {
        TorusArena::same(&self.arena, &o.arena) && self.c == o.c
    }
}

impl<C: TorusCoeff> TorusSeries<C> {
    pub fn zero(arena: &Arc<TorusArena>) -> Self {
        TorusSeries { arena: arena.clone(), c: vec![C::fzero(); arena.len()] }
    }

    pub fn one(arena: &Arc<TorusArena>) -> Self {
        Self::constant(arena, C::fone())
    }

    pub fn constant(arena: &Arc<TorusArena>, c: C) -> Self {
        let mut s = Self::zero(arena);
        s.c[0] = c;
        s
    }

    /// `c·x_γ`; `γ` must be the origin or a cone point within the truncation.
    pub fn monomial(arena: &Arc<TorusArena>, gamma: &[i64], c: C) -> Result<Self> {
        let i = arena.index_of(gamma).ok_or_else(|| Error::OutsideTruncation(gamma.to_vec()))?;
        let mut s = Self::zero(arena);
        s.c[i] = c;
        Ok(s)
    }

    /// Embeds `f(t)` with `t^m ↦ x_{mγ₀}`; terms beyond the truncation are dropped.
    pub fn from_ray(arena: &Arc<TorusArena>, gamma0: &[i64], f: &UniSeries<C>) -> Self {
        let mut s = Self::zero(arena);
        for (m, x) in f.coeffs().iter().enumerate() {
            if x.fis_zero() {
                continue;
            }
            let p: Vec<i64> = gamma0.iter().map(|g| g * m as i64).collect();
            if let Some(i) = arena.index_of(&p) {
                s.c[i] = x.clone();
            }
        }
        s
    }

    pub fn arena(&self) -> &Arc<TorusArena> {
        &self.arena
    }

    pub fn coeff(&self, gamma: &[i64]) -> C {
        self.arena.index_of(gamma).map(|i| self.c[i].clone()).unwrap_or_else(C::fzero)
    }

    pub fn coeff_at(&self, i: usize) -> &C {
        &self.c[i]
    }

    pub fn set_at(&mut self, i: usize, x: C) {
        self.c[i] = x;
    }

    pub fn constant_term(&self) -> &C {
        &self.c[0]
    }

    /// Nonzero terms in arena order (degree, then decreasing lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &C)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.fis_zero())
            .map(|(i, x)| (self.arena.point(i), x))
    }

    pub fn nonzero_indices(&self) -> Vec<usize> {
        (0..self.c.len()).filter(|&i| !self.c[i].fis_zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.fis_zero())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if TorusArena::same(&self.arena, &o.arena) {
            Ok(())
        } else {
            Err(Error::ArenaMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.zip(o, |a, b| a.fadd(b)))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.zip(o, |a, b| a.fsub(b)))
    }

    fn zip(&self, o: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        TorusSeries { arena: self.arena.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, r: &C) -> Self {
        TorusSeries { arena: self.arena.clone(), c: self.c.iter().map(|a| a.fmul(r)).collect() }
    }

    pub fn neg(&self) -> Self {
        TorusSeries { arena: self.arena.clone(), c: self.c.iter().map(|a| a.fneg()).collect() }
    }

    /// Drops every term of degree above `bound`.
    pub fn truncate(&self, bound: u32) -> Self {
        let mut s = self.clone();
        for i in 0..s.c.len() {
            if self.arena.degree(i) > bound {
                s.c[i] = C::fzero();
            }
        }
        s
    }

    /// Terms of degree exactly `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        let mut s = Self::zero(&self.arena);
        for i in self.arena.points_of_degree(d) {
            s.c[i] = self.c[i].clone();
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_bounded(o, self.arena.bound()))
    }

    /// Twisted product keeping only degrees `≤ bound`.
    pub fn mul_bounded(&self, o: &Self, bound: u32) -> Self {
        let arena = &self.arena;
        let mut out = Self::zero(arena);
        let nz_b = o.nonzero_indices();
        for i in self.nonzero_indices() {
            let a = &self.c[i];
            let di = arena.degree(i);
            if di > bound {
                continue;
            }
            for &j in &nz_b {
                if di + arena.degree(j) > bound {
                    continue;
                }
                if let Some(k) = arena.sum_index(i, j) {
                    let term = a.fmul(&o.c[j]).twist(arena.pairing(i, j));
                    out.c[k].fadd_assign(&term);
                }
            }
        }
        out
    }

    /// Multiplicative inverse, provided the constant term is invertible.
    pub fn inv(&self) -> Result<Self> {
        let c0inv = self.c[0].finv().ok_or(Error::NonInvertible)?;
        // self = c0·(1 + x), inverse = Σ (−x)^k · c0⁻¹
        let mut x = self.scale(&c0inv);
        x.c[0] = C::fzero();
        let minus_x = x.neg();
        let mut acc = Self::one(&self.arena);
        let mut term = Self::one(&self.arena);
        for _ in 0..self.arena.bound() {
            term = term.mul_bounded(&minus_x, self.arena.bound());
            if term.is_zero() {
                break;
            }
            acc = acc.zip(&term, |a, b| a.fadd(b));
        }
        Ok(acc.scale(&c0inv))
    }

    pub fn exp(&self) -> Result<Self> {
        if !self.c[0].fis_zero() {
            return Err(Error::WrongConstantTerm("exp"));
        }
        let mut acc = Self::one(&self.arena);
        let mut term = Self::one(&self.arena);
        for k in 1..=self.arena.bound() {
            term = term.mul_bounded(self, self.arena.bound()).scale(&C::from_rational(&Rational::new(
                1.into(),
                (k as i64).into(),
            )));
            if term.is_zero() {
                break;
            }
            acc = acc.zip(&term, |a, b| a.fadd(b));
        }
        Ok(acc)
    }

    pub fn log(&self) -> Result<Self> {
        if self.c[0] != C::fone() {
            return Err(Error::WrongConstantTerm("log"));
        }
        let mut x = self.clone();
        x.c[0] = C::fzero();
        let mut acc = Self::zero(&self.arena);
        let mut power = Self::one(&self.arena);
        for k in 1..=self.arena.bound() {
            power = power.mul_bounded(&x, self.arena.bound());
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.zip(&power.scale(&C::from_rational(&Rational::new(sign.into(), (k as i64).into()))), |a, b| {
                a.fadd(b)
            });
        }
        Ok(acc)
    }

    /// `a^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.arena);
        for _ in 0..k {
            acc = acc.mul_bounded(self, self.arena.bound());
        }
        acc
    }

    /// `x_{−μ}·self·x_μ` computed termwise: each `x_γ` picks up the twist of `2<γ, μ>`.
    pub fn conjugate_by_monomial(&self, mu: &[i64]) -> Self {
        let mut out = self.clone();
        for i in 0..out.c.len() {
            if !out.c[i].fis_zero() {
                let p = self.arena.lattice().pair(self.arena.point(i), mu);
                out.c[i] = out.c[i].twist(2 * p);
            }
        }
        out
    }
}

impl ClassicalSeries {
    /// Poisson bracket `{e_a, e_b} = (−1)^<a,b> <a,b> e_{a+b}`, extended bilinearly.
    pub fn poisson(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let arena = &self.arena;
        let mut out = Self::zero(arena);
        let nz_b = o.nonzero_indices();
        for i in self.nonzero_indices() {
            for &j in &nz_b {
                if let Some(k) = arena.sum_index(i, j) {
                    let p = arena.pairing(i, j);
                    if p == 0 {
                        continue;
                    }
                    let term = (&self.c[i] * &o.c[j] * int(p)).twist(p);
                    out.c[k] += term;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, VPoly};

    fn arena(k: i64, n: u32) -> Arc<TorusArena> {
        TorusArena::new(SkewLattice::rank2(k), Truncation::orthant(2, n)).unwrap()
    }

    fn q(a: &Arc<TorusArena>, g: &[i64]) -> QuantumSeries {
        QuantumSeries::monomial(a, g, VRatFunc::one()).unwrap()
    }

    fn c(a: &Arc<TorusArena>, g: &[i64]) -> ClassicalSeries {
        ClassicalSeries::monomial(a, g, int(1)).unwrap()
    }

    #[test]
    fn twisted_products() {
        let a = arena(1, 4);
        let v = VRatFunc::from_poly(VPoly::v());
        assert_eq!(q(&a, &[1, 0]).mul(&q(&a, &[0, 1])).unwrap(), q(&a, &[1, 1]).scale(&v));
        let vinv = VRatFunc::monomial(-1, int(1));
        assert_eq!(q(&a, &[0, 1]).mul(&q(&a, &[1, 0])).unwrap(), q(&a, &[1, 1]).scale(&vinv));
        assert_eq!(c(&a, &[1, 0]).mul(&c(&a, &[0, 1])).unwrap(), c(&a, &[1, 1]).neg());
    }

    #[test]
    fn inverse_examples() {
        let a = arena(1, 5);
        let one = ClassicalSeries::one(&a);
        let g = c(&a, &[1, 0]);
        let inv = one.add(&g).unwrap().inv().unwrap();
        let expect: Vec<(Vec<i64>, Rational)> =
            (0..=5).map(|k| (vec![k, 0], int(if k % 2 == 0 { 1 } else { -1 }))).collect();
        let got: Vec<(Vec<i64>, Rational)> = inv.terms().map(|(g, x)| (g.to_vec(), x.clone())).collect();
        assert_eq!(got.len(), expect.len());
        for (g, x) in expect {
            assert_eq!(inv.coeff(&g), x);
        }
        assert_eq!(one.inv().unwrap(), one);
        let qa = QuantumSeries::one(&a);
        let x = qa.add(&q(&a, &[1, 0])).unwrap();
        let y = qa.add(&q(&a, &[0, 1])).unwrap();
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.inv().unwrap(), y.inv().unwrap().mul(&x.inv().unwrap()).unwrap());
        assert!(matches!(ClassicalSeries::zero(&a).inv(), Err(Error::NonInvertible)));
    }

    #[test]
    fn exp_log_examples() {
        let a = TorusArena::new(SkewLattice::rank2(1), Truncation::new(vec![vec![1, 0]], vec![1, 0], 3).unwrap())
            .unwrap();
        let e = c(&a, &[1, 0]).exp().unwrap();
        assert_eq!(e.coeff(&[0, 0]), int(1));
        assert_eq!(e.coeff(&[1, 0]), int(1));
        assert_eq!(e.coeff(&[2, 0]), rat(1, 2));
        assert_eq!(e.coeff(&[3, 0]), rat(1, 6));
        let qa = TorusArena::new(SkewLattice::rank2(1), Truncation::new(vec![vec![1, 0]], vec![1, 0], 3).unwrap())
            .unwrap();
        let l = QuantumSeries::one(&qa).add(&q(&qa, &[1, 0])).unwrap().log().unwrap();
        assert_eq!(l.coeff(&[1, 0]), VRatFunc::one());
        assert_eq!(l.coeff(&[2, 0]), VRatFunc::constant(rat(-1, 2)));
        assert_eq!(l.coeff(&[3, 0]), VRatFunc::constant(rat(1, 3)));
        assert!(c(&a, &[0, 0]).exp().is_err());
    }

    #[test]
    fn bracket_examples() {
        let a = arena(1, 4);
        assert_eq!(c(&a, &[1, 0]).poisson(&c(&a, &[0, 1])).unwrap(), c(&a, &[1, 1]).neg());
        let x = c(&a, &[1, 0]).add(&c(&a, &[1, 2]).scale(&rat(3, 2))).unwrap();
        assert!(x.poisson(&x).unwrap().is_zero());
    }

    #[test]
    fn arena_mismatch() {
        let a = arena(1, 4);
        let b = arena(2, 4);
        assert!(matches!(c(&a, &[1, 0]).mul(&c(&b, &[1, 0])), Err(Error::ArenaMismatch)));
    }
}

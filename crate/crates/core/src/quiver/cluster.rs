//! Cluster transformations attached to a mutation, quantum and classical.
//!
//! The quantum side compares `Ad⁻¹_{𝐄(ê_k)}` on each generator of the double
//! torus with the closed-form image in primed generators. Both sides are
//! multiplied by `ê_{−λ}` first, which lands them in the cone spanned by `ê_k`.

use super::Quiver;
use crate::arith::{int, jet_eval, Expr, Jet1, Rational, VRatFunc};
use crate::error::{Error, Result};
use crate::lattice::{SkewLattice, Truncation};
use crate::qdilog::e_of;
use crate::series::{QuantumSeries, TorusArena};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A finite Laurent element of the quantum torus, without truncation.
#[derive(Clone, Debug)]
struct Laurent<'a> {
    lat: &'a SkewLattice,
    terms: BTreeMap<Vec<i64>, VRatFunc>,
}

impl<'a> Laurent<'a> {
    fn mono(lat: &'a SkewLattice, g: Vec<i64>, c: VRatFunc) -> Self {
        Laurent { lat, terms: BTreeMap::from([(g, c)]) }
    }

    /// `1 + c·ê_g`.
    fn one_plus(lat: &'a SkewLattice, g: Vec<i64>, c: VRatFunc) -> Self {
        let mut l = Self::mono(lat, vec![0; g.len()], VRatFunc::one());
        l.terms.insert(g, c);
        l
    }

    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Vec<i64>, VRatFunc> = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let s: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                let t = x.mul(y).shift(self.lat.pair(a, b));
                let e = terms.entry(s).or_insert_with(VRatFunc::zero);
                *e = e.add(&t);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Laurent { lat: self.lat, terms }
    }

    /// Drops terms in the cone beyond the bound; anything outside the cone is an error.
    fn to_series(&self, arena: &Arc<TorusArena>, in_cone: impl Fn(&[i64]) -> bool) -> Result<QuantumSeries> {
        let mut s = QuantumSeries::zero(arena);
        for (g, c) in &self.terms {
            match arena.index_of(g) {
                Some(i) => s.set_at(i, s.coeff_at(i).add(c)),
                None if in_cone(g) => {}
                None => return Err(Error::OutsideTruncation(g.clone())),
            }
        }
        Ok(s)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

fn scaled(v: &[i64], a: i64) -> Vec<i64> {
    v.iter().map(|x| a * x).collect()
}

/// Rows `f_i` with `f_i(b_j) = δ_ij`, i.e. the inverse transpose of the basis matrix.
pub fn dual_basis(basis: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = basis.len();
    // Solve Bᵀ F_col = e: augment [Bᵀ | I] and reduce.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| (0..n).map(|c| int(basis[c][r])).chain((0..n).map(|c| int(i64::from(r == c)))).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::NonInvertible)?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..2 * n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    // Row i of Bᵀ⁻¹ is f_i.
    (0..n)
        .map(|i| {
            (0..n)
                .map(|c| {
                    let x = &m[i][n + c];
                    if x.is_integer() {
                        i64::try_from(x.to_integer()).map_err(|_| Error::NonInvertible)
                    } else {
                        Err(Error::NonInvertible)
                    }
                })
                .collect()
        })
        .collect()
}

/// Per-generator residuals `ê_{−λ}(Ad⁻¹_{𝐄(ê_k)}(ê_λ) − closed form)`.
#[derive(Clone, Debug)]
pub struct QuantumClusterCheck {
    pub vertex: usize,
    pub bound: u32,
    pub residuals: Vec<(String, QuantumSeries)>,
}

impl QuantumClusterCheck {
    pub fn is_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn failing(&self) -> Vec<&str> {
        self.residuals.iter().filter(|(_, r)| !r.is_zero()).map(|(l, _)| l.as_str()).collect()
    }
}

pub fn cluster_map_quantum(q: &Quiver, k: usize, n: u32) -> Result<QuantumClusterCheck> {
    if !q.is_cluster() {
        return Err(Error::NonCluster("quiver has a 2-cycle".into()));
    }
    let r = q.len();
    if k >= r {
        return Err(Error::Input(format!("vertex {k} out of range")));
    }
    let dbl = q.lattice().double();
    let gens = (0..r).map(|i| unit(2 * r, i)).collect();
    let delta = (0..2 * r).map(|i| i64::from(i < r)).collect();
    let arena = TorusArena::new(dbl.clone(), Truncation::new(gens, delta, n)?)?;
    let in_cone = |g: &[i64]| g[..r].iter().all(|&x| x >= 0) && g[r..].iter().all(|&x| x == 0);

    let basis: Vec<Vec<i64>> = (0..r).map(|i| unit(r, i)).collect();
    let vp = q.mutate_classes(&basis, k)?;
    let fp = dual_basis(&vp)?;
    let lift = |v: &[i64]| -> Vec<i64> { v.iter().copied().chain(std::iter::repeat(0).take(r)).collect() };
    let lift_dual = |f: &[i64]| -> Vec<i64> { std::iter::repeat(0).take(r).chain(f.iter().copied()).collect() };
    let e_prime: Vec<Vec<i64>> = vp.iter().map(|v| lift(v)).collect();
    let e_prime_dual: Vec<Vec<i64>> = fp.iter().map(|f| lift_dual(f)).collect();
    let a = q.arrows();
    let vn = |e: i64| VRatFunc::monomial(e, int(1));
    let one = VRatFunc::one();

    let ek = QuantumSeries::monomial(&arena, &unit(2 * r, k), one.clone())?;
    let e = e_of(&ek)?;
    let e_inv = e.inv()?;
    // (1 + c·(ê'_k)^{−1})^{−1} as a cone series.
    let inv_factor = |c: VRatFunc| -> Result<QuantumSeries> {
        let g = scaled(&e_prime[k], -1);
        QuantumSeries::one(&arena).add(&QuantumSeries::monomial(&arena, &g, c)?)?.inv()
    };

    let mut residuals = Vec::new();
    for (label, lambda) in (0..r)
        .map(|i| (format!("e{i}"), unit(2 * r, i)))
        .chain((0..r).map(|i| (format!("e{i}^v"), unit(2 * r, r + i))))
    {
        let is_dual = label.ends_with("^v");
        let i = lambda.iter().position(|&x| x == 1).expect("unit vector") % r;
        let (laurent, series) = if !is_dual && i == k {
            (Laurent::mono(&dbl, scaled(&e_prime[k], -1), one.clone()), QuantumSeries::one(&arena))
        } else if !is_dual && a[i][k] > 0 {
            let mut s = QuantumSeries::one(&arena);
            for m in 0..a[i][k] {
                s = s.mul(&inv_factor(vn(2 * m + 1))?)?;
            }
            (Laurent::mono(&dbl, e_prime[i].clone(), one.clone()), s)
        } else if !is_dual {
            let mut l = Laurent::mono(&dbl, e_prime[i].clone(), one.clone());
            for m in 0..a[k][i] {
                l = l.mul(&Laurent::one_plus(&dbl, e_prime[k].clone(), vn(2 * m + 1)));
            }
            (l, QuantumSeries::one(&arena))
        } else if i != k {
            (Laurent::mono(&dbl, e_prime_dual[i].clone(), one.clone()), QuantumSeries::one(&arena))
        } else {
            let mut l = Laurent::mono(&dbl, scaled(&e_prime_dual[k], -1), one.clone());
            for j in (0..r).filter(|&j| a[k][j] > 0) {
                l = l.mul(&Laurent::mono(&dbl, scaled(&e_prime_dual[j], a[k][j]), one.clone()));
            }
            (l, inv_factor(vn(1))?)
        };
        let neg = Laurent::mono(&dbl, scaled(&lambda, -1), one.clone());
        let rhs = neg.mul(&laurent).to_series(&arena, in_cone)?.mul(&series)?;
        let lhs = e_inv.conjugate_by_monomial(&lambda).mul(&e)?;
        residuals.push((label, lhs.sub(&rhs)?));
    }
    Ok(QuantumClusterCheck { vertex: k, bound: n, residuals })
}

/// Old coordinates `(y, x)` as expressions in the primed ones; variable `i`
/// is `y'_i` and variable `r + i` is `x'_i`.
pub fn classical_map(q: &Quiver, k: usize) -> Vec<Expr> {
    let r = q.len();
    let a = q.arrows();
    let y = |i: usize| Expr::var(i);
    let x = |i: usize| Expr::var(r + i);
    let one_minus_inv = || Expr::int(1) - y(k).recip();
    let mut out = Vec::with_capacity(2 * r);
    for i in 0..r {
        out.push(if i == k {
            y(k).recip()
        } else if a[i][k] > 0 {
            y(i) / one_minus_inv().pow(a[i][k])
        } else {
            y(i) * (Expr::int(1) - y(k)).pow(a[k][i])
        });
    }
    for i in 0..r {
        out.push(if i == k {
            let mut e = x(k).recip();
            for j in (0..r).filter(|&j| a[k][j] > 0) {
                e = e * x(j).pow(a[k][j]);
            }
            e / one_minus_inv()
        } else {
            x(i)
        });
    }
    out
}

/// `{z_a, z_b}` for the log-canonical structure with form `b` on `y` and
/// `{y_i, x_j} = δ_ij y_i x_j`.
fn structure(b: &[Vec<i64>], z: &[Rational]) -> Vec<Vec<Rational>> {
    let r = b.len();
    let mut p = vec![vec![Rational::zero(); 2 * r]; 2 * r];
    for i in 0..r {
        for j in 0..r {
            p[i][j] = int(b[i][j]) * &z[i] * &z[j];
        }
        p[i][r + i] = &z[i] * &z[r + i];
        p[r + i][i] = -&p[i][r + i];
    }
    p
}

fn bracket(f: &Jet1, g: &Jet1, p: &[Vec<Rational>]) -> Rational {
    let mut s = Rational::zero();
    for (a, fa) in f.partials.iter().enumerate() {
        if fa.is_zero() {
            continue;
        }
        for (b, gb) in g.partials.iter().enumerate() {
            if !gb.is_zero() && !p[a][b].is_zero() {
                s += fa * gb * &p[a][b];
            }
        }
    }
    s
}

/// `y_i Π_j x_j^{b_ij} + 1` for every `i`; all zero exactly on `N`.
fn n_defect(b: &[Vec<i64>], z: &[Rational]) -> Vec<Rational> {
    let r = b.len();
    (0..r)
        .map(|i| {
            let mut m = z[i].clone();
            for j in 0..r {
                m *= pow_i(&z[r + j], b[i][j]);
            }
            m + Rational::one()
        })
        .collect()
}

fn pow_i(x: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClassicalClusterCheck {
    pub trials: usize,
    pub bracket_failures: usize,
    /// Points of `N'` whose image is off `N`.
    pub n_failures: usize,
    /// Points off `N'` whose image lands on `N`.
    pub off_failures: usize,
}

impl ClassicalClusterCheck {
    pub fn passed(&self) -> bool {
        self.bracket_failures == 0 && self.n_failures == 0 && self.off_failures == 0
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-9i64..=9);
    }
    Rational::new(p.into(), rng.gen_range(1i64..=9).into())
}

/// Checks the Poisson property and `N' ↦ N` at `trials` random rational points.
pub fn cluster_map_classical_check(q: &Quiver, k: usize, trials: usize, seed: u64) -> Result<ClassicalClusterCheck> {
    if !q.is_cluster() {
        return Err(Error::NonCluster("quiver has a 2-cycle".into()));
    }
    let r = q.len();
    let b = q.lattice().form().to_vec();
    let bp = q.mutate(k)?.lattice().form().to_vec();
    let map = classical_map(q, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = ClassicalClusterCheck { trials, ..Default::default() };
    let mut done = 0;
    while done < trials {
        let mut z: Vec<Rational> = (0..2 * r).map(|_| random_nonzero(&mut rng)).collect();
        if z[k].is_one() {
            continue;
        }
        let Ok(jets) = map.iter().map(|e| jet_eval(e, &z)).collect::<Result<Vec<_>>>() else { continue };
        done += 1;
        let p = structure(&bp, &z);
        let val = |i: usize| &jets[i].value;
        let mut ok = true;
        for i in 0..2 * r {
            for j in 0..2 * r {
                let want = match (i < r, j < r) {
                    (true, true) => int(b[i][j]) * val(i) * val(j),
                    (true, false) if j - r == i => val(i) * val(j),
                    (false, true) if i - r == j => -(val(i) * val(j)),
                    _ => Rational::zero(),
                };
                if bracket(&jets[i], &jets[j], &p) != want {
                    ok = false;
                }
            }
        }
        if !ok {
            out.bracket_failures += 1;
        }

        // A point of N': y'_i = −Π_j x'_j^{−b'_ij}.
        for i in 0..r {
            let mut m = -Rational::one();
            for j in 0..r {
                m *= pow_i(&z[r + j], -bp[i][j]);
            }
            z[i] = m;
        }
        if z[k].is_one() {
            continue;
        }
        let on: Vec<Rational> = match map.iter().map(|e| e.eval(&z)).collect::<Result<_>>() {
            Ok(v) => v,
            Err(_) => continue,
        };
        if n_defect(&b, &on).iter().any(|d| !d.is_zero()) {
            out.n_failures += 1;
        }
        let j = rng.gen_range(0..r);
        z[j] = &z[j] * int(2);
        if z[k].is_one() {
            continue;
        }
        if let Ok(off) = map.iter().map(|e| e.eval(&z)).collect::<Result<Vec<_>>>() {
            if n_defect(&b, &off).iter().all(|d| d.is_zero()) {
                out.off_failures += 1;
            }
        }
    }
    Ok(out)
}

/// The quivers used by the cluster checks, with the vertex to mutate at.
pub fn standard_cases() -> Vec<(&'static str, Quiver, usize)> {
    let a2 = Quiver::new(vec![vec![0, 1], vec![0, 0]]).expect("A2");
    let path = Quiver::new(vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).expect("path");
    vec![
        ("kronecker-1", Quiver::kronecker(1), 0),
        ("kronecker-1", Quiver::kronecker(1), 1),
        ("kronecker-2", Quiver::kronecker(2), 0),
        ("kronecker-2", Quiver::kronecker(2), 1),
        ("a2", a2.clone(), 0),
        ("a2", a2, 1),
        ("path3", path, 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_basis_inverts() {
        let b = vec![vec![-1, 0], vec![2, 1]];
        let f = dual_basis(&b).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let d: i64 = f[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
                assert_eq!(d, i64::from(i == j));
            }
        }
    }

    #[test]
    fn single_vertex_classical() {
        let q = Quiver::new(vec![vec![0]]).unwrap();
        let c = cluster_map_classical_check(&q, 0, 10, 1).unwrap();
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn kronecker_quantum_low_order() {
        let c = cluster_map_quantum(&Quiver::kronecker(2), 0, 4).unwrap();
        assert!(c.is_zero(), "{:?}", c.failing());
        let c = cluster_map_quantum(&Quiver::kronecker(2), 1, 4).unwrap();
        assert!(c.is_zero(), "{:?}", c.failing());
    }

    #[test]
    fn kronecker_classical() {
        for k in 0..2 {
            let c = cluster_map_classical_check(&Quiver::kronecker(2), k, 20, 7).unwrap();
            assert!(c.passed(), "{c:?}");
        }
    }
}

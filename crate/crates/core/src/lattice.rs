//! Charge lattice, central charges, truncation cones and the support check.

use crate::arith::{int, GaussRational, Rational};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// `Z^n` with the skew form `<a, b> = a^T B b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SkewLattice {
    form: Vec<Vec<i64>>,
}

impl SkewLattice {
    pub fn new(form: Vec<Vec<i64>>) -> Result<Self> {
        let n = form.len();
        if n == 0 {
            return Err(Error::Input("lattice rank must be positive".into()));
        }
        for row in &form {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if form[i][j] != -form[j][i] {
                    return Err(Error::NotSkew);
                }
            }
        }
        Ok(SkewLattice { form })
    }

    /// `B = [[0, k], [-k, 0]]`.
    pub fn rank2(k: i64) -> Self {
        SkewLattice { form: vec![vec![0, k], vec![-k, 0]] }
    }

    pub fn rank(&self) -> usize {
        self.form.len()
    }

    pub fn form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn skew_pair(&self, a: &[i64], b: &[i64]) -> Result<i64> {
        let n = self.rank();
        for v in [a, b] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        Ok(self.pair(a, b))
    }

    /// `skew_pair` without the length check.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.form[i];
            for (j, &bj) in b.iter().enumerate() {
                s += ai * row[j] * bj;
            }
        }
        s
    }

    /// `Γ ⊕ Γ^∨` with `<(g1,n1),(g2,n2)> = <g1,g2> + n2(g1) − n1(g2)`.
    pub fn double(&self) -> SkewLattice {
        let n = self.rank();
        let mut form = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                form[i][j] = self.form[i][j];
            }
            form[i][n + i] = 1;
            form[n + i][i] = -1;
        }
        SkewLattice { form }
    }
}

/// Central charge: the images `Z(e_i)` of the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Charge {
    values: Vec<GaussRational>,
}

/// Position of two charges in clockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayOrder {
    Before,
    Same,
    After,
}

impl Charge {
    pub fn new(values: Vec<GaussRational>) -> Self {
        Charge { values }
    }

    pub fn values(&self) -> &[GaussRational] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn eval(&self, gamma: &[i64]) -> GaussRational {
        let mut re = Rational::zero();
        let mut im = Rational::zero();
        for (g, z) in gamma.iter().zip(&self.values) {
            if *g != 0 {
                let g = int(*g);
                re += &z.re * &g;
                im += &z.im * &g;
            }
        }
        GaussRational::new(re, im)
    }

    pub fn clockwise_cmp(&self, g1: &[i64], g2: &[i64]) -> Result<RayOrder> {
        cmp_charges(&self.eval(g1), &self.eval(g2)).ok_or_else(|| {
            let z = if self.eval(g1).is_zero() { g1 } else { g2 };
            Error::ZeroCharge(z.to_vec())
        })
    }
}

/// Clockwise comparison of two nonzero charges in a common half-plane.
///
/// `Before` means the first has the larger argument. `None` on a zero charge.
pub fn cmp_charges(z1: &GaussRational, z2: &GaussRational) -> Option<RayOrder> {
    if z1.is_zero() || z2.is_zero() {
        return None;
    }
    let c = GaussRational::cross(z2, z1);
    Some(if c.is_positive() {
        RayOrder::Before
    } else if c.is_negative() {
        RayOrder::After
    } else {
        RayOrder::Same
    })
}

/// Confirms that the given nonzero charges fit in an open half-plane, so
/// that [`cmp_charges`] is a total preorder on everything they generate.
pub fn check_half_plane(charges: &[GaussRational]) -> Result<()> {
    if charges.iter().any(|z| z.is_zero()) {
        return Err(Error::NotInHalfPlane);
    }
    // the clockwise-most charge has every other charge weakly counterclockwise
    let extreme = |ccw: bool| {
        charges.iter().find(|a| {
            charges.iter().all(|b| {
                let c = if ccw { GaussRational::cross(b, a) } else { GaussRational::cross(a, b) };
                !c.is_negative() && !(c.is_zero() && GaussRational::dot(a, b).is_negative())
            })
        })
    };
    match (extreme(false), extreme(true)) {
        (Some(a), Some(b)) => {
            let c = GaussRational::cross(a, b);
            if c.is_positive() || (c.is_zero() && GaussRational::dot(a, b).is_positive()) {
                Ok(())
            } else {
                Err(Error::NotInHalfPlane)
            }
        }
        _ => Err(Error::NotInHalfPlane),
    }
}

/// Strict cone given by generators, graded by the covector `degree`, cut at `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Truncation {
    generators: Vec<Vec<i64>>,
    degree: Vec<i64>,
    bound: u32,
}

impl Truncation {
    /// Strictness of the cone follows from `degree(g) ≥ 1` on every generator:
    /// a line `±x` in the cone would need `degree(x) > 0` and `degree(−x) > 0`.
    pub fn new(generators: Vec<Vec<i64>>, degree: Vec<i64>, bound: u32) -> Result<Self> {
        let n = degree.len();
        if generators.is_empty() {
            return Err(Error::InvalidTruncation("no generators".into()));
        }
        if bound == 0 {
            return Err(Error::InvalidTruncation("bound must be positive".into()));
        }
        for g in &generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.len() });
            }
            if dot(&degree, g) < 1 {
                return Err(Error::InvalidTruncation(format!("degree of generator {g:?} is not positive")));
            }
        }
        Ok(Truncation { generators, degree, bound })
    }

    /// Positive orthant of `Z^n` graded by total degree.
    pub fn orthant(n: usize, bound: u32) -> Self {
        let generators = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Truncation { generators, degree: vec![1; n], bound }
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn degree_covector(&self) -> &[i64] {
        &self.degree
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn with_bound(&self, bound: u32) -> Self {
        Truncation { bound, ..self.clone() }
    }

    pub fn degree(&self, gamma: &[i64]) -> i64 {
        dot(&self.degree, gamma)
    }

    /// Every monoid point with `1 ≤ δ ≤ N`, sorted by `δ`, ties in
    /// decreasing lexicographic order (so `(1,0)` precedes `(0,1)`).
    pub fn enumerate_cone(&self) -> Vec<(Vec<i64>, i64)> {
        let n = self.degree.len();
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut frontier = vec![vec![0; n]];
        while let Some(p) = frontier.pop() {
            for g in &self.generators {
                let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
                if self.degree(&q) <= self.bound as i64 && seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let mut out: Vec<(Vec<i64>, i64)> = seen
            .into_iter()
            .filter(|p| p.iter().any(|&x| x != 0))
            .map(|p| {
                let d = self.degree(&p);
                (p, d)
            })
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        out
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Quadratic form `Q` for the support property.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportForm {
    q: Vec<Vec<Rational>>,
}

impl SupportForm {
    pub fn new(q: Vec<Vec<Rational>>) -> Result<Self> {
        let n = q.len();
        for i in 0..n {
            if q[i].len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: q[i].len() });
            }
            for j in 0..n {
                if q[i][j] != q[j][i] {
                    return Err(Error::Input("support form is not symmetric".into()));
                }
            }
        }
        Ok(SupportForm { q })
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, xj) in x.iter().enumerate() {
                s += &self.q[i][j] * xi * xj;
            }
        }
        s
    }
}

/// True iff `Q` is negative definite on `ker Z ⊗ Q` and `Q ≥ 0` on the support.
pub fn support_check(support: &[Vec<i64>], z: &Charge, q: &SupportForm) -> bool {
    let n = z.rank();
    let rows = vec![
        z.values().iter().map(|c| c.re.clone()).collect::<Vec<_>>(),
        z.values().iter().map(|c| c.im.clone()).collect::<Vec<_>>(),
    ];
    let kernel = nullspace(&rows, n);
    let k = kernel.len();
    // restricted Gram matrix K^T Q K
    let gram: Vec<Vec<Rational>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    let mut s = Rational::zero();
                    for i in 0..n {
                        for j in 0..n {
                            s += &kernel[a][i] * &q.q[i][j] * &kernel[b][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    // negative definite iff (−1)^m · (m-th leading minor) > 0 for all m
    for m in 1..=k {
        let minor: Vec<Vec<Rational>> = gram[..m].iter().map(|r| r[..m].to_vec()).collect();
        let d = determinant(minor);
        let signed = if m % 2 == 1 { -d } else { d };
        if !signed.is_positive() {
            return false;
        }
    }
    support.iter().all(|g| {
        let x: Vec<Rational> = g.iter().map(|&c| int(c)).collect();
        !q.eval(&x).is_negative()
    })
}

/// Basis of `{x : rows·x = 0}` over the rationals.
pub fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = int(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let lead = m[c][c].clone();
        det *= &lead;
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &lead;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    fn z(re: i64, im: i64) -> GaussRational {
        GaussRational::from_ints(re, im)
    }

    #[test]
    fn skew_pair_examples() {
        let l = SkewLattice::rank2(1);
        assert_eq!(l.skew_pair(&[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(l.skew_pair(&[3, 5], &[3, 5]).unwrap(), 0);
        assert_eq!(SkewLattice::rank2(4).skew_pair(&[1, 0], &[0, 1]).unwrap(), 4);
        assert!(matches!(l.skew_pair(&[1], &[0, 1]), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(SkewLattice::new(vec![vec![0, 1], vec![1, 0]]), Err(Error::NotSkew)));
    }

    #[test]
    fn clockwise_examples() {
        let c = Charge::new(vec![z(-1, 1), z(1, 1)]);
        assert_eq!(c.clockwise_cmp(&[1, 0], &[0, 1]).unwrap(), RayOrder::Before);
        let c = Charge::new(vec![z(1, 1), z(2, 2)]);
        assert_eq!(c.clockwise_cmp(&[1, 0], &[0, 1]).unwrap(), RayOrder::Same);
        let c = Charge::new(vec![z(0, 1), z(-1, 1)]);
        assert_eq!(c.clockwise_cmp(&[1, 0], &[0, 1]).unwrap(), RayOrder::After);
        let c = Charge::new(vec![z(0, 0), z(1, 1)]);
        assert!(matches!(c.clockwise_cmp(&[1, 0], &[0, 1]), Err(Error::ZeroCharge(_))));
    }

    #[test]
    fn half_plane() {
        assert!(check_half_plane(&[z(1, 0), z(0, 1), z(-5, 1)]).is_ok());
        assert!(check_half_plane(&[z(1, 0), z(-1, 0)]).is_err());
        assert!(check_half_plane(&[z(1, 0), z(-1, 1), z(0, -1)]).is_err());
        assert!(check_half_plane(&[z(1, 1), z(2, 2)]).is_ok());
    }

    #[test]
    fn double_lattice_examples() {
        let d = SkewLattice::new(vec![vec![0]]).unwrap().double();
        assert_eq!(d.form(), &[vec![0, 1], vec![-1, 0]]);
        let d = SkewLattice::rank2(3).double();
        let expected = vec![
            vec![0, 3, 1, 0],
            vec![-3, 0, 0, 1],
            vec![-1, 0, 0, 0],
            vec![0, -1, 0, 0],
        ];
        assert_eq!(d.form(), expected.as_slice());
        let m: Vec<Vec<Rational>> =
            d.form().iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        assert_eq!(determinant(m), int(1));
    }

    #[test]
    fn cone_examples() {
        let t = Truncation::new(vec![vec![1, 0], vec![0, 1]], vec![1, 1], 2).unwrap();
        let pts: Vec<Vec<i64>> = t.enumerate_cone().into_iter().map(|p| p.0).collect();
        assert_eq!(pts, vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        let t = Truncation::new(vec![vec![1, 0]], vec![1, 0], 3).unwrap();
        let pts: Vec<Vec<i64>> = t.enumerate_cone().into_iter().map(|p| p.0).collect();
        assert_eq!(pts, vec![vec![1, 0], vec![2, 0], vec![3, 0]]);
        let t = Truncation::new(vec![vec![1, 1], vec![1, 2]], vec![0, 1], 3).unwrap();
        let pts: Vec<Vec<i64>> = t.enumerate_cone().into_iter().map(|p| p.0).collect();
        let degs: Vec<i64> = pts.iter().map(|p| t.degree(p)).collect();
        assert_eq!(degs, vec![1, 2, 2, 3, 3]);
        let set: BTreeSet<Vec<i64>> = pts.into_iter().collect();
        let expected: BTreeSet<Vec<i64>> =
            [vec![1, 1], vec![1, 2], vec![2, 2], vec![2, 3], vec![3, 3]].into_iter().collect();
        assert_eq!(set, expected);
        assert!(Truncation::new(vec![vec![1, -1]], vec![1, 1], 3).is_err());
    }

    #[test]
    fn support_examples() {
        let id = SupportForm::new(vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap();
        let inj = Charge::new(vec![z(1, 0), z(0, 1)]);
        assert!(support_check(&[vec![1, 0]], &inj, &id));
        let degenerate = Charge::new(vec![z(1, 0), z(1, 0)]);
        assert!(!support_check(&[], &degenerate, &id));
        let q = SupportForm::new(vec![vec![int(1), int(2)], vec![int(2), int(1)]]).unwrap();
        assert!(support_check(&[vec![1, 1]], &degenerate, &q));
        assert!(!support_check(&[vec![1, -1]], &degenerate, &q));
    }
}

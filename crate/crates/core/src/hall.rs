//! Brute-force Hall algebras of finite-dimensional modules over `𝔽_p`.
//!
//! A module of dimension `n` is a tuple of `m` matrices acting on column
//! vectors of `𝔽_pⁿ`. Tuples are coded base `p`, most significant digit
//! first, so code order is lexicographic order and the first code met in
//! an orbit is its canonical representative.

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relations {
    /// Arbitrary matrix tuples.
    Free,
    /// `x^d = 0`, one generator.
    TruncatedPoly(u32),
    /// Each word (a list of generator indices, leftmost acts last) is zero.
    Monomials(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqAlgebraSpec {
    pub p: u32,
    pub m: usize,
    pub relations: Relations,
    /// Keep only modules on which the generators act jointly nilpotently.
    #[serde(default)]
    pub nilpotent: bool,
}

impl FqAlgebraSpec {
    pub fn truncated_poly(p: u32, d: u32) -> Self {
        FqAlgebraSpec { p, m: 1, relations: Relations::TruncatedPoly(d), nilpotent: false }
    }

    pub fn free(p: u32, m: usize) -> Self {
        FqAlgebraSpec { p, m, relations: Relations::Free, nilpotent: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 2 || (2..self.p).take_while(|d| d * d <= self.p).any(|d| self.p % d == 0) {
            return Err(Error::Input(format!("{} is not prime", self.p)));
        }
        if self.p > 251 {
            return Err(Error::Input("only primes below 256 are supported".into()));
        }
        match &self.relations {
            Relations::TruncatedPoly(d) if self.m != 1 || *d < 2 => {
                Err(Error::Input("truncated polynomial relation needs m = 1 and d ≥ 2".into()))
            }
            Relations::Monomials(ws) if ws.iter().flatten().any(|&g| g >= self.m) => {
                Err(Error::Input("monomial relation uses an unknown generator".into()))
            }
            _ => Ok(()),
        }
    }
}

type Mat = Vec<u8>;

#[derive(Clone, Copy, Debug)]
struct Fp {
    p: u32,
}

impl Fp {
    fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p) as u8
    }
    fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p - b as u32) % self.p) as u8
    }
    fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p) as u8
    }
    fn inv(self, a: u8) -> u8 {
        let mut r = 1u32;
        let (mut b, mut e) = (a as u32, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r as u8
    }

    fn matmul(self, n: usize, a: &[u8], b: &[u8]) -> Mat {
        let mut c = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] = self.add(c[i * n + j], self.mul(x, b[k * n + j]));
                }
            }
        }
        c
    }

    fn apply(self, n: usize, a: &[u8], v: &[u8]) -> Vec<u8> {
        (0..n).map(|i| (0..n).fold(0, |s, k| self.add(s, self.mul(a[i * n + k], v[k])))).collect()
    }

    fn inverse(self, n: usize, a: &[u8]) -> Option<Mat> {
        let mut m: Vec<Vec<u8>> = (0..n)
            .map(|i| a[i * n..(i + 1) * n].iter().copied().chain((0..n).map(|j| u8::from(i == j))).collect())
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| m[r][col] != 0)?;
            m.swap(col, piv);
            let inv = self.inv(m[col][col]);
            for x in m[col].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..n {
                let f = m[r][col];
                if r != col && f != 0 {
                    for c in 0..2 * n {
                        m[r][c] = self.sub(m[r][c], self.mul(f, m[col][c]));
                    }
                }
            }
        }
        Some(m.iter().flat_map(|row| row[n..].iter().copied()).collect())
    }

    /// Reduced row echelon form of the span of `rows`; returns (basis, pivots).
    fn rref(self, n: usize, rows: &[Vec<u8>]) -> (Vec<Vec<u8>>, Vec<usize>) {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..n {
            let Some(piv) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
            m.swap(r, piv);
            let inv = self.inv(m[r][col]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..m.len() {
                let f = m[i][col];
                if i != r && f != 0 {
                    for c in 0..n {
                        m[i][c] = self.sub(m[i][c], self.mul(f, m[r][c]));
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        m.truncate(r);
        (m, pivots)
    }
}

/// One isomorphism class, stored by its lexicographically least tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqModule {
    pub dim: usize,
    pub matrices: Vec<Mat>,
    pub code: u64,
    pub aut_count: u64,
    /// `#{v : R·v = M}`.
    pub gen_count: u64,
    pub orbit_size: u64,
    /// `#{X in the orbit : e₁ generates}`; the ideal-count oracle.
    pub e1_cyclic: u64,
}

impl FqModule {
    pub fn is_cyclic(&self) -> bool {
        self.gen_count > 0
    }
}

/// A class id: `(dimension, index within that dimension)`.
pub type ClassId = (usize, usize);

struct Level {
    classes: Vec<FqModule>,
    class_of: Vec<u32>,
    gl_order: u64,
    valid_tuples: u64,
    /// For each class `G`: `(E, F) ↦ #{N ⊂ G : N ≅ E, G/N ≅ F}`.
    structure: Vec<HashMap<(ClassId, ClassId), u64>>,
}

/// All classes of dimension `≤ N` with their Hall structure constants.
pub struct HallLab {
    pub spec: FqAlgebraSpec,
    fp: Fp,
    levels: Vec<Level>,
}

fn pow_u128(b: u128, e: u32) -> u128 {
    b.checked_pow(e).unwrap_or(u128::MAX)
}

impl HallLab {
    pub fn new(spec: FqAlgebraSpec, n: usize) -> Result<Self> {
        Self::with_budget(spec, n, DEFAULT_BUDGET)
    }

    pub fn with_budget(spec: FqAlgebraSpec, n: usize, budget: u128) -> Result<Self> {
        spec.validate()?;
        let needed = pow_u128(spec.p as u128, (spec.m * n * n) as u32);
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let fp = Fp { p: spec.p };
        let mut lab = HallLab { spec, fp, levels: Vec::new() };
        for d in 0..=n {
            let level = lab.enumerate(d);
            lab.levels.push(level);
        }
        for d in 0..=n {
            let s: Vec<_> = (0..lab.levels[d].classes.len()).map(|g| lab.structure_of((d, g))).collect();
            lab.levels[d].structure = s;
        }
        Ok(lab)
    }

    pub fn max_dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn classes(&self, dim: usize) -> &[FqModule] {
        &self.levels[dim].classes
    }

    pub fn module(&self, id: ClassId) -> &FqModule {
        &self.levels[id.0].classes[id.1]
    }

    pub fn gl_order(&self, dim: usize) -> u64 {
        self.levels[dim].gl_order
    }

    /// Number of tuples satisfying the relations in dimension `dim`.
    pub fn valid_tuples(&self, dim: usize) -> u64 {
        self.levels[dim].valid_tuples
    }

    fn decode(&self, n: usize, mut code: u64) -> Vec<Mat> {
        let len = self.spec.m * n * n;
        let mut digits = vec![0u8; len];
        for i in (0..len).rev() {
            digits[i] = (code % self.spec.p as u64) as u8;
            code /= self.spec.p as u64;
        }
        if n == 0 {
            return vec![Vec::new(); self.spec.m];
        }
        digits.chunks(n * n).map(|c| c.to_vec()).collect()
    }

    fn encode(&self, mats: &[Mat]) -> u64 {
        mats.iter().flatten().fold(0u64, |c, &d| c * self.spec.p as u64 + d as u64)
    }

    fn satisfies(&self, n: usize, mats: &[Mat]) -> bool {
        let f = self.fp;
        let zero = |m: &Mat| m.iter().all(|&x| x == 0);
        let word = |w: &[usize]| -> Mat {
            let mut acc: Mat = (0..n * n).map(|i| u8::from(i / n == i % n)).collect();
            for &g in w {
                acc = f.matmul(n, &acc, &mats[g]);
            }
            acc
        };
        let ok = match &self.spec.relations {
            Relations::Free => true,
            Relations::TruncatedPoly(d) => zero(&word(&vec![0; *d as usize])),
            Relations::Monomials(ws) => ws.iter().all(|w| zero(&word(w))),
        };
        ok && (!self.spec.nilpotent || self.jointly_nilpotent(n, mats))
    }

    fn jointly_nilpotent(&self, n: usize, mats: &[Mat]) -> bool {
        let mut span: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect();
        for _ in 0..n {
            let images: Vec<Vec<u8>> =
                span.iter().flat_map(|v| mats.iter().map(move |a| self.fp.apply(n, a, v))).collect();
            span = self.fp.rref(n, &images).0;
            if span.is_empty() {
                return true;
            }
        }
        span.is_empty()
    }

    /// Dimension of `R·v`.
    fn cyclic_span(&self, n: usize, mats: &[Mat], v: &[u8]) -> usize {
        let mut basis = self.fp.rref(n, &[v.to_vec()]).0;
        loop {
            let mut rows = basis.clone();
            for b in &basis {
                for a in mats {
                    rows.push(self.fp.apply(n, a, b));
                }
            }
            let next = self.fp.rref(n, &rows).0;
            if next.len() == basis.len() {
                return basis.len();
            }
            basis = next;
        }
    }

    fn vectors(&self, n: usize) -> impl Iterator<Item = Vec<u8>> + '_ {
        let p = self.spec.p as u64;
        (0..p.pow(n as u32)).map(move |mut c| {
            let mut v = vec![0u8; n];
            for i in (0..n).rev() {
                v[i] = (c % p) as u8;
                c /= p;
            }
            v
        })
    }

    fn gl(&self, n: usize) -> Vec<(Mat, Mat)> {
        let p = self.spec.p as u64;
        (0..p.pow((n * n) as u32))
            .filter_map(|mut c| {
                let mut g = vec![0u8; n * n];
                for i in (0..n * n).rev() {
                    g[i] = (c % p) as u8;
                    c /= p;
                }
                self.fp.inverse(n, &g).map(|h| (g, h))
            })
            .collect()
    }

    fn enumerate(&self, n: usize) -> Level {
        let total = (self.spec.p as u64).pow((self.spec.m * n * n) as u32);
        let valid: Vec<bool> = (0..total).into_par_iter().map(|c| self.satisfies(n, &self.decode(n, c))).collect();
        let valid_tuples = valid.iter().filter(|&&b| b).count() as u64;
        let gl = self.gl(n);
        let gl_order = gl.len() as u64;
        let mut class_of = vec![u32::MAX; total as usize];
        let mut classes = Vec::new();
        let e1: Vec<u8> = (0..n).map(|i| u8::from(i == 0)).collect();
        for c in 0..total {
            if !valid[c as usize] || class_of[c as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mats = self.decode(n, c);
            let mut orbit_size = 0u64;
            let mut e1_cyclic = 0u64;
            for (g, h) in &gl {
                let conj: Vec<Mat> = mats.iter().map(|a| self.fp.matmul(n, &self.fp.matmul(n, g, a), h)).collect();
                let code = self.encode(&conj) as usize;
                if class_of[code] == u32::MAX {
                    class_of[code] = id;
                    orbit_size += 1;
                    if n == 0 || self.cyclic_span(n, &conj, &e1) == n {
                        e1_cyclic += 1;
                    }
                }
            }
            let gen_count = if n == 0 { 1 } else { self.vectors(n).filter(|v| self.cyclic_span(n, &mats, v) == n).count() as u64 };
            classes.push(FqModule {
                dim: n,
                matrices: mats,
                code: c,
                aut_count: gl_order / orbit_size,
                gen_count,
                orbit_size,
                e1_cyclic,
            });
        }
        Level { classes, class_of, gl_order, valid_tuples, structure: Vec::new() }
    }

    fn class_id(&self, n: usize, mats: &[Mat]) -> ClassId {
        (n, self.levels[n].class_of[self.encode(mats) as usize] as usize)
    }

    /// Every invariant subspace of `G`, as an RREF basis with its pivots.
    fn submodules(&self, g: &FqModule) -> Vec<(Vec<Vec<u8>>, Vec<usize>)> {
        let n = g.dim;
        let mut out = Vec::new();
        for r in 0..=n {
            for (basis, pivots) in self.subspaces(n, r) {
                let inv = basis.iter().all(|b| {
                    g.matrices.iter().all(|a| {
                        let w = self.fp.apply(n, a, b);
                        let mut rows = basis.clone();
                        rows.push(w);
                        self.fp.rref(n, &rows).0.len() == r
                    })
                });
                if inv {
                    out.push((basis, pivots));
                }
            }
        }
        out
    }

    /// All `r`-dimensional subspaces of `𝔽_pⁿ` in RREF.
    fn subspaces(&self, n: usize, r: usize) -> Vec<(Vec<Vec<u8>>, Vec<usize>)> {
        let mut out = Vec::new();
        for pivots in combinations(n, r) {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| ((pivots[i] + 1)..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            let p = self.spec.p as u64;
            for mut code in 0..p.pow(free.len() as u32) {
                let mut rows = vec![vec![0u8; n]; r];
                for (i, &piv) in pivots.iter().enumerate() {
                    rows[i][piv] = 1;
                }
                for &(i, c) in &free {
                    rows[i][c] = (code % p) as u8;
                    code /= p;
                }
                out.push((rows, pivots.clone()));
            }
        }
        out
    }

    /// Classes of the submodule and quotient for an invariant RREF subspace.
    fn sub_and_quotient(&self, g: &FqModule, basis: &[Vec<u8>], pivots: &[usize]) -> (ClassId, ClassId) {
        let n = g.dim;
        let r = basis.len();
        let rest: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let reduce = |mut w: Vec<u8>| -> Vec<u8> {
            for (b, &piv) in basis.iter().zip(pivots) {
                let f = w[piv];
                if f != 0 {
                    for c in 0..n {
                        w[c] = self.fp.sub(w[c], self.fp.mul(f, b[c]));
                    }
                }
            }
            w
        };
        let mut sub = Vec::new();
        let mut quo = Vec::new();
        for a in &g.matrices {
            // Column j of the restriction holds the pivot coordinates of A·b_j.
            let mut s = vec![0u8; r * r];
            for (j, b) in basis.iter().enumerate() {
                let w = self.fp.apply(n, a, b);
                for (i, &piv) in pivots.iter().enumerate() {
                    s[i * r + j] = w[piv];
                }
            }
            sub.push(s);
            let q = n - r;
            let mut t = vec![0u8; q * q];
            for (j, &c) in rest.iter().enumerate() {
                let e: Vec<u8> = (0..n).map(|i| u8::from(i == c)).collect();
                let w = reduce(self.fp.apply(n, a, &e));
                for (i, &cc) in rest.iter().enumerate() {
                    t[i * q + j] = w[cc];
                }
            }
            quo.push(t);
        }
        let sid = if r == 0 { (0, 0) } else { self.class_id(r, &sub) };
        let qid = if r == n { (0, 0) } else { self.class_id(n - r, &quo) };
        (sid, qid)
    }

    fn structure_of(&self, g: ClassId) -> HashMap<(ClassId, ClassId), u64> {
        let gm = self.module(g);
        let mut table = HashMap::new();
        for (basis, pivots) in self.submodules(gm) {
            *table.entry(self.sub_and_quotient(gm, &basis, &pivots)).or_insert(0) += 1;
        }
        table
    }

    /// Number of submodules of `G` isomorphic to `E` with quotient isomorphic to `F`.
    pub fn hall_constant(&self, e: ClassId, f: ClassId, g: ClassId) -> u64 {
        if e.0 + f.0 != g.0 {
            return 0;
        }
        self.levels[g.0].structure[g.1].get(&(e, f)).copied().unwrap_or(0)
    }

    /// `ĥ_E·ĥ_F = Σ_G hall_constant(E, F, G) ĥ_G`.
    pub fn mul(&self, x: &HallSeries, y: &HallSeries) -> HallSeries {
        let top = self.max_dim();
        let mut out = HallSeries::zero(top);
        for n in 0..=top {
            for (gi, st) in self.levels[n].structure.iter().enumerate() {
                let mut c = Rational::zero();
                for (&(e, f), &k) in st {
                    if let (Some(a), Some(b)) = (x.0[e.0].get(&e.1), y.0[f.0].get(&f.1)) {
                        c += a * b * int(k as i64);
                    }
                }
                if !c.is_zero() {
                    out.0[n].insert(gi, c);
                }
            }
        }
        out
    }

    /// `A(t) = Σ_M ĥ_M t^{dim M}`.
    pub fn a_series(&self) -> HallSeries {
        let mut s = HallSeries::zero(self.max_dim());
        for n in 0..=self.max_dim() {
            for i in 0..self.levels[n].classes.len() {
                s.0[n].insert(i, int(1));
            }
        }
        s
    }

    pub fn inverse(&self, a: &HallSeries) -> Result<HallSeries> {
        if a.0[0].get(&0) != Some(&int(1)) {
            return Err(Error::WrongConstantTerm("Hall series must start with the zero module"));
        }
        let top = self.max_dim();
        let mut b = HallSeries::zero(top);
        b.0[0].insert(0, int(1));
        for n in 1..=top {
            // b_n = −Σ_{k≥1} a_k b_{n−k}; the degree-n part of a·b restricted to b_{<n}.
            let prod = self.mul(a, &b);
            for (i, c) in &prod.0[n] {
                b.0[n].insert(*i, -c.clone());
            }
        }
        Ok(b)
    }

    /// `F(t) = A(qt)·A(t)⁻¹`.
    pub fn f_series(&self) -> Result<HallSeries> {
        let a = self.a_series();
        let q = int(self.spec.p as i64);
        self.inverse(&a).map(|inv| self.mul(&a.rescale(&q), &inv))
    }

    /// Ideal sum `Σ_I [R/I] t^{dim R/I}` in the `ĥ` basis: the coefficient of
    /// `ĥ_M` is `#Aut(M)` times the number of ideals with quotient `M`, and that
    /// number is `#{X in the orbit with e₁ cyclic}·(pⁿ − 1)/#GL`.
    pub fn ideal_side(&self) -> HallSeries {
        let mut s = HallSeries::zero(self.max_dim());
        s.0[0].insert(0, int(1));
        for n in 1..=self.max_dim() {
            let gl = int(self.gl_order(n) as i64);
            let scale = int((self.spec.p as i64).pow(n as u32) - 1);
            for (i, m) in self.classes(n).iter().enumerate() {
                if m.e1_cyclic > 0 {
                    let ideals = int(m.e1_cyclic as i64) * &scale / &gl;
                    s.0[n].insert(i, ideals * int(m.aut_count as i64));
                }
            }
        }
        s
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    if r > n {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in combinations(n - first - 1, r - 1) {
            let mut v = vec![first];
            v.extend(rest.into_iter().map(|x| x + first + 1));
            out.push(v);
        }
    }
    out
}

/// A `t`-graded Hall algebra element in the `ĥ_M = [M]/#Aut(M)` basis;
/// entry `n` maps class indices of dimension `n` to coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct HallSeries(pub Vec<BTreeMap<usize, Rational>>);

impl HallSeries {
    pub fn zero(top: usize) -> Self {
        HallSeries(vec![BTreeMap::new(); top + 1])
    }

    /// `t ↦ c·t`.
    pub fn rescale(&self, c: &Rational) -> Self {
        let mut p = int(1);
        let mut out = self.clone();
        for part in out.0.iter_mut() {
            for x in part.values_mut() {
                *x *= &p;
            }
            p *= c;
        }
        out
    }

    /// Coefficient of `[M]`, i.e. the `ĥ` coefficient divided by `#Aut(M)`.
    pub fn bracket_coeff(&self, lab: &HallLab, id: ClassId) -> Rational {
        self.0[id.0].get(&id.1).cloned().unwrap_or_else(Rational::zero) / int(lab.module(id).aut_count as i64)
    }
}

/// One coefficient of the identity `F(t) = Σ_I [R/I] t^{dim R/I}`.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicEntry {
    pub dim: usize,
    pub class: usize,
    pub matrices: Vec<Vec<u8>>,
    pub aut_count: u64,
    pub gen_count: u64,
    /// Coefficient of `[M]` in `F(t)`.
    pub f_coeff: String,
    /// Number of ideals with quotient `M`.
    pub ideal_count: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicIdentityReport {
    pub per_degree: Vec<bool>,
    /// Classes in the support of `F(t)` that are not cyclic.
    pub non_cyclic_support: Vec<ClassId>,
    /// Classes where `genCount/#Aut` disagrees with the ideal count.
    pub generator_mismatch: Vec<ClassId>,
    /// `Σ_classes #GL/#Aut = #valid tuples` in every dimension.
    pub orbit_stabilizer: bool,
    pub table: Vec<CyclicEntry>,
    pub passed: bool,
}

/// Compares `A(qt)A(t)⁻¹` with the ideal sum, degree by degree.
pub fn verify_cyclic_identity(spec: &FqAlgebraSpec, n: usize) -> Result<CyclicIdentityReport> {
    cyclic_identity_report(&HallLab::new(spec.clone(), n)?)
}

/// [`verify_cyclic_identity`] on an already enumerated lab.
pub fn cyclic_identity_report(lab: &HallLab) -> Result<CyclicIdentityReport> {
    let n = lab.max_dim();
    let f = lab.f_series()?;
    let ideals = lab.ideal_side();
    let per_degree: Vec<bool> = (0..=n).map(|d| f.0[d] == ideals.0[d]).collect();
    let mut non_cyclic_support = Vec::new();
    let mut generator_mismatch = Vec::new();
    let mut table = Vec::new();
    for d in 0..=n {
        for (i, m) in lab.classes(d).iter().enumerate() {
            let id = (d, i);
            let fc = f.bracket_coeff(&lab, id);
            let ic = ideals.bracket_coeff(&lab, id);
            if !fc.is_zero() && !m.is_cyclic() {
                non_cyclic_support.push(id);
            }
            if Rational::new((m.gen_count as i64).into(), (m.aut_count as i64).into()) != ic {
                generator_mismatch.push(id);
            }
            if m.is_cyclic() {
                table.push(CyclicEntry {
                    dim: d,
                    class: i,
                    matrices: m.matrices.clone(),
                    aut_count: m.aut_count,
                    gen_count: m.gen_count,
                    f_coeff: fc.to_string(),
                    ideal_count: ic.to_string(),
                });
            }
        }
    }
    let orbit_stabilizer = (0..=n).all(|d| {
        lab.classes(d).iter().map(|m| lab.gl_order(d) / m.aut_count).sum::<u64>() == lab.valid_tuples(d)
    });
    let passed =
        per_degree.iter().all(|&b| b) && non_cyclic_support.is_empty() && generator_mismatch.is_empty() && orbit_stabilizer;
    Ok(CyclicIdentityReport { per_degree, non_cyclic_support, generator_mismatch, orbit_stabilizer, table, passed })
}

/// Number of ideals of each codimension `0..=n` (the sum of `[·]` coefficients of the ideal side).
pub fn ideal_counts(spec: &FqAlgebraSpec, n: usize) -> Result<Vec<Rational>> {
    let lab = HallLab::new(spec.clone(), n)?;
    let s = lab.ideal_side();
    Ok((0..=n).map(|d| (0..lab.classes(d).len()).map(|i| s.bracket_coeff(&lab, (d, i))).sum()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let lab = HallLab::new(FqAlgebraSpec::truncated_poly(2, 2), 1).unwrap();
        assert_eq!(lab.classes(1).len(), 1);
        assert_eq!((lab.classes(1)[0].aut_count, lab.classes(1)[0].gen_count), (1, 1));
        assert_eq!(lab.classes(0)[0].aut_count, 1);
        let free = HallLab::new(FqAlgebraSpec::free(2, 1), 1).unwrap();
        assert_eq!(free.classes(1).len(), 2);
        assert!(free.classes(1).iter().all(|m| m.aut_count == 1));
    }

    #[test]
    fn lines_in_the_plane() {
        let spec = FqAlgebraSpec { p: 2, m: 1, relations: Relations::Monomials(vec![vec![0]]), nilpotent: false };
        let lab = HallLab::new(spec, 2).unwrap();
        assert_eq!(lab.hall_constant((1, 0), (1, 0), (2, 0)), 3);
        assert_eq!(lab.hall_constant((0, 0), (2, 0), (2, 0)), 1);
        assert_eq!(lab.gl_order(2), 6);
    }

    #[test]
    fn truncated_cubic_ideal_side() {
        let lab = HallLab::new(FqAlgebraSpec::truncated_poly(2, 3), 2).unwrap();
        let s = lab.ideal_side();
        let cyc: Vec<(ClassId, Rational)> = (0..lab.classes(2).len())
            .map(|i| ((2, i), s.bracket_coeff(&lab, (2, i))))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        assert_eq!(cyc.len(), 1);
        let m = lab.module(cyc[0].0);
        assert_eq!((m.gen_count, m.aut_count), (2, 2));
        assert_eq!(cyc[0].1, int(1));
    }

    #[test]
    fn small_cyclic_identity() {
        assert!(verify_cyclic_identity(&FqAlgebraSpec::truncated_poly(2, 3), 2).unwrap().passed);
    }

    #[test]
    fn budget_guard() {
        let r = HallLab::with_budget(FqAlgebraSpec::free(2, 2), 3, 1 << 10);
        assert!(matches!(r, Err(Error::BudgetExceeded { needed: 262144, .. })));
    }
}

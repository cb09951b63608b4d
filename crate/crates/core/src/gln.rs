//! Stability data on `gl(n)`: skew matrices `a_ij` over configurations
//! `z_1..z_n`, transported along piecewise-linear paths.
//!
//! Crossing times are roots of quadratics in the path parameter, so they
//! are handled exactly as elements `a + b√d` of a real quadratic field.

use crate::arith::{fmt_rational, int, parse_rational, sign, GaussRational, Rational};
use crate::engine::{assemble_a, elementary, factorize_a, matmul, MatrixArena, RayPlan};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// `a + b√d` with `d > 0` not a rational square whenever `b ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: Rational,
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Rational::new(rn, rd))
}

impl Surd {
    pub fn rational(a: Rational) -> Self {
        Surd { a, b: int(0), d: int(0) }
    }

    fn new(a: Rational, b: Rational, d: Rational) -> Self {
        if b.is_zero() {
            return Surd::rational(a);
        }
        match rational_sqrt(&d) {
            Some(r) => Surd::rational(a + b * r),
            None => Surd { a, b, d },
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    fn field(&self, o: &Self) -> Rational {
        if self.b.is_zero() {
            o.d.clone()
        } else {
            self.d.clone()
        }
    }

    fn add(&self, o: &Self) -> Self {
        Surd::new(&self.a + &o.a, &self.b + &o.b, self.field(o))
    }

    fn mul(&self, o: &Self) -> Self {
        let d = self.field(o);
        Surd::new(&self.a * &o.a + &self.b * &o.b * &d, &self.a * &o.b + &self.b * &o.a, d)
    }

    pub fn signum(&self) -> i32 {
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * &self.d)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    /// Rational bounds of width about `|b|·2^{−k}`.
    pub fn enclose(&self, k: u32) -> (Rational, Rational) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let s = BigInt::from(1) << k;
        let (p, q) = (self.d.numer(), self.d.denom());
        let r = (p * q * &s * &s).sqrt();
        let lo = Rational::new(r.clone(), q * &s);
        let hi = Rational::new(r + 1, q * &s);
        let (x, y) = (&self.a + &self.b * &lo, &self.a + &self.b * &hi);
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        let same_field = self.b.is_zero() || o.b.is_zero() || self.d == o.d;
        let rescaled = if same_field {
            None
        } else {
            // √d₁ = r√d₂ exactly when d₁/d₂ is a rational square.
            rational_sqrt(&(&self.d / &o.d)).map(|r| Surd { a: self.a.clone(), b: &self.b * r, d: o.d.clone() })
        };
        if same_field || rescaled.is_some() {
            let x = rescaled.as_ref().unwrap_or(self);
            let diff = x.add(&Surd { a: -o.a.clone(), b: -o.b.clone(), d: o.d.clone() });
            return diff.signum().cmp(&0);
        }
        // Distinct irrationals in different fields differ; refine until separated.
        let mut k = 8;
        loop {
            let (l1, h1) = self.enclose(k);
            let (l2, h2) = o.enclose(k);
            if h1 < l2 {
                return Ordering::Less;
            }
            if h2 < l1 {
                return Ordering::Greater;
            }
            k += 8;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclose(40);
        let f = |x: &Rational| num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN);
        (f(&lo) + f(&hi)) / 2.0
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_rational(&self.a))
        } else {
            write!(f, "{} + {}*sqrt({})", fmt_rational(&self.a), fmt_rational(&self.b), fmt_rational(&self.d))
        }
    }
}

/// `c₀ + c₁t + c₂t²`.
#[derive(Clone, Debug, PartialEq)]
struct Quadratic([Rational; 3]);

impl Quadratic {
    fn eval(&self, t: &Surd) -> Surd {
        let c = |x: &Rational| Surd::rational(x.clone());
        c(&self.0[2]).mul(t).add(&c(&self.0[1])).mul(t).add(&c(&self.0[0]))
    }

    fn derivative_at(&self, t: &Surd) -> Surd {
        Surd::rational(self.0[1].clone()).add(&Surd::rational(&self.0[2] * int(2)).mul(t))
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Real roots; `Err` for a double root.
    fn roots(&self) -> std::result::Result<Vec<Surd>, Surd> {
        let [c0, c1, c2] = &self.0;
        if c2.is_zero() {
            if c1.is_zero() {
                return Ok(vec![]);
            }
            return Ok(vec![Surd::rational(-c0 / c1)]);
        }
        let disc = c1 * c1 - int(4) * c2 * c0;
        let half = Rational::new(1.into(), 2.into()) / c2;
        let a = -c1 * &half;
        match sign(&disc) {
            -1 => Ok(vec![]),
            0 => Err(Surd::rational(a)),
            _ => {
                let mut r = vec![Surd::new(a.clone(), -half.clone(), disc.clone()), Surd::new(a, half, disc)];
                r.sort_by(|x, y| x.cmp_exact(y));
                Ok(r)
            }
        }
    }
}

/// `z(t) = p + t·q` for each point.
#[derive(Clone, Debug)]
struct Motion {
    p: GaussRational,
    q: GaussRational,
}

fn cross_poly(u: &Motion, v: &Motion) -> Quadratic {
    let c = GaussRational::cross;
    Quadratic([c(&u.p, &v.p), c(&u.p, &v.q) + c(&u.q, &v.p), c(&u.q, &v.q)])
}

fn dot_poly(u: &Motion, v: &Motion) -> Quadratic {
    let d = GaussRational::dot;
    Quadratic([d(&u.p, &v.p), d(&u.p, &v.q) + d(&u.q, &v.p), d(&u.q, &v.q)])
}

fn diff(u: &Motion, v: &Motion) -> Motion {
    Motion { p: u.p.sub(&v.p), q: u.q.sub(&v.q) }
}

/// A point of `Hom°` together with a skew matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GlnStability {
    pub z: Vec<GaussRational>,
    pub a: Vec<Vec<Rational>>,
}

impl GlnStability {
    pub fn new(z: Vec<GaussRational>, a: Vec<Vec<Rational>>) -> Result<Self> {
        let n = z.len();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: a.len() });
        }
        for i in 0..n {
            for j in 0..n {
                if a[i][j] != -a[j][i].clone() {
                    return Err(Error::NotSkew);
                }
                if i < j && z[i] == z[j] {
                    return Err(Error::Collision(format!("z{i} = z{j}")));
                }
            }
        }
        Ok(GlnStability { z, a })
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }
}

/// A piecewise-linear path of configurations through its breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigPath {
    pub points: Vec<Vec<GaussRational>>,
}

impl ConfigPath {
    pub fn new(points: Vec<Vec<GaussRational>>) -> Result<Self> {
        let n = points.first().map_or(0, |p| p.len());
        if points.len() < 2 {
            return Err(Error::Input("a path needs at least two configurations".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: p.len() });
        }
        for (s, p) in points.iter().enumerate() {
            check_generic(p).map_err(|e| Error::NonGenericPath(format!("breakpoint {s}: {e}")))?;
        }
        Ok(ConfigPath { points })
    }

    pub fn reversed(&self) -> Self {
        ConfigPath { points: self.points.iter().rev().cloned().collect() }
    }
}

/// Distinct points, no three collinear.
fn check_generic(z: &[GaussRational]) -> std::result::Result<(), String> {
    let n = z.len();
    for i in 0..n {
        for j in i + 1..n {
            if z[i] == z[j] {
                return Err(format!("z{i} = z{j}"));
            }
            for k in j + 1..n {
                if GaussRational::cross(&z[j].sub(&z[i]), &z[k].sub(&z[i])).is_zero() {
                    return Err(format!("z{i}, z{j}, z{k} collinear"));
                }
            }
        }
    }
    Ok(())
}

/// `z_j` passes through the open segment `(z_i, z_k)` at time `t` of `segment`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub segment: usize,
    #[serde(serialize_with = "ser_display")]
    pub t: Surd,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `ε` in `a_ik ↦ a_ik + ε a_ij a_jk`.
    pub direction: i32,
}

fn ser_display<S: serde::Serializer>(x: &Surd, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn segment_crossings(seg: usize, from: &[GaussRational], to: &[GaussRational]) -> Result<Vec<Crossing>> {
    let n = from.len();
    let m: Vec<Motion> = from.iter().zip(to).map(|(p, q)| Motion { p: p.clone(), q: q.sub(p) }).collect();
    let zero = Surd::rational(int(0));
    let one = Surd::rational(int(1));
    for i in 0..n {
        for j in i + 1..n {
            let d = diff(&m[i], &m[j]);
            // Both coordinates of z_i − z_j vanish at a common t ∈ [0, 1].
            let re = (d.p.re.clone(), d.q.re.clone());
            let im = (d.p.im.clone(), d.q.im.clone());
            let t = if !re.1.is_zero() {
                Some(-&re.0 / &re.1)
            } else if !im.1.is_zero() {
                Some(-&im.0 / &im.1)
            } else {
                None
            };
            let hits = match t {
                Some(t) => t >= int(0) && t <= int(1) && (&re.0 + &re.1 * &t).is_zero() && (&im.0 + &im.1 * &t).is_zero(),
                None => re.0.is_zero() && im.0.is_zero(),
            };
            if hits {
                return Err(Error::Collision(format!("z{i} meets z{j} on segment {seg}")));
            }
        }
    }
    let mut events = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let area = cross_poly(&diff(&m[j], &m[i]), &diff(&m[k], &m[i]));
                if area.is_zero() {
                    return Err(Error::NonGenericPath(format!("z{i}, z{j}, z{k} stay collinear on segment {seg}")));
                }
                let roots = match area.roots() {
                    Ok(r) => r,
                    Err(t) if t.cmp_exact(&zero).is_gt() && t.cmp_exact(&one).is_lt() => {
                        return Err(Error::NonTransversal { segment: seg });
                    }
                    Err(_) => vec![],
                };
                for t in roots {
                    if !(t.cmp_exact(&zero).is_gt() && t.cmp_exact(&one).is_lt()) {
                        continue;
                    }
                    let triple = [i, j, k];
                    let mid = (0..3).find(|&c| {
                        let (mm, o1, o2) = (triple[c], triple[(c + 1) % 3], triple[(c + 2) % 3]);
                        dot_poly(&diff(&m[o1], &m[mm]), &diff(&m[o2], &m[mm])).eval(&t).signum() < 0
                    });
                    // Collinear but with no point strictly between the others would need a collision.
                    let c = mid.ok_or_else(|| Error::Collision(format!("degenerate triple on segment {seg}")))?;
                    let (ii, jj, kk) = (triple[(c + 1) % 3], triple[c], triple[(c + 2) % 3]);
                    let cp = cross_poly(&diff(&m[ii], &m[jj]), &diff(&m[jj], &m[kk]));
                    let direction = cp.derivative_at(&t).signum();
                    if direction == 0 {
                        return Err(Error::NonTransversal { segment: seg });
                    }
                    events.push(Crossing { segment: seg, t, i: ii, j: jj, k: kk, direction });
                }
            }
        }
    }
    events.sort_by(|x, y| x.t.cmp_exact(&y.t));
    for w in events.windows(2) {
        if w[0].t.cmp_exact(&w[1].t).is_eq() {
            return Err(Error::NonGenericPath(format!("two walls crossed at once on segment {seg}")));
        }
    }
    Ok(events)
}

/// All wall crossings along `path`, in order.
pub fn detect_crossings(path: &ConfigPath) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    for (s, w) in path.points.windows(2).enumerate() {
        out.extend(segment_crossings(s, &w[0], &w[1])?);
    }
    Ok(out)
}

/// `a_ik ↦ a_ik + ε a_ij a_jk`, keeping `a` skew.
pub fn apply_crossing(a: &mut [Vec<Rational>], c: &Crossing) {
    let delta = &a[c.i][c.j] * &a[c.j][c.k] * int(c.direction as i64);
    a[c.i][c.k] += &delta;
    a[c.k][c.i] -= &delta;
}

pub fn gln_transport(s: &GlnStability, path: &ConfigPath) -> Result<(GlnStability, Vec<Crossing>)> {
    if path.points[0] != s.z {
        return Err(Error::Input("path does not start at the current configuration".into()));
    }
    let crossings = detect_crossings(path)?;
    let mut a = s.a.clone();
    for c in &crossings {
        apply_crossing(&mut a, c);
    }
    let z = path.points.last().expect("nonempty path").clone();
    Ok((GlnStability { z, a }, crossings))
}

/// `exp(a₁₂E₁₂)exp(a₁₃E₁₃)exp(a₂₃E₂₃) = exp(a₂₃E₂₃)exp((a₁₃ + a₁₂a₂₃)E₁₃)exp(a₁₂E₁₂)`.
pub fn verify_matrix_identity(a12: &Rational, a13: &Rational, a23: &Rational) -> bool {
    let e = |i, j, x: &Rational| elementary(3, i, j, x);
    let lhs = matmul(&matmul(&e(0, 1, a12), &e(0, 2, a13)), &e(1, 2, a23));
    let rhs = matmul(&matmul(&e(1, 2, a23), &e(0, 2, &(a13 + a12 * a23))), &e(0, 1, a12));
    lhs == rhs
}

fn config_at(path: &ConfigPath, seg: usize, t: &Rational) -> Vec<GaussRational> {
    let (p, q) = (&path.points[seg], &path.points[seg + 1]);
    p.iter().zip(q).map(|(x, y)| x.add(&y.sub(x).scale(t))).collect()
}

/// Replays one crossing in the engine: assemble the three-root product just
/// before the wall and factorize it just after. Returns whether the engine
/// agrees with the update rule.
pub fn engine_check(path: &ConfigPath, a: &[Vec<Rational>], c: &Crossing) -> Result<bool> {
    let n = a.len();
    let pairs = vec![(c.i, c.j), (c.j, c.k), (c.i, c.k)];
    let arena = MatrixArena::new(n, pairs.clone(), vec![1, 1, 2])?;
    let before: BTreeMap<usize, Rational> =
        pairs.iter().enumerate().map(|(p, &(x, y))| (p, a[x][y].clone())).filter(|(_, v)| !v.is_zero()).collect();
    let mut after_a = a.to_vec();
    apply_crossing(&mut after_a, c);
    let zero = Surd::rational(int(0));
    let one = Surd::rational(int(1));
    let mut k = 16;
    loop {
        let (lo, hi) = c.t.enclose(k);
        let margin = Rational::new(1.into(), BigInt::from(1) << k);
        let (tb, ta) = (&lo - &margin, &hi + &margin);
        let inside = Surd::rational(tb.clone()).cmp_exact(&zero).is_gt() && Surd::rational(ta.clone()).cmp_exact(&one).is_lt();
        let plans = inside
            .then(|| {
                let plan = |t: &Rational| {
                    let z = config_at(path, c.segment, t);
                    RayPlan::new(&arena, |p| {
                        let (x, y) = pairs[p];
                        (z[x].sub(&z[y]), vec![x as i64, y as i64])
                    })
                };
                (plan(&tb), plan(&ta))
            });
        if let Some((Ok(pb), Ok(pa))) = plans {
            // Both plans must separate the two simple roots.
            if pb.rays().len() == 3 && pa.rays().len() == 3 && pb != pa {
                let g = assemble_a(&arena, &pb, &before, 2)?;
                let got = factorize_a(&arena, &pa, &g)?.flatten();
                let want: BTreeMap<usize, Rational> = pairs
                    .iter()
                    .enumerate()
                    .map(|(p, &(x, y))| (p, after_a[x][y].clone()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                return Ok(got == want);
            }
        }
        k += 8;
        if k > 200 {
            return Err(Error::NonTransversal { segment: c.segment });
        }
    }
}

fn random_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

pub fn random_skew<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    let mut a = vec![vec![int(0); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = random_rational(rng, 5, 3);
            a[j][i] = -x.clone();
            a[i][j] = x;
        }
    }
    a
}

fn random_config<R: Rng>(rng: &mut R, n: usize) -> Vec<GaussRational> {
    loop {
        let z: Vec<GaussRational> =
            (0..n).map(|_| GaussRational::new(random_rational(rng, 12, 2), random_rational(rng, 12, 2))).collect();
        if check_generic(&z).is_ok() {
            return z;
        }
    }
}

/// Whether `0` lies in the closed triangle `u, v, w`.
fn triangle_contains_origin(u: &GaussRational, v: &GaussRational, w: &GaussRational) -> bool {
    let s = |a: &GaussRational, b: &GaussRational| sign(&GaussRational::cross(a, b));
    let (x, y, z) = (s(u, v), s(v, w), s(w, u));
    !((x < 0 || y < 0 || z < 0) && (x > 0 || y > 0 || z > 0))
}

/// A closed triangular path `P → Q → R → P` whose filled triangle avoids
/// every collision, so the loop is contractible in `Hom°`.
pub fn random_contractible_loop<R: Rng>(rng: &mut R, n: usize) -> ConfigPath {
    loop {
        let p = random_config(rng, n);
        let q = random_config(rng, n);
        let r = random_config(rng, n);
        let clear = (0..n).all(|i| {
            (i + 1..n).all(|j| !triangle_contains_origin(&p[i].sub(&p[j]), &q[i].sub(&q[j]), &r[i].sub(&r[j])))
        });
        if clear {
            if let Ok(path) = ConfigPath::new(vec![p.clone(), q, r, p]) {
                return path;
            }
        }
    }
}

/// Transport around one loop: the crossings, whether `a` came back unchanged,
/// and whether the engine confirmed every crossing.
#[derive(Clone, Debug)]
pub struct MonodromyTrial {
    pub crossings: usize,
    pub identity: bool,
    pub engine_agrees: bool,
}

pub fn monodromy_trial(s: &GlnStability, path: &ConfigPath) -> Result<MonodromyTrial> {
    let crossings = detect_crossings(path)?;
    let mut a = s.a.clone();
    let mut engine_agrees = true;
    for c in &crossings {
        engine_agrees &= engine_check(path, &a, c)?;
        apply_crossing(&mut a, c);
    }
    Ok(MonodromyTrial { crossings: crossings.len(), identity: a == s.a, engine_agrees })
}

/// Randomized contractible loops; trials with non-generic paths are redrawn.
pub fn random_monodromy<R: Rng>(rng: &mut R, n: usize, trials: usize) -> Result<Vec<MonodromyTrial>> {
    let mut out = Vec::with_capacity(trials);
    while out.len() < trials {
        let path = random_contractible_loop(rng, n);
        let s = GlnStability::new(path.points[0].clone(), random_skew(rng, n))?;
        match monodromy_trial(&s, &path) {
            Ok(t) => out.push(t),
            Err(Error::NonGenericPath(_) | Error::NonTransversal { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Reads `{n, z: [[re, im], ...], a: [[..]], path: [[[re, im], ...], ...]}`;
/// numbers may be JSON numbers or rational strings such as `"-3/2"`.
pub fn parse_config(v: &serde_json::Value) -> Result<(GlnStability, ConfigPath)> {
    let bad = |what: &str| Error::Input(format!("config: {what}"));
    let num = |x: &serde_json::Value| -> Result<Rational> {
        let s = match x {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            _ => return Err(bad("expected a number")),
        };
        parse_rational(&s).ok_or_else(|| bad(&format!("cannot parse {s}")))
    };
    let point = |x: &serde_json::Value| -> Result<GaussRational> {
        match x.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => Ok(GaussRational::new(num(re)?, num(im)?)),
            _ => Err(bad("a point is [re, im]")),
        }
    };
    let config = |x: &serde_json::Value| -> Result<Vec<GaussRational>> {
        x.as_array().ok_or_else(|| bad("a configuration is a list of points"))?.iter().map(point).collect()
    };
    let n = v.get("n").and_then(|x| x.as_u64()).ok_or_else(|| bad("missing n"))? as usize;
    let z = config(v.get("z").ok_or_else(|| bad("missing z"))?)?;
    let a: Vec<Vec<Rational>> = v
        .get("a")
        .and_then(|x| x.as_array())
        .ok_or_else(|| bad("missing a"))?
        .iter()
        .map(|row| row.as_array().ok_or_else(|| bad("a is a matrix"))?.iter().map(num).collect())
        .collect::<Result<_>>()?;
    if z.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: z.len() });
    }
    let mut points = vec![z.clone()];
    for c in v.get("path").and_then(|x| x.as_array()).ok_or_else(|| bad("missing path"))? {
        points.push(config(c)?);
    }
    Ok((GlnStability::new(z, a)?, ConfigPath::new(points)?))
}

use crate::{Command, Format, Status};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fs;
use wallcross_core::arith::{fmt_rational, parse_rational, GaussRational, Rational, VPoly, VRatFunc};
use wallcross_core::engine::{FlavorCoeff, StabilityData};
use wallcross_core::gln::{gln_transport, parse_config};
use wallcross_core::hall::{ideal_counts, cyclic_identity_report, FqAlgebraSpec, HallLab};
use wallcross_core::lattice::{Charge, SkewLattice, Truncation};
use wallcross_core::quiver::cluster::{cluster_map_classical_check, cluster_map_quantum, dual_basis};
use wallcross_core::quiver::kronecker::{check_f_k, kronecker_arena, kronecker_transport, Direction};
use wallcross_core::quiver::loops::check_g_m;
use wallcross_core::quiver::macmahon::d0d6_check;
use wallcross_core::quiver::Quiver;
use wallcross_core::scenarios;
use wallcross_core::series::TorusArena;
use wallcross_core::{Error, Result};

pub fn dispatch(cmd: Command, max_coeffs: u64) -> Result<Status> {
    let guard = Guard(max_coeffs);
    match cmd {
        Command::Identities { deg } => {
            guard.orthant(2, deg)?;
            let out = scenarios::identities(deg)?;
            emit(&out.details)?;
            Ok(status(out.passed))
        }
        Command::Kronecker { k, deg, format, quantum } => {
            guard.orthant(2, deg)?;
            kronecker(k, deg, format, quantum)
        }
        Command::Fk { k, deg, exp_deg } => {
            if k < 2 {
                return Err(Error::Input("--k must be at least 2".into()));
            }
            guard.series(deg.max(exp_deg))?;
            let c = check_f_k(k, deg, exp_deg)?;
            let ok = c.algebraic.is_zero() && c.exp_form.is_zero();
            emit(&json!({"k": k, "order": deg, "exp_order": exp_deg,
                         "algebraic_zero": c.algebraic.is_zero(), "exp_form_zero": c.exp_form.is_zero()}))?;
            Ok(status(ok))
        }
        Command::Loops { m, deg } => {
            if m == 0 {
                return Err(Error::Input("--m must be positive".into()));
            }
            guard.series(deg)?;
            let c = check_g_m(m, deg)?;
            let omega: Vec<String> = c.omega.iter().map(fmt_rational).collect();
            emit(&json!({"m": m, "order": deg, "omega": omega,
                         "product_zero": c.product.is_zero(), "algebraic_zero": c.algebraic.is_zero()}))?;
            Ok(status(c.is_zero()))
        }
        Command::Macmahon { chi, deg } => {
            guard.count(2 * (2 * deg as u128 + 2), 2)?;
            let r = d0d6_check(chi, deg)?;
            emit(&json!({
                "chi": chi, "d0_max": deg, "pairing": r.pairing,
                "bound_states": r.bound_states.iter().map(fmt_rational).collect::<Vec<_>>(),
                "expected": r.expected.iter().map(fmt_rational).collect::<Vec<_>>(),
                "d0_unchanged": r.d0_unchanged, "passed": r.passed,
            }))?;
            Ok(status(r.passed))
        }
        Command::Mutate { quiver, vertex } => mutate(&load_quiver(&quiver)?, vertex),
        Command::ClusterCheck { quiver, vertex, deg, trials, seed } => {
            let q = load_quiver(&quiver)?;
            guard.orthant(q.len(), deg)?;
            let quantum = cluster_map_quantum(&q, vertex, deg)?;
            let classical = cluster_map_classical_check(&q, vertex, trials, seed)?;
            let ok = quantum.is_zero() && classical.passed();
            emit(&json!({
                "vertex": vertex, "deg": deg, "quantum_zero": quantum.is_zero(), "quantum_failing": quantum.failing(),
                "seed": seed, "classical_trials": classical.trials, "bracket_failures": classical.bracket_failures,
                "n_failures": classical.n_failures, "other_failures": classical.off_failures,
            }))?;
            Ok(status(ok))
        }
        Command::Hall { spec, deg, budget } => hall(&spec, deg, budget),
        Command::Gln { config } => {
            let (s, path) = parse_config(&read_json(&config)?)?;
            let (out, log) = gln_transport(&s, &path)?;
            let a: Vec<Vec<String>> = out.a.iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
            emit(&json!({"a": a, "crossings": log}))?;
            Ok(Status::Ok)
        }
        Command::Transport { config } => {
            let v = read_json(&config)?;
            if v.get("quantum").and_then(Value::as_bool).unwrap_or(false) {
                transport::<VRatFunc>(&v, &guard, parse_vratfunc, |c| c.to_string())
            } else {
                transport::<Rational>(&v, &guard, parse_rat, fmt_rational)
            }
        }
        Command::Scenarios => {
            let list: Vec<Value> = scenarios::registry()
                .iter()
                .map(|s| json!({"name": s.name, "summary": s.summary, "limit_s": s.limit.map(|l| l.as_secs())}))
                .collect();
            emit(&Value::Array(list))?;
            Ok(Status::Ok)
        }
        Command::Run { name, params, out, timing } => {
            let params = match params {
                Some(p) => serde_json::from_str(&p).map_err(|e| Error::Input(format!("--params: {e}")))?,
                None => Value::Null,
            };
            let r = scenarios::run(&name, &params)?;
            let text = pretty(&serde_json::to_value(&r).map_err(|e| Error::Input(e.to_string()))?);
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Error::Input(format!("{path}: {e}")))?,
                None => print!("{text}"),
            }
            let budget = r.limit.map(|l| format!(" (limit {} s)", l.as_secs())).unwrap_or_default();
            if timing {
                eprintln!("{}: {:.3} s{budget}", r.name, r.elapsed.as_secs_f64());
            }
            if !r.within_limit() {
                eprintln!("{}: over time budget, {:.3} s{budget}", r.name, r.elapsed.as_secs_f64());
            }
            Ok(status(r.passed && r.within_limit()))
        }
    }
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Failed
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(v: &Value) -> Result<()> {
    print!("{}", pretty(v));
    Ok(())
}

fn read_json(path: &str) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{path}: {e}")))
}

/// Refuses work whose coefficient count exceeds the budget.
struct Guard(u64);

impl Guard {
    fn count(&self, points: u128, rank: u128) -> Result<()> {
        let needed = points.saturating_mul(rank);
        if needed > self.0 as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.0 as u128 });
        }
        Ok(())
    }

    /// Points of degree ≤ `n` in the positive orthant of rank `r`: `binom(n + r, r)`.
    fn orthant(&self, r: usize, n: u32) -> Result<()> {
        let mut c: u128 = 1;
        for i in 1..=r as u128 {
            c = c.saturating_mul(n as u128 + i) / i;
        }
        self.count(c, r as u128)
    }

    fn series(&self, order: usize) -> Result<()> {
        self.count(order as u128 + 1, 1)
    }
}

fn kronecker(k: i64, deg: u32, format: Format, quantum: bool) -> Result<Status> {
    let arena = kronecker_arena(k, deg)?;
    let (rows, recomposes): (Vec<(i64, i64, String)>, bool) = if quantum {
        let (input, output) = kronecker_transport::<VRatFunc>(&arena, Direction::Increasing)?;
        let rows = output.table().into_iter().map(|(g, c)| (g[0], g[1], c.to_string())).collect();
        (rows, output.assemble()? == input.assemble()?)
    } else {
        let (input, output) = kronecker_transport::<Rational>(&arena, Direction::Increasing)?;
        let rows = output.table().into_iter().map(|(g, c)| (g[0], g[1], fmt_rational(&c))).collect();
        (rows, output.assemble()? == input.assemble()?)
    };
    match format {
        Format::Csv => {
            println!("a,b,k,omega");
            for (a, b, c) in &rows {
                println!("{a},{b},{k},\"{c}\"");
            }
        }
        Format::Json => {
            let table: Vec<Value> = rows.iter().map(|(a, b, c)| json!({"a": a, "b": b, "omega": c})).collect();
            emit(&json!({"k": k, "deg": deg, "quantum": quantum, "recomposes": recomposes, "table": table}))?;
        }
    }
    Ok(status(recomposes))
}

fn load_quiver(arg: &str) -> Result<Quiver> {
    if let Some(k) = arg.strip_prefix("kronecker-") {
        let k: i64 = k.parse().map_err(|_| Error::Input(format!("bad quiver name {arg}")))?;
        return Ok(Quiver::kronecker(k));
    }
    match arg {
        "a2" => Quiver::new(vec![vec![0, 1], vec![0, 0]]),
        "path3" => Quiver::new(vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]),
        path => {
            let v = read_json(path)?;
            let arrows: Vec<Vec<i64>> = serde_json::from_value(v.get("arrows").cloned().unwrap_or(Value::Null))
                .map_err(|e| Error::Input(format!("{path}: arrows: {e}")))?;
            Quiver::new(arrows)
        }
    }
}

fn mutate(q: &Quiver, vertex: usize) -> Result<Status> {
    let mutated = q.mutate(vertex)?;
    let basis: Vec<Vec<i64>> =
        (0..q.len()).map(|i| (0..q.len()).map(|j| i64::from(i == j)).collect()).collect();
    let classes = q.mutate_classes(&basis, vertex)?;
    emit(&json!({
        "vertex": vertex,
        "arrows": mutated.arrows(),
        "skew": mutated.skew(),
        "classes": classes,
        "dual_classes": dual_basis(&classes)?,
        "involution": mutated.mutate(vertex)? == *q,
    }))?;
    Ok(Status::Ok)
}

fn hall(path: &str, deg: usize, budget: u128) -> Result<Status> {
    let spec: FqAlgebraSpec =
        serde_json::from_value(read_json(path)?).map_err(|e| Error::Input(format!("{path}: {e}")))?;
    spec.validate()?;
    let lab = HallLab::with_budget(spec.clone(), deg, budget)?;
    let report = cyclic_identity_report(&lab)?;
    let counts: Vec<String> = ideal_counts(&spec, deg)?.iter().map(fmt_rational).collect();
    let classes: Vec<usize> = (0..=deg).map(|d| lab.classes(d).len()).collect();
    emit(&json!({"deg": deg, "classes_per_dim": classes, "ideal_counts": counts, "report": report}))?;
    Ok(status(report.passed))
}

fn parse_rat(v: &Value) -> Result<Rational> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(Error::Input(format!("expected a rational, got {v}"))),
    };
    parse_rational(&s).ok_or_else(|| Error::Input(format!("cannot parse {s}")))
}

/// A rational, or a Laurent polynomial as `{"exponent": coefficient, ...}`.
fn parse_vratfunc(v: &Value) -> Result<VRatFunc> {
    match v {
        Value::Object(m) => {
            let mut terms = BTreeMap::new();
            for (e, c) in m {
                let e: i64 = e.parse().map_err(|_| Error::Input(format!("bad exponent {e}")))?;
                terms.insert(e, parse_rat(c)?);
            }
            Ok(VRatFunc::from_poly(VPoly::from_map(&terms)))
        }
        _ => Ok(VRatFunc::constant(parse_rat(v)?)),
    }
}

fn parse_charge(v: Option<&Value>, key: &str) -> Result<Charge> {
    let pts = v.and_then(Value::as_array).ok_or_else(|| Error::Input(format!("missing {key}")))?;
    let vals = pts
        .iter()
        .map(|p| match p.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => Ok(GaussRational::new(parse_rat(re)?, parse_rat(im)?)),
            _ => Err(Error::Input(format!("{key}: each value is [re, im]"))),
        })
        .collect::<Result<_>>()?;
    Ok(Charge::new(vals))
}

/// `{form, bound | truncation {generators, degree, bound}, from, to, omega: [{gamma, value}], quantum}`.
fn transport<C: FlavorCoeff>(
    v: &Value,
    guard: &Guard,
    parse: fn(&Value) -> Result<C>,
    show: fn(&C) -> String,
) -> Result<Status> {
    let bad = |e: serde_json::Error| Error::Input(format!("config: {e}"));
    let form: Vec<Vec<i64>> = serde_json::from_value(v.get("form").cloned().unwrap_or(Value::Null)).map_err(bad)?;
    let lattice = SkewLattice::new(form)?;
    let rank = lattice.rank();
    let trunc = match (v.get("truncation"), v.get("bound").and_then(Value::as_u64)) {
        (Some(t), _) => {
            let generators: Vec<Vec<i64>> =
                serde_json::from_value(t.get("generators").cloned().unwrap_or(Value::Null)).map_err(bad)?;
            let degree: Vec<i64> = serde_json::from_value(t.get("degree").cloned().unwrap_or(Value::Null)).map_err(bad)?;
            let bound = t.get("bound").and_then(Value::as_u64).ok_or_else(|| Error::Input("truncation.bound".into()))?;
            Truncation::new(generators, degree, bound as u32)?
        }
        (None, Some(b)) => {
            guard.orthant(rank, b as u32)?;
            Truncation::orthant(rank, b as u32)
        }
        (None, None) => return Err(Error::Input("config needs bound or truncation".into())),
    };
    let arena = TorusArena::new(lattice, trunc)?;
    guard.count(arena.len() as u128, rank as u128)?;
    let from = parse_charge(v.get("from"), "from")?;
    let to = parse_charge(v.get("to"), "to")?;
    let mut omega = Vec::new();
    for e in v.get("omega").and_then(Value::as_array).ok_or_else(|| Error::Input("missing omega".into()))? {
        let gamma: Vec<i64> = serde_json::from_value(e.get("gamma").cloned().unwrap_or(Value::Null)).map_err(bad)?;
        omega.push((gamma, parse(e.get("value").ok_or_else(|| Error::Input("omega entry needs value".into()))?)?));
    }
    let input = StabilityData::from_points(&arena, from, &omega)?;
    let output = input.transport(&to)?;
    let recomposes = output.assemble()? == input.assemble()?;
    let table = |sd: &StabilityData<C>| -> Vec<Value> {
        sd.table().iter().map(|(g, c)| json!({"gamma": g, "omega": show(c)})).collect()
    };
    emit(&json!({"input": table(&input), "output": table(&output), "recomposes": recomposes}))?;
    Ok(status(recomposes))
}

//! The thirteen acceptance criteria, in order, each with its time budget.
//! Runs without the libtest harness so the per-criterion lines always show.

use serde_json::Value;
use wallcross_core::scenarios::{registry, run};

fn main() {
    let mut failures = Vec::new();
    for (i, s) in registry().iter().enumerate() {
        let n = i + 1;
        let line = match run(s.name, &Value::Null) {
            Ok(r) => {
                let ok = r.passed && r.within_limit();
                let budget = r.limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
                let why = match (r.passed, r.within_limit()) {
                    (true, true) => String::new(),
                    (false, _) => format!(" -- {}", r.details),
                    (true, false) => " -- over time budget".to_string(),
                };
                if !ok {
                    failures.push(n);
                }
                format!(
                    "[{}] {n:>2} {} ({:.2} s{budget}){why}",
                    if ok { "PASS" } else { "FAIL" },
                    s.name,
                    r.elapsed.as_secs_f64()
                )
            }
            Err(e) => {
                failures.push(n);
                format!("[FAIL] {n:>2} {} -- error: {e}", s.name)
            }
        };
        println!("{line}");
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", registry().len());
}

//! Acceptance criteria, one PASS/FAIL line each.  Criterion 7 runs only with
//! `FACTORCHECK_EXTENDED=1`.  Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use factorcheck::factorize::claims::{build_control, build_instance};
use factorcheck::factorize::{instance_property_suite, verify, Verdict, VerificationReport, VerifyOptions};
use factorcheck::orders::{self, Params};
use num_bigint::BigUint;

const SWEEP_LIMIT: Duration = Duration::from_secs(1);
const DESK_LIMIT: Duration = Duration::from_secs(60);
const SPORADIC_LIMIT: Duration = Duration::from_secs(120);
const EXTENDED_LIMIT: Duration = Duration::from_secs(3600);
const PROPERTY_SAMPLES: usize = 50;
const SEED: u64 = 1;

fn params(kv: &[(&str, u64)]) -> Params {
    let mut p = Params::default();
    for &(k, v) in kv {
        match k {
            "n" => p.n = Some(v),
            "q" => p.q = Some(v),
            "a" => p.a = Some(v),
            "b" => p.b = Some(v),
            "m" => p.m = Some(v),
            _ => unreachable!(),
        }
    }
    p
}

fn meet(r: &VerificationReport) -> Option<u128> {
    r.strategies.iter().find_map(|s| s.intersection_order)
}

struct Run {
    report: Result<VerificationReport, String>,
    elapsed: Duration,
}

fn run(id: &str, p: &Params, samples: usize) -> Run {
    let t = Instant::now();
    let report = build_instance(id, p, SEED)
        .map(|inst| verify(&inst, &VerifyOptions { seed: SEED, samples, ..Default::default() }))
        .map_err(|e| e.to_string());
    Run { report, elapsed: t.elapsed() }
}

/// Checks one claim: passes, meets in `want`, inside `limit`.
fn check_claim(id: &str, p: &Params, want: u128, limit: Duration, problems: &mut Vec<String>) -> Option<VerificationReport> {
    let r = run(id, p, 32);
    let label = format!("{id} {p}");
    match r.report {
        Err(e) => {
            problems.push(format!("{label}: {e}"));
            None
        }
        Ok(rep) => {
            if rep.overall != Verdict::Pass || !rep.expectation_met {
                problems.push(format!("{label}: overall {}", rep.overall));
            }
            if meet(&rep) != Some(want) {
                problems.push(format!("{label}: |H∩K| = {:?}, want {want}", meet(&rep)));
            }
            if r.elapsed > limit {
                problems.push(format!("{label}: {:.1} s over the {} s limit", r.elapsed.as_secs_f64(), limit.as_secs()));
            }
            Some(rep)
        }
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(problems: Vec<String>, ok_detail: String) -> Outcome {
    if problems.is_empty() {
        Outcome { pass: true, detail: ok_detail }
    } else {
        Outcome { pass: false, detail: problems.join("; ") }
    }
}

fn c1_sweep() -> Outcome {
    let t = Instant::now();
    let reports = orders::sweep(16, 16);
    let el = t.elapsed();
    let mut problems: Vec<String> = reports.iter().filter(|r| !r.holds).map(|r| format!("row {} {} fails", r.row, r.params)).collect();
    if reports.len() < 100 {
        problems.push(format!("only {} tuples", reports.len()));
    }
    if el > SWEEP_LIMIT {
        problems.push(format!("{:.3} s over the 1 s limit", el.as_secs_f64()));
    }
    outcome(problems, format!("{} tuples, exact, {:.3} s", reports.len(), el.as_secs_f64()))
}

fn c2_desk() -> Outcome {
    let mut problems = Vec::new();
    let t = Instant::now();
    check_claim("1", &params(&[("a", 2), ("b", 2), ("q", 2)]), 4, DESK_LIMIT, &mut problems);
    check_claim("1-Sp", &params(&[("a", 4), ("b", 1), ("q", 2)]), 24, DESK_LIMIT, &mut problems);
    if let Some(r) = check_claim("2", &params(&[("b", 1), ("q", 2)]), 96, DESK_LIMIT, &mut problems) {
        if r.orders.h != BigUint::from(6048u32) {
            problems.push(format!("row 2: |H| = {}, want 6048", r.orders.h));
        }
    }
    check_claim("3", &params(&[("n", 4), ("q", 2)]), 3, DESK_LIMIT, &mut problems);
    check_claim("3", &params(&[("n", 6), ("q", 2)]), 720, DESK_LIMIT, &mut problems);
    // Row 5 carries the graph automorphism on G and K: 120·336 = 40320.
    for (id, g) in [("4", 20160u32), ("5", 40320)] {
        if let Some(r) = check_claim(id, &params(&[("m", 2), ("q", 2)]), 1, DESK_LIMIT, &mut problems) {
            let o = &r.orders;
            if o.g != BigUint::from(g) || &o.h * &o.k != o.g {
                problems.push(format!("row {id}: {}·{} vs {}", o.h, o.k, o.g));
            }
        }
    }
    check_claim("8-Sp", &params(&[("q", 4)]), 60, DESK_LIMIT, &mut problems);
    outcome(problems, format!("8 instances, {:.1} s total", t.elapsed().as_secs_f64()))
}

fn c3_sporadic() -> Outcome {
    let mut problems = Vec::new();
    let none = Params::default();
    let t = Instant::now();
    for (id, want) in [("9", 10), ("10", 6), ("11", 21), ("11-affine", 168), ("12-S5", 3), ("12-4xA5", 6), ("12-2^4:A5", 24)] {
        check_claim(id, &none, want, SPORADIC_LIMIT, &mut problems);
    }
    if let Some(r) = check_claim("13", &none, 3, SPORADIC_LIMIT, &mut problems) {
        let y = r.extra.as_ref().map(|e| e["y_discrepancy"].clone()).unwrap_or_default();
        if y["computed_order"].is_null() || y["verdict"].is_null() {
            problems.push("row 13: Y-structure discrepancy not reported".into());
        }
    }
    outcome(problems, format!("8 instances, {:.1} s total", t.elapsed().as_secs_f64()))
}

fn c4_controls() -> Outcome {
    let mut problems = Vec::new();
    for id in ["neg-8-Sp", "neg-8"] {
        match build_control(id, SEED) {
            Err(e) => problems.push(format!("{id}: {e}")),
            Ok(inst) => {
                let r = verify(&inst, &VerifyOptions { seed: SEED, ..Default::default() });
                if r.overall != Verdict::Fail || !r.expectation_met {
                    problems.push(format!("{id}: overall {}", r.overall));
                }
            }
        }
    }
    outcome(problems, "both controls fail verification".into())
}

fn c5_properties() -> Outcome {
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for (id, p) in [("1", params(&[("a", 2), ("b", 2), ("q", 2)])), ("9", Params::default())] {
        let res = build_instance(id, &p, SEED).and_then(|inst| instance_property_suite(&inst, PROPERTY_SAMPLES, SEED));
        match res {
            Err(e) => problems.push(format!("row {id}: {e}")),
            Ok(r) => {
                if !r.passed() {
                    problems.push(format!("row {id}: {}", r.failures.join(", ")));
                }
                if !r.join_meet.holds {
                    problems.push(format!("row {id}: HL∩KL = {} vs {}", r.join_meet.hl_cap_kl, r.join_meet.product));
                }
                summary.push(format!("row {id} meet {} over {} conjugates", r.base_meet, r.samples));
            }
        }
    }
    outcome(problems, summary.join(", "))
}

fn c6_tightness() -> Outcome {
    let mut problems = Vec::new();
    let rows = [
        ("4", params(&[("m", 2), ("q", 2)])),
        ("5", params(&[("m", 2), ("q", 2)])),
        ("6", params(&[("m", 2), ("q", 4)])),
        ("7", params(&[("m", 2), ("q", 4)])),
    ];
    for (id, p) in rows.iter().chain([("12-S5", Params::default())].iter()) {
        match run(id, p, 4).report {
            Err(e) => problems.push(format!("{id}: {e}")),
            Ok(r) => {
                if r.tight != Some(true) {
                    problems.push(format!("{id}: tight = {:?}", r.tight));
                }
                if *id == "12-S5" {
                    match &r.tightness {
                        Some(t) if t.equal && t.located_order == 120 && t.located_residual_order == 60 => {}
                        t => problems.push(format!("12-S5: residual report {t:?}")),
                    }
                }
            }
        }
    }
    outcome(problems, "rows 4-7 residuals equal, S5 residual is A5".into())
}

fn c7_extended() -> Option<Outcome> {
    if std::env::var("FACTORCHECK_EXTENDED").as_deref() != Ok("1") {
        return None;
    }
    let mut problems = Vec::new();
    let t = Instant::now();
    if let Some(r) = check_claim("14", &Params::default(), 60, EXTENDED_LIMIT, &mut problems) {
        let orbit = r.strategies.iter().find(|s| s.name == "transitivity").and_then(|s| s.orbit_sizes.first().copied());
        if orbit != Some(8_386_560) {
            problems.push(format!("row 14: antiflag orbit {orbit:?}, want 8386560"));
        }
    }
    Some(outcome(problems, format!("8386560 antiflags in one orbit, {:.0} s", t.elapsed().as_secs_f64())))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 order-identity sweep", c1_sweep),
        ("2 desk verifications", c2_desk),
        ("3 sporadic rows", c3_sporadic),
        ("4 negative controls", c4_controls),
        ("5 property suites", c5_properties),
        ("6 tightness", c6_tightness),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let o = f();
        failed += usize::from(!o.pass);
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    match c7_extended() {
        None => println!("SKIP criterion 7 extended tier: set FACTORCHECK_EXTENDED=1"),
        Some(o) => {
            failed += usize::from(!o.pass);
            println!("{} criterion 7 extended tier: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

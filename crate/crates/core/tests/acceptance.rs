//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use dnss::bounds::{
    bound_cert_degree, bound_eps0, bound_eps_i, bound_l_semiexplicit, bound_l_syntactic, bound_m, SystemProfile,
    TowerInt,
};
use dnss::decide::{decide, strong_nss, verify_certificate, Verdict};
use dnss::descent::{build_chain, populate, reconstruct_l, DEFAULT_CAP};
use dnss::groebner::{contains_one, dimension, is_radical_zero_dim};
use dnss::reduce::{rabinowitsch, to_first_order, GeneralSystem, SemiexplicitSystem};
use num_bigint::BigUint;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gkos_criterion(m: u32, l_cap: u32, budget: Duration) -> Outcome {
    let sys = gkos(m);
    let start = Instant::now();
    let verdict = decide(&sys, l_cap);
    let elapsed = start.elapsed();
    let expected = 1u32 << (m + 1);
    match verdict {
        Verdict::Inconsistent { l_min, certificate } => {
            ensure(l_min == expected, || format!("L_min = {l_min}, expected {expected}"))?;
            let ok = verify_certificate(&certificate, &sys).map_err(|e| e.to_string())?;
            ensure(ok, || "certificate does not verify".into())?;
            ensure(elapsed < budget, || format!("took {elapsed:?}, budget {budget:?}"))?;
            Ok(format!("L_min = {l_min}, certificate verified, {} entries, {elapsed:.2?}", certificate.entries.len()))
        }
        other => Err(format!("unexpected verdict: {other}")),
    }
}

fn criterion_3() -> Outcome {
    let suite = zero_dim_suite();
    let mut worst = 0;
    for (k, sys) in suite.iter().enumerate() {
        let ambient = sys.algebraic_vars();
        let dim = dimension(&sys.constraints, &ambient);
        ensure(dim == 0, || format!("system {k}: constraint dimension {dim}"))?;
        ensure(is_radical_zero_dim(&sys.constraints, &ambient), || format!("system {k}: not radical"))?;
        match decide(&sys.generators(), 3) {
            Verdict::Inconsistent { l_min, .. } => {
                ensure(l_min <= 1, || format!("system {k}: L_min = {l_min}"))?;
                worst = worst.max(l_min);
            }
            other => return Err(format!("system {k}: {other}")),
        }
    }
    Ok(format!("{} systems, max L_min = {worst}", suite.len()))
}

fn criterion_4() -> Outcome {
    let tally = oracle_equivalence(0x5eed_0001, 200);
    ensure(tally.disagreements.is_empty(), || tally.disagreements.join("; "))?;
    Ok(format!("{} instances ({} unit ideals), 0 disagreements", tally.cases, tally.units))
}

fn semiexplicit_of(name: &str) -> SemiexplicitSystem {
    let doc = corpus(name);
    if doc.has_diff_lines() {
        to_first_order(&GeneralSystem::from_document(&doc)).expect("reducible").0
    } else {
        SemiexplicitSystem::from_document(&doc).expect("semiexplicit")
    }
}

fn criterion_5() -> Outcome {
    let mut lines = Vec::new();
    let mut inconsistent = 0;
    for &(name, expected) in DECIDE_EXPECTED.iter() {
        let sys = semiexplicit_of(name);
        let chain = build_chain(&sys, 8);
        let mut chain = match (chain, expected) {
            (Ok(c), _) => c,
            // the descent only has to terminate on systems without solutions
            (Err(e), None) => {
                let dims = e.partial.dims();
                ensure(dims.windows(2).take(dims.len().saturating_sub(2)).all(|w| w[1] < w[0]), || {
                    format!("{name}: dims {dims:?}")
                })?;
                lines.push(format!("{name}: consistent, stops at {dims:?}"));
                continue;
            }
            (Err(e), Some(_)) => return Err(format!("{name}: {e}")),
        };
        let dims = chain.dims();
        ensure(dims.windows(2).all(|w| w[1] < w[0]), || format!("{name}: dims {dims:?} not strictly decreasing"))?;
        populate(&mut chain, DEFAULT_CAP, DEFAULT_CAP);
        match (reconstruct_l(&chain), expected) {
            (Ok(report), _) => {
                for c in &report.checks {
                    ensure(c.holds, || format!("{name}: k_{} = {} > 1 + {}·{}", c.i - 1, c.k_prev, c.eps_i, c.k_i))?;
                }
                ensure(report.k_mu_is_one, || format!("{name}: k_mu != 1"))?;
                ensure(report.unit_at_l, || format!("{name}: 1 not reached at L = {}", report.l))?;
                if let Some(l_min) = expected {
                    ensure(report.l >= l_min, || format!("{name}: L = {} below L_min = {l_min}", report.l))?;
                }
                inconsistent += 1;
                lines.push(format!("{name}: dims {dims:?}, L = {}", report.l));
            }
            (Err(e), None) => lines.push(format!("{name}: consistent, dims {dims:?} ({e})")),
            (Err(e), Some(_)) => return Err(format!("{name}: {e}")),
        }
    }
    for line in &lines {
        println!("    {line}");
    }
    ensure(inconsistent >= 8, || format!("only {inconsistent} inconsistent systems reconstructed"))?;
    Ok(format!("{} corpus systems, {inconsistent} with L reconstructed, 0 violations", lines.len()))
}

/// Every bound must be non-decreasing in each of its three grid coordinates.
fn monotone(name: &str, f: impl Fn(u64, u64, u64) -> TowerInt) -> Result<(), String> {
    let vals = [1u64, 2, 3];
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                let here = f(a, b, c);
                for (da, db, dc) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
                    let (a2, b2, c2) = (a + da, b + db, c + dc);
                    if a2 > 3 || b2 > 3 || c2 > 3 {
                        continue;
                    }
                    let next = f(a2, b2, c2);
                    ensure(next >= here, || format!("{name}({a},{b},{c}) = {here} > {name}({a2},{b2},{c2}) = {next}"))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let eps0 = bound_eps0(&SystemProfile::new(1, 1, 1, 1).with_variety_degree(2u32));
    ensure(eps0.to_u64() == Some(4), || format!("bound_eps0 = {eps0}"))?;
    let m = bound_m(&SystemProfile::new(1, 0, 2, 2), &TowerInt::from(4));
    ensure(m.to_u64() == Some(128), || format!("bound_M = {m}"))?;
    let l = bound_l_syntactic(&SystemProfile::new(1, 0, 1, 2));
    ensure(l.value() == Some(&(BigUint::from(1u32) << 512u32)), || format!("bound_L_syntactic = {l}"))?;

    monotone("eps0", |d, n, m| bound_eps0(&SystemProfile::new(n, m, 1, 1).with_variety_degree(d)))?;
    monotone("eps_1", |d, n, m| bound_eps_i(&SystemProfile::new(n, m, 1, 1).with_variety_degree(d).with_dim(1), 1))?;
    monotone("L_semiexplicit", |d, n, r| {
        bound_l_semiexplicit(&SystemProfile::new(n, 1, 1, 1).with_variety_degree(d).with_dim(r - 1))
    })?;
    monotone("L_syntactic", |n, e, d| bound_l_syntactic(&SystemProfile::new(n, 0, e, d)))?;
    monotone("M", |n, e, d| bound_m(&SystemProfile::new(n, 0, e, d), &TowerInt::from(4)))?;
    monotone("cert_degree", |n, e, d| bound_cert_degree(&SystemProfile::new(n, 0, e, d), &TowerInt::from(4)))?;
    Ok("eps0 = 4, M = 128, L_syntactic = 2^512; 6 formulas monotone on 27-point grids".into())
}

fn criterion_7() -> Outcome {
    let sys = ps(&["x1^2"]);
    let f = p("x1");
    let (l, m, cert) = strong_nss(&sys, &f, 4, 8).map_err(|e| e.to_string())?.ok_or("no certificate")?;
    ensure((l, m) == (0, 2), || format!("(L, M) = ({l}, {m})"))?;
    ensure(verify_certificate(&cert, &sys).map_err(|e| e.to_string())?, || "certificate does not verify".into())?;
    let (rab, _) = rabinowitsch(&sys, &f).map_err(|e| e.to_string())?;
    match decide(&rab, 4) {
        Verdict::Inconsistent { l_min, .. } => Ok(format!("(L, M) = (0, 2); Rabinowitsch system L_min = {l_min}")),
        other => Err(format!("Rabinowitsch system: {other}")),
    }
}

fn run_suite<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, check).map_err(|e| format!("{name}: {e}"))
}

fn criterion_8() -> Outcome {
    const N: u32 = 1000;
    run_suite("ring axioms", N, (arb_poly(), arb_poly(), arb_poly()), |(a, b, c)| check_ring_axioms(&a, &b, &c))?;
    run_suite("Leibniz", N, (arb_poly(), arb_poly(), arb_jet()), |(a, b, v)| check_leibniz(&a, &b, v))?;
    run_suite("groebner", N, arb_ideal(), |gens| check_groebner(&gens).map(|_| ()))?;
    run_suite("poly round trip", N, arb_poly(), |a| check_round_trip(&a))?;
    run_suite("document round trip", N, arb_document(), |d| check_document_round_trip(&d))?;
    // sanity: the unit-ideal shortcut agrees with the full basis
    run_suite("unit ideal", N, arb_ideal(), |gens| {
        let gb = check_groebner(&gens)?;
        proptest::prop_assert_eq!(gb.is_unit(), contains_one(&gens).is_some());
        Ok(())
    })?;
    Ok(format!("6 suites x {N} cases, exact equality"))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 GKOS m=1", Box::new(|| gkos_criterion(1, 6, Duration::from_secs(10)))),
        ("2 GKOS m=2", Box::new(|| gkos_criterion(2, 10, Duration::from_secs(600)))),
        ("3 zero-dimensional suite", Box::new(criterion_3)),
        ("4 oracle equivalence", Box::new(criterion_4)),
        ("5 descent fidelity", Box::new(criterion_5)),
        ("6 bound formulas", Box::new(criterion_6)),
        ("7 strong NSS", Box::new(criterion_7)),
        ("8 algebra kernel properties", Box::new(criterion_8)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run) in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} [{t:.2?}]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name} [{t:.2?}]: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every criterion runs the corresponding named verification suite at its
//! pinned bounds and requires zero failures; all equalities are exact (the
//! models are discrete, so there are no tolerances to configure).

use csys::report::CheckResult;
use csys::suites::{run_suite, SuiteConfig};

fn assert_suite(criterion: &str, label: &str, checks: Vec<CheckResult>) {
    let failures: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
    if failures.is_empty() {
        println!("{criterion} ({label}): PASS [{} checks]", checks.len());
    } else {
        println!("{criterion} ({label}): FAIL");
        for f in &failures {
            println!("  {} [{}]: {:?}", f.id, f.paper_ref, f.witness);
        }
        panic!("{criterion} failed with {} failing checks", failures.len());
    }
}

fn config() -> SuiteConfig {
    SuiteConfig::default()
}

#[test]
fn criterion_1_lcc_suite() {
    // Category axioms, fiber-product universal property, the currying
    // adjunction, and the exchange / cross-composite / internal-hom /
    // adjoint-composition lemmas: exhaustive over bases of size <= 2 with
    // fibers <= 2, plus 200 seeded larger samples.
    let checks = run_suite("lcc", &config()).unwrap();
    assert!(checks.len() >= 8);
    assert_suite("criterion 1", "lcc suite", checks);
}

#[test]
fn criterion_2_universe_suite() {
    // For N <= 2 and X <= 4 every chosen square commutes and is a pullback
    // by both the fiberwise fast path and the generic cone search; star
    // pairing and induced-map laws hold exhaustively.
    let checks = run_suite("universe", &config()).unwrap();
    assert_suite("criterion 2", "universe suite", checks);
}

#[test]
fn criterion_3_cc_suite() {
    // Level counts (1, 2, 3) for N = 1 and (1, 3, 13) for N = 2 at lengths
    // 0..2, independently derived sums, plus the axiom checks at length <= 3
    // (N = 1) and length <= 2 (N = 2).
    let checks = run_suite("csystem", &config()).unwrap();
    assert_suite("criterion 3", "cc suite", checks);
}

#[test]
fn criterion_4_bijection_suite() {
    // Round trips and all naturality / boundary-compatibility equations of
    // u1, u_tilde1, u2, u_tilde2, eta and mu2, exhaustive for N <= 2 at
    // length <= 2.
    let checks = run_suite("u-bijections", &config()).unwrap();
    assert_suite("criterion 4", "bijection suite", checks);
}

#[test]
fn criterion_5_pi_lambda_suite() {
    // The transported structure passes the pullback condition at length <= 3
    // on the Boolean model; the counting oracle holds for every tabulated
    // object; the two constructions round-trip exactly; the classical
    // clauses hold.
    let mut checks = run_suite("pi-lambda-roundtrip", &config()).unwrap();
    checks.extend(run_suite("construction-3.17", &config()).unwrap());
    assert_suite("criterion 5", "pi-lambda suite", checks);
}

#[test]
fn criterion_6_functoriality_suite() {
    // The full transport-lemma suite passes exhaustively on the inclusion
    // instance at base length <= 1, the theorem hypothesis and conclusion
    // hold, and fault injection on the destination structure flips the
    // hypothesis check.
    let checks = run_suite("functoriality", &config()).unwrap();
    assert_suite("criterion 6", "functoriality suite", checks);
}

#[test]
fn criterion_7_prestn_suite() {
    // Both chosen fiber-product structures pass the pullback checks and
    // differ as data.
    let checks = run_suite("prestn", &config()).unwrap();
    assert_suite("criterion 7", "prestn suite", checks);
}

//! Product-structure suites on the Boolean model: the two constructions
//! between fiberwise bijections and application morphisms with their exact
//! round trips, and the transported structure with its pullback condition,
//! classical clauses and the counting oracle.

use super::SuiteConfig;
use crate::cc_universe::{CcObj, CcSystem};
use crate::csystem_core::CSystem;
use crate::finset_lcc::{is_pullback_fast, pi_structure, FinSkel, Universe};
use crate::pi_lambda::{
    ap_from_ap_prime, c1, c1_section, check_ap_prime, check_pi_lambda, check_pre_pi_lambda,
    check_products, lambda_inv, lambda_prime_to_pi_lambda, pi_lambda_to_lambda_prime, PiLambda,
    PrePiLambda,
};
use crate::report::{run_check, CheckResult};

const BOUND: usize = 4;

fn boolean_structure(
    config: &SuiteConfig,
) -> Result<(CcSystem, PrePiLambda<CcSystem>), String> {
    let skel = FinSkel::new(config.cap, 1_000_000);
    let cc = CcSystem::build(Universe::new(1, skel), BOUND).map_err(|e| e.to_string())?;
    let pi = pi_structure(&cc.universe).map_err(|e| e.to_string())?;
    let st = cc
        .pi_lambda_from_pi_structure(&pi, BOUND)
        .map_err(|e| e.to_string())?;
    Ok((cc, st))
}

/// Independent section count: the product of the fiber sizes of the top
/// classifier.
fn fiber_product_count(cc: &CcSystem, x: &CcObj) -> usize {
    cc.u1(x).table.iter().product()
}

pub fn run_roundtrip(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let built = boolean_structure(config);
    let (cc, st) = match built {
        Ok(x) => x,
        Err(e) => {
            checks.push(run_check("pi-lambda/setup", "Construction 2015.03.17.constr3", || {
                Err(e)
            }));
            return checks;
        }
    };

    checks.push(run_check("pi-lambda/c1-output-valid", "Construction 2015.03.13.constr1", || {
        let pl = PiLambda::validate(&cc, st.clone(), BOUND).map_err(|e| e.to_string())?;
        let lp = pi_lambda_to_lambda_prime(&pl);
        let app = c1(&cc, &lp).map_err(|e| e.to_string())?;
        let report = check_ap_prime(&cc, &app, BOUND - 1).map_err(|e| e.to_string())?;
        if report.is_empty() {
            Ok(())
        } else {
            Err(report.to_string())
        }
    }));

    checks.push(run_check("pi-lambda/c2-after-c1", "Lemma 2015.03.15.l1", || {
        let pl = PiLambda::validate(&cc, st.clone(), BOUND).map_err(|e| e.to_string())?;
        let lp = pi_lambda_to_lambda_prime(&pl);
        let app = c1(&cc, &lp).map_err(|e| e.to_string())?;
        let lp_back = crate::pi_lambda::c2(&cc, &app).map_err(|e| e.to_string())?;
        if lp_back.lambda_prime.is_empty() {
            return Err("empty round-trip domain".into());
        }
        for (s, v) in &lp_back.lambda_prime {
            if lp.lambda_prime.get(s) != Some(v) {
                return Err(format!("c2(c1(lambda')) differs at {s:?}"));
            }
        }
        Ok(())
    }));

    checks.push(run_check("pi-lambda/c1-after-c2", "Lemma 2015.03.15.l2", || {
        let pl = PiLambda::validate(&cc, st.clone(), BOUND).map_err(|e| e.to_string())?;
        let lp = pi_lambda_to_lambda_prime(&pl);
        let app = c1(&cc, &lp).map_err(|e| e.to_string())?;
        let lp_back = crate::pi_lambda::c2(&cc, &app).map_err(|e| e.to_string())?;
        let app_back = c1(&cc, &lp_back).map_err(|e| e.to_string())?;
        if app_back.ap.is_empty() {
            return Err("empty round-trip domain".into());
        }
        for (b, m) in &app_back.ap {
            if app.ap.get(b) != Some(m) {
                return Err(format!("c1(c2(Ap')) differs at {b:?}"));
            }
        }
        Ok(())
    }));

    checks.push(run_check(
        "pi-lambda/inverse-formulas-agree",
        "Construction 2015.03.13.constr1",
        || {
            // lambda_inv''(s) = s*(ap, 2) agrees with the composite formula.
            let pl = PiLambda::validate(&cc, st.clone(), BOUND).map_err(|e| e.to_string())?;
            let lp = pi_lambda_to_lambda_prime(&pl);
            let app = c1(&cc, &lp).map_err(|e| e.to_string())?;
            for b in app.ap.keys() {
                let ap_section = c1_section(&cc, &lp, b)
                    .map_err(|e| e.to_string())?
                    .expect("covered by the c1 domain");
                let pi_b = &lp.pi[b];
                for mor in cc.sections_of(pi_b).map_err(|e| e.to_string())? {
                    let s = crate::csystem_core::Section { target: pi_b.clone(), mor };
                    let via_pull = crate::csystem_core::pull_sec_n(&cc, &s.mor, &ap_section, 2)
                        .map_err(|e| e.to_string())?;
                    let via_composite =
                        lambda_inv(&cc, &app, b, &s).map_err(|e| e.to_string())?;
                    if via_pull != via_composite {
                        return Err(format!("inverse formulas disagree at ({b:?}, {s:?})"));
                    }
                }
            }
            Ok(())
        },
    ));

    checks.push(run_check("pi-lambda/form-conversion-roundtrip", "Problem 2015.03.13.prob1", || {
        let pl = PiLambda::validate(&cc, st.clone(), BOUND).map_err(|e| e.to_string())?;
        let lp = pi_lambda_to_lambda_prime(&pl);
        let back = lambda_prime_to_pi_lambda(&lp);
        if back.pre.pi != pl.pre.pi || back.pre.lambda != pl.pre.lambda {
            return Err("conversion round trip is not the identity".into());
        }
        Ok(())
    }));

    checks
}

pub fn run_construction(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let built = boolean_structure(config);
    let (cc, st) = match built {
        Ok(x) => x,
        Err(e) => {
            checks.push(run_check("constr-3.17/setup", "Construction 2015.03.17.constr3", || {
                Err(e)
            }));
            return checks;
        }
    };

    checks.push(run_check("constr-3.17/pi-square", "Definition 2015.03.29.def1", || {
        let pi = pi_structure(&cc.universe).map_err(|e| e.to_string())?;
        let sq = cc.pi_square(&pi).map_err(|e| e.to_string())?;
        if !is_pullback_fast(&sq) {
            return Err("product-structure square is not a pullback".into());
        }
        let probe = FinSkel::new(4, 1_000_000);
        if !crate::cat_core::is_pullback(&probe, &sq).map_err(|e| e.to_string())? {
            return Err("cone search rejects the product-structure square".into());
        }
        Ok(())
    }));

    checks.push(run_check("constr-3.17/pre-structure", "Definition 2015.03.09.def1", || {
        let report = check_pre_pi_lambda(&cc, &st, 3).map_err(|e| e.to_string())?;
        if report.is_empty() {
            Ok(())
        } else {
            Err(report.to_string())
        }
    }));

    checks.push(run_check("constr-3.17/pullback-condition", "Definition 2015.03.09.def2", || {
        // Both checkers (fiberwise bijectivity and the set-level pullback)
        // run inside, and must also agree with each other.
        let report = check_pi_lambda(&cc, &st, 3).map_err(|e| e.to_string())?;
        if report.is_empty() {
            Ok(())
        } else {
            Err(report.to_string())
        }
    }));

    checks.push(run_check("constr-3.17/counting-oracle", "Construction 2015.03.17.constr3", || {
        // |tilde Ob(Pi(B))| equals the product of the fiber sizes of B,
        // counted by brute-force section enumeration on both sides.
        for (b, pi_b) in &st.pi {
            let expected = fiber_product_count(&cc, b);
            let sections_b = cc.sections_of(b).map_err(|e| e.to_string())?.len();
            let sections_pi = cc.sections_of(pi_b).map_err(|e| e.to_string())?.len();
            if sections_b != expected || sections_pi != expected {
                return Err(format!(
                    "section counts at {b:?}: {sections_b}, {sections_pi}, expected {expected}"
                ));
            }
        }
        Ok(())
    }));

    checks.push(run_check("constr-3.17/classical-clauses", "Definition 2015.03.17.def1", || {
        let pl = PiLambda::validate(&cc, st.clone(), BOUND).map_err(|e| e.to_string())?;
        let lp = pi_lambda_to_lambda_prime(&pl);
        let app = c1(&cc, &lp).map_err(|e| e.to_string())?;
        let pof = ap_from_ap_prime(&cc, &app).map_err(|e| e.to_string())?;
        let report = check_products(&cc, &pof, BOUND - 1).map_err(|e| e.to_string())?;
        if report.is_empty() {
            Ok(())
        } else {
            Err(report.to_string())
        }
    }));

    let _ = config;
    checks
}

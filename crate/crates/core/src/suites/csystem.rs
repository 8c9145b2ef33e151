//! C-system suite: level counts of the generated systems against
//! hand-countable sums, and the full axiom check at desk-scale bounds.

use super::SuiteConfig;
use crate::cc_universe::CcSystem;
use crate::csystem_core::{check_csystem_axioms, ob_n, tilde_ob_n, AxiomCheckConfig, CSystem};
use crate::finset_lcc::{FinSkel, Universe};
use crate::report::{run_check, CheckResult};

pub fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let skel = FinSkel::new(config.cap, 1_000_000);

    checks.push(run_check("csystem/level-counts-boolean", "§3 CC construction", || {
        let cc = CcSystem::build(Universe::new(1, skel), 3).map_err(|e| e.to_string())?;
        // Level 1 = |Hom(1, U)| = 2; total spaces 0, 1 give level 2 =
        // 2^0 + 2^1 = 3; total spaces 0, 0, 1 give level 3 = 1 + 1 + 2 = 4.
        let expected = vec![1, 2, 3, 4];
        if cc.level_counts() != expected {
            return Err(format!("counts {:?}, expected {expected:?}", cc.level_counts()));
        }
        Ok(())
    }));

    checks.push(run_check("csystem/level-counts-three", "§3 CC construction", || {
        let cc = CcSystem::build(Universe::new(2, skel), 2).map_err(|e| e.to_string())?;
        // Level 1 = 3 with total spaces 0, 1, 2; level 2 = 1 + 3 + 9 = 13.
        let expected = vec![1, 3, 13];
        if cc.level_counts() != expected {
            return Err(format!("counts {:?}, expected {expected:?}", cc.level_counts()));
        }
        Ok(())
    }));

    checks.push(run_check("csystem/relative-counts", "§2 Ob_n and tilde Ob_n", || {
        let cc = CcSystem::build(Universe::new(1, skel), 2).map_err(|e| e.to_string())?;
        let pt = cc.pt();
        if ob_n(&cc, &pt, 1).map_err(|e| e.to_string())?.len() != 2 {
            return Err("Ob_1(pt) should have 2 elements".into());
        }
        if ob_n(&cc, &pt, 2).map_err(|e| e.to_string())?.len() != 3 {
            return Err("Ob_2(pt) should have 3 elements".into());
        }
        if !tilde_ob_n(&cc, &pt, 0).map_err(|e| e.to_string())?.is_empty() {
            return Err("tilde Ob(pt) should be empty".into());
        }
        Ok(())
    }));

    checks.push(run_check("csystem/axioms-boolean", "§1-2 C-system axioms", || {
        let bound = 3;
        let cc = CcSystem::build(Universe::new(1, skel), bound).map_err(|e| e.to_string())?;
        let report = check_csystem_axioms(&cc, bound, AxiomCheckConfig::default())
            .map_err(|e| e.to_string())?;
        if report.is_empty() {
            Ok(())
        } else {
            Err(report.to_string())
        }
    }));

    checks.push(run_check("csystem/axioms-three", "§1-2 C-system axioms", || {
        let cc = CcSystem::build(Universe::new(2, skel), 2).map_err(|e| e.to_string())?;
        let axiom_config = AxiomCheckConfig { mediate_budget: 200_000, ..Default::default() };
        let report =
            check_csystem_axioms(&cc, 2, axiom_config).map_err(|e| e.to_string())?;
        if report.is_empty() {
            Ok(())
        } else {
            Err(report.to_string())
        }
    }));

    checks
}

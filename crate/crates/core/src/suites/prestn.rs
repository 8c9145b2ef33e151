//! The two-fiber-product-structures example: both chosen squares for the
//! pair of identities on the two-element object are pullbacks, and they
//! differ as data.

use super::SuiteConfig;
use crate::cat_core::is_pullback;
use crate::finset_lcc::{is_pullback_fast, prestn_structures, FinSkel};
use crate::report::{run_check, CheckResult};

pub fn run(_config: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();

    checks.push(run_check("prestn/str1-pullback", "Example 2015.05.20.ex1", || {
        let (str1, _) = prestn_structures();
        if !str1.left.is_identity() || !str1.top.is_identity() {
            return Err("str1 should have identity legs".into());
        }
        let probe = FinSkel::new(4, 1_000_000);
        if !is_pullback_fast(&str1) || !is_pullback(&probe, &str1).map_err(|e| e.to_string())? {
            return Err("str1 square is not a pullback".into());
        }
        Ok(())
    }));

    checks.push(run_check("prestn/str-sigma-pullback", "Example 2015.05.20.ex1", || {
        let (_, str_sigma) = prestn_structures();
        if str_sigma.left.table != [1, 0] || str_sigma.top.table != [1, 0] {
            return Err("str_sigma should have the swap on the left and top legs".into());
        }
        let probe = FinSkel::new(4, 1_000_000);
        if !is_pullback_fast(&str_sigma)
            || !is_pullback(&probe, &str_sigma).map_err(|e| e.to_string())?
        {
            return Err("str_sigma square is not a pullback".into());
        }
        Ok(())
    }));

    checks.push(run_check("prestn/structures-differ", "Example 2015.05.20.ex1", || {
        let (str1, str_sigma) = prestn_structures();
        if str1 == str_sigma {
            return Err("the two chosen structures coincide".into());
        }
        Ok(())
    }));

    checks
}

//! Universe suite: every chosen pullback square commutes and satisfies the
//! universal property by both verification paths, and the star pairing and
//! induced maps between total spaces obey their defining laws.

use super::SuiteConfig;
use crate::cat_core::{is_pullback, mediate};
use crate::finset_lcc::{hom_tables, is_pullback_fast, FinSetMor, FinSkel, Universe};
use crate::report::{run_check, CheckResult};

pub fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let n_max = config.finskel_n.clamp(1, 2);

    checks.push(run_check("universe/chosen-squares", "§3 universe structure", || {
        let probe = FinSkel::new(5, 1_000_000);
        let ambient = FinSkel::new(config.cap, 1_000_000);
        for n in 0..=n_max {
            let universe = Universe::new(n, ambient);
            for x in 0..=4usize {
                for tab in hom_tables(x, n + 1) {
                    let f = FinSetMor::new(x, n + 1, tab).unwrap();
                    let sq = universe.chosen_square(&f).map_err(|e| e.to_string())?;
                    let skel_probe = FinSkel::new(0, 0);
                    if !sq.commutes(&skel_probe) {
                        return Err(format!("chosen square of {f:?} does not commute"));
                    }
                    if !is_pullback_fast(&sq) {
                        return Err(format!("fast path rejects the square of {f:?}"));
                    }
                    if !is_pullback(&probe, &sq).map_err(|e| e.to_string())? {
                        return Err(format!("cone search rejects the square of {f:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("universe/star-pairing-laws", "§3 star pairing", || {
        let ambient = FinSkel::new(config.cap, 1_000_000);
        for n in 1..=n_max {
            let universe = Universe::new(n, ambient);
            for x in 0..=3usize {
                for ftab in hom_tables(x, n + 1) {
                    let f = FinSetMor::new(x, n + 1, ftab).unwrap();
                    let sq = universe.chosen_square(&f).map_err(|e| e.to_string())?;
                    for w in 0..=2usize {
                        for atab in hom_tables(w, x) {
                            let a = FinSetMor::new(w, x, atab).unwrap();
                            for btab in hom_tables(w, universe.u_tilde().0) {
                                let b =
                                    FinSetMor::new(w, universe.u_tilde().0, btab).unwrap();
                                if a.then(&f) != b.then(&universe.p) {
                                    continue;
                                }
                                let st =
                                    universe.star(&f, &a, &b).map_err(|e| e.to_string())?;
                                if st.then(&sq.left) != a || st.then(&sq.top) != b {
                                    return Err(format!(
                                        "star pairing laws fail at ({f:?}, {a:?}, {b:?})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("universe/q-functoriality", "§3 induced maps Q(f, F)", || {
        let ambient = FinSkel::new(config.cap, 1_000_000);
        for n in 1..=n_max {
            let universe = Universe::new(n, ambient);
            for x in 0..=2usize {
                for ftab in hom_tables(x, n + 1) {
                    let classifier = FinSetMor::new(x, n + 1, ftab).unwrap();
                    let q_id = universe
                        .q_map(&FinSetMor::identity(x), &classifier)
                        .map_err(|e| e.to_string())?;
                    if !q_id.is_identity() {
                        return Err(format!("Q(Id, {classifier:?}) is not the identity"));
                    }
                    for xp in 0..=2usize {
                        for gtab in hom_tables(xp, x) {
                            let f = FinSetMor::new(xp, x, gtab).unwrap();
                            for xpp in 0..=2usize {
                                for htab in hom_tables(xpp, xp) {
                                    let g = FinSetMor::new(xpp, xp, htab).unwrap();
                                    let lhs = universe
                                        .q_map(&g.then(&f), &classifier)
                                        .map_err(|e| e.to_string())?;
                                    let rhs = universe
                                        .q_map(&g, &f.then(&classifier))
                                        .map_err(|e| e.to_string())?
                                        .then(
                                            &universe
                                                .q_map(&f, &classifier)
                                                .map_err(|e| e.to_string())?,
                                        );
                                    if lhs != rhs {
                                        return Err(format!(
                                            "Q composition fails at ({g:?}, {f:?})"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("universe/q-via-mediator", "§3 induced maps Q(f, F)", || {
        // Q(f, F) agrees with the generic searched mediator of the cone
        // (p_{X', f;F} ; f, Q(f;F)).
        let probe = FinSkel::new(4, 1_000_000);
        let ambient = FinSkel::new(config.cap, 1_000_000);
        for n in 1..=n_max {
            let universe = Universe::new(n, ambient);
            for x in 0..=2usize {
                for ftab in hom_tables(x, n + 1) {
                    let classifier = FinSetMor::new(x, n + 1, ftab).unwrap();
                    let sq = universe.chosen_square(&classifier).map_err(|e| e.to_string())?;
                    for xp in 0..=2usize {
                        for gtab in hom_tables(xp, x) {
                            let f = FinSetMor::new(xp, x, gtab).unwrap();
                            let pulled = universe
                                .chosen_square(&f.then(&classifier))
                                .map_err(|e| e.to_string())?;
                            let cone_a = pulled.left.then(&f);
                            let searched = mediate(&probe, &sq, (&cone_a, &pulled.top))
                                .map_err(|e| e.to_string())?;
                            let direct = universe
                                .q_map(&f, &classifier)
                                .map_err(|e| e.to_string())?;
                            if searched != direct {
                                return Err(format!(
                                    "mediator disagrees with Q at ({f:?}, {classifier:?})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks
}

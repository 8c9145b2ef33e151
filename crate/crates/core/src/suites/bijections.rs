//! Representability suite: round trips and naturality of the bijections
//! between relative objects/sections and classifiers (`u1`, `u_tilde1`,
//! `u2`, `u_tilde2`), the `D_p` functor laws, the structure map naturality,
//! the representation `eta` and the composite bijections `mu2`.

use super::SuiteConfig;
use crate::cat_core::{Category, ObjRef};
use crate::cc_universe::CcSystem;
use crate::csystem_core::{ob_n, pull_ob_n, pull_sec_n, tilde_ob_n, CSystem};
use crate::finset_lcc::{FinSetMor, FinSkel, Universe};
use crate::report::{run_check, CheckResult};

struct Sweep {
    systems: Vec<CcSystem>,
    bound: usize,
}

fn sweep(config: &SuiteConfig) -> Result<Sweep, String> {
    let bound = config.length_bound.max(2);
    let skel = FinSkel::new(config.cap, 1_000_000);
    let mut systems = Vec::new();
    for n in 1..=config.finskel_n.max(1) {
        systems.push(CcSystem::build(Universe::new(n, skel), bound).map_err(|e| e.to_string())?);
    }
    Ok(Sweep { systems, bound })
}

pub fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let sweep = match sweep(config) {
        Ok(s) => s,
        Err(e) => {
            checks.push(run_check("bijections/setup", "§3 CC construction", || Err(e)));
            return checks;
        }
    };
    let systems = &sweep.systems;
    let bound = sweep.bound;

    checks.push(run_check("bijections/u1-roundtrip", "eq 2015.04.30.eq3a", || {
        for cc in systems {
            for gamma in cc.objects_up_to(bound - 1).map_err(|e| e.to_string())? {
                for t in ob_n(cc, &gamma, 1).map_err(|e| e.to_string())? {
                    if cc.u1_inv(&gamma, &cc.u1(&t)) != t {
                        return Err(format!("u1 round trip fails at {t:?}"));
                    }
                }
                for f in cc
                    .skel()
                    .hom(ObjRef(gamma.int_size()), cc.universe.u())
                    .map_err(|e| e.to_string())?
                {
                    if cc.u1(&cc.u1_inv(&gamma, &f)) != f {
                        return Err(format!("u1 reverse round trip fails at {f:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/u-tilde1-roundtrip", "eq 2015.04.30.eq4a", || {
        for cc in systems {
            for gamma in cc.objects_up_to(bound - 1).map_err(|e| e.to_string())? {
                for o in tilde_ob_n(cc, &gamma, 1).map_err(|e| e.to_string())? {
                    if cc.u_tilde1_inv(&gamma, &cc.u_tilde1(&o)) != o {
                        return Err(format!("u_tilde1 round trip fails at {o:?}"));
                    }
                }
                for f in cc
                    .skel()
                    .hom(ObjRef(gamma.int_size()), cc.universe.u_tilde())
                    .map_err(|e| e.to_string())?
                {
                    let o = cc.u_tilde1_inv(&gamma, &f);
                    if cc.u_tilde1(&o) != f {
                        return Err(format!("u_tilde1 reverse round trip fails at {f:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/star-section", "eq 2015.05.04.eq1a", || {
        for cc in systems {
            for gamma in cc.objects_up_to(bound - 1).map_err(|e| e.to_string())? {
                for o in tilde_ob_n(cc, &gamma, 1).map_err(|e| e.to_string())? {
                    let f = cc.u_tilde1(&o);
                    let star = cc
                        .universe
                        .star(&cc.u1(&o.target), &FinSetMor::identity(f.dom), &f)
                        .map_err(|e| e.to_string())?;
                    if o.mor.map != star {
                        return Err(format!("int(o) != Id * u_tilde1(o) at {o:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/boundary", "eq 2015.05.02.eq5a", || {
        for cc in systems {
            for gamma in cc.objects_up_to(bound - 1).map_err(|e| e.to_string())? {
                for o in tilde_ob_n(cc, &gamma, 1).map_err(|e| e.to_string())? {
                    if cc.u1(&o.target) != cc.u_tilde1(&o).then(&cc.universe.p) {
                        return Err(format!("boundary equation fails at {o:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/u1-naturality", "eq 2015.04.30.eq1a", || {
        for cc in systems {
            let objects = cc.objects_up_to(bound).map_err(|e| e.to_string())?;
            for gamma in cc.objects_up_to(bound - 1).map_err(|e| e.to_string())? {
                let ts = ob_n(cc, &gamma, 1).map_err(|e| e.to_string())?;
                for gamma_p in &objects {
                    for f in cc.hom(gamma_p, &gamma).map_err(|e| e.to_string())? {
                        for t in &ts {
                            let pulled = cc.pull_ob(&f, t);
                            if cc.u1(&pulled) != f.map.then(&cc.u1(t)) {
                                return Err(format!(
                                    "u1 naturality fails at ({f:?}, {t:?})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/u-tilde1-naturality", "eq 2015.04.30.eq2a", || {
        for cc in systems {
            let objects = cc.objects_up_to(bound).map_err(|e| e.to_string())?;
            for gamma in cc.objects_up_to(bound - 1).map_err(|e| e.to_string())? {
                let os = tilde_ob_n(cc, &gamma, 1).map_err(|e| e.to_string())?;
                for gamma_p in &objects {
                    for f in cc.hom(gamma_p, &gamma).map_err(|e| e.to_string())? {
                        for o in &os {
                            let pulled = pull_sec_n(cc, &f, o, 1).map_err(|e| e.to_string())?;
                            if cc.u_tilde1(&pulled) != f.map.then(&cc.u_tilde1(o)) {
                                return Err(format!(
                                    "u_tilde1 naturality fails at ({f:?}, {o:?})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/u2-roundtrip", "Construction 2015.05.02.constr2", || {
        for cc in systems {
            for gamma in cc.objects_up_to(bound.saturating_sub(2)).map_err(|e| e.to_string())? {
                let ts = ob_n(cc, &gamma, 2).map_err(|e| e.to_string())?;
                let dps = cc
                    .dp_enum(gamma.int_size(), cc.universe.u())
                    .map_err(|e| e.to_string())?;
                if ts.len() != dps.len() {
                    return Err(format!(
                        "Ob_2 and D_p sizes differ over {gamma:?}: {} vs {}",
                        ts.len(),
                        dps.len()
                    ));
                }
                for t in &ts {
                    if cc.u2_inv(&gamma, &cc.u2(t)) != *t {
                        return Err(format!("u2 round trip fails at {t:?}"));
                    }
                }
                for d in &dps {
                    if cc.u2(&cc.u2_inv(&gamma, d)) != *d {
                        return Err(format!("u2 reverse round trip fails at {d:?}"));
                    }
                }
                // The section-side bijection.
                let os = tilde_ob_n(cc, &gamma, 2).map_err(|e| e.to_string())?;
                let dps_t = cc
                    .dp_enum(gamma.int_size(), cc.universe.u_tilde())
                    .map_err(|e| e.to_string())?;
                if os.len() != dps_t.len() {
                    return Err(format!(
                        "tilde Ob_2 and D_p sizes differ over {gamma:?}"
                    ));
                }
                for o in &os {
                    if cc.u_tilde2_inv(&gamma, &cc.u_tilde2(o)) != *o {
                        return Err(format!("u_tilde2 round trip fails at {o:?}"));
                    }
                }
                for d in &dps_t {
                    if cc.u_tilde2(&cc.u_tilde2_inv(&gamma, d)) != *d {
                        return Err(format!("u_tilde2 reverse round trip fails at {d:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/u2-naturality", "Problem 2015.05.02.prob2(3)", || {
        for cc in systems {
            let objects = cc.objects_up_to(bound).map_err(|e| e.to_string())?;
            for gamma in cc.objects_up_to(bound.saturating_sub(2)).map_err(|e| e.to_string())? {
                let ts = ob_n(cc, &gamma, 2).map_err(|e| e.to_string())?;
                let os = tilde_ob_n(cc, &gamma, 2).map_err(|e| e.to_string())?;
                for gamma_p in &objects {
                    for f in cc.hom(gamma_p, &gamma).map_err(|e| e.to_string())? {
                        for t in &ts {
                            let pulled = pull_ob_n(cc, &f, t, 2);
                            if cc.u2(&pulled) != cc.dp_act_left(&f.map, &cc.u2(t)) {
                                return Err(format!(
                                    "u2 naturality fails at ({f:?}, {t:?})"
                                ));
                            }
                        }
                        for o in &os {
                            let pulled = pull_sec_n(cc, &f, o, 2).map_err(|e| e.to_string())?;
                            if cc.u_tilde2(&pulled) != cc.dp_act_left(&f.map, &cc.u_tilde2(o)) {
                                return Err(format!(
                                    "u_tilde2 naturality fails at ({f:?}, {o:?})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/u2-boundary", "Problem 2015.05.02.prob2(4)", || {
        for cc in systems {
            for gamma in cc.objects_up_to(bound.saturating_sub(2)).map_err(|e| e.to_string())? {
                for o in tilde_ob_n(cc, &gamma, 2).map_err(|e| e.to_string())? {
                    let lhs = cc.u2(&o.target);
                    let rhs = cc.dp_act_right(&cc.universe.p, &cc.u_tilde2(&o));
                    if lhs != rhs {
                        return Err(format!("u2 boundary equation fails at {o:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/dp-bifunctor", "§3 D_p functor laws", || {
        for cc in systems {
            let u = cc.universe.u();
            let ut = cc.universe.u_tilde();
            for x in 0..=2usize {
                for d in cc.dp_enum(x, u).map_err(|e| e.to_string())? {
                    if cc.dp_act_left(&FinSetMor::identity(x), &d) != d {
                        return Err(format!("identity action fails at {d:?}"));
                    }
                }
                // Commutation of the two actions, with g = p on the right.
                for xp in 0..=2usize {
                    for ftab in crate::finset_lcc::hom_tables(xp, x) {
                        let f = FinSetMor::new(xp, x, ftab).unwrap();
                        for d in cc.dp_enum(x, ut).map_err(|e| e.to_string())? {
                            let lhs =
                                cc.dp_act_right(&cc.universe.p, &cc.dp_act_left(&f, &d));
                            let rhs =
                                cc.dp_act_left(&f, &cc.dp_act_right(&cc.universe.p, &d));
                            if lhs != rhs {
                                return Err(format!(
                                    "bifunctor law fails at ({f:?}, {d:?})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/st-naturality", "Lemma 2015.04.14.l2a", || {
        for cc in systems {
            let u = cc.universe.u();
            let ut = cc.universe.u_tilde();
            // All maps between the universe objects, including p itself.
            for (v, vp) in [(u, u), (u, ut), (ut, u), (ut, ut)] {
                let ip_v = cc.ip(v).map_err(|e| e.to_string())?;
                let ip_vp = cc.ip(vp).map_err(|e| e.to_string())?;
                for f in cc.skel().hom(v, vp).map_err(|e| e.to_string())? {
                    let ip_f = cc.ip_mor(&f).map_err(|e| e.to_string())?;
                    if ip_v.pr != ip_f.then(&ip_vp.pr) {
                        return Err(format!("I_p(f) is not over U at {f:?}"));
                    }
                    let q = cc
                        .universe
                        .q_map(&ip_f, &ip_vp.pr)
                        .map_err(|e| e.to_string())?;
                    if q.then(&ip_vp.st) != ip_v.st.then(&f) {
                        return Err(format!("st naturality fails at {f:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/eta-roundtrip", "Construction 2015.03.29.constr1", || {
        for cc in systems {
            for v in [cc.universe.u(), cc.universe.u_tilde()] {
                let ip_size = cc.ip(v).map_err(|e| e.to_string())?.size();
                for x in 0..=3usize {
                    for d in cc.dp_enum(x, v).map_err(|e| e.to_string())? {
                        let g = cc.eta(&d, v).map_err(|e| e.to_string())?;
                        if cc.eta_bang(&g, v).map_err(|e| e.to_string())? != d {
                            return Err(format!("eta_bang(eta(d)) != d at {d:?}"));
                        }
                    }
                    for g in cc
                        .skel()
                        .hom(ObjRef(x), ObjRef(ip_size))
                        .map_err(|e| e.to_string())?
                    {
                        let d = cc.eta_bang(&g, v).map_err(|e| e.to_string())?;
                        if cc.eta(&d, v).map_err(|e| e.to_string())? != g {
                            return Err(format!("eta(eta_bang(g)) != g at {g:?}"));
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("bijections/eta-naturality", "Problem 2015.03.29.prob1", || {
        for cc in systems {
            let u = cc.universe.u();
            let ut = cc.universe.u_tilde();
            // Clause one: postcomposition with I_p(f).
            for (v, vp) in [(u, u), (u, ut), (ut, u), (ut, ut)] {
                for f in cc.skel().hom(v, vp).map_err(|e| e.to_string())? {
                    let ip_f = cc.ip_mor(&f).map_err(|e| e.to_string())?;
                    for x in 0..=2usize {
                        for d in cc.dp_enum(x, v).map_err(|e| e.to_string())? {
                            let lhs = cc.eta(&d, v).map_err(|e| e.to_string())?.then(&ip_f);
                            let rhs = cc
                                .eta(&cc.dp_act_right(&f, &d), vp)
                                .map_err(|e| e.to_string())?;
                            if lhs != rhs {
                                return Err(format!(
                                    "eta naturality in V fails at ({f:?}, {d:?})"
                                ));
                            }
                        }
                    }
                }
            }
            // Clause two: precomposition with f: X' -> X.
            for v in [u, ut] {
                for x in 0..=2usize {
                    for xp in 0..=2usize {
                        for ftab in crate::finset_lcc::hom_tables(xp, x) {
                            let f = FinSetMor::new(xp, x, ftab).unwrap();
                            for d in cc.dp_enum(x, v).map_err(|e| e.to_string())? {
                                let lhs =
                                    f.then(&cc.eta(&d, v).map_err(|e| e.to_string())?);
                                let rhs = cc
                                    .eta(&cc.dp_act_left(&f, &d), v)
                                    .map_err(|e| e.to_string())?;
                                if lhs != rhs {
                                    return Err(format!(
                                        "eta naturality in X fails at ({f:?}, {d:?})"
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

    checks.push(run_check("bijections/mu2", "Problem 2015.03.17.prob3", || {
        for cc in systems {
            let ip_u_size = cc.ip(cc.universe.u()).map_err(|e| e.to_string())?.size();
            let ip_p = cc.ip_mor(&cc.universe.p).map_err(|e| e.to_string())?;
            let objects = cc.objects_up_to(bound).map_err(|e| e.to_string())?;
            for gamma in cc.objects_up_to(bound.saturating_sub(2)).map_err(|e| e.to_string())? {
                let ts = ob_n(cc, &gamma, 2).map_err(|e| e.to_string())?;
                // Bijectivity by cardinality and distinctness.
                let images: std::collections::BTreeSet<_> = ts
                    .iter()
                    .map(|t| cc.mu2(t))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                let homs = cc
                    .skel()
                    .hom(ObjRef(gamma.int_size()), ObjRef(ip_u_size))
                    .map_err(|e| e.to_string())?;
                if images.len() != ts.len() || images.len() != homs.len() {
                    return Err(format!("mu2 is not a bijection over {gamma:?}"));
                }
                // Naturality.
                for gamma_p in &objects {
                    for f in cc.hom(gamma_p, &gamma).map_err(|e| e.to_string())? {
                        for t in &ts {
                            let pulled = pull_ob_n(cc, &f, t, 2);
                            let lhs = cc.mu2(&pulled).map_err(|e| e.to_string())?;
                            let rhs = f.map.then(&cc.mu2(t).map_err(|e| e.to_string())?);
                            if lhs != rhs {
                                return Err(format!(
                                    "mu2 naturality fails at ({f:?}, {t:?})"
                                ));
                            }
                        }
                    }
                }
                // The boundary corresponds to composition with I_p(p).
                for o in tilde_ob_n(cc, &gamma, 2).map_err(|e| e.to_string())? {
                    let lhs = cc.mu2(&o.target).map_err(|e| e.to_string())?;
                    let rhs = cc.mu_tilde2(&o).map_err(|e| e.to_string())?.then(&ip_p);
                    if lhs != rhs {
                        return Err(format!("mu2 boundary fails at {o:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks
}

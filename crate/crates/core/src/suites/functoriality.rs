//! Functoriality suite on the Boolean-to-three-element inclusion: validity of
//! the universe functor, the transport lemmas for `phi2`, `chi` and `xi`, the
//! induced homomorphism `H` with its intertwining laws, and the main theorem
//! with fault injection on the destination product structure.

use super::SuiteConfig;
use crate::cat_core::Category;
use crate::csystem_core::{ob_n, tilde_ob_n, CSystem};
use crate::finset_lcc::{hom_tables, partial_pi_structure, pi_structure, FinSetMor};
use crate::report::{run_check, CheckResult};
use crate::uc_functor::{perturb_p, DemoInstance, TheoremReport};

const H_BOUND: usize = 3;

pub fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let mut checks = Vec::new();
    let demo = match DemoInstance::inclusion(H_BOUND) {
        Ok(d) => d,
        Err(e) => {
            checks.push(run_check("functoriality/setup", "§5 universe functors", move || {
                Err(e.to_string())
            }));
            return checks;
        }
    };
    let uf = demo.functor();

    checks.push(run_check("functoriality/universe-functor", "§5 square 2015.03.21.sq1", || {
        let report = uf.check(4, 10_000);
        if report.is_empty() {
            Ok(())
        } else {
            Err(report.to_string())
        }
    }));

    checks.push(run_check("functoriality/phi2-contravariant", "Lemma 2015.03.23.l1", || {
        for v in [demo.src.universe.u(), demo.src.universe.u_tilde()] {
            for x in 0..=2usize {
                for xp in 0..=2usize {
                    for ftab in hom_tables(xp, x) {
                        let f = FinSetMor::new(xp, x, ftab).unwrap();
                        for d in demo.src.dp_enum(x, v).map_err(|e| e.to_string())? {
                            let lhs = uf
                                .phi2(&demo.src.dp_act_left(&f, &d))
                                .map_err(|e| e.to_string())?;
                            let rhs = demo.dst.dp_act_left(
                                &uf.phi_mor(&f),
                                &uf.phi2(&d).map_err(|e| e.to_string())?,
                            );
                            if lhs != rhs {
                                return Err(format!("square fails at ({f:?}, {d:?})"));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("functoriality/phi2-covariant", "Lemma 2015.04.10.l3", || {
        let u = demo.src.universe.u();
        let ut = demo.src.universe.u_tilde();
        for (v, vp) in [(u, u), (u, ut), (ut, u), (ut, ut)] {
            for g in demo.src.skel().hom(v, vp).map_err(|e| e.to_string())? {
                for x in 0..=2usize {
                    for d in demo.src.dp_enum(x, v).map_err(|e| e.to_string())? {
                        let lhs = uf
                            .phi2(&demo.src.dp_act_right(&g, &d))
                            .map_err(|e| e.to_string())?;
                        let rhs = demo.dst.dp_act_right(
                            &uf.phi_mor(&g),
                            &uf.phi2(&d).map_err(|e| e.to_string())?,
                        );
                        if lhs != rhs {
                            return Err(format!("square fails at ({g:?}, {d:?})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("functoriality/chi-naturality", "Lemma 2015.04.10.l4", || {
        let u = demo.src.universe.u();
        let ut = demo.src.universe.u_tilde();
        for (v, vp) in [(u, u), (u, ut), (ut, u), (ut, ut)] {
            for f in demo.src.skel().hom(v, vp).map_err(|e| e.to_string())? {
                let lhs = uf
                    .chi(v)
                    .map_err(|e| e.to_string())?
                    .then(&demo.dst.ip_mor(&uf.phi_mor(&f)).map_err(|e| e.to_string())?);
                let rhs = uf
                    .phi_mor(&demo.src.ip_mor(&f).map_err(|e| e.to_string())?)
                    .then(&uf.chi(vp).map_err(|e| e.to_string())?);
                if lhs != rhs {
                    return Err(format!("chi naturality fails at {f:?}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("functoriality/chi-intertwines-eta", "Lemma 2015.05.06.l1", || {
        for v in [demo.src.universe.u(), demo.src.universe.u_tilde()] {
            let chi = uf.chi(v).map_err(|e| e.to_string())?;
            for x in 0..=2usize {
                for a in demo.src.dp_enum(x, v).map_err(|e| e.to_string())? {
                    let lhs = uf
                        .phi_mor(&demo.src.eta(&a, v).map_err(|e| e.to_string())?)
                        .then(&chi);
                    let rhs = demo
                        .dst
                        .eta(&uf.phi2(&a).map_err(|e| e.to_string())?, uf.phi_obj(v))
                        .map_err(|e| e.to_string())?;
                    if lhs != rhs {
                        return Err(format!("intertwining fails at {a:?}"));
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("functoriality/h-homomorphism", "§6 H construction", || {
        let h = uf.build_h(H_BOUND).map_err(|e| e.to_string())?;
        if h.image(&demo.src.pt()) != &demo.dst.pt() {
            return Err("H does not preserve the point".into());
        }
        for x in demo.src.objects_up_to(H_BOUND).map_err(|e| e.to_string())? {
            if !uf.phi_mor(&FinSetMor::identity(x.int_size())).is_identity() {
                return Err("functor breaks identities".into());
            }
            if h.image(&x).length() != x.length() {
                return Err(format!("H changes the length of {x:?}"));
            }
            if x.length() >= 1 {
                if h.image(&x.ft()) != &h.image(&x).ft() {
                    return Err(format!("H does not commute with ft at {x:?}"));
                }
                if uf.h_mor(&h, &demo.src.proj(&x)) != demo.dst.proj(h.image(&x)) {
                    return Err(format!("H does not preserve the projection of {x:?}"));
                }
                if !h.psi(&x).is_bijective() {
                    return Err(format!("psi is not an isomorphism at {x:?}"));
                }
            }
        }
        // Chosen pullbacks are preserved.
        let objects = demo.src.objects_up_to(1).map_err(|e| e.to_string())?;
        for gamma in &objects {
            for gamma_p in &objects {
                for f in demo.src.hom(gamma_p, gamma).map_err(|e| e.to_string())? {
                    for x in ob_n(&demo.src, gamma, 1).map_err(|e| e.to_string())? {
                        let hf = uf.h_mor(&h, &f);
                        if uf.h_mor(&h, &demo.src.pull_q(&f, &x))
                            != demo.dst.pull_q(&hf, h.image(&x))
                        {
                            return Err(format!(
                                "H does not preserve q at ({f:?}, {x:?})"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("functoriality/h-classifiers", "Lemma 2015.03.21.l4(1-2)", || {
        let h = uf.build_h(H_BOUND).map_err(|e| e.to_string())?;
        for gamma in demo.src.objects_up_to(2).map_err(|e| e.to_string())? {
            let psi = h.psi(&gamma);
            for t in ob_n(&demo.src, &gamma, 1).map_err(|e| e.to_string())? {
                let lhs = demo.dst.u1(h.image(&t));
                let rhs = psi.then(&uf.phi_mor(&demo.src.u1(&t))).then(&uf.phi_u);
                if lhs != rhs {
                    return Err(format!("clause (1) fails at {t:?}"));
                }
            }
            for o in tilde_ob_n(&demo.src, &gamma, 1).map_err(|e| e.to_string())? {
                let lhs = demo.dst.u_tilde1(&uf.h_section(&h, &o));
                let rhs = psi
                    .then(&uf.phi_mor(&demo.src.u_tilde1(&o)))
                    .then(&uf.phi_ut);
                if lhs != rhs {
                    return Err(format!("clause (2) fails at {o:?}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("functoriality/h-families", "Lemma 2015.03.21.l4(3-4)", || {
        let h = uf.build_h(H_BOUND).map_err(|e| e.to_string())?;
        for gamma in demo.src.objects_up_to(1).map_err(|e| e.to_string())? {
            let psi = h.psi(&gamma).clone();
            for t in ob_n(&demo.src, &gamma, 2).map_err(|e| e.to_string())? {
                let lhs = demo.dst.u2(h.image(&t));
                let transported = uf
                    .phi2(&demo.src.u2(&t))
                    .map_err(|e| e.to_string())?;
                let rhs = demo
                    .dst
                    .dp_act_left(&psi, &demo.dst.dp_act_right(&uf.phi_u, &transported));
                if lhs != rhs {
                    return Err(format!("clause (3) fails at {t:?}"));
                }
            }
            for o in tilde_ob_n(&demo.src, &gamma, 2).map_err(|e| e.to_string())? {
                let lhs = demo.dst.u_tilde2(&uf.h_section(&h, &o));
                let transported = uf
                    .phi2(&demo.src.u_tilde2(&o))
                    .map_err(|e| e.to_string())?;
                let rhs = demo
                    .dst
                    .dp_act_left(&psi, &demo.dst.dp_act_right(&uf.phi_ut, &transported));
                if lhs != rhs {
                    return Err(format!("clause (4) fails at {o:?}"));
                }
            }
        }
        Ok(())
    }));

    checks.push(run_check("functoriality/xi-intertwines", "Lemma 2015.05.06.l2", || {
        let h = uf.build_h(H_BOUND).map_err(|e| e.to_string())?;
        let (xi, xi_tilde) = uf.xi().map_err(|e| e.to_string())?;
        for gamma in demo.src.objects_up_to(1).map_err(|e| e.to_string())? {
            let psi = h.psi(&gamma).clone();
            for t in ob_n(&demo.src, &gamma, 2).map_err(|e| e.to_string())? {
                let lhs = demo
                    .dst
                    .eta(&demo.dst.u2(h.image(&t)), demo.dst.universe.u())
                    .map_err(|e| e.to_string())?;
                let inner = demo
                    .src
                    .eta(&demo.src.u2(&t), demo.src.universe.u())
                    .map_err(|e| e.to_string())?;
                let rhs = psi.then(&uf.phi_mor(&inner)).then(&xi);
                if lhs != rhs {
                    return Err(format!("clause (1) fails at {t:?}"));
                }
            }
            for o in tilde_ob_n(&demo.src, &gamma, 2).map_err(|e| e.to_string())? {
                let hs = uf.h_section(&h, &o);
                let lhs = demo
                    .dst
                    .eta(&demo.dst.u_tilde2(&hs), demo.dst.universe.u_tilde())
                    .map_err(|e| e.to_string())?;
                let inner = demo
                    .src
                    .eta(&demo.src.u_tilde2(&o), demo.src.universe.u_tilde())
                    .map_err(|e| e.to_string())?;
                let rhs = psi.then(&uf.phi_mor(&inner)).then(&xi_tilde);
                if lhs != rhs {
                    return Err(format!("clause (2) fails at {o:?}"));
                }
            }
        }
        Ok(())
    }));

    let run_theorem = |perturb: bool| -> Result<TheoremReport, String> {
        let h = uf.build_h(H_BOUND).map_err(|e| e.to_string())?;
        let pi_src = pi_structure(&demo.src.universe).map_err(|e| e.to_string())?;
        let mut pi_dst = partial_pi_structure(&demo.dst.universe).map_err(|e| e.to_string())?;
        if perturb {
            let (xi, _) = uf.xi().map_err(|e| e.to_string())?;
            perturb_p(&mut pi_dst, &xi, demo.dst.universe.u().0)
                .ok_or_else(|| "no defined element to perturb".to_string())?;
        }
        uf.theorem_check(&h, &pi_src, &pi_dst, 1).map_err(|e| e.to_string())
    };

    let perturbed = config.perturbs("P'");
    checks.push(run_check(
        "functoriality/theorem-hypothesis",
        "Theorem 2015.03.21.th1 (squares 2015.03.23.sq1a/b)",
        || {
            let report = run_theorem(perturbed)?;
            if report.hypothesis.is_empty() {
                Ok(())
            } else {
                Err(report.hypothesis.to_string())
            }
        },
    ));

    checks.push(run_check(
        "functoriality/theorem-conclusion",
        "Theorem 2015.03.21.th1",
        || {
            let report = run_theorem(perturbed)?;
            if report.conclusion.is_empty() {
                Ok(())
            } else {
                Err(report.conclusion.to_string())
            }
        },
    ));

    checks.push(run_check(
        "functoriality/identity-instance",
        "Theorem 2015.03.21.th1",
        || {
            let demo_id = DemoInstance::identity(H_BOUND).map_err(|e| e.to_string())?;
            let uf_id = demo_id.functor();
            let h = uf_id.build_h(H_BOUND).map_err(|e| e.to_string())?;
            let pi = pi_structure(&demo_id.src.universe).map_err(|e| e.to_string())?;
            let pi_dst = crate::finset_lcc::PartialPiStructure::total(&pi);
            let report = uf_id
                .theorem_check(&h, &pi, &pi_dst, 1)
                .map_err(|e| e.to_string())?;
            if report.passed() {
                Ok(())
            } else {
                Err(format!("{:?}", report))
            }
        },
    ));

    checks.push(run_check(
        "functoriality/fault-injection",
        "Theorem 2015.03.21.th1",
        || {
            // A perturbed destination structure must flip the hypothesis
            // check to a failure.
            let report = run_theorem(true)?;
            if report.hypothesis.is_empty() {
                Err("perturbation was not detected".into())
            } else {
                Ok(())
            }
        },
    ));

    checks
}

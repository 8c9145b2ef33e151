//! Locally-cartesian-closed suite: category axioms, fiber products and their
//! universal property, the currying adjunction, and the coherence lemmas for
//! comparison maps, internal-hom functoriality and adjoint composition.

use super::util::{all_maps_with_small_fibers, homs_over, random_mor, random_perm, rng};
use super::SuiteConfig;
use crate::cat_core::{check_category_axioms, check_pullback_exchange, is_pullback, ExchangeData, Square};
use crate::finset_lcc::{
    adj_inv_with, cross_with, hom_over_contra_with, hom_over_post_with, is_pullback_fast,
    mediate_fast, FinSetMor, FinSkel,
};
use crate::report::{run_check, CheckResult};
use rand::Rng;

fn skel(config: &SuiteConfig) -> FinSkel {
    FinSkel::new(config.cap, 1_000_000)
}

/// Morphisms `X' -> X` over the base (`m ; f = f'`).
fn homs_over_pair(f_prime: &FinSetMor, f: &FinSetMor) -> Vec<FinSetMor> {
    crate::finset_lcc::hom_tables(f_prime.dom, f.dom)
        .map(|t| FinSetMor::new(f_prime.dom, f.dom, t).unwrap())
        .filter(|m| m.then(f) == *f_prime)
        .collect()
}

pub fn run(config: &SuiteConfig) -> Vec<CheckResult> {
    let s = skel(config);
    let mut checks = Vec::new();

    checks.push(run_check(
        "lcc/category-axioms",
        "Example 2015.05.20.ex1",
        || {
            let instance = FinSkel::new(8, 1_000_000);
            let report = check_category_axioms(&instance, 10_000);
            if report.is_empty() {
                Ok(())
            } else {
                Err(report.to_string())
            }
        },
    ));

    checks.push(run_check(
        "lcc/fiber-product-universal",
        "Definition 2015.04.22.def1",
        || {
            let probe = FinSkel::new(3, 1_000_000);
            for z in 1..=2usize {
                for f in all_maps_with_small_fibers(z, 4, 2) {
                    for g in all_maps_with_small_fibers(z, 4, 2) {
                        let fp = s.fiber_product(&f, &g).map_err(|e| e.to_string())?;
                        if !is_pullback_fast(&fp.square) {
                            return Err(format!("fast path rejects fp of {f:?}, {g:?}"));
                        }
                        if !is_pullback(&probe, &fp.square).map_err(|e| e.to_string())? {
                            return Err(format!("cone search rejects fp of {f:?}, {g:?}"));
                        }
                    }
                }
            }
            // Larger random instances, fast path plus pairing mediators.
            let mut r = rng(config.seed);
            for _ in 0..200 {
                let z = r.gen_range(1..=3usize);
                let xf = r.gen_range(0..=6);
                let xg = r.gen_range(0..=6);
                let f = random_mor(&mut r, xf, z);
                let g = random_mor(&mut r, xg, z);
                let fp = s.fiber_product(&f, &g).map_err(|e| e.to_string())?;
                if !is_pullback_fast(&fp.square) {
                    return Err(format!("fast path rejects fp of {f:?}, {g:?}"));
                }
            }
            Ok(())
        },
    ));

    checks.push(run_check(
        "lcc/adj-inverse",
        "Definition 2015.03.27.def1(3)",
        || {
            for z in 1..=2usize {
                let shapes = all_maps_with_small_fibers(z, 2 * z, 2);
                for h in &shapes {
                    for f in &shapes {
                        for g in &shapes {
                            let ho = s.hom_over(f, g).map_err(|e| e.to_string())?;
                            let fp = s.fiber_product(h, f).map_err(|e| e.to_string())?;
                            let sections = homs_over(h, &ho.proj);
                            let curried = homs_over(&fp.over_base(), g);
                            if sections.len() != curried.len() {
                                return Err(format!(
                                    "hom sets differ in size at ({h:?}, {f:?}, {g:?})"
                                ));
                            }
                            for u in &sections {
                                let v = s.adj_inv(h, f, g, u).map_err(|e| e.to_string())?;
                                if &s.adj(h, f, g, &v).map_err(|e| e.to_string())? != u {
                                    return Err(format!("adj(adj_inv(u)) != u at {u:?}"));
                                }
                            }
                            for v in &curried {
                                let u = s.adj(h, f, g, v).map_err(|e| e.to_string())?;
                                if &s.adj_inv(h, f, g, &u).map_err(|e| e.to_string())? != v {
                                    return Err(format!("adj_inv(adj(v)) != v at {v:?}"));
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    ));

    checks.push(run_check(
        "lcc/pullback-exchange",
        "Lemma 2015.04.16.l1",
        || {
            let fast = |_: &FinSkel, sq: &Square<FinSetMor>, cone: (&FinSetMor, &FinSetMor)| {
                mediate_fast(sq, cone)
            };

            // Identity comparison maps over one canonical square.
            let f = FinSetMor::new(3, 2, vec![0, 1, 0]).unwrap();
            let g = FinSetMor::new(2, 2, vec![1, 0]).unwrap();
            let fp = s.fiber_product(&f, &g).map_err(|e| e.to_string())?;
            let data = ExchangeData {
                pb1: fp.square.clone(),
                pb2: fp.square.clone(),
                pb1p: fp.square.clone(),
                pb2p: fp.square.clone(),
                a: FinSetMor::identity(3),
                b: FinSetMor::identity(2),
            };
            if !check_pullback_exchange(&s, &data, fast).map_err(|e| e.to_string())? {
                return Err("identity instance fails".into());
            }

            // Random instances: second squares are corner permutations.
            let mut r = rng(config.seed.wrapping_add(1));
            fn permuted(
                sq: &Square<FinSetMor>,
                r: &mut rand_chacha::ChaCha8Rng,
            ) -> Square<FinSetMor> {
                let pi = random_perm(r, sq.left.dom);
                Square {
                    corner: sq.corner,
                    top: pi.then(&sq.top),
                    left: pi.then(&sq.left),
                    right: sq.right.clone(),
                    bottom: sq.bottom.clone(),
                }
            }
            for trial in 0..200 {
                let z = r.gen_range(1..=3usize);
                let xf = r.gen_range(0..=4);
                let xg = r.gen_range(0..=4);
                let f = random_mor(&mut r, xf, z);
                let g = random_mor(&mut r, xg, z);
                let xa = if f.dom == 0 { 0 } else { r.gen_range(0..=4) };
                let xb = if g.dom == 0 { 0 } else { r.gen_range(0..=4) };
                let a = random_mor(&mut r, xa, f.dom);
                let b = random_mor(&mut r, xb, g.dom);
                let pb1 = s.fiber_product(&f, &g).map_err(|e| e.to_string())?.square;
                let pb2 = permuted(&pb1, &mut r);
                let pb1p = s
                    .fiber_product(&a.then(&f), &b.then(&g))
                    .map_err(|e| e.to_string())?
                    .square;
                let pb2p = permuted(&pb1p, &mut r);
                let data = ExchangeData { pb1, pb2, pb1p, pb2p, a, b };
                if !check_pullback_exchange(&s, &data, fast).map_err(|e| e.to_string())? {
                    return Err(format!("exchange square fails on trial {trial}"));
                }
            }
            Ok(())
        },
    ));

    checks.push(run_check(
        "lcc/cross-composite",
        "Lemma 2015.05.14.l1",
        || {
            let mut r = rng(config.seed.wrapping_add(2));
            for trial in 0..200 {
                let z = r.gen_range(1..=2usize);
                let y1 = r.gen_range(1..=3usize);
                let y2 = r.gen_range(1..=3usize);
                let x1 = r.gen_range(1..=3usize);
                let x2 = r.gen_range(1..=3usize);
                let g1 = random_mor(&mut r, y1, z);
                let g2 = random_mor(&mut r, y2, z);
                let a = random_mor(&mut r, x1, y1);
                let b = random_mor(&mut r, x2, y2);
                let x1p = r.gen_range(0..=3);
                let x2p = r.gen_range(0..=3);
                let ap = random_mor(&mut r, x1p, x1);
                let bp = random_mor(&mut r, x2p, x2);
                let lhs = s
                    .cross(&ap.then(&a), &bp.then(&b), &g1, &g2)
                    .map_err(|e| e.to_string())?;
                let rhs = s
                    .cross(&ap, &bp, &a.then(&g1), &b.then(&g2))
                    .map_err(|e| e.to_string())?
                    .then(&s.cross(&a, &b, &g1, &g2).map_err(|e| e.to_string())?);
                if lhs != rhs {
                    return Err(format!("composite law fails on trial {trial}"));
                }
            }
            Ok(())
        },
    ));

    checks.push(run_check(
        "lcc/hom-contra-functor",
        "Lemma 2015.04.10.l1",
        || {
            for z in 1..=2usize {
                let shapes = all_maps_with_small_fibers(z, 2 * z, 2);
                let n = shapes.len();
                // over[i][j]: morphisms from shapes[i] to shapes[j] over Z.
                let over: Vec<Vec<Vec<FinSetMor>>> = (0..n)
                    .map(|i| (0..n).map(|j| homs_over(&shapes[i], &shapes[j])).collect())
                    .collect();
                for gi in 0..n {
                    let g = &shapes[gi];
                    let hos: Vec<_> = shapes
                        .iter()
                        .map(|f| s.hom_over(f, g))
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    // contra[from][to][k]: the action of over[to][from][k].
                    let contra: Vec<Vec<Vec<FinSetMor>>> = (0..n)
                        .map(|from| {
                            (0..n)
                                .map(|to| {
                                    over[to][from]
                                        .iter()
                                        .map(|h| {
                                            hom_over_contra_with(h, &hos[from], &hos[to])
                                        })
                                        .collect()
                                })
                                .collect()
                        })
                        .collect();

                    for (fi, f) in shapes.iter().enumerate() {
                        let id = hom_over_contra_with(
                            &FinSetMor::identity(f.dom),
                            &hos[fi],
                            &hos[fi],
                        );
                        if !id.is_identity() {
                            return Err(format!("Hom_Z(Id, -) != Id at ({f:?}, {g:?})"));
                        }
                        for f1 in 0..n {
                            for (k1, h1) in over[f1][fi].iter().enumerate() {
                                for f2 in 0..n {
                                    for (k2, h2) in over[f2][f1].iter().enumerate() {
                                        let lhs = hom_over_contra_with(
                                            &h2.then(h1),
                                            &hos[fi],
                                            &hos[f2],
                                        );
                                        let rhs =
                                            contra[fi][f1][k1].then(&contra[f1][f2][k2]);
                                        if lhs != rhs {
                                            return Err(format!(
                                                "contravariant composition fails at ({h1:?}, {h2:?})"
                                            ));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                // Bifunctor square: the two actions commute.
                for gi in 0..n {
                    for gpi in 0..n {
                        if over[gi][gpi].is_empty() {
                            continue;
                        }
                        let hos_g: Vec<_> = shapes
                            .iter()
                            .map(|f| s.hom_over(f, &shapes[gi]))
                            .collect::<Result<_, _>>()
                            .map_err(|e| e.to_string())?;
                        let hos_gp: Vec<_> = shapes
                            .iter()
                            .map(|f| s.hom_over(f, &shapes[gpi]))
                            .collect::<Result<_, _>>()
                            .map_err(|e| e.to_string())?;
                        for hp in &over[gi][gpi] {
                            for fi in 0..n {
                                for f1 in 0..n {
                                    for h1 in &over[f1][fi] {
                                        let lhs = hom_over_contra_with(
                                            h1, &hos_g[fi], &hos_g[f1],
                                        )
                                        .then(&hom_over_post_with(
                                            hp, &hos_g[f1], &hos_gp[f1],
                                        ));
                                        let rhs = hom_over_post_with(
                                            hp, &hos_g[fi], &hos_gp[fi],
                                        )
                                        .then(&hom_over_contra_with(
                                            h1, &hos_gp[fi], &hos_gp[f1],
                                        ));
                                        if lhs != rhs {
                                            return Err(format!(
                                                "bifunctor square fails at ({h1:?}, {hp:?})"
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
        },
    ));

    checks.push(run_check(
        "lcc/ev-restriction-square",
        "Lemma 2015.04.20.l2",
        || {
            for z in 1..=2usize {
                let shapes = all_maps_with_small_fibers(z, 2 * z, 2);
                for f in &shapes {
                    for g in &shapes {
                        let ho = s.hom_over(f, g).map_err(|e| e.to_string())?;
                        for fp_obj in &shapes {
                            for a in homs_over_pair(fp_obj, f) {
                                let contra = s
                                    .hom_over_contra(&a, f, fp_obj, g)
                                    .map_err(|e| e.to_string())?;
                                let ho_p = s.hom_over(fp_obj, g).map_err(|e| e.to_string())?;
                                let lhs = s
                                    .cross(&FinSetMor::identity(ho.size()), &a, &ho.proj, f)
                                    .map_err(|e| e.to_string())?
                                    .then(&s.ev(f, g).map_err(|e| e.to_string())?);
                                let rhs = s
                                    .cross(
                                        &contra,
                                        &FinSetMor::identity(fp_obj.dom),
                                        &ho_p.proj,
                                        fp_obj,
                                    )
                                    .map_err(|e| e.to_string())?
                                    .then(&s.ev(fp_obj, g).map_err(|e| e.to_string())?);
                                if lhs != rhs {
                                    return Err(format!(
                                        "restriction square fails at ({f:?}, {a:?})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    ));

    checks.push(run_check(
        "lcc/adjoint-composition",
        "Lemma 2015.05.12.l2",
        || {
            for z in 1..=2usize {
                let shapes = all_maps_with_small_fibers(z, 2 * z, 2);
                let n = shapes.len();
                let over: Vec<Vec<Vec<FinSetMor>>> = (0..n)
                    .map(|i| (0..n).map(|j| homs_over(&shapes[i], &shapes[j])).collect())
                    .collect();
                // Per (f, g): internal hom, evaluation, and fp(proj, f).
                let mut parts = Vec::with_capacity(n);
                for f in &shapes {
                    let mut row = Vec::with_capacity(n);
                    for g in &shapes {
                        let ho = s.hom_over(f, g).map_err(|e| e.to_string())?;
                        let ev = s.ev(f, g).map_err(|e| e.to_string())?;
                        let fp_pf = s.fiber_product(&ho.proj, f).map_err(|e| e.to_string())?;
                        row.push((ho, ev, fp_pf));
                    }
                    parts.push(row);
                }
                // Per (h, f): the fiber product (W,h) x_Z (X,f).
                let mut fp_hf = Vec::with_capacity(n);
                for h in &shapes {
                    let mut row = Vec::with_capacity(n);
                    for f in &shapes {
                        row.push(s.fiber_product(h, f).map_err(|e| e.to_string())?);
                    }
                    fp_hf.push(row);
                }

                for hi in 0..n {
                    let h = &shapes[hi];
                    for fi in 0..n {
                        let f = &shapes[fi];
                        for gi in 0..n {
                            let (ho, ev, fp_pf) = &parts[fi][gi];
                            let sections = homs_over(h, &ho.proj);
                            if sections.is_empty() {
                                continue;
                            }
                            let pairs_hf = &fp_hf[hi][fi].pairs;
                            // Case one: postcomposition on the target side,
                            // compared pointwise on the fiber product.
                            for gpi in 0..n {
                                let (ho_p, ev_p, fp_pf_p) = &parts[fi][gpi];
                                for a in &over[gi][gpi] {
                                    let post = hom_over_post_with(a, ho, ho_p);
                                    for b in &sections {
                                        for &(w, x) in pairs_hf {
                                            let lhs = ev_p.apply(
                                                fp_pf_p
                                                    .index_of(post.apply(b.apply(w)), x)
                                                    .expect("matched over the base"),
                                            );
                                            let rhs = a.apply(ev.apply(
                                                fp_pf
                                                    .index_of(b.apply(w), x)
                                                    .expect("matched over the base"),
                                            ));
                                            if lhs != rhs {
                                                return Err(format!(
                                                    "case (1) fails at ({a:?}, {b:?})"
                                                ));
                                            }
                                        }
                                    }
                                }
                            }
                            // Case two: restriction on the argument side.
                            for fpi in 0..n {
                                let (ho_p, ev_p, fp_pf_p) = &parts[fpi][gi];
                                for a in &over[fpi][fi] {
                                    let contra = hom_over_contra_with(a, ho, ho_p);
                                    for b in &sections {
                                        for &(w, xp) in &fp_hf[hi][fpi].pairs {
                                            let lhs = ev_p.apply(
                                                fp_pf_p
                                                    .index_of(contra.apply(b.apply(w)), xp)
                                                    .expect("matched over the base"),
                                            );
                                            let rhs = ev.apply(
                                                fp_pf
                                                    .index_of(b.apply(w), a.apply(xp))
                                                    .expect("matched over the base"),
                                            );
                                            if lhs != rhs {
                                                return Err(format!(
                                                    "case (2) fails at ({a:?}, {b:?})"
                                                ));
                                            }
                                        }
                                    }
                                }
                            }
                            // Case three: precomposition on the base side,
                            // compared at the morphism level.
                            for b in &sections {
                                let base = adj_inv_with(b, ev, &fp_hf[hi][fi], fp_pf);
                                for hpi in 0..n {
                                    for a in &over[hpi][hi] {
                                        let lhs = adj_inv_with(
                                            &a.then(b),
                                            ev,
                                            &fp_hf[hpi][fi],
                                            fp_pf,
                                        );
                                        let rhs = cross_with(
                                            a,
                                            &FinSetMor::identity(f.dom),
                                            &fp_hf[hpi][fi],
                                            &fp_hf[hi][fi],
                                        )
                                        .then(&base);
                                        if lhs != rhs {
                                            return Err(format!(
                                                "case (3) fails at ({a:?}, {b:?})"
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
        },
    ));

    checks
}

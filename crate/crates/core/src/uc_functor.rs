//! Universe category functors and the induced C-system homomorphism.
//!
//! A universe functor is a triple `(Phi, phi_u, phi_ut)`: a functor of the
//! underlying categories, a comparison `phi_u: Phi(U) -> U'` and a comparison
//! `phi_ut: Phi(Utilde) -> Utilde'`, such that `Phi` preserves the final
//! object and the designated pullback squares, and the comparison square over
//! `p'` is a pullback. It induces:
//!
//! * `phi2: D_p(X, V) -> D_{p'}(Phi(X), Phi(V))`, transporting classified
//!   families across the comparison isomorphism `iota` between the two
//!   pullbacks of the image classifier;
//! * `chi(V): Phi(I_p(V)) -> I_{p'}(Phi(V))` by representing the transported
//!   identity family;
//! * `xi = chi(U) ; I_{p'}(phi_u)` and its total-space twin `xi_tilde`;
//! * the homomorphism `H: CC(C, p) -> CC(C', p')` with its comparison
//!   isomorphisms `psi`, built level by level.
//!
//! The theorem checker verifies that when the product structures on both
//! universes are intertwined by `xi` / `xi_tilde`, the homomorphism `H`
//! preserves the transported `(Pi, lambda)`-structures.

use crate::cat_core::{CheckReport, Functor, IdFunctor, ObjRef, Square};
use crate::cc_universe::{CcMor, CcObj, CcSection, CcSystem, DpElement};
use crate::csystem_core::{ob_n, tilde_ob_n, CSystem};
use crate::error::Error;
use crate::finset_lcc::{
    is_pullback_fast, mediate_fast, FinSetMor, FinSkel, PartialPiStructure, PiStructure,
    Universe,
};
use std::collections::BTreeMap;

/// A universe functor between two finite-set universe models.
pub struct UniverseFunctor<'a, F: Functor<FinSkel, FinSkel>> {
    pub src: &'a CcSystem,
    pub dst: &'a CcSystem,
    pub phi: F,
    /// `Phi(U) -> U'`.
    pub phi_u: FinSetMor,
    /// `Phi(Utilde) -> Utilde'`.
    pub phi_ut: FinSetMor,
}

impl<'a, F: Functor<FinSkel, FinSkel>> UniverseFunctor<'a, F> {
    fn src_universe(&self) -> &Universe {
        &self.src.universe
    }

    fn dst_universe(&self) -> &Universe {
        &self.dst.universe
    }

    /// Action of the functor on objects, with the comparison typing fixed.
    pub fn phi_obj(&self, x: ObjRef) -> ObjRef {
        self.phi.on_obj(x)
    }

    /// Action of the functor on morphisms, with the comparison typing fixed.
    pub fn phi_mor(&self, f: &FinSetMor) -> FinSetMor {
        self.phi.on_mor(f)
    }

    /// The comparison square over `p'`:
    ///
    /// ```text
    ///   Phi(Utilde) --phi_ut--> Utilde'
    ///       |                     |
    ///     Phi(p)                  p'
    ///       v                     v
    ///   Phi(U)   ---phi_u--->    U'
    /// ```
    pub fn comparison_square(&self) -> Square<FinSetMor> {
        let phi_p = self.phi.on_mor(&self.src_universe().p);
        Square {
            corner: ObjRef(phi_p.dom),
            top: self.phi_ut.clone(),
            left: phi_p,
            right: self.dst_universe().p.clone(),
            bottom: self.phi_u.clone(),
        }
    }

    /// The image under `Phi` of the source chosen square of a classifier.
    fn phi_square(&self, classifier: &FinSetMor) -> Result<Square<FinSetMor>, Error> {
        let sq = self.src_universe().chosen_square(classifier)?;
        Ok(Square {
            corner: self.phi.on_obj(sq.corner),
            top: self.phi.on_mor(&sq.top),
            left: self.phi.on_mor(&sq.left),
            right: self.phi.on_mor(&sq.right),
            bottom: self.phi.on_mor(&sq.bottom),
        })
    }

    /// The image of a source classifier: `Phi(F) ; phi_u : Phi(X) -> U'`.
    pub fn image_classifier(&self, classifier: &FinSetMor) -> FinSetMor {
        self.phi.on_mor(classifier).then(&self.phi_u)
    }

    /// The comparison isomorphism
    /// `iota: (Phi(X); Phi(F); phi_u) -> Phi((X; F))` between the chosen
    /// pullback of the image classifier and the image of the chosen pullback.
    pub fn iota(&self, classifier: &FinSetMor) -> Result<FinSetMor, Error> {
        let image = self.image_classifier(classifier);
        let dst_sq = self.dst_universe().chosen_square(&image)?;
        // Mediate into the comparison square to land in Phi(Utilde).
        let phi_f = self.phi.on_mor(classifier);
        let q = mediate_fast(
            &self.comparison_square(),
            (&dst_sq.left.then(&phi_f), &dst_sq.top),
        )?;
        // Then into the image of the source chosen square.
        mediate_fast(&self.phi_square(classifier)?, (&dst_sq.left, &q))
    }

    /// `phi2(F1, F2) = (Phi(F1) ; phi_u, iota ; Phi(F2))`.
    pub fn phi2(&self, d: &DpElement) -> Result<DpElement, Error> {
        Ok(DpElement {
            f1: self.image_classifier(&d.f1),
            f2: self.iota(&d.f1)?.then(&self.phi.on_mor(&d.f2)),
        })
    }

    /// `chi(V) = eta'(phi2(eta_bang(Id)))`, the comparison
    /// `Phi(I_p(V)) -> I_{p'}(Phi(V))`.
    pub fn chi(&self, v: ObjRef) -> Result<FinSetMor, Error> {
        let ip_v = self.src.ip(v)?;
        let identity_family = self
            .src
            .eta_bang(&FinSetMor::identity(ip_v.size()), v)?;
        let transported = self.phi2(&identity_family)?;
        self.dst.eta(&transported, self.phi.on_obj(v))
    }

    /// `xi = chi(U) ; I_{p'}(phi_u)` and `xi_tilde = chi(Utilde) ; I_{p'}(phi_ut)`.
    pub fn xi(&self) -> Result<(FinSetMor, FinSetMor), Error> {
        let xi = self
            .chi(self.src_universe().u())?
            .then(&self.dst.ip_mor(&self.phi_u)?);
        let xi_tilde = self
            .chi(self.src_universe().u_tilde())?
            .then(&self.dst.ip_mor(&self.phi_ut)?);
        Ok((xi, xi_tilde))
    }

    /// Validates the universe-functor clauses on all data up to
    /// `class_bound`: functor laws, final-object preservation, designated
    /// squares mapped to pullbacks, and the comparison square being a
    /// pullback (fast path, plus the generic cone search over a small probe
    /// instance).
    pub fn check(&self, class_bound: usize, sample_bound: u128) -> CheckReport {
        let probe = FinSkel::new(class_bound, self.src.skel().hom_cap);
        let mut report =
            crate::cat_core::check_functor(&self.phi, &probe, self.dst.skel(), sample_bound);

        let phi_pt = self.phi.on_obj(ObjRef(1));
        if phi_pt.0 != 1 {
            report.push("final object not preserved".to_string());
        }

        let u_src = self.src_universe().u();
        if self.phi_u.dom != self.phi.on_obj(u_src).0
            || self.phi_u.cod != self.dst_universe().u().0
            || self.phi_ut.dom != self.phi.on_obj(self.src_universe().u_tilde()).0
            || self.phi_ut.cod != self.dst_universe().u_tilde().0
        {
            report.push("comparison morphisms have wrong endpoints".to_string());
            return report;
        }

        let comparison = self.comparison_square();
        if !is_pullback_fast(&comparison) {
            report.push("comparison square over p' is not a pullback".to_string());
        } else {
            let small = FinSkel::new(3, 1_000_000);
            match crate::cat_core::is_pullback(&small, &comparison) {
                Ok(true) => {}
                Ok(false) => {
                    report.push("generic cone search rejects the comparison square".to_string())
                }
                Err(e) => report.push(format!("generic cone search failed: {e}")),
            }
        }

        for x in 0..=class_bound {
            for f in crate::finset_lcc::hom_tables(x, u_src.0) {
                let classifier = FinSetMor { dom: x, cod: u_src.0, table: f };
                match self.phi_square(&classifier) {
                    Ok(sq) => {
                        if !is_pullback_fast(&sq) {
                            report.push(format!(
                                "designated square of {classifier:?} not preserved"
                            ));
                        }
                    }
                    Err(e) => report.push(format!("square construction failed: {e}")),
                }
            }
        }

        report
    }
}

/// The level maps of the induced homomorphism together with the comparison
/// isomorphisms `psi(A): int'(H(A)) -> Phi(int(A))`.
pub struct HData {
    entries: BTreeMap<CcObj, HEntry>,
}

struct HEntry {
    image: CcObj,
    psi: FinSetMor,
    psi_inv: FinSetMor,
}

impl HData {
    pub fn image(&self, x: &CcObj) -> &CcObj {
        &self.entries[x].image
    }

    pub fn psi(&self, x: &CcObj) -> &FinSetMor {
        &self.entries[x].psi
    }

    pub fn psi_inv(&self, x: &CcObj) -> &FinSetMor {
        &self.entries[x].psi_inv
    }

    pub fn covers(&self, x: &CcObj) -> bool {
        self.entries.contains_key(x)
    }
}

impl<'a, F: Functor<FinSkel, FinSkel>> UniverseFunctor<'a, F> {
    /// Builds the homomorphism level by level up to `length_bound`:
    /// `H(A, F) = (H(A), psi(A) ; Phi(F) ; phi_u)`, with `psi(A, F)` the
    /// unique morphism satisfying the two comparison equations (obtained by
    /// mediating into the pasted pullback of the image square and the
    /// comparison square).
    pub fn build_h(&self, length_bound: usize) -> Result<HData, Error> {
        let mut entries = BTreeMap::new();
        if self.phi.on_obj(ObjRef(1)).0 != 1 {
            return Err(Error::NotBijective("final object not preserved".into()));
        }
        let psi0 = FinSetMor::identity(1);
        entries.insert(
            CcObj::point(),
            HEntry { image: CcObj::point(), psi: psi0.clone(), psi_inv: psi0 },
        );

        for level in 1..=length_bound {
            for a_ext in self.src.level(level)? {
                let a = a_ext.ft();
                let classifier = a_ext.top().expect("positive length");
                let parent = &entries[&a];
                let image_classifier = parent
                    .psi
                    .then(&self.phi.on_mor(classifier))
                    .then(&self.phi_u);
                let image = parent.image.extend(image_classifier.clone());

                // psi(A, F) mediates into the pasted square
                //   Phi(int(A,F)) -> Utilde' over Phi(int A) -> U'.
                let src_sq = self.src_universe().chosen_square(classifier)?;
                let phi_sq = self.phi_square(classifier)?;
                let outer = Square {
                    corner: phi_sq.corner,
                    top: phi_sq.top.then(&self.phi_ut),
                    left: phi_sq.left.clone(),
                    right: self.dst_universe().p.clone(),
                    bottom: self.phi.on_mor(&src_sq.bottom).then(&self.phi_u),
                };
                let dst_sq = self.dst_universe().chosen_square(&image_classifier)?;
                let a_leg = dst_sq.left.then(&parent.psi);
                let psi = mediate_fast(&outer, (&a_leg, &dst_sq.top))?;
                let psi_inv = psi
                    .inverse()
                    .ok_or_else(|| Error::NotBijective("psi is not invertible".into()))?;
                entries.insert(a_ext.clone(), HEntry { image, psi, psi_inv });
            }
        }
        Ok(HData { entries })
    }

    /// Action of `H` on morphisms: `H(f) = psi(A) ; Phi(int f) ; psi(B)^{-1}`.
    pub fn h_mor(&self, h: &HData, f: &CcMor) -> CcMor {
        let map = h
            .psi(&f.src)
            .then(&self.phi.on_mor(&f.map))
            .then(h.psi_inv(&f.dst));
        CcMor { src: h.image(&f.src).clone(), dst: h.image(&f.dst).clone(), map }
    }

    pub fn h_section(&self, h: &HData, o: &CcSection) -> CcSection {
        CcSection { target: h.image(&o.target).clone(), mor: self.h_mor(h, &o.mor) }
    }
}

/// Outcome of the functoriality theorem check, separating the hypothesis
/// squares from the conclusion equations.
#[derive(Debug, Default)]
pub struct TheoremReport {
    pub hypothesis: CheckReport,
    pub conclusion: CheckReport,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.hypothesis.is_empty() && self.conclusion.is_empty()
    }
}

impl<'a, F: Functor<FinSkel, FinSkel>> UniverseFunctor<'a, F> {
    fn partial_classify(
        &self,
        table: &[Option<usize>],
        g: &FinSetMor,
        cod: usize,
        report: &mut CheckReport,
        what: &str,
    ) -> Option<FinSetMor> {
        let mut out = Vec::with_capacity(g.dom);
        for w in 0..g.dom {
            match table[g.apply(w)] {
                Some(v) => out.push(v),
                None => {
                    report.push(format!("{what} undefined at element {}", g.apply(w)));
                    return None;
                }
            }
        }
        Some(FinSetMor { dom: g.dom, cod, table: out })
    }

    /// Verifies the functoriality theorem on this instance:
    ///
    /// * hypothesis: `xi ; P' = Phi(P) ; phi_u` and
    ///   `xi_tilde ; P~' = Phi(P~) ; phi_ut`, evaluated pointwise (the
    ///   destination structure may be partial; the hypothesis fails loudly
    ///   if an undefined element is reached);
    /// * conclusion: `Pi'(H(T)) = H(Pi(T))` and
    ///   `lambda'(H(s)) = H(lambda(s))` for every `T`, `s` of relative
    ///   length 2 over bases of length at most `base_bound`.
    pub fn theorem_check(
        &self,
        h: &HData,
        pi_src: &PiStructure,
        pi_dst: &PartialPiStructure,
        base_bound: usize,
    ) -> Result<TheoremReport, Error> {
        let mut report = TheoremReport::default();
        let (xi, xi_tilde) = self.xi()?;

        // Hypothesis squares.
        let phi_p = self.phi.on_mor(&pi_src.p_map).then(&self.phi_u);
        for e in 0..xi.dom {
            match pi_dst.p_map[xi.apply(e)] {
                Some(v) if v == phi_p.apply(e) => {}
                Some(v) => report.hypothesis.push(format!(
                    "P-square fails at element {e}: {v} vs {}",
                    phi_p.apply(e)
                )),
                None => report
                    .hypothesis
                    .push(format!("P' undefined at element {}", xi.apply(e))),
            }
        }
        let phi_pt = self.phi.on_mor(&pi_src.p_tilde_map).then(&self.phi_ut);
        for e in 0..xi_tilde.dom {
            match pi_dst.p_tilde_map[xi_tilde.apply(e)] {
                Some(v) if v == phi_pt.apply(e) => {}
                Some(v) => report.hypothesis.push(format!(
                    "P~-square fails at element {e}: {v} vs {}",
                    phi_pt.apply(e)
                )),
                None => report
                    .hypothesis
                    .push(format!("P~' undefined at element {}", xi_tilde.apply(e))),
            }
        }

        // Conclusion, checked elementwise over the enumerated bases.
        let u_dst_size = self.dst_universe().u().0;
        let ut_dst_size = self.dst_universe().u_tilde().0;
        for gamma in self.src.objects_up_to(base_bound)? {
            let h_gamma = h.image(&gamma).clone();
            for t in ob_n(self.src, &gamma, 2)? {
                let pi_t = self
                    .src
                    .u1_inv(&gamma, &self.src.mu2(&t)?.then(&pi_src.p_map));
                let lhs = h.image(&pi_t).clone();
                let ht = h.image(&t);
                let classifier = self.dst.mu2(ht)?;
                let Some(classified) = self.partial_classify(
                    &pi_dst.p_map,
                    &classifier,
                    u_dst_size,
                    &mut report.conclusion,
                    "P'",
                ) else {
                    continue;
                };
                let rhs = self.dst.u1_inv(&h_gamma, &classified);
                if lhs != rhs {
                    report
                        .conclusion
                        .push(format!("Pi'(H(T)) != H(Pi(T)) at {t:?}"));
                }
            }
            for s in tilde_ob_n(self.src, &gamma, 2)? {
                let lambda_s = self
                    .src
                    .u_tilde1_inv(&gamma, &self.src.mu_tilde2(&s)?.then(&pi_src.p_tilde_map));
                let lhs = self.h_section(h, &lambda_s);
                let hs = self.h_section(h, &s);
                let classifier = self.dst.mu_tilde2(&hs)?;
                let Some(classified) = self.partial_classify(
                    &pi_dst.p_tilde_map,
                    &classifier,
                    ut_dst_size,
                    &mut report.conclusion,
                    "P~'",
                ) else {
                    continue;
                };
                let rhs = self.dst.u_tilde1_inv(&h_gamma, &classified);
                if lhs != rhs {
                    report
                        .conclusion
                        .push(format!("lambda'(H(s)) != H(lambda(s)) at {s:?}"));
                }
            }
        }

        Ok(report)
    }
}

/// An owned demo instance: two universe models with the comparison data of a
/// universe functor between them (the functor itself is the identity on the
/// shared skeleton).
pub struct DemoInstance {
    pub src: CcSystem,
    pub dst: CcSystem,
    pub phi_u: FinSetMor,
    pub phi_ut: FinSetMor,
}

impl DemoInstance {
    /// The inclusion of the Boolean universe into the three-element one:
    /// `phi_u` embeds sizes `{0, 1}` into `{0, 1, 2}`, `phi_ut` sends the
    /// single total-space point to the corresponding one.
    pub fn inclusion(length_bound: usize) -> Result<Self, Error> {
        let skel = FinSkel::standard();
        let src = CcSystem::build(Universe::new(1, skel), length_bound)?;
        let dst = CcSystem::build(Universe::new(2, skel), length_bound)?;
        let phi_u = FinSetMor::new(2, 3, vec![0, 1])?;
        let phi_ut = FinSetMor::new(1, 3, vec![0])?;
        Ok(DemoInstance { src, dst, phi_u, phi_ut })
    }

    /// The identity functor on the Boolean universe.
    pub fn identity(length_bound: usize) -> Result<Self, Error> {
        let skel = FinSkel::standard();
        let src = CcSystem::build(Universe::new(1, skel), length_bound)?;
        let dst = CcSystem::build(Universe::new(1, skel), length_bound)?;
        let phi_u = FinSetMor::identity(2);
        let phi_ut = FinSetMor::identity(1);
        Ok(DemoInstance { src, dst, phi_u, phi_ut })
    }

    pub fn functor(&self) -> UniverseFunctor<'_, IdFunctor> {
        UniverseFunctor {
            src: &self.src,
            dst: &self.dst,
            phi: IdFunctor,
            phi_u: self.phi_u.clone(),
            phi_ut: self.phi_ut.clone(),
        }
    }
}

/// Flips one defined value of the partial product structure at an element in
/// the image of `xi`, for fault-injection runs. Returns the perturbed index.
pub fn perturb_p(pi: &mut PartialPiStructure, xi: &FinSetMor, u_size: usize) -> Option<usize> {
    for e in 0..xi.dom {
        let idx = xi.apply(e);
        if let Some(v) = pi.p_map[idx] {
            pi.p_map[idx] = Some((v + 1) % u_size);
            return Some(idx);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset_lcc::{partial_pi_structure, pi_structure};

    #[test]
    fn inclusion_functor_passes_all_clauses() {
        let demo = DemoInstance::inclusion(2).unwrap();
        let uf = demo.functor();
        let report = uf.check(4, 10_000);
        assert!(report.is_empty(), "{report}");
    }

    #[test]
    fn identity_functor_passes_all_clauses() {
        let demo = DemoInstance::identity(2).unwrap();
        let uf = demo.functor();
        let report = uf.check(4, 10_000);
        assert!(report.is_empty(), "{report}");
    }

    #[test]
    fn corrupted_comparison_is_reported() {
        let demo = DemoInstance::inclusion(2).unwrap();
        let mut uf = demo.functor();
        uf.phi_ut = FinSetMor::new(1, 3, vec![2]).unwrap();
        let report = uf.check(3, 10_000);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("comparison square")));
    }

    #[test]
    fn phi2_of_identity_functor_is_identity() {
        let demo = DemoInstance::identity(2).unwrap();
        let uf = demo.functor();
        for x in 0..=2usize {
            for d in demo.src.dp_enum(x, demo.src.universe.u()).unwrap() {
                assert_eq!(uf.phi2(&d).unwrap(), d);
            }
        }
    }

    #[test]
    fn phi2_commutes_with_both_dp_actions() {
        let demo = DemoInstance::inclusion(2).unwrap();
        let uf = demo.functor();
        let u = demo.src.universe.u();
        let ut = demo.src.universe.u_tilde();
        for x in 0..=2usize {
            for xp in 0..=2usize {
                for ftab in crate::finset_lcc::hom_tables(xp, x) {
                    let f = FinSetMor::new(xp, x, ftab).unwrap();
                    for d in demo.src.dp_enum(x, u).unwrap() {
                        let lhs = uf.phi2(&demo.src.dp_act_left(&f, &d)).unwrap();
                        let rhs = demo
                            .dst
                            .dp_act_left(&uf.phi_mor(&f), &uf.phi2(&d).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            // The covariant action, along p: Utilde -> U.
            for d in demo.src.dp_enum(x, ut).unwrap() {
                let p = demo.src.universe.p.clone();
                let lhs = uf.phi2(&demo.src.dp_act_right(&p, &d)).unwrap();
                let rhs = demo.dst.dp_act_right(&uf.phi_mor(&p), &uf.phi2(&d).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn chi_of_identity_functor_is_identity() {
        let demo = DemoInstance::identity(2).unwrap();
        let uf = demo.functor();
        for v in [demo.src.universe.u(), demo.src.universe.u_tilde()] {
            assert!(uf.chi(v).unwrap().is_identity());
        }
    }

    #[test]
    fn chi_of_the_inclusion_reads_families_in_the_larger_universe() {
        // chi sends (n, family) to the same data viewed over U'; with the
        // little-endian coding this is the table [0, 1, 2].
        let demo = DemoInstance::inclusion(2).unwrap();
        let uf = demo.functor();
        let chi = uf.chi(demo.src.universe.u()).unwrap();
        assert_eq!(chi, FinSetMor::new(3, 7, vec![0, 1, 2]).unwrap());
    }

    #[test]
    fn chi_is_natural_along_p() {
        // chi(V1) ; I_{p'}(Phi(f)) = Phi(I_p(f)) ; chi(V2) with f = p.
        let demo = DemoInstance::inclusion(2).unwrap();
        let uf = demo.functor();
        let p = demo.src.universe.p.clone();
        let lhs = uf
            .chi(demo.src.universe.u_tilde())
            .unwrap()
            .then(&demo.dst.ip_mor(&uf.phi_mor(&p)).unwrap());
        let rhs = uf
            .phi_mor(&demo.src.ip_mor(&p).unwrap())
            .then(&uf.chi(demo.src.universe.u()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn representation_is_intertwined_by_chi() {
        // Phi(eta(a)) ; chi(V) = eta'(phi2(a)) for all a at small sizes.
        let demo = DemoInstance::inclusion(2).unwrap();
        let uf = demo.functor();
        for v in [demo.src.universe.u(), demo.src.universe.u_tilde()] {
            let chi = uf.chi(v).unwrap();
            for x in 0..=2usize {
                for a in demo.src.dp_enum(x, v).unwrap() {
                    let lhs = uf.phi_mor(&demo.src.eta(&a, v).unwrap()).then(&chi);
                    let rhs = demo
                        .dst
                        .eta(&uf.phi2(&a).unwrap(), uf.phi_obj(v))
                        .unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn xi_of_identity_functor_is_identity() {
        let demo = DemoInstance::identity(2).unwrap();
        let uf = demo.functor();
        let (xi, xi_tilde) = uf.xi().unwrap();
        assert!(xi.is_identity());
        assert!(xi_tilde.is_identity());
    }

    #[test]
    fn xi_of_the_inclusion_embeds_families() {
        // xi(n, family) = (phi_u(n), phi_u . family): table [0, 1, 2].
        let demo = DemoInstance::inclusion(2).unwrap();
        let uf = demo.functor();
        let (xi, xi_tilde) = uf.xi().unwrap();
        assert_eq!(xi, FinSetMor::new(3, 13, vec![0, 1, 2]).unwrap());
        // I_p(Utilde) has 2 elements; both land on families over Utilde'.
        assert_eq!(xi_tilde.dom, 2);
        assert_eq!(xi_tilde.cod, 13);
    }

    #[test]
    fn h_of_identity_functor_is_identity_on_towers() {
        let demo = DemoInstance::identity(3).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(3).unwrap();
        for x in demo.src.objects_up_to(3).unwrap() {
            assert_eq!(h.image(&x), &x);
            assert!(h.psi(&x).is_identity());
        }
    }

    #[test]
    fn h_of_the_inclusion_embeds_classifiers() {
        let demo = DemoInstance::inclusion(2).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(2).unwrap();
        for x in demo.src.objects_up_to(2).unwrap() {
            let image = h.image(&x);
            assert_eq!(image.length(), x.length());
            assert!(h.psi(&x).is_bijective());
            // Towers embed classifier by classifier through phi_u, conjugated
            // by psi at each level.
            for (level, f) in x.tower.iter().enumerate() {
                let prefix = x.tower[..level]
                    .iter()
                    .fold(CcObj::point(), |acc, g| acc.extend(g.clone()));
                let expected = h.psi(&prefix).then(f).then(&uf.phi_u);
                assert_eq!(image.tower[level], expected);
            }
        }
    }

    #[test]
    fn psi_satisfies_both_defining_equations() {
        // psi(A, F) ; Phi(Q(F)) ; phi_ut = Q'(psi(A) ; Phi(F) ; phi_u) and
        // psi(A, F) ; Phi(p_{A,F}) = p_{H(A,F)} ; psi(A), at every level.
        let demo = DemoInstance::inclusion(3).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(3).unwrap();
        for x in demo.src.objects_up_to(3).unwrap() {
            if x.length() == 0 {
                continue;
            }
            let a = x.ft();
            let classifier = x.top().unwrap();
            let src_sq = demo.src.universe.chosen_square(classifier).unwrap();
            let image_classifier = h
                .psi(&a)
                .then(&uf.phi_mor(classifier))
                .then(&uf.phi_u);
            let dst_sq = demo.dst.universe.chosen_square(&image_classifier).unwrap();
            let psi = h.psi(&x);
            assert_eq!(
                psi.then(&uf.phi_mor(&src_sq.top)).then(&uf.phi_ut),
                dst_sq.top
            );
            assert_eq!(psi.then(&uf.phi_mor(&src_sq.left)), dst_sq.left.then(h.psi(&a)));
        }
    }

    #[test]
    fn h_is_a_csystem_homomorphism() {
        let demo = DemoInstance::inclusion(3).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(3).unwrap();
        let src = &demo.src;
        let dst = &demo.dst;
        assert_eq!(h.image(&src.pt()), &dst.pt());
        for x in src.objects_up_to(3).unwrap() {
            if x.length() == 0 {
                continue;
            }
            assert_eq!(h.image(&x.ft()), &h.image(&x).ft());
            assert_eq!(uf.h_mor(&h, &src.proj(&x)), dst.proj(h.image(&x)));
        }
        // Chosen pullbacks are preserved: H(q(f, X)) = q(H(f), H(X)).
        for gamma in src.objects_up_to(1).unwrap() {
            for gamma_p in src.objects_up_to(1).unwrap() {
                for f in src.hom(&gamma_p, &gamma).unwrap() {
                    for x in ob_n(src, &gamma, 1).unwrap() {
                        let lhs = uf.h_mor(&h, &src.pull_q(&f, &x));
                        let hf = uf.h_mor(&h, &f);
                        let rhs = dst.pull_q(&hf, h.image(&x));
                        assert_eq!(lhs, rhs);
                        assert_eq!(
                            h.image(&src.pull_ob(&f, &x)),
                            &dst.pull_ob(&hf, h.image(&x))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn h_intertwines_the_u_bijections() {
        // u1'(H(T)) = psi(G) ; Phi(u1(T)) ; phi_u, and likewise for
        // sections with phi_ut.
        let demo = DemoInstance::inclusion(3).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(3).unwrap();
        for gamma in demo.src.objects_up_to(2).unwrap() {
            let psi = h.psi(&gamma);
            for t in ob_n(&demo.src, &gamma, 1).unwrap() {
                let lhs = demo.dst.u1(h.image(&t));
                let rhs = psi.then(&uf.phi_mor(&demo.src.u1(&t))).then(&uf.phi_u);
                assert_eq!(lhs, rhs);
            }
            for o in tilde_ob_n(&demo.src, &gamma, 1).unwrap() {
                let lhs = demo.dst.u_tilde1(&uf.h_section(&h, &o));
                let rhs = psi
                    .then(&uf.phi_mor(&demo.src.u_tilde1(&o)))
                    .then(&uf.phi_ut);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn theorem_holds_on_the_inclusion_instance() {
        let demo = DemoInstance::inclusion(3).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(3).unwrap();
        let pi_src = pi_structure(&demo.src.universe).unwrap();
        let pi_dst = partial_pi_structure(&demo.dst.universe).unwrap();
        let report = uf.theorem_check(&h, &pi_src, &pi_dst, 1).unwrap();
        assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn theorem_holds_trivially_on_the_identity_instance() {
        let demo = DemoInstance::identity(3).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(3).unwrap();
        let pi = pi_structure(&demo.src.universe).unwrap();
        let pi_dst = PartialPiStructure::total(&pi);
        let report = uf.theorem_check(&h, &pi, &pi_dst, 1).unwrap();
        assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn perturbing_the_destination_structure_fails_the_hypothesis() {
        let demo = DemoInstance::inclusion(3).unwrap();
        let uf = demo.functor();
        let h = uf.build_h(3).unwrap();
        let pi_src = pi_structure(&demo.src.universe).unwrap();
        let mut pi_dst = partial_pi_structure(&demo.dst.universe).unwrap();
        let (xi, _) = uf.xi().unwrap();
        let idx = perturb_p(&mut pi_dst, &xi, demo.dst.universe.u().0).unwrap();
        let report = uf.theorem_check(&h, &pi_src, &pi_dst, 1).unwrap();
        assert!(!report.hypothesis.is_empty(), "perturbed index {idx}");
    }
}

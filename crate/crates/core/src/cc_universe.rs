//! The C-system `CC(C, p)` generated by a universe in the finite-set model,
//! together with the representability machinery: the bijections `u1` /
//! `u_tilde1` between relative objects (sections) and classifiers, their
//! two-level versions `u2` / `u_tilde2` valued in `D_p`, the internal object
//! `I_p(V)` with its structure map `st_p`, the representation `eta` of `D_p`,
//! the composite bijections `mu2`, and the transport of a product structure
//! on the universe to a `(Pi, lambda)`-structure on `CC(C, p)`.
//!
//! Objects of `CC(C, p)` are towers `(F_1, ..., F_n)` of classifiers: `F_1`
//! is a map from the point into `U` and each `F_{k+1}` is a map from the
//! total space of `F_k` into `U`. Morphisms are triples (source tower,
//! target tower, underlying finite-set map); domain and codomain are part of
//! the datum.

use crate::cat_core::{Category, ObjRef, Square};
use crate::csystem_core::{ob_n, tilde_ob_n, CSystem, Section};
use crate::error::Error;
use crate::finset_lcc::{
    is_pullback_fast, FinSetMor, FinSkel, IpLayout, PiStructure, Universe,
};
use crate::pi_lambda::PrePiLambda;
use serde::Serialize;

/// An object of `CC(C, p)`: a tower of classifying morphisms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CcObj {
    pub tower: Vec<FinSetMor>,
}

impl CcObj {
    pub fn point() -> Self {
        CcObj { tower: Vec::new() }
    }

    pub fn length(&self) -> usize {
        self.tower.len()
    }

    /// Size of the underlying object: the total space of the top classifier,
    /// or the final object for the point.
    pub fn int_size(&self) -> usize {
        self.tower
            .last()
            .map(|f| f.table.iter().sum())
            .unwrap_or(1)
    }

    pub fn top(&self) -> Option<&FinSetMor> {
        self.tower.last()
    }

    pub fn ft(&self) -> CcObj {
        let mut tower = self.tower.clone();
        tower.pop();
        CcObj { tower }
    }

    pub fn extend(&self, classifier: FinSetMor) -> CcObj {
        debug_assert_eq!(classifier.dom, self.int_size());
        let mut tower = self.tower.clone();
        tower.push(classifier);
        CcObj { tower }
    }
}

/// A morphism of `CC(C, p)`: source and target towers plus the underlying
/// map between their total spaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CcMor {
    pub src: CcObj,
    pub dst: CcObj,
    pub map: FinSetMor,
}

/// A section in `CC(C, p)`.
pub type CcSection = Section<CcObj, CcMor>;

/// An element of `D_p(X, V)`: a classifier `f1: X -> U` together with a map
/// `f2` from its total space `(X; f1)` to `V`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DpElement {
    pub f1: FinSetMor,
    pub f2: FinSetMor,
}

/// The internal object `I_p(V) = Hom_U((Utilde, p), (U x V, pr1))` with its
/// projection to `U` and structure map `st_p(V): (I_p(V); pr) -> V`.
pub struct IpData {
    pub layout: IpLayout,
    pub pr: FinSetMor,
    pub st: FinSetMor,
}

impl IpData {
    pub fn size(&self) -> usize {
        self.layout.hom.size()
    }
}

/// `CC(C, p)` with levels enumerated up to a length bound.
pub struct CcSystem {
    pub universe: Universe,
    pub length_bound: usize,
    levels: Vec<Vec<CcObj>>,
}

impl CcSystem {
    /// Builds the C-system, enumerating every level up to `length_bound`.
    /// Fails when a level's classifier enumeration exceeds the hom cap or a
    /// total space exceeds the object cap; never truncates silently.
    pub fn build(universe: Universe, length_bound: usize) -> Result<CcSystem, Error> {
        let mut levels = vec![vec![CcObj::point()]];
        for _ in 0..length_bound {
            let mut next = Vec::new();
            for a in levels.last().unwrap() {
                let homs = universe
                    .skel
                    .hom(ObjRef(a.int_size()), universe.u())?;
                for f in homs {
                    let extended = a.extend(f);
                    let size = extended.int_size();
                    if size > universe.skel.object_cap {
                        return Err(Error::ObjectCapExceeded {
                            required: size as u128,
                            cap: universe.skel.object_cap,
                        });
                    }
                    next.push(extended);
                }
            }
            levels.push(next);
        }
        Ok(CcSystem { universe, length_bound, levels })
    }

    pub fn skel(&self) -> &FinSkel {
        &self.universe.skel
    }

    pub fn level(&self, n: usize) -> Result<&[CcObj], Error> {
        self.levels
            .get(n)
            .map(|v| v.as_slice())
            .ok_or(Error::LengthBoundExceeded { requested: n, bound: self.length_bound })
    }

    pub fn level_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    fn classifier<'a>(&self, x: &'a CcObj) -> &'a FinSetMor {
        x.top().expect("positive-length object required")
    }

    /// The chosen square of the top classifier; its left leg underlies `p_X`.
    fn top_square(&self, x: &CcObj) -> Square<FinSetMor> {
        self.universe
            .chosen_square(self.classifier(x))
            .expect("enumerated towers stay under the object cap")
    }

    // --- the u-bijections -------------------------------------------------

    /// `u1(T)`: the classifier of the top level of `T`.
    pub fn u1(&self, t: &CcObj) -> FinSetMor {
        self.classifier(t).clone()
    }

    /// Inverse of `u1` at `gamma`: extends the tower by the classifier.
    pub fn u1_inv(&self, gamma: &CcObj, f: &FinSetMor) -> CcObj {
        assert_eq!(f.dom, gamma.int_size());
        assert_eq!(f.cod, self.universe.u().0);
        gamma.extend(f.clone())
    }

    /// `u_tilde1(o) = int(o) ; Q(u1(target))`, a map into `Utilde`.
    pub fn u_tilde1(&self, o: &CcSection) -> FinSetMor {
        let sq = self.top_square(&o.target);
        o.mor.map.then(&sq.top)
    }

    /// Inverse of `u_tilde1` at `gamma`: for `f: int(gamma) -> Utilde`, the
    /// section of the tower classified by `f ; p` whose composite with the
    /// chosen square's top leg is `f`.
    pub fn u_tilde1_inv(&self, gamma: &CcObj, f: &FinSetMor) -> CcSection {
        assert_eq!(f.dom, gamma.int_size());
        assert_eq!(f.cod, self.universe.u_tilde().0);
        let classifier = f.then(&self.universe.p);
        let target = gamma.extend(classifier.clone());
        let map = self
            .universe
            .star(&classifier, &FinSetMor::identity(f.dom), f)
            .expect("section pairing legs agree over U by construction");
        Section {
            mor: CcMor { src: gamma.clone(), dst: target.clone(), map },
            target,
        }
    }

    /// `u2(T) = (u1(ft T), u1(T))` for `T` of relative length 2.
    pub fn u2(&self, t: &CcObj) -> DpElement {
        let n = t.length();
        assert!(n >= 2);
        DpElement { f1: t.tower[n - 2].clone(), f2: t.tower[n - 1].clone() }
    }

    pub fn u2_inv(&self, gamma: &CcObj, d: &DpElement) -> CcObj {
        self.u1_inv(&self.u1_inv(gamma, &d.f1), &d.f2)
    }

    /// `u_tilde2(o) = (u1(ft(target)), u_tilde1(o))`.
    pub fn u_tilde2(&self, o: &CcSection) -> DpElement {
        let n = o.target.length();
        assert!(n >= 2);
        DpElement { f1: o.target.tower[n - 2].clone(), f2: self.u_tilde1(o) }
    }

    pub fn u_tilde2_inv(&self, gamma: &CcObj, d: &DpElement) -> CcSection {
        let gamma1 = self.u1_inv(gamma, &d.f1);
        self.u_tilde1_inv(&gamma1, &d.f2)
    }

    // --- D_p and its representation ---------------------------------------

    /// All elements of `D_p(X, V)` for `X` of the given size.
    pub fn dp_enum(&self, x_size: usize, v: ObjRef) -> Result<Vec<DpElement>, Error> {
        let mut out = Vec::new();
        for f1 in self.skel().hom(ObjRef(x_size), self.universe.u())? {
            let corner = self.universe.corner_size(&f1);
            for f2 in self.skel().hom(ObjRef(corner), v)? {
                out.push(DpElement { f1: f1.clone(), f2 });
            }
        }
        Ok(out)
    }

    /// Contravariant action: `D_p(f, V)(F1, F2) = (f;F1, Q(f, F1);F2)`.
    pub fn dp_act_left(&self, f: &FinSetMor, d: &DpElement) -> DpElement {
        let q = self
            .universe
            .q_map(f, &d.f1)
            .expect("enumerated data stays under the object cap");
        DpElement { f1: f.then(&d.f1), f2: q.then(&d.f2) }
    }

    /// Covariant action: `D_p(X, g)(F1, F2) = (F1, F2;g)`.
    pub fn dp_act_right(&self, g: &FinSetMor, d: &DpElement) -> DpElement {
        DpElement { f1: d.f1.clone(), f2: d.f2.then(g) }
    }

    /// `I_p(V)` with its projection and structure map
    /// `st_p(V) = iota ; ev ; pr2`.
    pub fn ip(&self, v: ObjRef) -> Result<IpData, Error> {
        let layout = IpLayout::build(&self.universe, v.0)?;
        let pr = layout.hom.proj.clone();
        let pr1 = layout.product.square.left.clone();
        let fp = self.skel().fiber_product(&pr, &self.universe.p)?;
        let sq = self.universe.chosen_square(&pr)?;
        let iota = fp.pair(&sq.left, &sq.top)?;
        let ev = self.skel().ev(&self.universe.p, &pr1)?;
        let st = iota.then(&ev).then(&layout.product.square.top);
        Ok(IpData { layout, pr, st })
    }

    /// Functorial action `I_p(f): I_p(V) -> I_p(V')` by postcomposition.
    pub fn ip_mor(&self, f: &FinSetMor) -> Result<FinSetMor, Error> {
        let u_size = self.universe.u().0;
        let layout_v = IpLayout::build(&self.universe, f.dom)?;
        let layout_vp = IpLayout::build(&self.universe, f.cod)?;
        let id_times_f = self.skel().cross(
            &FinSetMor::identity(u_size),
            f,
            &FinSetMor::to_point(u_size),
            &FinSetMor::to_point(f.cod),
        )?;
        self.skel().hom_over_post(
            &self.universe.p,
            &layout_v.product.square.left,
            &layout_vp.product.square.left,
            &id_times_f,
        )
    }

    /// `eta(d): X -> I_p(V)`, the representation of `D_p(X, V)`, computed by
    /// currying: the underlying family of `d` is curried through `adj` after
    /// transporting `(X; F1)` across the comparison isomorphism with the
    /// fiber product `(X, F1) x_U (Utilde, p)`.
    pub fn eta(&self, d: &DpElement, v: ObjRef) -> Result<FinSetMor, Error> {
        assert_eq!(d.f2.cod, v.0);
        let layout = IpLayout::build(&self.universe, v.0)?;
        let pr1 = layout.product.square.left.clone();
        let sq = self.universe.chosen_square(&d.f1)?;
        let fp = self.skel().fiber_product(&d.f1, &self.universe.p)?;
        let iota = fp.pair(&sq.left, &sq.top)?;
        let iota_inv = iota
            .inverse()
            .ok_or_else(|| Error::NotBijective("comparison with the fiber product".into()))?;
        let to_u = fp.over_base();
        let to_v = iota_inv.then(&d.f2);
        let family = layout.product.pair(&to_u, &to_v)?;
        self.skel().adj(&d.f1, &self.universe.p, &pr1, &family)
    }

    /// `eta_bang(g) = (g;pr, Q(g, pr);st)`, inverse to [`CcSystem::eta`].
    pub fn eta_bang(&self, g: &FinSetMor, v: ObjRef) -> Result<DpElement, Error> {
        let ipd = self.ip(v)?;
        assert_eq!(g.cod, ipd.size());
        let f1 = g.then(&ipd.pr);
        let q = self.universe.q_map(g, &ipd.pr)?;
        Ok(DpElement { f1, f2: q.then(&ipd.st) })
    }

    /// `mu2(T) = eta(u2(T)): int(Gamma) -> I_p(U)`.
    pub fn mu2(&self, t: &CcObj) -> Result<FinSetMor, Error> {
        self.eta(&self.u2(t), self.universe.u())
    }

    /// `mu_tilde2(o) = eta(u_tilde2(o)): int(Gamma) -> I_p(Utilde)`.
    pub fn mu_tilde2(&self, o: &CcSection) -> Result<FinSetMor, Error> {
        self.eta(&self.u_tilde2(o), self.universe.u_tilde())
    }

    // --- the (Pi, lambda)-structure ---------------------------------------

    /// The square of the product structure, over `I_p(p): I_p(Utilde) -> I_p(U)`.
    pub fn pi_square(&self, pi: &PiStructure) -> Result<Square<FinSetMor>, Error> {
        let ip_p = self.ip_mor(&self.universe.p)?;
        Ok(Square {
            corner: ObjRef(pi.p_tilde_map.dom),
            top: pi.p_tilde_map.clone(),
            left: ip_p,
            right: self.universe.p.clone(),
            bottom: pi.p_map.clone(),
        })
    }

    /// Transports a product structure on the universe to a
    /// pre-`(Pi, lambda)`-structure on `CC(C, p)`, tabulated over every
    /// object of length at most `bound`:
    ///
    /// * `Pi(T) = u1_inv(mu2(T) ; P)`
    /// * `lambda(s) = u_tilde1_inv(mu_tilde2(s) ; P~)`
    ///
    /// Requires the product-structure square to be a pullback.
    pub fn pi_lambda_from_pi_structure(
        &self,
        pi: &PiStructure,
        bound: usize,
    ) -> Result<PrePiLambda<CcSystem>, Error> {
        if !is_pullback_fast(&self.pi_square(pi)?) {
            return Err(Error::PiSquareNotPullback);
        }
        let mut out = PrePiLambda::default();
        for gamma in self.objects_up_to(bound.saturating_sub(2))? {
            for t in ob_n(self, &gamma, 2)? {
                let classifier = self.mu2(&t)?.then(&pi.p_map);
                out.pi.insert(t, self.u1_inv(&gamma, &classifier));
            }
            for s in tilde_ob_n(self, &gamma, 2)? {
                let classifier = self.mu_tilde2(&s)?.then(&pi.p_tilde_map);
                out.lambda.insert(s, self.u_tilde1_inv(&gamma, &classifier));
            }
        }
        Ok(out)
    }
}

impl CSystem for CcSystem {
    type Obj = CcObj;
    type Mor = CcMor;

    fn pt(&self) -> CcObj {
        CcObj::point()
    }

    fn length(&self, x: &CcObj) -> usize {
        x.length()
    }

    fn ft(&self, x: &CcObj) -> CcObj {
        x.ft()
    }

    fn proj(&self, x: &CcObj) -> CcMor {
        let sq = self.top_square(x);
        CcMor { src: x.clone(), dst: x.ft(), map: sq.left }
    }

    fn pull_ob(&self, f: &CcMor, x: &CcObj) -> CcObj {
        assert_eq!(f.dst, x.ft(), "pull_ob along a morphism into a different base");
        f.src.extend(f.map.then(self.classifier(x)))
    }

    fn pull_q(&self, f: &CcMor, x: &CcObj) -> CcMor {
        let src = self.pull_ob(f, x);
        let map = self
            .universe
            .q_map(&f.map, self.classifier(x))
            .expect("enumerated data stays under the object cap");
        CcMor { src, dst: x.clone(), map }
    }

    fn dom(&self, f: &CcMor) -> CcObj {
        f.src.clone()
    }

    fn cod(&self, f: &CcMor) -> CcObj {
        f.dst.clone()
    }

    fn identity(&self, x: &CcObj) -> CcMor {
        CcMor { src: x.clone(), dst: x.clone(), map: FinSetMor::identity(x.int_size()) }
    }

    fn compose(&self, f: &CcMor, g: &CcMor) -> CcMor {
        assert_eq!(f.dst, g.src, "composition endpoint mismatch");
        CcMor { src: f.src.clone(), dst: g.dst.clone(), map: f.map.then(&g.map) }
    }

    fn objects_up_to(&self, bound: usize) -> Result<Vec<CcObj>, Error> {
        if bound > self.length_bound {
            return Err(Error::LengthBoundExceeded {
                requested: bound,
                bound: self.length_bound,
            });
        }
        Ok(self.levels[..=bound].iter().flatten().cloned().collect())
    }

    fn hom(&self, x: &CcObj, y: &CcObj) -> Result<Vec<CcMor>, Error> {
        Ok(self
            .skel()
            .hom(ObjRef(x.int_size()), ObjRef(y.int_size()))?
            .into_iter()
            .map(|map| CcMor { src: x.clone(), dst: y.clone(), map })
            .collect())
    }

    fn mediate_canonical(
        &self,
        f: &CcMor,
        x: &CcObj,
        a: &CcMor,
        b: &CcMor,
    ) -> Result<CcMor, Error> {
        if a.dst != f.src || b.dst != *x || a.src != b.src {
            return Err(Error::InvalidCone("cone endpoints do not match".into()));
        }
        let p_x = self.proj(x);
        if a.map.then(&f.map) != b.map.then(&p_x.map) {
            return Err(Error::InvalidCone("cone does not commute with the square".into()));
        }
        let classifier = self.classifier(x);
        let pulled_classifier = f.map.then(classifier);
        let sq = self.top_square(x);
        let map = self
            .universe
            .star(&pulled_classifier, &a.map, &b.map.then(&sq.top))?;
        Ok(CcMor { src: a.src.clone(), dst: self.pull_ob(f, x), map })
    }

    fn canonical_square_is_pullback(&self, f: &CcMor, x: &CcObj) -> Result<bool, Error> {
        let fx = self.pull_ob(f, x);
        let q = self.pull_q(f, x);
        let sq = Square {
            corner: ObjRef(fx.int_size()),
            top: q.map,
            left: self.proj(&fx).map,
            right: self.proj(x).map,
            bottom: f.map.clone(),
        };
        Ok(is_pullback_fast(&sq))
    }

    fn sections_of(&self, x: &CcObj) -> Result<Vec<CcMor>, Error> {
        if x.length() == 0 {
            return Ok(Vec::new());
        }
        let classifier = self.classifier(x);
        let offsets = self.universe.corner_offsets(classifier);
        let base = x.ft();
        let dom = classifier.dom;
        let corner = x.int_size();

        // Odometer over the fibers: a section picks one element per fiber.
        if classifier.table.contains(&0) {
            return Ok(Vec::new());
        }
        let mut choice = vec![0usize; dom];
        let mut out = Vec::new();
        loop {
            let table: Vec<usize> =
                (0..dom).map(|gamma| offsets[gamma] + choice[gamma]).collect();
            out.push(CcMor {
                src: base.clone(),
                dst: x.clone(),
                map: FinSetMor { dom, cod: corner, table },
            });
            let mut pos = dom;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < classifier.table[pos] {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csystem_core::{
        check_csystem_axioms, diagonal, pull_mor_over, pull_sec_n, AxiomCheckConfig,
    };
    use crate::finset_lcc::pi_structure;

    fn model(n: usize, bound: usize) -> CcSystem {
        CcSystem::build(Universe::new(n, FinSkel::standard()), bound).unwrap()
    }

    #[test]
    fn level_counts_match_hand_counted_sums() {
        // N = 1: lengths 0..4. Level 1 = |Hom(1, U)| = 2. The two length-1
        // objects have total spaces 0 and 1, so level 2 = 2^0 + 2^1 = 3; the
        // three length-2 objects have total spaces 0, 0, 1, so level 3 =
        // 1 + 1 + 2 = 4, and level 4 = 1 + 1 + 1 + 2 = 5.
        assert_eq!(model(1, 4).level_counts(), vec![1, 2, 3, 4, 5]);
        // N = 2: level 1 = |Hom(1, U)| = 3 with total spaces 0, 1, 2, so
        // level 2 = 3^0 + 3^1 + 3^2 = 13.
        assert_eq!(model(2, 2).level_counts(), vec![1, 3, 13]);
    }

    #[test]
    fn point_has_length_zero_and_final_total_space() {
        let cc = model(1, 1);
        let pt = cc.pt();
        assert_eq!(cc.length(&pt), 0);
        assert_eq!(pt.int_size(), 1);
        assert_eq!(cc.skel().final_object(), Some(ObjRef(1)));
    }

    #[test]
    fn relative_object_counts_over_the_point() {
        let cc = model(1, 2);
        let pt = cc.pt();
        assert_eq!(ob_n(&cc, &pt, 1).unwrap().len(), 2);
        assert_eq!(ob_n(&cc, &pt, 2).unwrap().len(), 3);
        // Sections of the point itself do not exist.
        assert!(tilde_ob_n(&cc, &pt, 0).unwrap().is_empty());
    }

    #[test]
    fn u1_of_an_extension_is_its_classifier() {
        let cc = model(1, 1);
        let f = FinSetMor::constant(1, 2, 1);
        let t = cc.u1_inv(&cc.pt(), &f);
        assert_eq!(cc.u1(&t), f);
    }

    #[test]
    fn u_tilde1_round_trips_on_all_sections() {
        let cc = model(2, 2);
        for gamma in cc.objects_up_to(1).unwrap() {
            for o in tilde_ob_n(&cc, &gamma, 1).unwrap() {
                let f = cc.u_tilde1(&o);
                assert_eq!(cc.u_tilde1_inv(&gamma, &f), o);
            }
            // And back: every map into Utilde arises from a section.
            let homs = cc
                .skel()
                .hom(ObjRef(gamma.int_size()), cc.universe.u_tilde())
                .unwrap();
            for f in homs {
                let o = cc.u_tilde1_inv(&gamma, &f);
                assert_eq!(cc.u_tilde1(&o), f);
            }
        }
    }

    #[test]
    fn classifier_of_a_section_target_factors_through_p() {
        // u1(target) = u_tilde1(o) ; p for every section.
        let cc = model(2, 2);
        for gamma in cc.objects_up_to(1).unwrap() {
            for o in tilde_ob_n(&cc, &gamma, 1).unwrap() {
                assert_eq!(cc.u1(&o.target), cc.u_tilde1(&o).then(&cc.universe.p));
            }
        }
    }

    #[test]
    fn section_map_is_the_star_pairing_of_its_image() {
        // int(o) = Id * u_tilde1(o).
        let cc = model(2, 2);
        for gamma in cc.objects_up_to(1).unwrap() {
            for o in tilde_ob_n(&cc, &gamma, 1).unwrap() {
                let f = cc.u_tilde1(&o);
                let star = cc
                    .universe
                    .star(&cc.u1(&o.target), &FinSetMor::identity(f.dom), &f)
                    .unwrap();
                assert_eq!(o.mor.map, star);
            }
        }
    }

    #[test]
    fn dp_count_over_the_point() {
        let cc = model(1, 1);
        assert_eq!(cc.dp_enum(1, cc.universe.u()).unwrap().len(), 3);
    }

    #[test]
    fn dp_identity_action_is_trivial() {
        let cc = model(1, 1);
        for d in cc.dp_enum(2, cc.universe.u()).unwrap() {
            assert_eq!(cc.dp_act_left(&FinSetMor::identity(2), &d), d);
        }
    }

    #[test]
    fn dp_actions_commute() {
        let cc = model(1, 1);
        let ut = cc.universe.u_tilde();
        for ftab in crate::finset_lcc::hom_tables(2, 3) {
            let f = FinSetMor::new(2, 3, ftab).unwrap();
            for d in cc.dp_enum(3, ut).unwrap() {
                // g = p: Utilde -> U on the right, f on the left.
                let lhs = cc.dp_act_right(&cc.universe.p, &cc.dp_act_left(&f, &d));
                let rhs = cc.dp_act_left(&f, &cc.dp_act_right(&cc.universe.p, &d));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn u2_counts_and_round_trips() {
        let cc = model(2, 2);
        let pt = cc.pt();
        let obs2 = ob_n(&cc, &pt, 2).unwrap();
        let dps = cc.dp_enum(1, cc.universe.u()).unwrap();
        assert_eq!(obs2.len(), 13);
        assert_eq!(dps.len(), 13);
        for t in &obs2 {
            assert_eq!(cc.u2_inv(&pt, &cc.u2(t)), *t);
        }
        for d in &dps {
            assert_eq!(cc.u2(&cc.u2_inv(&pt, d)), *d);
        }
    }

    #[test]
    fn ip_sizes_on_the_boolean_universe() {
        let cc = model(1, 1);
        assert_eq!(cc.ip(cc.universe.u()).unwrap().size(), 3);
        assert_eq!(cc.ip(cc.universe.u_tilde()).unwrap().size(), 2);
    }

    #[test]
    fn ip_of_identity_is_identity() {
        let cc = model(1, 1);
        let id = FinSetMor::identity(cc.universe.u().0);
        assert!(cc.ip_mor(&id).unwrap().is_identity());
    }

    #[test]
    fn st_is_natural_in_v() {
        // Q(I_p(f), pr') ; st' = st ; f with f = p.
        let cc = model(1, 1);
        let f = cc.universe.p.clone();
        let ip_ut = cc.ip(cc.universe.u_tilde()).unwrap();
        let ip_u = cc.ip(cc.universe.u()).unwrap();
        let ip_f = cc.ip_mor(&f).unwrap();
        let q = cc.universe.q_map(&ip_f, &ip_u.pr).unwrap();
        // pr = I_p(f) ; pr' must hold for the pull to type-check.
        assert_eq!(ip_ut.pr, ip_f.then(&ip_u.pr));
        assert_eq!(q.then(&ip_u.st), ip_ut.st.then(&f));
    }

    #[test]
    fn eta_inverts_eta_bang_exhaustively() {
        let cc = model(1, 1);
        for v in [cc.universe.u(), cc.universe.u_tilde()] {
            let ip_size = cc.ip(v).unwrap().size();
            for x in 0..=3usize {
                for d in cc.dp_enum(x, v).unwrap() {
                    let g = cc.eta(&d, v).unwrap();
                    assert_eq!(cc.eta_bang(&g, v).unwrap(), d);
                }
                for g in cc.skel().hom(ObjRef(x), ObjRef(ip_size)).unwrap() {
                    let d = cc.eta_bang(&g, v).unwrap();
                    assert_eq!(cc.eta(&d, v).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn eta_agrees_with_exhaustive_search() {
        let cc = model(1, 1);
        let v = cc.universe.u();
        let ip_size = cc.ip(v).unwrap().size();
        assert_eq!(
            cc.skel().hom(ObjRef(1), ObjRef(ip_size)).unwrap().len(),
            cc.dp_enum(1, v).unwrap().len()
        );
        for x in 0..=2usize {
            for d in cc.dp_enum(x, v).unwrap() {
                let matches: Vec<_> = cc
                    .skel()
                    .hom(ObjRef(x), ObjRef(ip_size))
                    .unwrap()
                    .into_iter()
                    .filter(|g| cc.eta_bang(g, v).unwrap() == d)
                    .collect();
                assert_eq!(matches.len(), 1, "eta_bang must be bijective");
                assert_eq!(cc.eta(&d, v).unwrap(), matches[0]);
            }
        }
    }

    #[test]
    fn mu2_is_a_bijection_over_each_base() {
        let cc = model(1, 2);
        for gamma in cc.objects_up_to(0).unwrap() {
            let obs = ob_n(&cc, &gamma, 2).unwrap();
            let images: std::collections::BTreeSet<_> = obs
                .iter()
                .map(|t| cc.mu2(t).unwrap())
                .collect();
            assert_eq!(images.len(), obs.len());
            let homs = cc
                .skel()
                .hom(
                    ObjRef(gamma.int_size()),
                    ObjRef(cc.ip(cc.universe.u()).unwrap().size()),
                )
                .unwrap();
            assert_eq!(images.len(), homs.len());
        }
    }

    #[test]
    fn boundary_corresponds_to_composition_with_ip_p() {
        let cc = model(1, 2);
        let ip_p = cc.ip_mor(&cc.universe.p).unwrap();
        for gamma in cc.objects_up_to(0).unwrap() {
            for o in tilde_ob_n(&cc, &gamma, 2).unwrap() {
                let lhs = cc.mu2(&o.target).unwrap();
                let rhs = cc.mu_tilde2(&o).unwrap().then(&ip_p);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn axioms_hold_for_the_boolean_model_up_to_length_three() {
        let cc = model(1, 3);
        let report = check_csystem_axioms(&cc, 3, AxiomCheckConfig::default()).unwrap();
        assert!(report.is_empty(), "{report}");
    }

    #[test]
    fn axioms_hold_for_the_three_element_model_up_to_length_two() {
        // Budgeted smoke version; the suite runs the exhaustive sweep.
        let cc = model(2, 2);
        let config = AxiomCheckConfig { mediate_budget: 50_000, pair_budget: 500_000 };
        let report = check_csystem_axioms(&cc, 2, config).unwrap();
        assert!(report.is_empty(), "{report}");
    }

    /// Delegating instance with one corrupted chosen pullback.
    struct CorruptedQ<'a> {
        inner: &'a CcSystem,
    }

    impl<'a> CorruptedQ<'a> {
        fn corrupts(&self, map: &FinSetMor) -> bool {
            map.dom >= 2
        }
    }

    impl<'a> CSystem for CorruptedQ<'a> {
        type Obj = CcObj;
        type Mor = CcMor;

        fn pt(&self) -> CcObj {
            self.inner.pt()
        }
        fn length(&self, x: &CcObj) -> usize {
            self.inner.length(x)
        }
        fn ft(&self, x: &CcObj) -> CcObj {
            self.inner.ft(x)
        }
        fn proj(&self, x: &CcObj) -> CcMor {
            self.inner.proj(x)
        }
        fn pull_ob(&self, f: &CcMor, x: &CcObj) -> CcObj {
            self.inner.pull_ob(f, x)
        }
        fn pull_q(&self, f: &CcMor, x: &CcObj) -> CcMor {
            let mut q = self.inner.pull_q(f, x);
            if self.corrupts(&q.map) {
                q.map.table.swap(0, 1);
            }
            q
        }
        fn dom(&self, f: &CcMor) -> CcObj {
            self.inner.dom(f)
        }
        fn cod(&self, f: &CcMor) -> CcObj {
            self.inner.cod(f)
        }
        fn identity(&self, x: &CcObj) -> CcMor {
            self.inner.identity(x)
        }
        fn compose(&self, f: &CcMor, g: &CcMor) -> CcMor {
            self.inner.compose(f, g)
        }
        fn objects_up_to(&self, bound: usize) -> Result<Vec<CcObj>, Error> {
            self.inner.objects_up_to(bound)
        }
        fn hom(&self, x: &CcObj, y: &CcObj) -> Result<Vec<CcMor>, Error> {
            self.inner.hom(x, y)
        }
        fn mediate_canonical(
            &self,
            f: &CcMor,
            x: &CcObj,
            a: &CcMor,
            b: &CcMor,
        ) -> Result<CcMor, Error> {
            self.inner.mediate_canonical(f, x, a, b)
        }
        fn canonical_square_is_pullback(&self, f: &CcMor, x: &CcObj) -> Result<bool, Error> {
            self.inner.canonical_square_is_pullback(f, x)
        }
    }

    #[test]
    fn corrupted_pullback_data_is_reported() {
        let cc = model(2, 2);
        let corrupted = CorruptedQ { inner: &cc };
        let config = AxiomCheckConfig { mediate_budget: 10_000, pair_budget: 100_000 };
        let report = check_csystem_axioms(&corrupted, 2, config).unwrap();
        assert!(!report.is_empty());
    }

    #[test]
    fn pulled_objects_satisfy_classifier_naturality() {
        // u1(f*(T)) = f ; u1(T) for every enumerated f and T of relative
        // length 1 over cod(f).
        let cc = model(2, 2);
        let objects = cc.objects_up_to(1).unwrap();
        for gamma in &objects {
            for gamma_p in &objects {
                for f in cc.hom(gamma_p, gamma).unwrap() {
                    for t in ob_n(&cc, gamma, 1).unwrap() {
                        let pulled = cc.pull_ob(&f, &t);
                        assert_eq!(cc.u1(&pulled), f.map.then(&cc.u1(&t)));
                    }
                }
            }
        }
    }

    #[test]
    fn pulled_sections_satisfy_naturality() {
        // u_tilde1(f*(o)) = f ; u_tilde1(o).
        let cc = model(2, 2);
        let objects = cc.objects_up_to(1).unwrap();
        for gamma in &objects {
            for gamma_p in &objects {
                for f in cc.hom(gamma_p, gamma).unwrap() {
                    for o in tilde_ob_n(&cc, gamma, 1).unwrap() {
                        let pulled = pull_sec_n(&cc, &f, &o, 1).unwrap();
                        assert_eq!(cc.u_tilde1(&pulled), f.map.then(&cc.u_tilde1(&o)));
                    }
                }
            }
        }
    }

    #[test]
    fn pull_mor_over_preserves_identity_and_composition() {
        let cc = model(1, 3);
        let pt = cc.pt();
        let objects = cc.objects_up_to(1).unwrap();
        for gamma_p in &objects {
            for f in cc.hom(gamma_p, &pt).unwrap() {
                for t in ob_n(&cc, &pt, 1).unwrap() {
                    let id_t = cc.identity(&t);
                    let pulled = pull_mor_over(&cc, &f, &id_t).unwrap();
                    assert_eq!(pulled, cc.identity(&cc.pull_ob(&f, &t)));
                }
                // Composition of morphisms over the point.
                for t in ob_n(&cc, &pt, 1).unwrap() {
                    for t2 in ob_n(&cc, &pt, 1).unwrap() {
                        for u in cc.hom(&t, &t2).unwrap() {
                            let p_t = cc.proj(&t);
                            let p_t2 = cc.proj(&t2);
                            if cc.compose(&u, &p_t2) != p_t {
                                continue; // not over the point
                            }
                            for t3 in ob_n(&cc, &pt, 1).unwrap() {
                                for w in cc.hom(&t2, &t3).unwrap() {
                                    let p_t3 = cc.proj(&t3);
                                    if cc.compose(&w, &p_t3) != p_t2 {
                                        continue;
                                    }
                                    let uv = cc.compose(&u, &w);
                                    let lhs = pull_mor_over(&cc, &f, &uv).unwrap();
                                    let rhs = cc.compose(
                                        &pull_mor_over(&cc, &f, &u).unwrap(),
                                        &pull_mor_over(&cc, &f, &w).unwrap(),
                                    );
                                    assert_eq!(lhs, rhs);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_satisfies_its_defining_equation() {
        let cc = model(2, 2);
        for x in cc.objects_up_to(2).unwrap() {
            if x.length() == 0 {
                continue;
            }
            let delta = diagonal(&cc, &x).unwrap();
            let p = cc.proj(&x);
            let q = cc.pull_q(&p, &x);
            assert_eq!(cc.compose(&delta.mor, &q), cc.identity(&x));
            // And the image of the diagonal under u_tilde1 is the top leg of
            // the chosen square.
            let sq = cc.universe.chosen_square(&cc.u1(&x)).unwrap();
            assert_eq!(cc.u_tilde1(&delta), sq.top);
        }
    }

    #[test]
    fn diagonal_is_natural_under_pullback() {
        // Pulling delta_X along q(f, X) gives delta of f*(X): both live on
        // p_{f*X}*(f*(X)) by strict functoriality.
        let cc = model(2, 2);
        let objects = cc.objects_up_to(1).unwrap();
        for gamma in &objects {
            for gamma_p in &objects {
                for f in cc.hom(gamma_p, gamma).unwrap() {
                    for x in ob_n(&cc, gamma, 1).unwrap() {
                        let delta = diagonal(&cc, &x).unwrap();
                        let q = cc.pull_q(&f, &x);
                        let pulled = pull_sec_n(&cc, &q, &delta, 1).unwrap();
                        let fx = cc.pull_ob(&f, &x);
                        assert_eq!(pulled, diagonal(&cc, &fx).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn pulling_the_diagonal_along_a_section_recovers_the_section() {
        // s*(delta_X, 1) = s for any section s of p_X: the pulled target
        // s*(p_X*(X)) is X itself by strict functoriality.
        let cc = model(2, 2);
        for gamma in cc.objects_up_to(1).unwrap() {
            for s in tilde_ob_n(&cc, &gamma, 1).unwrap() {
                let x = s.target.clone();
                let delta = diagonal(&cc, &x).unwrap();
                let pulled = pull_sec_n(&cc, &s.mor, &delta, 1).unwrap();
                assert_eq!(pulled.target, x);
                assert_eq!(pulled.mor, s.mor);
            }
        }
    }

    #[test]
    fn constr3_classifies_products_of_fibers() {
        let cc = model(1, 4);
        let pi = pi_structure(&cc.universe).unwrap();
        let structure = cc.pi_lambda_from_pi_structure(&pi, 4).unwrap();
        let pt = cc.pt();

        // B over A of size 1 with fiber size m: u1(Pi(B)) is constant m.
        for m in 0..=1usize {
            let a = cc.u1_inv(&pt, &FinSetMor::constant(1, 2, 1));
            let b = cc.u1_inv(&a, &FinSetMor::constant(1, 2, m));
            let pi_b = structure.pi.get(&b).unwrap();
            assert_eq!(cc.u1(pi_b), FinSetMor::constant(1, 2, m));
        }

        // B with an empty fiber over a nonempty A: Pi(B) classified by 0.
        let a = cc.u1_inv(&pt, &FinSetMor::constant(1, 2, 1));
        let b = cc.u1_inv(&a, &FinSetMor::constant(1, 2, 0));
        assert_eq!(cc.u1(structure.pi.get(&b).unwrap()), FinSetMor::constant(1, 2, 0));

        // Empty family (A of size 0): Pi(B) classified by 1.
        let a = cc.u1_inv(&pt, &FinSetMor::constant(1, 2, 0));
        let b = cc.u1_inv(&a, &FinSetMor::new(0, 2, vec![]).unwrap());
        assert_eq!(cc.u1(structure.pi.get(&b).unwrap()), FinSetMor::constant(1, 2, 1));
    }
}

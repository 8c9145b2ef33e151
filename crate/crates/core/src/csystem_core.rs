//! The abstract C-system interface and the derived operations used on top of
//! it: relative object families `Ob_n` / `tilde Ob_n`, iterated pullback of
//! objects, sections and morphisms over a base, diagonals, and an axiom
//! checker for instances.
//!
//! A C-system is a category with length-graded objects, a father map `ft`,
//! canonical projections `p_X: X -> ft(X)` and chosen pullbacks
//! `q(f, X): f*(X) -> X` forming strictly functorial canonical squares
//!
//! ```text
//!   f*(X) --q(f,X)--> X
//!     |               |
//!  p_{f*(X)}         p_X
//!     v               v
//!    G'   ----f---->  G
//! ```

use crate::cat_core::CheckReport;
use crate::error::Error;
use serde::Serialize;
use std::fmt;

/// A C-system instance with enumeration up to a length bound.
///
/// Implementations must be pure: all methods are read-only and safe for
/// concurrent use.
pub trait CSystem {
    type Obj: Clone + Eq + Ord + fmt::Debug;
    type Mor: Clone + Eq + Ord + fmt::Debug;

    /// The unique object of length 0.
    fn pt(&self) -> Self::Obj;
    fn length(&self, x: &Self::Obj) -> usize;
    /// Father: drops the top level; `ft(pt) = pt`.
    fn ft(&self, x: &Self::Obj) -> Self::Obj;
    /// Canonical projection `p_X: X -> ft(X)`; requires `length(x) >= 1`.
    fn proj(&self, x: &Self::Obj) -> Self::Mor;

    /// `f*(X)` for `f: G' -> G` and `ft(X) = G`.
    fn pull_ob(&self, f: &Self::Mor, x: &Self::Obj) -> Self::Obj;
    /// `q(f, X): f*(X) -> X`.
    fn pull_q(&self, f: &Self::Mor, x: &Self::Obj) -> Self::Mor;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// Diagrammatic composition: `f` then `g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    /// All objects of length at most `bound`.
    fn objects_up_to(&self, bound: usize) -> Result<Vec<Self::Obj>, Error>;
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Result<Vec<Self::Mor>, Error>;

    /// The mediating morphism of the canonical square of `(f, X)`: the unique
    /// `u: W -> f*(X)` with `u;p_{f*(X)} = a` and `u;q(f,X) = b`, for a cone
    /// `a: W -> dom(f)`, `b: W -> X` with `a;f = b;p_X`.
    fn mediate_canonical(
        &self,
        f: &Self::Mor,
        x: &Self::Obj,
        a: &Self::Mor,
        b: &Self::Mor,
    ) -> Result<Self::Mor, Error>;

    /// Whether the canonical square of `(f, X)` is a pullback, decided by the
    /// instance's own (typically fast) verification path.
    fn canonical_square_is_pullback(&self, f: &Self::Mor, x: &Self::Obj)
        -> Result<bool, Error>;

    /// All sections of `p_X`: morphisms `s: ft(X) -> X` with `s;p_X = Id`.
    /// Empty when `length(x) = 0`.
    fn sections_of(&self, x: &Self::Obj) -> Result<Vec<Self::Mor>, Error> {
        if self.length(x) == 0 {
            return Ok(Vec::new());
        }
        let base = self.ft(x);
        let p = self.proj(x);
        let id = self.identity(&base);
        Ok(self
            .hom(&base, x)?
            .into_iter()
            .filter(|s| self.compose(s, &p) == id)
            .collect())
    }
}

/// A section `s: ft(target) -> target` of the canonical projection; the
/// semantic counterpart of a term of type `target` over its context.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Section<O, M> {
    pub target: O,
    pub mor: M,
}

impl<O: Clone + Eq + Ord + fmt::Debug, M: Clone + Eq + Ord + fmt::Debug> Section<O, M> {
    pub fn new<S>(sys: &S, target: O, mor: M) -> Self
    where
        S: CSystem<Obj = O, Mor = M>,
    {
        debug_assert!(sys.length(&target) >= 1, "section of a length-0 object");
        debug_assert_eq!(sys.dom(&mor), sys.ft(&target));
        debug_assert_eq!(sys.cod(&mor), target);
        debug_assert_eq!(
            sys.compose(&mor, &sys.proj(&target)),
            sys.identity(&sys.ft(&target)),
            "not a section of the canonical projection"
        );
        Section { target, mor }
    }
}

/// `Ob_n(G)`: objects `D` with `ft^n(D) = G` and `l(D) = n + l(G)`.
pub fn ob_n<S: CSystem>(sys: &S, gamma: &S::Obj, n: usize) -> Result<Vec<S::Obj>, Error> {
    let target_len = sys.length(gamma) + n;
    let mut out = Vec::new();
    for x in sys.objects_up_to(target_len)? {
        if sys.length(&x) != target_len {
            continue;
        }
        let mut base = x.clone();
        for _ in 0..n {
            base = sys.ft(&base);
        }
        if base == *gamma {
            out.push(x);
        }
    }
    Ok(out)
}

/// Sections of a C-system instance, as used by the relative families.
pub type SectionOf<S> = Section<<S as CSystem>::Obj, <S as CSystem>::Mor>;

/// `tilde Ob_n(G)`: sections whose target lies in `Ob_n(G)`.
pub fn tilde_ob_n<S: CSystem>(
    sys: &S,
    gamma: &S::Obj,
    n: usize,
) -> Result<Vec<SectionOf<S>>, Error> {
    let mut out = Vec::new();
    for target in ob_n(sys, gamma, n)? {
        if sys.length(&target) == 0 {
            continue;
        }
        for mor in sys.sections_of(&target)? {
            out.push(Section { target: target.clone(), mor });
        }
    }
    Ok(out)
}

/// The composite of `n` canonical projections from `x` down to `ft^n(x)`.
pub fn proj_n<S: CSystem>(sys: &S, x: &S::Obj, n: usize) -> S::Mor {
    let mut mor = sys.identity(x);
    let mut cur = x.clone();
    for _ in 0..n {
        mor = sys.compose(&mor, &sys.proj(&cur));
        cur = sys.ft(&cur);
    }
    mor
}

/// Iterated pullback `f*(D, n)` together with the iterated canonical
/// morphism `q(f, D, n): f*(D, n) -> D`, for `D in Ob_n(cod f)`.
///
/// For `n = 0` this is `(dom f, f)` itself; for `n >= 1` the top level is
/// pulled along `q(f, ft(D), n-1)`.
pub fn pull_ob_q_n<S: CSystem>(
    sys: &S,
    f: &S::Mor,
    delta: &S::Obj,
    n: usize,
) -> (S::Obj, S::Mor) {
    if n == 0 {
        debug_assert_eq!(sys.cod(f), *delta);
        return (sys.dom(f), f.clone());
    }
    let (_, q_below) = pull_ob_q_n(sys, f, &sys.ft(delta), n - 1);
    let pulled = sys.pull_ob(&q_below, delta);
    let q = sys.pull_q(&q_below, delta);
    (pulled, q)
}

/// `f*(D, n)` alone.
pub fn pull_ob_n<S: CSystem>(sys: &S, f: &S::Mor, delta: &S::Obj, n: usize) -> S::Obj {
    pull_ob_q_n(sys, f, delta, n).0
}

/// The mediating morphism into an iterated pulled tower: the unique
/// `u: W -> f*(D, n)` with `u;q(f, D, n) = b` and whose composite with the
/// `n` projections down to `dom(f)` is `a`.
pub fn mediate_into_pulled<S: CSystem>(
    sys: &S,
    f: &S::Mor,
    delta: &S::Obj,
    n: usize,
    a: &S::Mor,
    b: &S::Mor,
) -> Result<S::Mor, Error> {
    if n == 0 {
        if &sys.compose(a, f) != b {
            return Err(Error::InvalidCone(
                "cone does not commute with the base morphism".into(),
            ));
        }
        return Ok(a.clone());
    }
    let below = mediate_into_pulled(
        sys,
        f,
        &sys.ft(delta),
        n - 1,
        a,
        &sys.compose(b, &sys.proj(delta)),
    )?;
    let (_, q_below) = pull_ob_q_n(sys, f, &sys.ft(delta), n - 1);
    sys.mediate_canonical(&q_below, delta, &below, b)
}

/// `f*(s, n)`: the iterated pullback of a section, the unique section of
/// `f*(target, n)` whose composite with `q(f, target, n)` is
/// `q(f, ft(target), n-1) ; s`.
pub fn pull_sec_n<S: CSystem>(
    sys: &S,
    f: &S::Mor,
    s: &SectionOf<S>,
    n: usize,
) -> Result<SectionOf<S>, Error> {
    assert!(n >= 1, "a section pull needs at least one level");
    let target = &s.target;
    let base = sys.ft(target);
    let (pulled_base, q_base) = pull_ob_q_n(sys, f, &base, n - 1);
    let pulled_target = pull_ob_n(sys, f, target, n);
    let a = sys.identity(&pulled_base);
    let b = sys.compose(&q_base, &s.mor);
    let mor = sys.mediate_canonical(&q_base, target, &a, &b)?;
    Ok(Section { target: pulled_target, mor })
}

/// `f*(u)` for a morphism `u: D -> D'` over the codomain of `f` (i.e. `u`
/// commutes with the tower projections down to `cod f`).
pub fn pull_mor_over<S: CSystem>(
    sys: &S,
    f: &S::Mor,
    u: &S::Mor,
) -> Result<S::Mor, Error> {
    let gamma = sys.cod(f);
    let delta = sys.dom(u);
    let delta_p = sys.cod(u);
    let n = sys.length(&delta) - sys.length(&gamma);
    let m = sys.length(&delta_p) - sys.length(&gamma);
    if sys.compose(u, &proj_n(sys, &delta_p, m)) != proj_n(sys, &delta, n) {
        return Err(Error::InvalidCone("morphism is not over the base object".into()));
    }
    let (pulled, q_n) = pull_ob_q_n(sys, f, &delta, n);
    let a = proj_n(sys, &pulled, n);
    let b = sys.compose(&q_n, u);
    mediate_into_pulled(sys, f, &delta_p, m, &a, &b)
}

/// The diagonal `delta_X`: the unique section of `p_X*(X)` with
/// `delta_X ; q(p_X, X) = Id_X`.
pub fn diagonal<S: CSystem>(sys: &S, x: &S::Obj) -> Result<SectionOf<S>, Error> {
    assert!(sys.length(x) >= 1, "diagonal needs a positive-length object");
    let p = sys.proj(x);
    let target = sys.pull_ob(&p, x);
    let id = sys.identity(x);
    let mor = sys.mediate_canonical(&p, x, &id, &id)?;
    Ok(Section { target, mor })
}

/// Work limits for [`check_csystem_axioms`].
#[derive(Debug, Clone, Copy)]
pub struct AxiomCheckConfig {
    /// Exhaustive cone/mediator cross-validation runs only while the total
    /// number of candidate mediators scanned stays below this budget.
    pub mediate_budget: usize,
    /// Budget for the chosen-pullback functoriality sweep over composable
    /// pairs; the defaults keep the sweep exhaustive at desk-scale bounds.
    pub pair_budget: usize,
}

impl Default for AxiomCheckConfig {
    fn default() -> Self {
        AxiomCheckConfig { mediate_budget: 2_000_000, pair_budget: 100_000_000 }
    }
}

/// Checks the C-system axioms on all data enumerable up to `bound`:
/// bookkeeping of `pt`, `length` and `ft`; typing and commutativity of every
/// canonical square together with its pullback property; strict functoriality
/// of the chosen pullbacks (`q(Id, X) = Id`, `q(g;f, X) = q(g, f*X);q(f, X)`);
/// and, within the configured budget, agreement of `mediate_canonical` with
/// the unique mediator found by exhaustive search.
pub fn check_csystem_axioms<S: CSystem>(
    sys: &S,
    bound: usize,
    config: AxiomCheckConfig,
) -> Result<CheckReport, Error> {
    let mut report = CheckReport::default();
    let objects = sys.objects_up_to(bound)?;

    let pt = sys.pt();
    if sys.length(&pt) != 0 {
        report.push("pt has nonzero length");
    }
    if sys.ft(&pt) != pt {
        report.push("ft(pt) != pt");
    }

    for x in &objects {
        let l = sys.length(x);
        if l == 0 {
            if *x != pt {
                report.push(format!("extra length-0 object {x:?}"));
            }
            continue;
        }
        let base = sys.ft(x);
        if sys.length(&base) != l - 1 {
            report.push(format!("length(ft({x:?}))) != length - 1"));
        }
        let p = sys.proj(x);
        if sys.dom(&p) != *x || sys.cod(&p) != base {
            report.push(format!("projection of {x:?} has wrong endpoints"));
        }
    }

    let mut mediate_work = 0usize;
    let mut pair_work = 0usize;

    for gamma in &objects {
        // Canonical squares need one level of headroom above the base.
        if sys.length(gamma) + 1 > bound {
            continue;
        }
        let obs1 = ob_n(sys, gamma, 1)?;
        // Identity pulls are strict.
        let id_gamma = sys.identity(gamma);
        for x in &obs1 {
            if sys.pull_ob(&id_gamma, x) != *x {
                report.push(format!("Id*({x:?}) != {x:?}"));
            }
            if sys.pull_q(&id_gamma, x) != sys.identity(x) {
                report.push(format!("q(Id, {x:?}) is not the identity"));
            }
        }

        for gamma_p in &objects {
            let homs = sys.hom(gamma_p, gamma)?;
            if homs.is_empty() {
                continue;
            }
            let incoming: Vec<Vec<S::Mor>> = objects
                .iter()
                .map(|gamma_pp| sys.hom(gamma_pp, gamma_p))
                .collect::<Result<_, _>>()?;
            for f in &homs {
                // Typing, commutativity and the pullback property of every
                // canonical square based on f.
                let mut pulled = Vec::with_capacity(obs1.len());
                for x in &obs1 {
                    let fx = sys.pull_ob(f, x);
                    let q = sys.pull_q(f, x);
                    if sys.ft(&fx) != *gamma_p {
                        report.push(format!("ft(f*({x:?})) is not dom(f)"));
                        continue;
                    }
                    let p_fx = sys.proj(&fx);
                    let p_x = sys.proj(x);
                    if sys.compose(&q, &p_x) != sys.compose(&p_fx, f) {
                        report
                            .push(format!("canonical square of ({f:?}, {x:?}) does not commute"));
                        continue;
                    }
                    match sys.canonical_square_is_pullback(f, x) {
                        Ok(true) => {}
                        Ok(false) => report.push(format!(
                            "canonical square of ({f:?}, {x:?}) is not a pullback"
                        )),
                        Err(e) => report.push(format!("pullback check failed: {e}")),
                    }
                    pulled.push((x, fx, q));
                }

                // Strict functoriality of the chosen pullbacks.
                if pair_work < config.pair_budget {
                    for gs in &incoming {
                        for g in gs {
                            let gf = sys.compose(g, f);
                            for (x, fx, q) in &pulled {
                                pair_work += 1;
                                if sys.pull_ob(&gf, x) != sys.pull_ob(g, fx)
                                    || sys.pull_q(&gf, x) != sys.compose(&sys.pull_q(g, fx), q)
                                {
                                    report.push(format!(
                                        "chosen pullbacks not functorial at ({g:?}, {f:?}, {x:?})"
                                    ));
                                }
                            }
                            if pair_work >= config.pair_budget {
                                break;
                            }
                        }
                        if pair_work >= config.pair_budget {
                            break;
                        }
                    }
                }

                // Mediator cross-validation by exhaustive search.
                for (x, fx, q) in &pulled {
                    if mediate_work >= config.mediate_budget {
                        break;
                    }
                    let p_x = sys.proj(x);
                    let p_fx = sys.proj(fx);
                    for w in &objects {
                        let candidates = sys.hom(w, fx)?;
                        mediate_work += candidates.len();
                        let to_base = sys.hom(w, gamma_p)?;
                        let to_x = sys.hom(w, x)?;
                        for a in &to_base {
                            let af = sys.compose(a, f);
                            for b in &to_x {
                                if af != sys.compose(b, &p_x) {
                                    continue;
                                }
                                let found: Vec<_> = candidates
                                    .iter()
                                    .filter(|u| {
                                        sys.compose(u, &p_fx) == *a && sys.compose(u, q) == *b
                                    })
                                    .collect();
                                if found.len() != 1 {
                                    report.push(format!(
                                        "cone from {w:?} into ({f:?}, {x:?}) has {} mediators",
                                        found.len()
                                    ));
                                    continue;
                                }
                                match sys.mediate_canonical(f, x, a, b) {
                                    Ok(u) => {
                                        if &u != found[0] {
                                            report.push(format!(
                                                "mediate_canonical disagrees with search at ({f:?}, {x:?})"
                                            ));
                                        }
                                    }
                                    Err(e) => {
                                        report.push(format!("mediate_canonical failed: {e}"))
                                    }
                                }
                                mediate_work += 1;
                            }
                        }
                        if mediate_work >= config.mediate_budget {
                            break;
                        }
                    }
                }
            }
        }
    }

    Ok(report)
}

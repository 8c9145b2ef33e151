//! Product structures on a C-system in their three equivalent forms, with
//! the constructions converting between them and checkers for every clause.
//!
//! * [`PrePiLambda`]: a family `Pi: Ob_2 -> Ob_1` together with
//!   `lambda: tilde Ob_2 -> tilde Ob_1` over it, both natural in the base;
//!   a `(Pi, lambda)`-structure is a pre-structure whose compatibility
//!   square with the boundary is a pullback of sets, equivalently whose
//!   fiberwise maps `lambda'_B` are bijections.
//! * [`LambdaPrime`]: the same data regrouped as per-object bijections
//!   `lambda'_B: tilde Ob(B) -> tilde Ob(Pi(B))`.
//! * [`ApPrime`]: `Pi` together with application morphisms
//!   `Ap'_B: p_{Pi(B)}*(A) -> B`, and [`ProductsOfFamilies`] its classical
//!   variant `Ap_B: p_A*(Pi(B)) -> B`.
//!
//! Structures are stored as extensional tables over the bounded enumeration,
//! so equality of structures is decidable and the round-trip laws
//! `c2(c1(l)) = l` and `c1(c2(ap)) = ap` are exact table identities.

use crate::cat_core::CheckReport;
use crate::csystem_core::{
    diagonal, ob_n, pull_mor_over, pull_ob_n, pull_ob_q_n, pull_sec_n, tilde_ob_n, CSystem,
    Section,
};
use crate::error::Error;
use std::collections::BTreeMap;

/// Section type of a C-system instance.
pub type Sec<S> = Section<<S as CSystem>::Obj, <S as CSystem>::Mor>;

/// A pre-`(Pi, lambda)`-structure tabulated over the bounded enumeration:
/// `pi` is keyed by objects of length at least 2 (each `T` determines its
/// base `ft^2(T)`), `lambda` by sections of such objects.
pub struct PrePiLambda<S: CSystem> {
    pub pi: BTreeMap<S::Obj, S::Obj>,
    pub lambda: BTreeMap<Sec<S>, Sec<S>>,
}

impl<S: CSystem> Default for PrePiLambda<S> {
    fn default() -> Self {
        PrePiLambda { pi: BTreeMap::new(), lambda: BTreeMap::new() }
    }
}

impl<S: CSystem> Clone for PrePiLambda<S> {
    fn clone(&self) -> Self {
        PrePiLambda { pi: self.pi.clone(), lambda: self.lambda.clone() }
    }
}

/// A structure of the first kind: `Pi` with fiberwise bijections
/// `lambda'_B`. Data coincides with a pre-`(Pi, lambda)`-structure; the
/// contract (bijectivity per `B`) is what [`check_lambda_prime`] verifies.
pub struct LambdaPrime<S: CSystem> {
    pub pi: BTreeMap<S::Obj, S::Obj>,
    pub lambda_prime: BTreeMap<Sec<S>, Sec<S>>,
}

impl<S: CSystem> Clone for LambdaPrime<S> {
    fn clone(&self) -> Self {
        LambdaPrime { pi: self.pi.clone(), lambda_prime: self.lambda_prime.clone() }
    }
}

/// A structure of the second kind: `Pi` with application morphisms
/// `Ap'_B: p_{Pi(B)}*(A) -> B` over `A = ft(B)`.
pub struct ApPrime<S: CSystem> {
    pub pi: BTreeMap<S::Obj, S::Obj>,
    pub ap: BTreeMap<S::Obj, S::Mor>,
}

impl<S: CSystem> Clone for ApPrime<S> {
    fn clone(&self) -> Self {
        ApPrime { pi: self.pi.clone(), ap: self.ap.clone() }
    }
}

/// The classical form: `Pi` with `Ap_B: p_A*(Pi(B)) -> B` over `A`.
pub struct ProductsOfFamilies<S: CSystem> {
    pub pi: BTreeMap<S::Obj, S::Obj>,
    pub ap: BTreeMap<S::Obj, S::Mor>,
}

/// A validated `(Pi, lambda)`-structure (see [`check_pi_lambda`]).
pub struct PiLambda<S: CSystem> {
    pub pre: PrePiLambda<S>,
}

impl<S: CSystem> PiLambda<S> {
    /// Wraps a pre-structure after verifying the pullback condition.
    pub fn validate(sys: &S, pre: PrePiLambda<S>, bound: usize) -> Result<Self, Error> {
        let report = check_pi_lambda(sys, &pre, bound)?;
        if report.is_empty() {
            Ok(PiLambda { pre })
        } else {
            Err(Error::NotBijective(report.to_string()))
        }
    }
}

/// `lambda_inv'` for an application structure:
/// `s -> q(s, p_{Pi(B)}*(A)) ; Ap'_B`, mapping `tilde Ob(Pi(B))` to
/// `tilde Ob(B)`.
pub fn lambda_inv<S: CSystem>(
    sys: &S,
    app: &ApPrime<S>,
    b: &S::Obj,
    s: &Sec<S>,
) -> Result<Sec<S>, Error> {
    let pi_b = app
        .pi
        .get(b)
        .ok_or_else(|| Error::PiNotStable(format!("Pi not tabulated at {b:?}")))?;
    assert_eq!(&s.target, pi_b, "section does not target Pi(B)");
    let ap_b = app
        .ap
        .get(b)
        .ok_or_else(|| Error::PiNotStable(format!("Ap' not tabulated at {b:?}")))?;
    let a = sys.ft(b);
    let p_pi_b = sys.proj(pi_b);
    let pulled_a = sys.pull_ob(&p_pi_b, &a);
    // s*(p_{Pi(B)}*(A)) = (s ; p_{Pi(B)})*(A) = A strictly.
    debug_assert_eq!(sys.pull_ob(&s.mor, &pulled_a), a);
    let q = sys.pull_q(&s.mor, &pulled_a);
    let mor = sys.compose(&q, ap_b);
    Ok(Section { target: b.clone(), mor })
}

/// The intermediate section `ap` of the first construction at `B`: the
/// preimage under `lambda'` of the diagonal of `Pi(B)`, a section of the
/// two-level pull `p_{Pi(B)}*(B, 2)`.
///
/// Returns `None` when the pulled tower leaves the tabulated range.
pub fn c1_section<S: CSystem>(
    sys: &S,
    lp: &LambdaPrime<S>,
    b: &S::Obj,
) -> Result<Option<Sec<S>>, Error> {
    let pi_b = match lp.pi.get(b) {
        Some(x) => x,
        None => return Ok(None),
    };
    let p_pi_b = sys.proj(pi_b);
    let (b_pulled, _) = pull_ob_q_n(sys, &p_pi_b, b, 2);
    let pi_b_pulled = match lp.pi.get(&b_pulled) {
        Some(x) => x,
        None => return Ok(None),
    };
    // Strict stability: Pi(p_{Pi(B)}*(B, 2)) = p_{Pi(B)}*(Pi(B)).
    if *pi_b_pulled != sys.pull_ob(&p_pi_b, pi_b) {
        return Err(Error::PiNotStable(format!("{b:?}")));
    }
    let delta = diagonal(sys, pi_b)?;
    debug_assert_eq!(delta.target, *pi_b_pulled);
    let tabulated: Vec<_> = lp
        .lambda_prime
        .iter()
        .filter(|(s, _)| s.target == b_pulled)
        .collect();
    if tabulated.len() < sys.sections_of(&b_pulled)?.len() {
        // lambda' is not tabulated at the pulled tower.
        return Ok(None);
    }
    let mut preimages = tabulated.iter().filter(|(_, v)| **v == delta);
    let ap = match preimages.next() {
        Some((s, _)) => (*s).clone(),
        None => {
            return Err(Error::NotBijective(format!(
                "no preimage of the diagonal under lambda' at {b_pulled:?}"
            )))
        }
    };
    if preimages.next().is_some() {
        return Err(Error::NotBijective(format!(
            "multiple preimages of the diagonal under lambda' at {b_pulled:?}"
        )));
    }
    Ok(Some(ap))
}

/// The first construction: from fiberwise bijections to application
/// morphisms, `Ap'_B = ap ; q(p_{Pi(B)}, B, 2)`.
///
/// The output covers every `B` whose one-level-deeper pull stays within the
/// tabulated range of `lp`.
pub fn c1<S: CSystem>(sys: &S, lp: &LambdaPrime<S>) -> Result<ApPrime<S>, Error> {
    let mut ap = BTreeMap::new();
    for b in lp.pi.keys() {
        let Some(section) = c1_section(sys, lp, b)? else {
            continue;
        };
        let pi_b = &lp.pi[b];
        let p_pi_b = sys.proj(pi_b);
        let (_, q2) = pull_ob_q_n(sys, &p_pi_b, b, 2);
        ap.insert(b.clone(), sys.compose(&section.mor, &q2));
    }
    Ok(ApPrime { pi: lp.pi.clone(), ap })
}

/// The second construction: from application morphisms to fiberwise
/// bijections, by inverting `lambda_inv'`.
pub fn c2<S: CSystem>(sys: &S, app: &ApPrime<S>) -> Result<LambdaPrime<S>, Error> {
    let mut lambda_prime = BTreeMap::new();
    for b in app.ap.keys() {
        let pi_b = &app.pi[b];
        let sections_b = sections(sys, b)?;
        let sections_pi_b = sections(sys, pi_b)?;
        let mut seen = BTreeMap::new();
        for s in &sections_pi_b {
            let image = lambda_inv(sys, app, b, s)?;
            if seen.insert(image.clone(), s.clone()).is_some() {
                return Err(Error::NotBijective(format!(
                    "lambda_inv' at {b:?} is not injective at {image:?}"
                )));
            }
        }
        if seen.len() != sections_b.len() {
            return Err(Error::NotBijective(format!(
                "lambda_inv' at {b:?} hits {} of {} sections",
                seen.len(),
                sections_b.len()
            )));
        }
        for (image, s) in seen {
            lambda_prime.insert(image, s);
        }
    }
    Ok(LambdaPrime { pi: app.pi.clone(), lambda_prime })
}

fn sections<S: CSystem>(sys: &S, x: &S::Obj) -> Result<Vec<Sec<S>>, Error> {
    Ok(sys
        .sections_of(x)?
        .into_iter()
        .map(|mor| Section { target: x.clone(), mor })
        .collect())
}

/// Serializes a structure table to JSON, keyed by the serialized form of the
/// key object (for tower-based systems this is the tower code).
pub fn table_to_json<K, V>(table: &BTreeMap<K, V>) -> serde_json::Value
where
    K: serde::Serialize,
    V: serde::Serialize,
{
    let mut out = serde_json::Map::new();
    for (k, v) in table {
        let key = serde_json::to_string(&serde_json::to_value(k).expect("serializable key"))
            .expect("serializable key");
        out.insert(key, serde_json::to_value(v).expect("serializable value"));
    }
    serde_json::Value::Object(out)
}

impl<S: CSystem> PrePiLambda<S>
where
    S::Obj: serde::Serialize,
    S::Mor: serde::Serialize,
{
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pi": table_to_json(&self.pi),
            "lambda": table_to_json(&self.lambda),
        })
    }
}

/// Regroups a `(Pi, lambda)`-structure as fiberwise bijections.
pub fn pi_lambda_to_lambda_prime<S: CSystem>(pl: &PiLambda<S>) -> LambdaPrime<S> {
    LambdaPrime { pi: pl.pre.pi.clone(), lambda_prime: pl.pre.lambda.clone() }
}

/// Assembles fiberwise bijections back into a `(Pi, lambda)`-structure.
pub fn lambda_prime_to_pi_lambda<S: CSystem>(lp: &LambdaPrime<S>) -> PiLambda<S> {
    PiLambda {
        pre: PrePiLambda { pi: lp.pi.clone(), lambda: lp.lambda_prime.clone() },
    }
}

/// Derives the classical application morphisms from `Ap'` by composing with
/// the exchange isomorphism `p_A*(Pi(B)) -> p_{Pi(B)}*(A)`, the unique
/// base-preserving comparison of the two chosen pullbacks of
/// `(A, Pi(B))` over the base.
pub fn ap_from_ap_prime<S: CSystem>(
    sys: &S,
    app: &ApPrime<S>,
) -> Result<ProductsOfFamilies<S>, Error> {
    let mut ap = BTreeMap::new();
    for (b, ap_prime) in &app.ap {
        let pi_b = &app.pi[b];
        let a = sys.ft(b);
        let p_a = sys.proj(&a);
        let p_pi_b = sys.proj(pi_b);
        let corner1 = sys.pull_ob(&p_a, pi_b);
        let to_pi_b = sys.pull_q(&p_a, pi_b);
        let to_a = sys.proj(&corner1);
        let exchange = sys.mediate_canonical(&p_pi_b, &a, &to_pi_b, &to_a)?;
        ap.insert(b.clone(), sys.compose(&exchange, ap_prime));
    }
    Ok(ProductsOfFamilies { pi: app.pi.clone(), ap })
}

/// Enumerates, per base object `gamma` of length at most `bound - 2`, the
/// morphisms into `gamma` from enumerated objects. Shared by the checkers.
type BasesAndMaps<S> = Vec<(<S as CSystem>::Obj, Vec<<S as CSystem>::Mor>)>;

fn bases_and_maps<S: CSystem>(sys: &S, bound: usize) -> Result<BasesAndMaps<S>, Error> {
    let base_bound = bound.saturating_sub(2);
    let bases = sys.objects_up_to(base_bound)?;
    let mut out = Vec::new();
    for gamma in &bases {
        let mut maps = Vec::new();
        for gamma_p in &bases {
            maps.extend(sys.hom(gamma_p, gamma)?);
        }
        out.push((gamma.clone(), maps));
    }
    Ok(out)
}

/// Checks the pre-structure clauses on every tabulated datum: typing of `Pi`
/// and `lambda`, boundary compatibility, and both base-change squares.
pub fn check_pre_pi_lambda<S: CSystem>(
    sys: &S,
    st: &PrePiLambda<S>,
    bound: usize,
) -> Result<CheckReport, Error> {
    let mut report = CheckReport::default();

    for (t, pi_t) in &st.pi {
        if sys.ft(&sys.ft(t)) != sys.ft(pi_t) {
            report.push(format!("Pi({t:?}) lies over the wrong base"));
        }
    }
    for (s, l) in &st.lambda {
        match st.pi.get(&s.target) {
            Some(pi_b) if *pi_b == l.target => {}
            _ => report.push(format!("boundary of lambda({s:?}) is not Pi of the boundary")),
        }
    }

    for (gamma, maps) in bases_and_maps(sys, bound)? {
        for f in maps {
            for t in ob_n(sys, &gamma, 2)? {
                let Some(pi_t) = st.pi.get(&t) else {
                    report.push(format!("Pi not tabulated at {t:?}"));
                    continue;
                };
                if sys.ft(pi_t) != gamma {
                    continue; // typing violation already reported above
                }
                let pulled_t = pull_ob_n(sys, &f, &t, 2);
                match st.pi.get(&pulled_t) {
                    Some(pi_pulled) if *pi_pulled == pull_ob_n(sys, &f, pi_t, 1) => {}
                    _ => report.push(format!(
                        "Pi base-change square fails at ({f:?}, {t:?})"
                    )),
                }
            }
            for s in tilde_ob_n(sys, &gamma, 2)? {
                let Some(l) = st.lambda.get(&s) else {
                    report.push(format!("lambda not tabulated at {s:?}"));
                    continue;
                };
                if sys.ft(&l.target) != gamma {
                    continue; // typing violation already reported above
                }
                let pulled_s = pull_sec_n(sys, &f, &s, 2)?;
                match st.lambda.get(&pulled_s) {
                    Some(l_pulled) if *l_pulled == pull_sec_n(sys, &f, l, 1)? => {}
                    _ => report.push(format!(
                        "lambda base-change square fails at ({f:?}, {s:?})"
                    )),
                }
            }
        }
    }

    Ok(report)
}

/// Checks the `(Pi, lambda)` condition by two independent routes: fiberwise
/// bijectivity of `lambda'_B` for every `B`, and the set-level pullback
/// property of the boundary square over each base (the canonical map
/// `s -> (lambda(s), boundary(s))` into the matched pairs is a bijection).
/// The two routes must also agree with each other.
pub fn check_pi_lambda<S: CSystem>(
    sys: &S,
    st: &PrePiLambda<S>,
    bound: usize,
) -> Result<CheckReport, Error> {
    let mut report = check_pre_pi_lambda(sys, st, bound)?;

    let base_bound = bound.saturating_sub(2);
    for gamma in sys.objects_up_to(base_bound)? {
        // Route one: each lambda'_B is a bijection onto tilde Ob(Pi(B)).
        let mut fiberwise_ok = true;
        for b in ob_n(sys, &gamma, 2)? {
            let Some(pi_b) = st.pi.get(&b) else { continue };
            let mut images = BTreeMap::new();
            let dom = sections(sys, &b)?;
            for s in &dom {
                let Some(l) = st.lambda.get(s) else { continue };
                if l.target != *pi_b || images.insert(l.clone(), ()).is_some() {
                    fiberwise_ok = false;
                }
            }
            if images.len() != sections(sys, pi_b)?.len() {
                fiberwise_ok = false;
            }
            if !fiberwise_ok {
                report.push(format!("lambda'_B fails to be a bijection at {b:?}"));
                break;
            }
        }

        // Route two: the boundary square is a pullback of sets over gamma.
        let obs2 = ob_n(sys, &gamma, 2)?;
        let tob2 = tilde_ob_n(sys, &gamma, 2)?;
        let tob1 = tilde_ob_n(sys, &gamma, 1)?;
        let mut matched = 0usize;
        for t in &tob1 {
            for b in &obs2 {
                if st.pi.get(b) == Some(&t.target) {
                    matched += 1;
                }
            }
        }
        let mut canonical = BTreeMap::new();
        let mut set_ok = tob2.len() == matched;
        for s in &tob2 {
            let Some(l) = st.lambda.get(s) else {
                set_ok = false;
                break;
            };
            if canonical.insert((l.clone(), s.target.clone()), ()).is_some() {
                set_ok = false;
            }
        }
        if !set_ok {
            report.push(format!(
                "boundary square over {gamma:?} is not a set-level pullback"
            ));
        }
        if set_ok != fiberwise_ok {
            report.push(format!(
                "pullback checkers disagree over {gamma:?}"
            ));
        }
    }

    Ok(report)
}

/// Checks a structure of the first kind: fiberwise bijectivity plus the
/// base-change squares for `lambda'`.
pub fn check_lambda_prime<S: CSystem>(
    sys: &S,
    lp: &LambdaPrime<S>,
    bound: usize,
) -> Result<CheckReport, Error> {
    let as_pre = PrePiLambda { pi: lp.pi.clone(), lambda: lp.lambda_prime.clone() };
    check_pi_lambda(sys, &as_pre, bound)
}

/// Checks a structure of the second kind: `lambda_inv'` is a bijection for
/// every `B`, and `Ap'` is stable under base change,
/// `f*(Ap'_B) = Ap'_{f*(B)}`.
pub fn check_ap_prime<S: CSystem>(
    sys: &S,
    app: &ApPrime<S>,
    bound: usize,
) -> Result<CheckReport, Error> {
    let mut report = CheckReport::default();

    for b in app.ap.keys() {
        let pi_b = &app.pi[b];
        let mut images = BTreeMap::new();
        for s in sections(sys, pi_b)? {
            let image = lambda_inv(sys, app, b, &s)?;
            if images.insert(image, ()).is_some() {
                report.push(format!("lambda_inv' not injective at {b:?}"));
            }
        }
        if images.len() != sections(sys, b)?.len() {
            report.push(format!("lambda_inv' not surjective at {b:?}"));
        }
    }

    for (gamma, maps) in bases_and_maps(sys, bound)? {
        for f in maps {
            for b in ob_n(sys, &gamma, 2)? {
                let Some(ap_b) = app.ap.get(&b) else { continue };
                let pulled_b = pull_ob_n(sys, &f, &b, 2);
                let Some(ap_pulled) = app.ap.get(&pulled_b) else { continue };
                let lhs = pull_mor_over(sys, &f, ap_b)?;
                if lhs != *ap_pulled {
                    report.push(format!("Ap' not stable under {f:?} at {b:?}"));
                }
            }
        }
    }

    Ok(report)
}

/// Checks the classical structure: bijectivity of
/// `s -> p_A*(s) ; Ap_B`, the `Pi` base-change square, and stability
/// `f*(Ap_B) = Ap_{f*(B)}`.
pub fn check_products<S: CSystem>(
    sys: &S,
    pof: &ProductsOfFamilies<S>,
    bound: usize,
) -> Result<CheckReport, Error> {
    let mut report = CheckReport::default();

    // Clause one: lambda_inv_{Ap} is a bijection for every tabulated B.
    for (b, ap_b) in &pof.ap {
        let pi_b = &pof.pi[b];
        let a = sys.ft(b);
        let p_a = sys.proj(&a);
        let mut images = BTreeMap::new();
        for s in sections(sys, pi_b)? {
            let pulled = pull_sec_n(sys, &p_a, &s, 1)?;
            let image = sys.compose(&pulled.mor, ap_b);
            if images.insert(image, ()).is_some() {
                report.push(format!("lambda_inv not injective at {b:?}"));
            }
        }
        if images.len() != sections(sys, b)?.len() {
            report.push(format!("lambda_inv not surjective at {b:?}"));
        }
    }

    // Clause two: the Pi base-change square commutes.
    for (gamma, maps) in bases_and_maps(sys, bound)? {
        for f in &maps {
            for t in ob_n(sys, &gamma, 2)? {
                let Some(pi_t) = pof.pi.get(&t) else { continue };
                if pof.pi.get(&pull_ob_n(sys, f, &t, 2))
                    != Some(&pull_ob_n(sys, f, pi_t, 1))
                {
                    report.push(format!("Pi base-change fails at ({f:?}, {t:?})"));
                }
            }
        }

        // Clause three: f*(Ap_B) = Ap_{f*(B)}.
        for f in &maps {
            for b in ob_n(sys, &gamma, 2)? {
                let Some(ap_b) = pof.ap.get(&b) else { continue };
                let pulled_b = pull_ob_n(sys, f, &b, 2);
                let Some(ap_pulled) = pof.ap.get(&pulled_b) else { continue };
                if pull_mor_over(sys, f, ap_b)? != *ap_pulled {
                    report.push(format!("Ap not stable under {f:?} at {b:?}"));
                }
            }
        }
    }

    Ok(report)
}

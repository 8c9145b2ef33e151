//! Generic category interfaces and diagram machinery: axiom checking,
//! commuting squares, pullback verification by cone enumeration, mediating
//! morphisms, functor law checks and the pullback-exchange coherence.
//!
//! Composition is written in diagrammatic order throughout: `compose(f, g)`
//! is "`f` then `g`" and is defined when `cod(f) = dom(g)`.

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

/// Reference to an object of a category instance. Codes are stable within one
/// instance; equality is decidable.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ObjRef(pub usize);

impl fmt::Display for ObjRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite (pre-)category with on-demand hom-set enumeration.
///
/// `objects` lists the objects the instance quantifies over; hom sets may be
/// enumerable for object pairs beyond that list (the list is the cone range
/// for [`is_pullback`], not a bound on the morphism data itself).
pub trait Category {
    /// Full morphism datum. Domain and codomain are recoverable from it.
    type Mor: Clone + Eq + Hash + fmt::Debug;

    fn dom(&self, f: &Self::Mor) -> ObjRef;
    fn cod(&self, f: &Self::Mor) -> ObjRef;
    fn identity(&self, x: ObjRef) -> Self::Mor;

    /// Diagrammatic composition: `f` then `g`. Panics if `cod(f) != dom(g)`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;

    /// The objects this instance quantifies over.
    fn objects(&self) -> Vec<ObjRef>;

    /// Exact cardinality of `Hom(x, y)`, even when enumeration is refused.
    fn hom_size(&self, x: ObjRef, y: ObjRef) -> u128;

    /// Complete, duplicate-free enumeration of `Hom(x, y)`, or
    /// [`Error::HomTooLarge`] carrying the exact cardinality.
    fn hom(&self, x: ObjRef, y: ObjRef) -> Result<Vec<Self::Mor>, Error>;

    fn final_object(&self) -> Option<ObjRef>;
}

/// A commuting square
///
/// ```text
///   corner --top--->  Y
///     |               |
///    left           right
///     v               v
///     X   --bottom--> Z
/// ```
///
/// with `top;right = left;bottom`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square<M> {
    pub corner: ObjRef,
    pub top: M,
    pub left: M,
    pub right: M,
    pub bottom: M,
}

impl<M> Square<M> {
    /// Checks typing and commutativity of the square in `cat`.
    pub fn commutes<C: Category<Mor = M>>(&self, cat: &C) -> bool
    where
        M: Clone + Eq + Hash + fmt::Debug,
    {
        if cat.dom(&self.top) != self.corner || cat.dom(&self.left) != self.corner {
            return false;
        }
        if cat.cod(&self.top) != cat.dom(&self.right)
            || cat.cod(&self.left) != cat.dom(&self.bottom)
            || cat.cod(&self.right) != cat.cod(&self.bottom)
        {
            return false;
        }
        cat.compose(&self.top, &self.right) == cat.compose(&self.left, &self.bottom)
    }
}

/// Outcome of an axiom or law check: a list of human-readable violations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: impl Into<String>) {
        self.violations.push(v.into());
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            write!(f, "ok")
        } else {
            write!(f, "{}", self.violations.join("; "))
        }
    }
}

/// Checks identity and associativity laws on all enumerable data.
///
/// Identity laws run over every hom set of size at most `sample_bound`;
/// associativity runs over every composable triple of hom sets whose size
/// product is at most `sample_bound` (a triple is enumerable when walking it
/// in full is feasible).
pub fn check_category_axioms<C: Category>(cat: &C, sample_bound: u128) -> CheckReport {
    let mut report = CheckReport::default();
    let objects = cat.objects();

    for &x in &objects {
        let id = cat.identity(x);
        if cat.dom(&id) != x || cat.cod(&id) != x {
            report.push(format!("identity of {x} has wrong endpoints"));
        }
    }

    for &x in &objects {
        for &y in &objects {
            if cat.hom_size(x, y) > sample_bound {
                continue;
            }
            let homs = match cat.hom(x, y) {
                Ok(h) => h,
                Err(e) => {
                    report.push(format!("hom({x},{y}) enumeration failed: {e}"));
                    continue;
                }
            };
            let idx = cat.identity(x);
            let idy = cat.identity(y);
            for f in &homs {
                if cat.compose(&idx, f) != *f {
                    report.push(format!("left identity fails for {f:?}"));
                }
                if cat.compose(f, &idy) != *f {
                    report.push(format!("right identity fails for {f:?}"));
                }
            }
        }
    }

    for &x in &objects {
        for &y in &objects {
            let n1 = cat.hom_size(x, y);
            if n1 == 0 || n1 > sample_bound {
                continue;
            }
            for &z in &objects {
                let n2 = cat.hom_size(y, z);
                if n2 == 0 || n1.saturating_mul(n2) > sample_bound {
                    continue;
                }
                for &w in &objects {
                    let n3 = cat.hom_size(z, w);
                    if n3 == 0 || n1.saturating_mul(n2).saturating_mul(n3) > sample_bound {
                        continue;
                    }
                    let (h1, h2, h3) = match (cat.hom(x, y), cat.hom(y, z), cat.hom(z, w)) {
                        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                        _ => continue,
                    };
                    for f in &h1 {
                        for g in &h2 {
                            let fg = cat.compose(f, g);
                            for h in &h3 {
                                let lhs = cat.compose(&fg, h);
                                let rhs = cat.compose(f, &cat.compose(g, h));
                                if lhs != rhs {
                                    report.push(format!(
                                        "associativity fails for triple {f:?}, {g:?}, {h:?}"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    report
}

/// Decides whether `sq` is a pullback square by enumerating cones from every
/// object of the instance: for each `(a: W -> X, b: W -> Y)` with
/// `a;bottom = b;right` there must be exactly one `u: W -> corner` with
/// `u;left = a` and `u;top = b`.
///
/// Finite instances only; fails with [`Error::HomTooLarge`] when a required
/// hom set is not enumerable.
pub fn is_pullback<C: Category>(cat: &C, sq: &Square<C::Mor>) -> Result<bool, Error> {
    if !sq.commutes(cat) {
        return Ok(false);
    }
    let x = cat.cod(&sq.left);
    let y = cat.cod(&sq.top);

    for w in cat.objects() {
        let to_corner = cat.hom(w, sq.corner)?;
        let to_x = cat.hom(w, x)?;
        let to_y = cat.hom(w, y)?;

        // Mediator multiplicities, keyed by the cone a candidate induces.
        let mut induced: HashMap<(C::Mor, C::Mor), usize> = HashMap::new();
        for u in &to_corner {
            let key = (cat.compose(u, &sq.left), cat.compose(u, &sq.top));
            *induced.entry(key).or_insert(0) += 1;
        }

        // Valid cones grouped by the shared composite to Z.
        let mut by_base: HashMap<C::Mor, Vec<&C::Mor>> = HashMap::new();
        for b in &to_y {
            by_base.entry(cat.compose(b, &sq.right)).or_default().push(b);
        }
        for a in &to_x {
            let base = cat.compose(a, &sq.bottom);
            let Some(bs) = by_base.get(&base) else {
                continue;
            };
            for b in bs {
                match induced.get(&(a.clone(), (*b).clone())) {
                    Some(1) => {}
                    _ => return Ok(false),
                }
            }
        }
    }
    Ok(true)
}

/// Returns the unique `u: W -> corner` with `u;left = a` and `u;top = b`,
/// found by exhaustive search over `Hom(W, corner)`.
pub fn mediate<C: Category>(
    cat: &C,
    sq: &Square<C::Mor>,
    cone: (&C::Mor, &C::Mor),
) -> Result<C::Mor, Error> {
    let (a, b) = cone;
    let w = cat.dom(a);
    if cat.dom(b) != w {
        return Err(Error::InvalidCone("cone legs have different domains".into()));
    }
    if cat.compose(a, &sq.bottom) != cat.compose(b, &sq.right) {
        return Err(Error::InvalidCone(
            "cone legs do not agree on the base object".into(),
        ));
    }
    let mut found: Option<C::Mor> = None;
    for u in cat.hom(w, sq.corner)? {
        if cat.compose(&u, &sq.left) == *a && cat.compose(&u, &sq.top) == *b {
            if found.is_some() {
                return Err(Error::NonUniqueMediator(format!("cone from {w}")));
            }
            found = Some(u);
        }
    }
    found.ok_or_else(|| Error::NoMediator(format!("cone from {w}")))
}

/// A functor between two category instances.
pub trait Functor<A: Category, B: Category> {
    fn on_obj(&self, x: ObjRef) -> ObjRef;
    fn on_mor(&self, f: &A::Mor) -> B::Mor;
}

/// The identity endofunctor.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdFunctor;

impl<A: Category> Functor<A, A> for IdFunctor {
    fn on_obj(&self, x: ObjRef) -> ObjRef {
        x
    }
    fn on_mor(&self, f: &A::Mor) -> A::Mor {
        f.clone()
    }
}

/// Checks functor laws (endpoint preservation, identities, composition) on
/// all enumerable data, with the same bounding discipline as
/// [`check_category_axioms`].
pub fn check_functor<A: Category, B: Category, F: Functor<A, B>>(
    fun: &F,
    src: &A,
    dst: &B,
    sample_bound: u128,
) -> CheckReport {
    let mut report = CheckReport::default();
    let objects = src.objects();

    for &x in &objects {
        let fx = fun.on_obj(x);
        let lhs = fun.on_mor(&src.identity(x));
        if lhs != dst.identity(fx) {
            report.push(format!("identity of {x} not preserved"));
        }
    }

    for &x in &objects {
        for &y in &objects {
            if src.hom_size(x, y) > sample_bound {
                continue;
            }
            let Ok(homs) = src.hom(x, y) else { continue };
            for f in &homs {
                let ff = fun.on_mor(f);
                if dst.dom(&ff) != fun.on_obj(x) || dst.cod(&ff) != fun.on_obj(y) {
                    report.push(format!("endpoints of {f:?} not preserved"));
                }
            }
        }
    }

    for &x in &objects {
        for &y in &objects {
            let n1 = src.hom_size(x, y);
            if n1 == 0 || n1 > sample_bound {
                continue;
            }
            for &z in &objects {
                let n2 = src.hom_size(y, z);
                if n2 == 0 || n1.saturating_mul(n2) > sample_bound {
                    continue;
                }
                let (Ok(h1), Ok(h2)) = (src.hom(x, y), src.hom(y, z)) else {
                    continue;
                };
                for f in &h1 {
                    for g in &h2 {
                        let lhs = fun.on_mor(&src.compose(f, g));
                        let rhs = dst.compose(&fun.on_mor(f), &fun.on_mor(g));
                        if lhs != rhs {
                            report.push(format!("composition not preserved on {f:?}, {g:?}"));
                        }
                    }
                }
            }
        }
    }

    report
}

/// Data for the pullback-exchange coherence: two pullback squares `pb1, pb2`
/// over the same cospan `(f: X -> Z, g: Y -> Z)`, two pullback squares
/// `pb1', pb2'` over `(f' = a;f, g' = b;g)`, and the comparison maps between
/// them.
pub struct ExchangeData<M> {
    pub pb1: Square<M>,
    pub pb2: Square<M>,
    pub pb1p: Square<M>,
    pub pb2p: Square<M>,
    /// `a: X' -> X` with `a;f = f'`.
    pub a: M,
    /// `b: Y' -> Y` with `b;g = g'`.
    pub b: M,
}

/// Verifies the exchange coherence: with `iota: pb1 -> pb2`,
/// `iota': pb1' -> pb2'` the comparison isomorphisms and `pb_i(a, b)` the
/// base-change maps, the square `pb1(a,b);iota = iota';pb2(a,b)` commutes.
///
/// Mediating morphisms are produced by `mediate_fn`, so instances may supply
/// a direct mediator; [`mediate`] works for small instances.
pub fn check_pullback_exchange<C, MF>(
    cat: &C,
    data: &ExchangeData<C::Mor>,
    mediate_fn: MF,
) -> Result<bool, Error>
where
    C: Category,
    MF: Fn(&C, &Square<C::Mor>, (&C::Mor, &C::Mor)) -> Result<C::Mor, Error>,
{
    let iota = mediate_fn(cat, &data.pb2, (&data.pb1.left, &data.pb1.top))?;
    let iota_p = mediate_fn(cat, &data.pb2p, (&data.pb1p.left, &data.pb1p.top))?;
    let pb1_ab = mediate_fn(
        cat,
        &data.pb1,
        (
            &cat.compose(&data.pb1p.left, &data.a),
            &cat.compose(&data.pb1p.top, &data.b),
        ),
    )?;
    let pb2_ab = mediate_fn(
        cat,
        &data.pb2,
        (
            &cat.compose(&data.pb2p.left, &data.a),
            &cat.compose(&data.pb2p.top, &data.b),
        ),
    )?;
    Ok(cat.compose(&pb1_ab, &iota) == cat.compose(&iota_p, &pb2_ab))
}

//! Skeletal finite sets with chosen structure: fiber products, a locally
//! cartesian closed structure, size universes, a product structure on the
//! Boolean universe, and the two-fiber-product-structures example.
//!
//! Objects are natural numbers read as sizes (the object *is* its size, and
//! its elements are `0..size`). Every derived object fixes a deterministic
//! element coding, and every morphism table is relative to those codings:
//!
//! * fiber product of `f: X -> Z`, `g: Y -> Z`: pairs `(x, y)` with
//!   `f(x) = g(y)`, ordered lexicographically;
//! * universe total space `Utilde`: pairs `(n, i)` with `i < n`, ordered
//!   lexicographically, so `(n, i)` has code `n(n-1)/2 + i`;
//! * chosen pullback `(X; F)` of a classifier `F: X -> U`: pairs `(x, i)`
//!   with `i < F(x)`, ordered lexicographically;
//! * internal hom `Hom_Z((X,f), (Y,g))`: pairs `(z, h)` with `h` a map from
//!   the `z`-fiber of `X` to the `z`-fiber of `Y`, ordered by `z` and then by
//!   the little-endian mixed-radix code of `h`'s value tuple (the value on
//!   the first fiber element is the least significant digit).

use crate::cat_core::{Category, ObjRef, Square};
use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A morphism of skeletal finite sets as an explicit image table:
/// `table[x]` is the image of `x`, so `table.len() == dom` and every entry
/// is `< cod`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FinSetMor {
    pub dom: usize,
    pub cod: usize,
    pub table: Vec<usize>,
}

impl FinSetMor {
    pub fn new(dom: usize, cod: usize, table: Vec<usize>) -> Result<Self, Error> {
        if table.len() != dom {
            return Err(Error::Malformed(format!(
                "table length {} does not match dom {dom}",
                table.len()
            )));
        }
        if let Some(&e) = table.iter().find(|&&e| e >= cod) {
            return Err(Error::Malformed(format!("entry {e} out of range for cod {cod}")));
        }
        Ok(FinSetMor { dom, cod, table })
    }

    pub fn identity(n: usize) -> Self {
        FinSetMor { dom: n, cod: n, table: (0..n).collect() }
    }

    /// The constant map onto `value`.
    pub fn constant(dom: usize, cod: usize, value: usize) -> Self {
        assert!(value < cod);
        FinSetMor { dom, cod, table: vec![value; dom] }
    }

    /// The unique map to the one-element set.
    pub fn to_point(dom: usize) -> Self {
        FinSetMor { dom, cod: 1, table: vec![0; dom] }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// Diagrammatic composition: `self` then `g`.
    pub fn then(&self, g: &FinSetMor) -> FinSetMor {
        assert_eq!(self.cod, g.dom, "composition endpoint mismatch");
        FinSetMor {
            dom: self.dom,
            cod: g.cod,
            table: self.table.iter().map(|&x| g.table[x]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom != self.cod {
            return false;
        }
        let mut seen = vec![false; self.cod];
        for &v in &self.table {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<FinSetMor> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.dom];
        for (x, &v) in self.table.iter().enumerate() {
            table[v] = x;
        }
        Some(FinSetMor { dom: self.cod, cod: self.dom, table })
    }
}

/// The skeletal category of finite sets, bounded for quantification.
///
/// `object_cap` bounds both the object list used for cone quantification and
/// the size of derived objects (fiber products, internal homs, chosen
/// pullbacks); `hom_cap` is the hom-set enumeration refusal threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinSkel {
    pub object_cap: usize,
    pub hom_cap: u128,
}

impl FinSkel {
    pub fn new(object_cap: usize, hom_cap: u128) -> Self {
        FinSkel { object_cap, hom_cap }
    }

    /// Default desk-scale instance: objects up to 256, hom sets up to 10^6.
    pub fn standard() -> Self {
        FinSkel::new(256, 1_000_000)
    }

    fn check_object(&self, size: u128) -> Result<usize, Error> {
        if size > self.object_cap as u128 {
            Err(Error::ObjectCapExceeded { required: size, cap: self.object_cap })
        } else {
            Ok(size as usize)
        }
    }
}

fn pow_u128(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

impl Category for FinSkel {
    type Mor = FinSetMor;

    fn dom(&self, f: &FinSetMor) -> ObjRef {
        ObjRef(f.dom)
    }
    fn cod(&self, f: &FinSetMor) -> ObjRef {
        ObjRef(f.cod)
    }
    fn identity(&self, x: ObjRef) -> FinSetMor {
        FinSetMor::identity(x.0)
    }
    fn compose(&self, f: &FinSetMor, g: &FinSetMor) -> FinSetMor {
        f.then(g)
    }
    fn objects(&self) -> Vec<ObjRef> {
        (0..=self.object_cap).map(ObjRef).collect()
    }
    fn hom_size(&self, x: ObjRef, y: ObjRef) -> u128 {
        pow_u128(y.0, x.0)
    }
    fn hom(&self, x: ObjRef, y: ObjRef) -> Result<Vec<FinSetMor>, Error> {
        let size = self.hom_size(x, y);
        if size > self.hom_cap {
            return Err(Error::HomTooLarge { dom: x.0, cod: y.0, size, cap: self.hom_cap });
        }
        Ok(hom_tables(x.0, y.0)
            .map(|table| FinSetMor { dom: x.0, cod: y.0, table })
            .collect())
    }
    fn final_object(&self) -> Option<ObjRef> {
        Some(ObjRef(1))
    }
}

/// Iterator over all tables `dom -> cod` in lexicographic order.
pub fn hom_tables(dom: usize, cod: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current = if cod == 0 && dom > 0 { None } else { Some(vec![0; dom]) };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let cur = current.as_mut().unwrap();
        // Odometer with the last index fastest.
        let mut pos = dom;
        loop {
            if pos == 0 {
                current = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < cod {
                break;
            }
            cur[pos] = 0;
        }
        Some(out)
    })
}

/// Iterator over all tables `dom -> cod` in little-endian code order: the
/// table at position `c` has entries `(c / cod^j) % cod`.
fn mixed_radix_tables(dom: usize, cod: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current = if cod == 0 && dom > 0 { None } else { Some(vec![0; dom]) };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let cur = current.as_mut().unwrap();
        // Odometer with the first index fastest.
        let mut pos = 0;
        loop {
            if pos == dom {
                current = None;
                break;
            }
            cur[pos] += 1;
            if cur[pos] < cod {
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
        Some(out)
    })
}

/// A chosen fiber product square together with its element coding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberProduct {
    /// `corner = (X,f) x_Z (Y,g)`, `left = pr1`, `top = pr2`, `bottom = f`,
    /// `right = g`.
    pub square: Square<FinSetMor>,
    /// Lexicographically ordered pairs `(x, y)` with `f(x) = g(y)`.
    pub pairs: Vec<(usize, usize)>,
}

impl FiberProduct {
    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.binary_search(&(x, y)).ok()
    }

    /// The structure map `f <> g = pr1;f` of the fiber product over `Z`.
    pub fn over_base(&self) -> FinSetMor {
        self.square.left.then(&self.square.bottom)
    }

    /// The canonical pairing: the unique `u: W -> corner` with `u;pr1 = a`
    /// and `u;pr2 = b`, for a cone `a;f = b;g`.
    pub fn pair(&self, a: &FinSetMor, b: &FinSetMor) -> Result<FinSetMor, Error> {
        if a.dom != b.dom {
            return Err(Error::InvalidCone("cone legs have different domains".into()));
        }
        let mut table = Vec::with_capacity(a.dom);
        for w in 0..a.dom {
            match self.index_of(a.apply(w), b.apply(w)) {
                Some(i) => table.push(i),
                None => {
                    return Err(Error::InvalidCone(format!(
                        "({}, {}) is not matched over the base",
                        a.apply(w),
                        b.apply(w)
                    )))
                }
            }
        }
        Ok(FinSetMor { dom: a.dom, cod: self.pairs.len(), table })
    }
}

impl FinSkel {
    /// The chosen fiber product of `f: X -> Z` and `g: Y -> Z`.
    pub fn fiber_product(&self, f: &FinSetMor, g: &FinSetMor) -> Result<FiberProduct, Error> {
        assert_eq!(f.cod, g.cod, "fiber product over different bases");
        let mut pairs = Vec::new();
        for x in 0..f.dom {
            for y in 0..g.dom {
                if f.apply(x) == g.apply(y) {
                    pairs.push((x, y));
                }
            }
        }
        let corner = self.check_object(pairs.len() as u128)?;
        let left = FinSetMor {
            dom: corner,
            cod: f.dom,
            table: pairs.iter().map(|&(x, _)| x).collect(),
        };
        let top = FinSetMor {
            dom: corner,
            cod: g.dom,
            table: pairs.iter().map(|&(_, y)| y).collect(),
        };
        Ok(FiberProduct {
            square: Square {
                corner: ObjRef(corner),
                top,
                left,
                right: g.clone(),
                bottom: f.clone(),
            },
            pairs,
        })
    }

    /// The binary product `X x Y` as the fiber product over the point.
    pub fn product(&self, x: usize, y: usize) -> Result<FiberProduct, Error> {
        self.fiber_product(&FinSetMor::to_point(x), &FinSetMor::to_point(y))
    }

    /// `(a x b)^{g1,g2}`: the unique morphism over `Z` between the fiber
    /// products that projects to `a` and `b`.
    pub fn cross(
        &self,
        a: &FinSetMor,
        b: &FinSetMor,
        g1: &FinSetMor,
        g2: &FinSetMor,
    ) -> Result<FinSetMor, Error> {
        let dom_fp = self.fiber_product(&a.then(g1), &b.then(g2))?;
        let cod_fp = self.fiber_product(g1, g2)?;
        Ok(cross_with(a, b, &dom_fp, &cod_fp))
    }
}

/// [`FinSkel::cross`] against prebuilt fiber products: `dom_fp` over
/// `(a;g1, b;g2)` and `cod_fp` over `(g1, g2)`.
pub fn cross_with(
    a: &FinSetMor,
    b: &FinSetMor,
    dom_fp: &FiberProduct,
    cod_fp: &FiberProduct,
) -> FinSetMor {
    let mut table = Vec::with_capacity(dom_fp.pairs.len());
    for &(x1, x2) in &dom_fp.pairs {
        let idx = cod_fp
            .index_of(a.apply(x1), b.apply(x2))
            .expect("image pair is matched over the base");
        table.push(idx);
    }
    FinSetMor { dom: dom_fp.pairs.len(), cod: cod_fp.pairs.len(), table }
}

/// Fast pullback test for a square of finite sets: the canonical map
/// `corner -> {(x, y) | bottom(x) = right(y)}`, `c -> (left(c), top(c))`,
/// is a bijection.
pub fn is_pullback_fast(sq: &Square<FinSetMor>) -> bool {
    let skel = FinSkel::new(0, 0); // endpoints only; no enumeration needed
    if !sq.commutes(&skel) {
        return false;
    }
    let mut seen = HashMap::new();
    for c in 0..sq.left.dom {
        if seen.insert((sq.left.apply(c), sq.top.apply(c)), c).is_some() {
            return false;
        }
    }
    let mut matched = 0usize;
    for x in 0..sq.bottom.dom {
        for y in 0..sq.right.dom {
            if sq.bottom.apply(x) == sq.right.apply(y) {
                matched += 1;
                if !seen.contains_key(&(x, y)) {
                    return false;
                }
            }
        }
    }
    matched == sq.left.dom
}

/// Direct mediator for a finite-set pullback square: sends `w` to the unique
/// corner element over `(a(w), b(w))`. Errors mean the square fails the
/// universal property at a point the cone reaches.
pub fn mediate_fast(
    sq: &Square<FinSetMor>,
    cone: (&FinSetMor, &FinSetMor),
) -> Result<FinSetMor, Error> {
    let (a, b) = cone;
    if a.dom != b.dom {
        return Err(Error::InvalidCone("cone legs have different domains".into()));
    }
    if a.then(&sq.bottom) != b.then(&sq.right) {
        return Err(Error::InvalidCone("cone legs do not agree on the base".into()));
    }
    let mut index: HashMap<(usize, usize), Option<usize>> = HashMap::new();
    for c in 0..sq.left.dom {
        index
            .entry((sq.left.apply(c), sq.top.apply(c)))
            .and_modify(|e| *e = None)
            .or_insert(Some(c));
    }
    let mut table = Vec::with_capacity(a.dom);
    for w in 0..a.dom {
        match index.get(&(a.apply(w), b.apply(w))) {
            Some(Some(c)) => table.push(*c),
            Some(None) => {
                return Err(Error::NonUniqueMediator(format!("at point {w}")));
            }
            None => return Err(Error::NoMediator(format!("at point {w}"))),
        }
    }
    Ok(FinSetMor { dom: a.dom, cod: sq.left.dom, table })
}

/// An element `(z, h)` of an internal hom object: `h` maps the `z`-fiber of
/// `X` to the `z`-fiber of `Y`, given by fiber indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomOverElem {
    pub z: usize,
    /// `values[j]` is the index into the `Y` fiber of the image of the `j`-th
    /// element of the `X` fiber.
    pub values: Vec<usize>,
}

/// The internal hom `Hom_Z((X,f), (Y,g))` with its element coding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomOver {
    pub obj: ObjRef,
    /// The structure map `f (triangle) g : H -> Z`.
    pub proj: FinSetMor,
    pub x_fibers: Vec<Vec<usize>>,
    pub y_fibers: Vec<Vec<usize>>,
    pub elems: Vec<HomOverElem>,
    offsets: Vec<usize>,
}

impl HomOver {
    pub fn size(&self) -> usize {
        self.elems.len()
    }

    /// Code of the element `(z, values)`.
    pub fn encode(&self, z: usize, values: &[usize]) -> usize {
        let radix = self.y_fibers[z].len();
        let mut code = 0usize;
        for &v in values.iter().rev() {
            code = code * radix + v;
        }
        self.offsets[z] + code
    }
}

/// The fibers of a morphism, each listed in increasing element order.
pub fn fibers(f: &FinSetMor) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); f.cod];
    for x in 0..f.dom {
        out[f.apply(x)].push(x);
    }
    out
}

impl FinSkel {
    /// The internal hom object over `Z` together with its projection.
    pub fn hom_over(&self, f: &FinSetMor, g: &FinSetMor) -> Result<HomOver, Error> {
        assert_eq!(f.cod, g.cod, "internal hom over different bases");
        let z_size = f.cod;
        let x_fibers = fibers(f);
        let y_fibers = fibers(g);

        let mut total: u128 = 0;
        let mut offsets = Vec::with_capacity(z_size);
        for z in 0..z_size {
            offsets.push(total as usize);
            total += pow_u128(y_fibers[z].len(), x_fibers[z].len());
            self.check_object(total)?;
        }
        let size = self.check_object(total)?;

        let mut elems = Vec::with_capacity(size);
        let mut proj = Vec::with_capacity(size);
        for z in 0..z_size {
            for values in mixed_radix_tables(x_fibers[z].len(), y_fibers[z].len()) {
                elems.push(HomOverElem { z, values });
                proj.push(z);
            }
        }
        Ok(HomOver {
            obj: ObjRef(size),
            proj: FinSetMor { dom: size, cod: z_size, table: proj },
            x_fibers,
            y_fibers,
            elems,
            offsets,
        })
    }

    /// Evaluation `ev: (Hom_Z((X,f),(Y,g)), f<>g) x_Z (X,f) -> Y`,
    /// `((z,h), x) -> h(x)`.
    pub fn ev(&self, f: &FinSetMor, g: &FinSetMor) -> Result<FinSetMor, Error> {
        let ho = self.hom_over(f, g)?;
        let fp = self.fiber_product(&ho.proj, f)?;
        let mut table = Vec::with_capacity(fp.pairs.len());
        for &(e, x) in &fp.pairs {
            let elem = &ho.elems[e];
            let j = ho.x_fibers[elem.z]
                .binary_search(&x)
                .expect("x lies in the fiber the element is defined on");
            table.push(ho.y_fibers[elem.z][elem.values[j]]);
        }
        Ok(FinSetMor { dom: fp.pairs.len(), cod: g.dom, table })
    }

    /// Currying: for `v: (W,h) x_Z (X,f) -> Y` over `Z`, the morphism
    /// `W -> Hom_Z((X,f),(Y,g))` over `Z` sending `w` to `x -> v(w, x)`.
    pub fn adj(
        &self,
        h: &FinSetMor,
        f: &FinSetMor,
        g: &FinSetMor,
        v: &FinSetMor,
    ) -> Result<FinSetMor, Error> {
        let ho = self.hom_over(f, g)?;
        let fp = self.fiber_product(h, f)?;
        assert_eq!(v.dom, fp.pairs.len(), "curried map has wrong domain");
        assert_eq!(v.cod, g.dom, "curried map has wrong codomain");
        assert_eq!(
            v.then(g),
            fp.over_base(),
            "curried map is not a morphism over the base"
        );
        let mut table = Vec::with_capacity(h.dom);
        for w in 0..h.dom {
            let z = h.apply(w);
            let mut values = Vec::with_capacity(ho.x_fibers[z].len());
            for &x in &ho.x_fibers[z] {
                let idx = fp.index_of(w, x).expect("(w, x) lies over the same base point");
                let y = v.apply(idx);
                let val = ho.y_fibers[z]
                    .binary_search(&y)
                    .expect("image lies in the matching fiber");
                values.push(val);
            }
            table.push(ho.encode(z, &values));
        }
        Ok(FinSetMor { dom: h.dom, cod: ho.size(), table })
    }

    /// Uncurrying: for `u: W -> Hom_Z((X,f),(Y,g))` over `Z`, the composite
    /// `(u x Id_X)^{f<>g, f} ; ev`.
    pub fn adj_inv(
        &self,
        h: &FinSetMor,
        f: &FinSetMor,
        g: &FinSetMor,
        u: &FinSetMor,
    ) -> Result<FinSetMor, Error> {
        let ho = self.hom_over(f, g)?;
        assert_eq!(u.dom, h.dom);
        assert_eq!(u.cod, ho.size());
        assert_eq!(u.then(&ho.proj), *h, "not a morphism over the base");
        let id_x = FinSetMor::identity(f.dom);
        let spread = self.cross(u, &id_x, &ho.proj, f)?;
        Ok(spread.then(&self.ev(f, g)?))
    }

    /// Contravariant action of the internal hom: for `hmap: X' -> X` over
    /// `Z`, the map `Hom_Z((X,f),(Y,g)) -> Hom_Z((X',f'),(Y,g))` given by
    /// precomposition with `hmap` on each fiber.
    pub fn hom_over_contra(
        &self,
        hmap: &FinSetMor,
        f: &FinSetMor,
        f_prime: &FinSetMor,
        g: &FinSetMor,
    ) -> Result<FinSetMor, Error> {
        assert_eq!(hmap.then(f), *f_prime, "hmap is not a morphism over the base");
        let ho = self.hom_over(f, g)?;
        let ho_prime = self.hom_over(f_prime, g)?;
        Ok(hom_over_contra_with(hmap, &ho, &ho_prime))
    }

    /// Covariant action of the internal hom: for `a: Y -> Y'` over `Z`, the
    /// map `Hom_Z((X,f),(Y,g)) -> Hom_Z((X,f),(Y',g'))` given by
    /// postcomposition with `a` on each fiber.
    pub fn hom_over_post(
        &self,
        f: &FinSetMor,
        g: &FinSetMor,
        g_prime: &FinSetMor,
        a: &FinSetMor,
    ) -> Result<FinSetMor, Error> {
        assert_eq!(a.then(g_prime), *g, "a is not a morphism over the base");
        let ho = self.hom_over(f, g)?;
        let ho_prime = self.hom_over(f, g_prime)?;
        Ok(hom_over_post_with(a, &ho, &ho_prime))
    }
}

/// [`FinSkel::hom_over_contra`] against prebuilt internal homs.
pub fn hom_over_contra_with(
    hmap: &FinSetMor,
    ho: &HomOver,
    ho_prime: &HomOver,
) -> FinSetMor {
    let mut table = Vec::with_capacity(ho.size());
    for elem in &ho.elems {
        let z = elem.z;
        let mut values = Vec::with_capacity(ho_prime.x_fibers[z].len());
        for &xp in &ho_prime.x_fibers[z] {
            let x = hmap.apply(xp);
            let j = ho.x_fibers[z]
                .binary_search(&x)
                .expect("image lies in the matching fiber");
            values.push(elem.values[j]);
        }
        table.push(ho_prime.encode(z, &values));
    }
    FinSetMor { dom: ho.size(), cod: ho_prime.size(), table }
}

/// [`FinSkel::hom_over_post`] against prebuilt internal homs.
pub fn hom_over_post_with(a: &FinSetMor, ho: &HomOver, ho_prime: &HomOver) -> FinSetMor {
    let mut table = Vec::with_capacity(ho.size());
    for elem in &ho.elems {
        let z = elem.z;
        let mut values = Vec::with_capacity(elem.values.len());
        for &v in &elem.values {
            let y = ho.y_fibers[z][v];
            let yp = a.apply(y);
            let vp = ho_prime.y_fibers[z]
                .binary_search(&yp)
                .expect("image lies in the matching fiber");
            values.push(vp);
        }
        table.push(ho_prime.encode(z, &values));
    }
    FinSetMor { dom: ho.size(), cod: ho_prime.size(), table }
}

/// [`FinSkel::adj_inv`] against prebuilt data: the internal hom of `(f, g)`,
/// the evaluation `ev(f, g)`, and the two fiber products `(W,h) x_Z (X,f)`
/// and `(H, proj) x_Z (X,f)`.
pub fn adj_inv_with(
    u: &FinSetMor,
    ev: &FinSetMor,
    fp_hf: &FiberProduct,
    fp_pf: &FiberProduct,
) -> FinSetMor {
    let id_x = FinSetMor::identity(fp_pf.square.right.dom);
    cross_with(u, &id_x, fp_hf, fp_pf).then(ev)
}

/// A size universe with its chosen pullback squares.
///
/// `U` has `n + 1` elements read as fiber sizes `0..=n`; `Utilde` is the
/// total space of pairs `(m, i)` with `i < m <= n`; `p` is first projection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    pub skel: FinSkel,
    pub n: usize,
    pub p: FinSetMor,
}

impl Universe {
    pub fn new(n: usize, skel: FinSkel) -> Self {
        let ut = n * (n + 1) / 2;
        let mut table = Vec::with_capacity(ut);
        for m in 1..=n {
            for _ in 0..m {
                table.push(m);
            }
        }
        Universe { skel, n, p: FinSetMor { dom: ut, cod: n + 1, table } }
    }

    pub fn u(&self) -> ObjRef {
        ObjRef(self.n + 1)
    }

    pub fn u_tilde(&self) -> ObjRef {
        ObjRef(self.n * (self.n + 1) / 2)
    }

    /// Code of the pair `(m, i)` in `Utilde`.
    pub fn pair_code(&self, m: usize, i: usize) -> usize {
        debug_assert!(i < m && m <= self.n);
        m * (m - 1) / 2 + i
    }

    pub fn pair_decode(&self, code: usize) -> (usize, usize) {
        let mut m = 1;
        let mut c = code;
        while c >= m {
            c -= m;
            m += 1;
        }
        (m, c)
    }

    pub fn corner_size(&self, f: &FinSetMor) -> usize {
        f.table.iter().sum()
    }

    /// Element offsets of `(X; F)`: the pair `(x, i)` has code
    /// `offsets[x] + i`.
    pub fn corner_offsets(&self, f: &FinSetMor) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(f.dom);
        let mut acc = 0;
        for x in 0..f.dom {
            offsets.push(acc);
            acc += f.apply(x);
        }
        offsets
    }

    pub fn corner_decode(&self, f: &FinSetMor, code: usize) -> (usize, usize) {
        let mut c = code;
        for x in 0..f.dom {
            if c < f.apply(x) {
                return (x, c);
            }
            c -= f.apply(x);
        }
        panic!("code {code} out of range for the chosen pullback of {f:?}");
    }

    /// The chosen pullback square of `p` along a classifier `F: X -> U`:
    ///
    /// ```text
    ///   (X; F) --Q(F)--> Utilde
    ///     |                |
    ///   p_{X,F}            p
    ///     v                v
    ///     X  ----F---->    U
    /// ```
    pub fn chosen_square(&self, f: &FinSetMor) -> Result<Square<FinSetMor>, Error> {
        assert_eq!(f.cod, self.n + 1, "classifier does not land in U");
        let corner = self
            .skel
            .check_object(f.table.iter().map(|&v| v as u128).sum())?;
        let mut left = Vec::with_capacity(corner);
        let mut top = Vec::with_capacity(corner);
        for x in 0..f.dom {
            for i in 0..f.apply(x) {
                left.push(x);
                top.push(self.pair_code(f.apply(x), i));
            }
        }
        Ok(Square {
            corner: ObjRef(corner),
            top: FinSetMor { dom: corner, cod: self.u_tilde().0, table: top },
            left: FinSetMor { dom: corner, cod: f.dom, table: left },
            right: self.p.clone(),
            bottom: f.clone(),
        })
    }

    /// Star pairing `f * g` into the chosen pullback of `classifier`: the
    /// unique morphism with `(f*g);p_{X,F} = f` and `(f*g);Q(F) = g`.
    pub fn star(
        &self,
        classifier: &FinSetMor,
        f: &FinSetMor,
        g: &FinSetMor,
    ) -> Result<FinSetMor, Error> {
        if f.dom != g.dom {
            return Err(Error::InvalidCone("cone legs have different domains".into()));
        }
        if f.then(classifier) != g.then(&self.p) {
            return Err(Error::InvalidCone(
                "star pairing legs do not agree over U".into(),
            ));
        }
        let offsets = self.corner_offsets(classifier);
        let corner = self.corner_size(classifier);
        let mut table = Vec::with_capacity(f.dom);
        for w in 0..f.dom {
            let x = f.apply(w);
            let (_, i) = self.pair_decode(g.apply(w));
            table.push(offsets[x] + i);
        }
        Ok(FinSetMor { dom: f.dom, cod: corner, table })
    }

    /// `Q(f, F) = (p_{X', f;F} ; f) * Q(f;F) : (X'; f;F) -> (X; F)` for
    /// `f: X' -> X` and `F: X -> U`.
    pub fn q_map(&self, f: &FinSetMor, classifier: &FinSetMor) -> Result<FinSetMor, Error> {
        let pulled = self.chosen_square(&f.then(classifier))?;
        self.star(classifier, &pulled.left.then(f), &pulled.top)
    }
}

/// A product structure on a size universe: `p_map: I_p(U) -> U` takes the
/// product of the classified family's fiber sizes; `p_tilde_map` acts on the
/// total space by tupling, with the little-endian mixed-radix code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PiStructure {
    pub p_map: FinSetMor,
    pub p_tilde_map: FinSetMor,
}

/// A product structure defined only where the universe is closed under the
/// product (entries are `None` where the product exceeds the universe).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPiStructure {
    pub p_map: Vec<Option<usize>>,
    pub p_tilde_map: Vec<Option<usize>>,
}

impl PartialPiStructure {
    pub fn total(pi: &PiStructure) -> Self {
        PartialPiStructure {
            p_map: pi.p_map.table.iter().map(|&v| Some(v)).collect(),
            p_tilde_map: pi.p_tilde_map.table.iter().map(|&v| Some(v)).collect(),
        }
    }
}

/// Shared layout of `I_p(V) = Hom_U((Utilde, p), (U x V, pr1))`: for each
/// `z in U` the `z`-fiber of `U x V` is a copy of `V` and the `z`-fiber of
/// `Utilde` has `z` elements, so elements are pairs
/// `(z, family: z-tuple over V)`.
pub struct IpLayout {
    pub hom: HomOver,
    pub product: FiberProduct,
    pub v_size: usize,
}

impl IpLayout {
    pub fn build(universe: &Universe, v: usize) -> Result<IpLayout, Error> {
        let product = universe
            .skel
            .product(universe.u().0, v)?;
        let pr1 = product.square.left.clone();
        let hom = universe.skel.hom_over(&universe.p, &pr1)?;
        Ok(IpLayout { hom, product, v_size: v })
    }

    /// The family classified by element `idx`, as global elements of `V`.
    pub fn family(&self, idx: usize) -> (usize, Vec<usize>) {
        let elem = &self.hom.elems[idx];
        let vals = elem
            .values
            .iter()
            .map(|&j| {
                let y_global = self.hom.y_fibers[elem.z][j];
                self.product.pairs[y_global].1
            })
            .collect();
        (elem.z, vals)
    }

    /// The element with the given family, inverse to [`IpLayout::family`].
    pub fn encode_family(&self, z: usize, vals: &[usize]) -> usize {
        let values: Vec<usize> = vals
            .iter()
            .map(|&v| {
                let y_global = self
                    .product
                    .index_of(z, v)
                    .expect("pair lies in the product");
                self.hom.y_fibers[z]
                    .binary_search(&y_global)
                    .expect("product element lies in the fiber over z")
            })
            .collect();
        self.hom.encode(z, &values)
    }
}

fn pi_value(universe: &Universe, vals: &[usize]) -> Result<usize, Error> {
    let product = vals.iter().product::<usize>();
    if product > universe.n {
        return Err(Error::NotPiClosed { product, max: universe.n });
    }
    Ok(product)
}

fn pi_tilde_value(universe: &Universe, vals: &[usize]) -> Result<usize, Error> {
    // Fibers over total-space elements are nonempty, so every m is >= 1.
    let mut product = 1usize;
    let mut code = 0usize;
    let mut mult = 1usize;
    for &vt in vals {
        let (m, k) = universe.pair_decode(vt);
        code += k * mult;
        mult *= m;
        product *= m;
    }
    if product > universe.n {
        return Err(Error::NotPiClosed { product, max: universe.n });
    }
    Ok(universe.pair_code(product, code))
}

/// The product structure `(P, P~)` on a size universe.
///
/// Fails with [`Error::NotPiClosed`] whenever some classified family has a
/// product of fiber sizes outside the universe; among size universes only
/// `n = 1` (the Boolean universe) is closed.
pub fn pi_structure(universe: &Universe) -> Result<PiStructure, Error> {
    let ip_u = IpLayout::build(universe, universe.u().0)?;
    let ip_ut = IpLayout::build(universe, universe.u_tilde().0)?;

    let mut p_table = Vec::with_capacity(ip_u.hom.size());
    for idx in 0..ip_u.hom.size() {
        let (_, vals) = ip_u.family(idx);
        p_table.push(pi_value(universe, &vals)?);
    }
    let mut pt_table = Vec::with_capacity(ip_ut.hom.size());
    for idx in 0..ip_ut.hom.size() {
        let (_, vals) = ip_ut.family(idx);
        pt_table.push(pi_tilde_value(universe, &vals)?);
    }
    Ok(PiStructure {
        p_map: FinSetMor { dom: ip_u.hom.size(), cod: universe.u().0, table: p_table },
        p_tilde_map: FinSetMor {
            dom: ip_ut.hom.size(),
            cod: universe.u_tilde().0,
            table: pt_table,
        },
    })
}

/// The product structure defined wherever the universe is closed, with
/// `None` at the remaining elements.
pub fn partial_pi_structure(universe: &Universe) -> Result<PartialPiStructure, Error> {
    let ip_u = IpLayout::build(universe, universe.u().0)?;
    let ip_ut = IpLayout::build(universe, universe.u_tilde().0)?;
    let p_map = (0..ip_u.hom.size())
        .map(|idx| {
            let (_, vals) = ip_u.family(idx);
            pi_value(universe, &vals).ok()
        })
        .collect();
    let p_tilde_map = (0..ip_ut.hom.size())
        .map(|idx| {
            let (_, vals) = ip_ut.family(idx);
            pi_tilde_value(universe, &vals).ok()
        })
        .collect();
    Ok(PartialPiStructure { p_map, p_tilde_map })
}

/// The two chosen fiber-product squares for the pair `(Id_X, Id_X)` on the
/// two-element object that no auto-equivalence can interchange: one with
/// identity legs, one with the swap on the left and top legs.
pub fn prestn_structures() -> (Square<FinSetMor>, Square<FinSetMor>) {
    let id = FinSetMor::identity(2);
    let sigma = FinSetMor { dom: 2, cod: 2, table: vec![1, 0] };
    let str1 = Square {
        corner: ObjRef(2),
        top: id.clone(),
        left: id.clone(),
        right: id.clone(),
        bottom: id.clone(),
    };
    let str_sigma = Square {
        corner: ObjRef(2),
        top: sigma.clone(),
        left: sigma,
        right: id.clone(),
        bottom: id,
    };
    (str1, str_sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat_core::{is_pullback, mediate};
    use proptest::prelude::*;

    fn skel() -> FinSkel {
        FinSkel::standard()
    }

    #[test]
    fn fiber_product_of_maps_to_point_has_product_size() {
        let f = FinSetMor::to_point(2);
        let g = FinSetMor::to_point(3);
        let fp = skel().fiber_product(&f, &g).unwrap();
        assert_eq!(fp.square.corner, ObjRef(6));
    }

    #[test]
    fn fiber_product_of_identities_is_the_diagonal() {
        let id = FinSetMor::identity(4);
        let fp = skel().fiber_product(&id, &id).unwrap();
        assert_eq!(fp.square.corner, ObjRef(4));
        assert!(fp.square.left.is_bijective());
        assert!(fp.square.top.is_bijective());
    }

    #[test]
    fn fiber_product_with_empty_leg_is_empty() {
        let f = FinSetMor::new(3, 2, vec![0, 1, 0]).unwrap();
        let g = FinSetMor::new(0, 2, vec![]).unwrap();
        let fp = skel().fiber_product(&f, &g).unwrap();
        assert_eq!(fp.square.corner, ObjRef(0));
    }

    #[test]
    fn fiber_product_cap_is_reported() {
        let small = FinSkel::new(4, 1_000_000);
        let f = FinSetMor::to_point(3);
        let g = FinSetMor::to_point(3);
        assert!(matches!(
            small.fiber_product(&f, &g),
            Err(Error::ObjectCapExceeded { required: 9, .. })
        ));
    }

    #[test]
    fn cross_of_identities_is_identity() {
        let g1 = FinSetMor::new(3, 2, vec![0, 1, 1]).unwrap();
        let g2 = FinSetMor::new(2, 2, vec![1, 0]).unwrap();
        let c = skel()
            .cross(&FinSetMor::identity(3), &FinSetMor::identity(2), &g1, &g2)
            .unwrap();
        assert!(c.is_identity());
    }

    #[test]
    fn cross_with_empty_source_is_empty() {
        let g1 = FinSetMor::new(2, 1, vec![0, 0]).unwrap();
        let g2 = FinSetMor::new(2, 1, vec![0, 0]).unwrap();
        let a = FinSetMor::identity(2);
        let b = FinSetMor::new(0, 2, vec![]).unwrap();
        let c = skel().cross(&a, &b, &g1, &g2).unwrap();
        assert_eq!(c.dom, 0);
    }

    #[test]
    fn hom_over_section_counts() {
        // One base point, fibers 2 and 3: 3^2 sections.
        let f = FinSetMor::to_point(2);
        let g = FinSetMor::to_point(3);
        let ho = skel().hom_over(&f, &g).unwrap();
        assert_eq!(ho.size(), 9);

        // Two base points, X fibers (1,1), Y fibers (2,3): 2 + 3.
        let f = FinSetMor::new(2, 2, vec![0, 1]).unwrap();
        let g = FinSetMor::new(5, 2, vec![0, 0, 1, 1, 1]).unwrap();
        let ho = skel().hom_over(&f, &g).unwrap();
        assert_eq!(ho.size(), 5);
    }

    #[test]
    fn empty_x_fiber_contributes_one_element() {
        let f = FinSetMor::new(1, 2, vec![1]).unwrap();
        let g = FinSetMor::new(2, 2, vec![0, 1]).unwrap();
        let ho = skel().hom_over(&f, &g).unwrap();
        // z = 0 contributes the empty map, z = 1 contributes one map 1 -> 1.
        assert_eq!(ho.size(), 2);
        assert_eq!(ho.elems[0].z, 0);
        assert!(ho.elems[0].values.is_empty());
    }

    #[test]
    fn ev_over_point_is_evaluation() {
        // Z = 1, X = 1: ev is Hom(1, Y) x 1 -> Y, a bijection onto Y.
        let f = FinSetMor::to_point(1);
        let g = FinSetMor::to_point(3);
        let ev = skel().ev(&f, &g).unwrap();
        assert_eq!(ev.dom, 3);
        assert!(FinSetMor::new(3, 3, ev.table.clone()).unwrap().is_bijective());
    }

    #[test]
    fn ev_with_fiberwise_empty_x_has_empty_domain() {
        let f = FinSetMor::new(0, 1, vec![]).unwrap();
        let g = FinSetMor::to_point(2);
        let ev = skel().ev(&f, &g).unwrap();
        assert_eq!(ev.dom, 0);
    }

    #[test]
    fn ev_matches_direct_application() {
        // Z = 1, X = 2, Y = 2: ev((h), x) = h(x) on all 8 pairs.
        let s = skel();
        let f = FinSetMor::to_point(2);
        let g = FinSetMor::to_point(2);
        let ho = s.hom_over(&f, &g).unwrap();
        let fp = s.fiber_product(&ho.proj, &f).unwrap();
        let ev = s.ev(&f, &g).unwrap();
        assert_eq!(ev.dom, 8);
        for (idx, &(e, x)) in fp.pairs.iter().enumerate() {
            let elem = &ho.elems[e];
            assert_eq!(ev.apply(idx), elem.values[x]);
        }
    }

    /// All morphisms `W -> Y` over `Z` (i.e. with `m;g = h`), by filtering.
    fn homs_over(h: &FinSetMor, g: &FinSetMor) -> Vec<FinSetMor> {
        hom_tables(h.dom, g.dom)
            .map(|t| FinSetMor::new(h.dom, g.dom, t).unwrap())
            .filter(|m| m.then(g) == *h)
            .collect()
    }

    #[test]
    fn adjunction_is_a_bijection_exhaustively() {
        // For all Z <= 2 and all fiber shapes <= 2 for W, X, Y: adj and
        // adj_inv are mutually inverse, and the two hom sets have equal size.
        let s = skel();
        for z in 1..=2usize {
            let shapes: Vec<Vec<usize>> = hom_tables(z, 3).collect(); // fibers 0..=2
            for wshape in &shapes {
                for xshape in &shapes {
                    for yshape in &shapes {
                        let h = shape_to_mor(wshape);
                        let f = shape_to_mor(xshape);
                        let g = shape_to_mor(yshape);
                        let ho = s.hom_over(&f, &g).unwrap();
                        let fp = s.fiber_product(&h, &f).unwrap();
                        let sections = homs_over(&h, &ho.proj);
                        let curried = homs_over(&fp.over_base(), &g);
                        assert_eq!(sections.len(), curried.len());
                        for u in &sections {
                            let v = s.adj_inv(&h, &f, &g, u).unwrap();
                            assert_eq!(&s.adj(&h, &f, &g, &v).unwrap(), u);
                        }
                        for v in &curried {
                            let u = s.adj(&h, &f, &g, v).unwrap();
                            assert_eq!(&s.adj_inv(&h, &f, &g, &u).unwrap(), v);
                        }
                    }
                }
            }
        }
    }

    /// Builds the map with the given fiber sizes over `shape.len()` points.
    fn shape_to_mor(shape: &[usize]) -> FinSetMor {
        let mut table = Vec::new();
        for (z, &k) in shape.iter().enumerate() {
            for _ in 0..k {
                table.push(z);
            }
        }
        FinSetMor::new(table.len(), shape.len(), table).unwrap()
    }

    #[test]
    fn adj_of_section_over_base_picks_the_fiberwise_map() {
        // W = Z, h = Id: adj of v: X -> Y over Z sends z to v restricted to
        // the fiber over z.
        let s = skel();
        let f = FinSetMor::new(3, 2, vec![0, 0, 1]).unwrap();
        let g = FinSetMor::new(3, 2, vec![0, 1, 1]).unwrap();
        let h = FinSetMor::identity(2);
        let fp = s.fiber_product(&h, &f).unwrap();
        // fp corner is X itself (pairs (f(x), x)); v = a map over Z.
        let v = FinSetMor::new(fp.pairs.len(), 3, vec![0, 0, 1]).unwrap();
        assert_eq!(v.then(&g), fp.over_base());
        let u = s.adj(&h, &f, &g, &v).unwrap();
        let ho = s.hom_over(&f, &g).unwrap();
        for z in 0..2 {
            let elem = &ho.elems[u.apply(z)];
            for (j, &x) in ho.x_fibers[z].iter().enumerate() {
                let idx = fp.index_of(z, x).unwrap();
                assert_eq!(ho.y_fibers[z][elem.values[j]], v.apply(idx));
            }
        }
    }

    #[test]
    fn name_of_ev_is_the_identity() {
        // adj(ev) = Id_H, and adj_inv(Id_H) = ev, over the base f<>g.
        let s = skel();
        let f = FinSetMor::to_point(2);
        let g = FinSetMor::to_point(2);
        let ho = s.hom_over(&f, &g).unwrap();
        let ev = s.ev(&f, &g).unwrap();
        let name = s.adj(&ho.proj, &f, &g, &ev).unwrap();
        assert!(name.is_identity());
        assert_eq!(s.adj_inv(&ho.proj, &f, &g, &FinSetMor::identity(ho.size())).unwrap(), ev);
    }

    #[test]
    fn hom_over_contra_on_identity_is_identity() {
        let s = skel();
        let f = FinSetMor::new(3, 2, vec![0, 1, 1]).unwrap();
        let g = FinSetMor::new(2, 2, vec![0, 1]).unwrap();
        let c = s
            .hom_over_contra(&FinSetMor::identity(3), &f, &f, &g)
            .unwrap();
        assert!(c.is_identity());
    }

    #[test]
    fn hom_over_contra_reverses_composition() {
        let s = skel();
        // X'' -> X' -> X over Z = 2.
        let f = FinSetMor::new(4, 2, vec![0, 0, 1, 1]).unwrap();
        let f1 = FinSetMor::new(3, 2, vec![0, 1, 1]).unwrap();
        let f2 = FinSetMor::new(2, 2, vec![0, 1]).unwrap();
        let g = FinSetMor::new(3, 2, vec![0, 0, 1]).unwrap();
        let h1 = FinSetMor::new(3, 4, vec![1, 2, 3]).unwrap(); // X' -> X
        let h2 = FinSetMor::new(2, 3, vec![0, 2]).unwrap(); // X'' -> X'
        assert_eq!(h1.then(&f), f1);
        assert_eq!(h2.then(&f1), f2);
        let lhs = s.hom_over_contra(&h2.then(&h1), &f, &f2, &g).unwrap();
        let rhs = s
            .hom_over_contra(&h1, &f, &f1, &g)
            .unwrap()
            .then(&s.hom_over_contra(&h2, &f1, &f2, &g).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn universe_codings_match_the_offset_formula() {
        let u = Universe::new(2, skel());
        assert_eq!(u.u(), ObjRef(3));
        assert_eq!(u.u_tilde(), ObjRef(3));
        assert_eq!(u.pair_code(1, 0), 0);
        assert_eq!(u.pair_code(2, 0), 1);
        assert_eq!(u.pair_code(2, 1), 2);
        assert_eq!(u.pair_decode(2), (2, 1));
        assert_eq!(u.p, FinSetMor::new(3, 3, vec![1, 2, 2]).unwrap());
    }

    #[test]
    fn chosen_square_tables_for_a_two_point_base() {
        let u = Universe::new(2, skel());
        let f = FinSetMor::new(2, 3, vec![2, 1]).unwrap();
        let sq = u.chosen_square(&f).unwrap();
        assert_eq!(sq.corner, ObjRef(3));
        assert_eq!(sq.left.table, vec![0, 0, 1]);
        assert_eq!(sq.top.table, vec![1, 2, 0]);
    }

    #[test]
    fn constant_zero_classifier_has_empty_total_space() {
        let u = Universe::new(2, skel());
        let f = FinSetMor::constant(3, 3, 0);
        let sq = u.chosen_square(&f).unwrap();
        assert_eq!(sq.corner, ObjRef(0));
    }

    #[test]
    fn star_pairing_satisfies_its_defining_equations() {
        let s = skel();
        let u = Universe::new(2, s);
        for ftab in hom_tables(3, 3) {
            let f = FinSetMor::new(3, 3, ftab).unwrap();
            let sq = u.chosen_square(&f).unwrap();
            for atab in hom_tables(2, 3) {
                let a = FinSetMor::new(2, 3, atab).unwrap();
                for btab in hom_tables(2, 3) {
                    let b = FinSetMor::new(2, u.u_tilde().0, btab).unwrap();
                    if a.then(&f) != b.then(&u.p) {
                        continue;
                    }
                    let st = u.star(&f, &a, &b).unwrap();
                    assert_eq!(st.then(&sq.left), a);
                    assert_eq!(st.then(&sq.top), b);
                }
            }
        }
    }

    #[test]
    fn q_map_laws() {
        let s = skel();
        let u = Universe::new(2, s);
        let f_class = FinSetMor::new(2, 3, vec![2, 1]).unwrap();
        assert!(u
            .q_map(&FinSetMor::identity(2), &f_class)
            .unwrap()
            .is_identity());
        // Q(f;f', F) = Q(f', f;F) ; Q(f, F) wait: composition law checked
        // against the direct pair formula (x', i) -> (f(x'), i).
        let f = FinSetMor::new(3, 2, vec![1, 0, 1]).unwrap();
        let q = u.q_map(&f, &f_class).unwrap();
        let pulled = f.then(&f_class);
        let offs_dst = u.corner_offsets(&f_class);
        for c in 0..u.corner_size(&pulled) {
            let (x, i) = u.corner_decode(&pulled, c);
            assert_eq!(q.apply(c), offs_dst[f.apply(x)] + i);
        }
        // Compose two pulls and compare with the single pull.
        let g = FinSetMor::new(2, 3, vec![2, 0]).unwrap();
        let q_f = u.q_map(&f, &f_class).unwrap();
        let q_g = u.q_map(&g, &f.then(&f_class)).unwrap();
        let q_gf = u.q_map(&g.then(&f), &f_class).unwrap();
        assert_eq!(q_g.then(&q_f), q_gf);
    }

    #[test]
    fn chosen_squares_pass_both_pullback_checkers() {
        // All classifiers F: X -> U for X <= 4, N <= 2: fast path and the
        // generic cone search agree that the chosen square is a pullback.
        for n in 0..=2usize {
            let u = Universe::new(n, skel());
            let probe = FinSkel::new(5, 1_000_000);
            for x in 0..=4usize {
                for tab in hom_tables(x, n + 1) {
                    let f = FinSetMor::new(x, n + 1, tab).unwrap();
                    let sq = u.chosen_square(&f).unwrap();
                    assert!(is_pullback_fast(&sq));
                    assert!(is_pullback(&probe, &sq).unwrap());
                }
            }
        }
    }

    #[test]
    fn pi_structure_on_the_boolean_universe() {
        let u = Universe::new(1, skel());
        let pi = pi_structure(&u).unwrap();
        // I_p(U) has 3 elements; products are (empty) = 1, (0) = 0, (1) = 1.
        assert_eq!(pi.p_map, FinSetMor::new(3, 2, vec![1, 0, 1]).unwrap());
        // I_p(Utilde) has 2 elements, both mapping to (1, 0), code 0.
        assert_eq!(pi.p_tilde_map, FinSetMor::new(2, 1, vec![0, 0]).unwrap());
    }

    #[test]
    fn pi_square_is_a_pullback_for_the_boolean_universe() {
        let u = Universe::new(1, skel());
        let pi = pi_structure(&u).unwrap();
        let ip_u = IpLayout::build(&u, u.u().0).unwrap();
        let ip_ut = IpLayout::build(&u, u.u_tilde().0).unwrap();
        // I_p(p): postcompose each family member with p.
        let id_u_times_p = u
            .skel
            .cross(
                &FinSetMor::identity(u.u().0),
                &u.p,
                &FinSetMor::to_point(u.u().0),
                &FinSetMor::to_point(u.u().0),
            )
            .unwrap();
        let ip_p = u
            .skel
            .hom_over_post(
                &u.p,
                &ip_ut.product.square.left,
                &ip_u.product.square.left,
                &id_u_times_p,
            )
            .unwrap();
        let sq = Square {
            corner: ObjRef(ip_ut.hom.size()),
            top: pi.p_tilde_map.clone(),
            left: ip_p,
            right: u.p.clone(),
            bottom: pi.p_map.clone(),
        };
        assert!(is_pullback_fast(&sq));
        let probe = FinSkel::new(4, 1_000_000);
        assert!(is_pullback(&probe, &sq).unwrap());
    }

    #[test]
    fn non_closed_universes_are_rejected() {
        assert!(matches!(
            pi_structure(&Universe::new(0, skel())),
            Err(Error::NotPiClosed { product: 1, max: 0 })
        ));
        assert!(matches!(
            pi_structure(&Universe::new(2, skel())),
            Err(Error::NotPiClosed { .. })
        ));
    }

    #[test]
    fn prestn_squares_are_distinct_pullbacks() {
        let (str1, str_sigma) = prestn_structures();
        assert!(str1.left.is_identity() && str1.top.is_identity());
        assert_eq!(str_sigma.left.table, vec![1, 0]);
        assert_eq!(str_sigma.top.table, vec![1, 0]);
        assert!(str_sigma.right.is_identity() && str_sigma.bottom.is_identity());
        assert!(is_pullback_fast(&str1));
        assert!(is_pullback_fast(&str_sigma));
        let probe = FinSkel::new(4, 1_000_000);
        assert!(is_pullback(&probe, &str1).unwrap());
        assert!(is_pullback(&probe, &str_sigma).unwrap());
        assert_ne!(str1, str_sigma);
    }

    #[test]
    fn mediate_fast_agrees_with_search_on_chosen_squares() {
        let u = Universe::new(2, skel());
        let probe = FinSkel::new(4, 1_000_000);
        let f = FinSetMor::new(2, 3, vec![2, 1]).unwrap();
        let sq = u.chosen_square(&f).unwrap();
        for atab in hom_tables(2, 2) {
            let a = FinSetMor::new(2, 2, atab).unwrap();
            for btab in hom_tables(2, 3) {
                let b = FinSetMor::new(2, 3, btab).unwrap();
                if a.then(&sq.bottom) != b.then(&sq.right) {
                    continue;
                }
                assert_eq!(
                    mediate_fast(&sq, (&a, &b)).unwrap(),
                    mediate(&probe, &sq, (&a, &b)).unwrap()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn prop_fiber_product_satisfies_the_universal_property(
            ftab in proptest::collection::vec(0..2usize, 0..4),
            gtab in proptest::collection::vec(0..2usize, 0..4),
        ) {
            let s = skel();
            let f = FinSetMor::new(ftab.len(), 2, ftab).unwrap();
            let g = FinSetMor::new(gtab.len(), 2, gtab).unwrap();
            let fp = s.fiber_product(&f, &g).unwrap();
            prop_assert!(is_pullback_fast(&fp.square));
            let probe = FinSkel::new(3, 1_000_000);
            prop_assert!(is_pullback(&probe, &fp.square).unwrap());
        }

        #[test]
        fn prop_morphism_serialization_round_trips(
            tab in proptest::collection::vec(0..5usize, 0..6),
        ) {
            let m = FinSetMor::new(tab.len(), 5, tab).unwrap();
            let json = serde_json::to_string(&m).unwrap();
            let back: FinSetMor = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(m, back);
        }

        #[test]
        fn prop_cross_respects_composition(
            seed in 0..10_000u64,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = skel();
            let z = rng.gen_range(1..=2usize);
            let rand_mor = |rng: &mut rand_chacha::ChaCha8Rng, dom: usize, cod: usize| {
                let table = (0..dom).map(|_| rng.gen_range(0..cod)).collect();
                FinSetMor::new(dom, cod, table).unwrap()
            };
            let y1 = rng.gen_range(1..=3usize);
            let y2 = rng.gen_range(1..=3usize);
            let x1 = rng.gen_range(1..=3usize);
            let x2 = rng.gen_range(1..=3usize);
            let x1p = rng.gen_range(0..=3usize);
            let x2p = rng.gen_range(0..=3usize);
            let g1 = rand_mor(&mut rng, y1, z);
            let g2 = rand_mor(&mut rng, y2, z);
            let a = rand_mor(&mut rng, x1, y1);
            let b = rand_mor(&mut rng, x2, y2);
            let ap = rand_mor(&mut rng, x1p, x1);
            let bp = rand_mor(&mut rng, x2p, x2);
            let lhs = s.cross(&ap.then(&a), &bp.then(&b), &g1, &g2).unwrap();
            let rhs = s
                .cross(&ap, &bp, &a.then(&g1), &b.then(&g2))
                .unwrap()
                .then(&s.cross(&a, &b, &g1, &g2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}

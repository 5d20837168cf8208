//! Modules (profunctors) between finite categories.
//!
//! A module `E` from `A` to `B` assigns a finite set `E(b, a)` to each pair
//! of objects, with a left action by morphisms of `A` and a right action by
//! morphisms of `B`, jointly functorial. Entries are keyed contravariant
//! side first, `(b, a)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{FinCat, MorId, ObjId};
use crate::error::{Error, Result};
use crate::functor::{cats_eq, FunctorMap};

pub type ElemId = String;

#[derive(Debug, Clone)]
pub struct Module {
    pub dom: Arc<FinCat>,
    pub cod: Arc<FinCat>,
    /// `(b, a) -> sorted element ids`. Absent keys denote empty entries.
    pub entries: BTreeMap<(ObjId, ObjId), Vec<ElemId>>,
    /// `(alpha: a -> a', e) -> alpha . e`
    pub left: BTreeMap<(MorId, ElemId), ElemId>,
    /// `(beta: b' -> b, e) -> e . beta`
    pub right: BTreeMap<(MorId, ElemId), ElemId>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        cats_eq(&self.dom, &other.dom)
            && cats_eq(&self.cod, &other.cod)
            && self.entries == other.entries
            && self.left == other.left
            && self.right == other.right
    }
}
impl Eq for Module {}

impl Module {
    pub fn entry(&self, b: &str, a: &str) -> &[ElemId] {
        static EMPTY: Vec<ElemId> = Vec::new();
        self.entries.get(&(b.to_string(), a.to_string())).map(|v| v.as_slice()).unwrap_or(&EMPTY)
    }

    /// Left action `alpha . e` for `alpha: a -> a'` acting on `e` in column `a`.
    pub fn act_left(&self, alpha: &str, e: &str) -> &ElemId {
        &self.left[&(alpha.to_string(), e.to_string())]
    }

    /// Right action `e . beta` for `beta: b' -> b` acting on `e` in row `b`.
    pub fn act_right(&self, e: &str, beta: &str) -> &ElemId {
        &self.right[&(beta.to_string(), e.to_string())]
    }

    pub fn total_elements(&self) -> usize {
        self.entries.values().map(|v| v.len()).sum()
    }

    pub fn entry_sizes(&self) -> BTreeMap<(ObjId, ObjId), usize> {
        let mut out = BTreeMap::new();
        for b in self.cod.objects() {
            for a in self.dom.objects() {
                out.insert((b.clone(), a.clone()), self.entry(b, a).len());
            }
        }
        out
    }

    /// Exhaustive bifunctoriality checks: totality of both actions where
    /// typed, identity actions, associativity, and interchange.
    pub fn check_laws(&self) -> Result<()> {
        for ((b, a), elems) in &self.entries {
            if !self.cod.has_object(b) || !self.dom.has_object(a) {
                return Err(Error::DanglingRef(format!("entry ({b},{a})")));
            }
            for w in elems.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::DuplicateId(format!(
                        "entry ({b},{a}) is not sorted and duplicate-free near {}",
                        w[0]
                    )));
                }
            }
        }
        // Totality and typing of actions.
        for ((b, a), elems) in &self.entries {
            for e in elems {
                for alpha in self.dom.morphisms() {
                    if alpha.src != *a {
                        continue;
                    }
                    let v = self.left.get(&(alpha.id.clone(), e.clone())).ok_or_else(|| {
                        Error::ActionNotTotal(format!("left action of {} on {e}", alpha.id))
                    })?;
                    if !self.entry(b, &alpha.tgt).contains(v) {
                        return Err(Error::ActionLawViolation(format!(
                            "left action of {} sends {e} outside entry ({b},{})",
                            alpha.id, alpha.tgt
                        )));
                    }
                }
                for beta in self.cod.morphisms() {
                    if beta.tgt != *b {
                        continue;
                    }
                    let v = self.right.get(&(beta.id.clone(), e.clone())).ok_or_else(|| {
                        Error::ActionNotTotal(format!("right action of {} on {e}", beta.id))
                    })?;
                    if !self.entry(&beta.src, a).contains(v) {
                        return Err(Error::ActionLawViolation(format!(
                            "right action of {} sends {e} outside entry ({},{a})",
                            beta.id, beta.src
                        )));
                    }
                }
            }
        }
        // Identity, associativity, interchange, at the level of element ids.
        for ((b, a), elems) in &self.entries {
            for e in elems {
                if self.act_left(self.dom.identity(a), e) != e {
                    return Err(Error::ActionLawViolation(format!(
                        "left identity action moves {e}"
                    )));
                }
                if self.act_right(e, self.cod.identity(b)) != e {
                    return Err(Error::ActionLawViolation(format!(
                        "right identity action moves {e}"
                    )));
                }
                for alpha in self.dom.morphisms() {
                    if alpha.src != *a {
                        continue;
                    }
                    let ae = self.act_left(&alpha.id, e).clone();
                    for alpha2 in self.dom.morphisms() {
                        if alpha2.src != alpha.tgt {
                            continue;
                        }
                        let lhs = self.act_left(&alpha2.id, &ae);
                        let composite = self.dom.compose(&alpha2.id, &alpha.id);
                        if *lhs != *self.act_left(&composite, e) {
                            return Err(Error::ActionLawViolation(format!(
                                "left associativity fails on ({}, {}) at {e}",
                                alpha2.id, alpha.id
                            )));
                        }
                    }
                    // interchange with every right action applicable at (b, a)
                    for beta in self.cod.morphisms() {
                        if beta.tgt != *b {
                            continue;
                        }
                        let eb = self.act_right(e, &beta.id).clone();
                        if self.act_left(&alpha.id, &eb) != self.act_right(&ae, &beta.id) {
                            return Err(Error::ActionLawViolation(format!(
                                "interchange fails on ({}, {}) at {e}",
                                alpha.id, beta.id
                            )));
                        }
                    }
                }
                for beta in self.cod.morphisms() {
                    if beta.tgt != *b {
                        continue;
                    }
                    let eb = self.act_right(e, &beta.id).clone();
                    for beta2 in self.cod.morphisms() {
                        if beta2.tgt != beta.src {
                            continue;
                        }
                        let lhs = self.act_right(&eb, &beta2.id);
                        let composite = self.cod.compose(&beta.id, &beta2.id);
                        if *lhs != *self.act_right(e, &composite) {
                            return Err(Error::ActionLawViolation(format!(
                                "right associativity fails on ({}, {}) at {e}",
                                beta2.id, beta.id
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Raw module data as it appears in input files.
#[derive(Debug, Clone, Default)]
pub struct RawModule {
    pub entries: BTreeMap<(String, String), Vec<String>>,
    pub left: BTreeMap<(String, String), String>,
    pub right: BTreeMap<(String, String), String>,
}

pub fn validate_module(raw: &RawModule, a: &Arc<FinCat>, b: &Arc<FinCat>) -> Result<Module> {
    let mut entries: BTreeMap<(ObjId, ObjId), Vec<ElemId>> = BTreeMap::new();
    for ((bo, ao), elems) in &raw.entries {
        if !b.has_object(bo) {
            return Err(Error::DanglingRef(format!("entry object {bo}")));
        }
        if !a.has_object(ao) {
            return Err(Error::DanglingRef(format!("entry object {ao}")));
        }
        let mut v = elems.clone();
        v.sort();
        entries.insert((bo.clone(), ao.clone()), v);
    }
    for (alpha, _) in raw.left.keys() {
        if a.try_mor(alpha).is_none() {
            return Err(Error::DanglingRef(format!("left action morphism {alpha}")));
        }
    }
    for (beta, _) in raw.right.keys() {
        if b.try_mor(beta).is_none() {
            return Err(Error::DanglingRef(format!("right action morphism {beta}")));
        }
    }
    let m = Module {
        dom: a.clone(),
        cod: b.clone(),
        entries,
        left: raw.left.clone().into_iter().collect(),
        right: raw.right.clone().into_iter().collect(),
    };
    m.check_laws()?;
    Ok(m)
}

fn insert_entry(
    entries: &mut BTreeMap<(ObjId, ObjId), Vec<ElemId>>,
    b: &str,
    a: &str,
    elems: Vec<ElemId>,
) {
    if !elems.is_empty() {
        entries.insert((b.to_string(), a.to_string()), elems);
    }
}

/// The hom module of `A`: entries `E(b, a) = A(b, a)` with actions by
/// composition. Element ids are the morphism ids of `A`.
pub fn hom_module(a: &Arc<FinCat>) -> Module {
    let mut entries = BTreeMap::new();
    for b in a.objects() {
        for x in a.objects() {
            insert_entry(&mut entries, b, x, a.hom(b, x).to_vec());
        }
    }
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for e in a.morphisms() {
        for alpha in a.morphisms() {
            if alpha.src == e.tgt {
                left.insert((alpha.id.clone(), e.id.clone()), a.compose(&alpha.id, &e.id));
            }
            if alpha.tgt == e.src {
                right.insert((alpha.id.clone(), e.id.clone()), a.compose(&e.id, &alpha.id));
            }
        }
    }
    Module { dom: a.clone(), cod: a.clone(), entries, left, right }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// Representable modules of a functor `f: A -> B`.
///
/// Covariant `B|f`: a module from `A` to `B` with entries `B(b, f(a))`.
/// Contravariant `f|B`: a module from `B` to `A` with entries `B(f(a), b)`.
/// Elements are morphism ids of `B` in both cases.
pub fn representable(f: &FunctorMap, variance: Variance) -> Module {
    let a = &f.dom;
    let b = &f.cod;
    match variance {
        Variance::Covariant => {
            let mut entries = BTreeMap::new();
            for bo in b.objects() {
                for ao in a.objects() {
                    insert_entry(&mut entries, bo, ao, b.hom(bo, f.ob(ao)).to_vec());
                }
            }
            let mut left = BTreeMap::new();
            let mut right = BTreeMap::new();
            for e in b.morphisms() {
                for alpha in a.morphisms() {
                    if *f.ob(&alpha.src) == e.tgt {
                        left.insert(
                            (alpha.id.clone(), e.id.clone()),
                            b.compose(f.mor(&alpha.id), &e.id),
                        );
                    }
                }
                for beta in b.morphisms() {
                    if beta.tgt == e.src {
                        right.insert((beta.id.clone(), e.id.clone()), b.compose(&e.id, &beta.id));
                    }
                }
            }
            Module { dom: a.clone(), cod: b.clone(), entries, left, right }
        }
        Variance::Contravariant => {
            let mut entries = BTreeMap::new();
            for ao in a.objects() {
                for bo in b.objects() {
                    insert_entry(&mut entries, ao, bo, b.hom(f.ob(ao), bo).to_vec());
                }
            }
            let mut left = BTreeMap::new();
            let mut right = BTreeMap::new();
            for e in b.morphisms() {
                for beta in b.morphisms() {
                    if beta.src == e.tgt {
                        left.insert((beta.id.clone(), e.id.clone()), b.compose(&beta.id, &e.id));
                    }
                }
                for alpha in a.morphisms() {
                    if *f.ob(&alpha.tgt) == e.src {
                        right.insert(
                            (alpha.id.clone(), e.id.clone()),
                            b.compose(&e.id, f.mor(&alpha.id)),
                        );
                    }
                }
            }
            Module { dom: b.clone(), cod: a.clone(), entries, left, right }
        }
    }
}

/// The module of a cospan `f: B -> A <- C :g`: a module from `C` to `B` with
/// entries `A(f(b), g(c))`, actions by composition.
pub fn comma_module(f: &FunctorMap, g: &FunctorMap) -> Result<Module> {
    if !cats_eq(&f.cod, &g.cod) {
        return Err(Error::CodomainMismatch("comma_module requires cod(f) = cod(g)".into()));
    }
    let a = &f.cod;
    let b_cat = &f.dom;
    let c_cat = &g.dom;
    let mut entries = BTreeMap::new();
    for bo in b_cat.objects() {
        for co in c_cat.objects() {
            insert_entry(&mut entries, bo, co, a.hom(f.ob(bo), g.ob(co)).to_vec());
        }
    }
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for e in a.morphisms() {
        for gamma in c_cat.morphisms() {
            if *g.ob(&gamma.src) == e.tgt {
                left.insert((gamma.id.clone(), e.id.clone()), a.compose(g.mor(&gamma.id), &e.id));
            }
        }
        for beta in b_cat.morphisms() {
            if *f.ob(&beta.tgt) == e.src {
                right.insert((beta.id.clone(), e.id.clone()), a.compose(&e.id, f.mor(&beta.id)));
            }
        }
    }
    Ok(Module { dom: c_cat.clone(), cod: b_cat.clone(), entries, left, right })
}

/// Restrict (pull back) a module `E: A -|-> B` along `a: A' -> A` and
/// `b: B' -> B`. Entries are `E(b(b'), a(a'))` with the same element ids;
/// actions restrict along the functors.
pub fn restrict_module(e: &Module, a: &FunctorMap, b: &FunctorMap) -> Result<Module> {
    if !cats_eq(&a.cod, &e.dom) || !cats_eq(&b.cod, &e.cod) {
        return Err(Error::BoundaryMismatch("restriction functors do not match the module".into()));
    }
    let mut entries = BTreeMap::new();
    for bo in b.dom.objects() {
        for ao in a.dom.objects() {
            insert_entry(&mut entries, bo, ao, e.entry(b.ob(bo), a.ob(ao)).to_vec());
        }
    }
    let mut left = BTreeMap::new();
    for alpha in a.dom.morphisms() {
        let img = a.mor(&alpha.id);
        for ((_, ecol), elems) in &e.entries {
            if ecol != a.ob(&alpha.src) {
                continue;
            }
            for el in elems {
                left.insert(
                    (alpha.id.clone(), el.clone()),
                    e.act_left(img, el).clone(),
                );
            }
        }
    }
    let mut right = BTreeMap::new();
    for beta in b.dom.morphisms() {
        let img = b.mor(&beta.id);
        for ((erow, _), elems) in &e.entries {
            if erow != b.ob(&beta.tgt) {
                continue;
            }
            for el in elems {
                right.insert(
                    (beta.id.clone(), el.clone()),
                    e.act_right(el, img).clone(),
                );
            }
        }
    }
    Ok(Module { dom: a.dom.clone(), cod: b.dom.clone(), entries, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{self, FinCat, RawCategory};

    pub(crate) fn walking_arrow() -> Arc<FinCat> {
        Arc::new(
            FinCat::validate(&RawCategory {
                objects: vec!["0".into(), "1".into()],
                morphisms: vec![("a".into(), "0".into(), "1".into())],
                comp: vec![],
            })
            .unwrap(),
        )
    }

    #[test]
    fn hom_module_of_walking_arrow() {
        let two = walking_arrow();
        let h = hom_module(&two);
        h.check_laws().unwrap();
        assert_eq!(h.entry("0", "0").len(), 1);
        assert_eq!(h.entry("0", "1").len(), 1);
        assert_eq!(h.entry("1", "0").len(), 0);
        assert_eq!(h.entry("1", "1").len(), 1);
    }

    #[test]
    fn hom_module_of_point() {
        let one = Arc::new(cat::terminal());
        let h = hom_module(&one);
        h.check_laws().unwrap();
        assert_eq!(h.total_elements(), 1);
    }

    #[test]
    fn representable_entries() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let f1 = FunctorMap::pick(&one, &two, "1");
        let cov = representable(&f1, Variance::Covariant);
        cov.check_laws().unwrap();
        assert_eq!(cov.entry("0", "*").len(), 1);
        assert_eq!(cov.entry("1", "*").len(), 1);

        let f0 = FunctorMap::pick(&one, &two, "0");
        let con = representable(&f0, Variance::Contravariant);
        con.check_laws().unwrap();
        assert_eq!(con.entry("*", "0").len(), 1);
        assert_eq!(con.entry("*", "1").len(), 1);
    }

    #[test]
    fn representable_of_identity_is_hom() {
        let two = walking_arrow();
        let id = FunctorMap::identity(&two);
        assert_eq!(representable(&id, Variance::Covariant), hom_module(&two));
    }

    #[test]
    fn comma_module_entries() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let id = FunctorMap::identity(&two);
        assert_eq!(comma_module(&id, &id).unwrap(), hom_module(&two));

        let f0 = FunctorMap::pick(&one, &two, "0");
        let f1 = FunctorMap::pick(&one, &two, "1");
        let m = comma_module(&f0, &f1).unwrap();
        assert_eq!(m.entry("*", "*").len(), 1);
        let m = comma_module(&f1, &f0).unwrap();
        assert_eq!(m.entry("*", "*").len(), 0);
    }

    #[test]
    fn restriction_along_identities_is_identity() {
        let two = walking_arrow();
        let h = hom_module(&two);
        let id = FunctorMap::identity(&two);
        let r = restrict_module(&h, &id, &id).unwrap();
        assert_eq!(r, h);
    }

    #[test]
    fn restriction_entries() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let h = hom_module(&two);
        let p0 = FunctorMap::pick(&one, &two, "0");
        let p1 = FunctorMap::pick(&one, &two, "1");
        // restrict along (a = pick 0, b = pick 1): entry hom(1, 0) = empty
        let r = restrict_module(&h, &p0, &p1).unwrap();
        r.check_laws().unwrap();
        assert_eq!(r.entry("*", "*").len(), 0);
        // restrict along (a = pick 1, b = pick 0): entry hom(0, 1), one element
        let r = restrict_module(&h, &p1, &p0).unwrap();
        r.check_laws().unwrap();
        assert_eq!(r.entry("*", "*").len(), 1);
        // pullback of a module is a module
        r.check_laws().unwrap();
    }

    #[test]
    fn validate_module_roundtrip_and_rejection() {
        let one = Arc::new(cat::terminal());
        // single entry set over A = B = point, trivial actions
        let raw = RawModule {
            entries: BTreeMap::from([(("*".to_string(), "*".to_string()), vec!["e".to_string()])]),
            left: BTreeMap::from([(("id:*".to_string(), "e".to_string()), "e".to_string())]),
            right: BTreeMap::from([(("id:*".to_string(), "e".to_string()), "e".to_string())]),
        };
        assert!(validate_module(&raw, &one, &one).is_ok());

        // hom module of the arrow validates
        let two = walking_arrow();
        let h = hom_module(&two);
        let raw = RawModule {
            entries: h.entries.clone().into_iter().collect(),
            left: h.left.clone().into_iter().collect(),
            right: h.right.clone().into_iter().collect(),
        };
        assert_eq!(validate_module(&raw, &two, &two).unwrap(), h);

        // break associativity on a 3-morphism chain
        let chain = Arc::new(
            FinCat::validate(&RawCategory {
                objects: vec!["0".into(), "1".into(), "2".into()],
                morphisms: vec![
                    ("f".into(), "0".into(), "1".into()),
                    ("g".into(), "1".into(), "2".into()),
                    ("h".into(), "0".into(), "2".into()),
                ],
                comp: vec![(("g".into(), "f".into()), "h".into())],
            })
            .unwrap(),
        );
        let one_cat = Arc::new(cat::terminal());
        // module from chain to point with two elements in column 0 so that a
        // broken left action can disagree with the composite
        let mut raw = RawModule::default();
        raw.entries.insert(("*".into(), "0".into()), vec!["x".into(), "y".into()]);
        raw.entries.insert(("*".into(), "1".into()), vec!["u".into()]);
        raw.entries.insert(("*".into(), "2".into()), vec!["v".into(), "w".into()]);
        for (o, es) in [("0", vec!["x", "y"]), ("1", vec!["u"]), ("2", vec!["v", "w"])] {
            for e in es {
                raw.left.insert((format!("id:{o}"), e.into()), e.into());
                raw.right.insert(("id:*".into(), e.into()), e.into());
            }
        }
        raw.left.insert(("f".into(), "x".into()), "u".into());
        raw.left.insert(("f".into(), "y".into()), "u".into());
        raw.left.insert(("g".into(), "u".into()), "v".into());
        // declared h-action disagrees with g after f on x
        raw.left.insert(("h".into(), "x".into()), "w".into());
        raw.left.insert(("h".into(), "y".into()), "v".into());
        match validate_module(&raw, &chain, &one_cat) {
            Err(Error::ActionLawViolation(_)) => {}
            other => panic!("expected ActionLawViolation, got {other:?}"),
        }
    }
}

//! Two-sided discrete fibrations: the span encoding of a module.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{FinCat, MorData, MorId, ObjId};
use crate::error::{Error, Result, TsdfWitness};
use crate::functor::FunctorMap;
use crate::module::{ElemId, Module};

/// A span `A <- E -> B` presented by a total category and two projections.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanRep {
    pub total: Arc<FinCat>,
    pub q: FunctorMap,
    pub p: FunctorMap,
}

pub fn element_object_id(a: &str, b: &str, e: &str) -> ObjId {
    format!("({a},{b},{e})")
}

fn element_mor_id(alpha: &str, beta: &str, src: &str, tgt: &str) -> MorId {
    format!("({alpha},{beta}):{src}->{tgt}")
}

/// The category of elements of a module `E: A -|-> B`.
///
/// Objects are `(a, b, e)` with `e` in `E(b, a)`; a morphism
/// `(alpha, beta): (a, b, e) -> (a', b', e')` exists iff
/// `alpha . e = e' . beta`. The projections `q`, `p` land in `A` and `B`.
pub fn category_of_elements(e: &Module) -> SpanRep {
    let a_cat = &e.dom;
    let b_cat = &e.cod;
    let mut objects: Vec<(ObjId, ObjId, ObjId, ElemId)> = Vec::new();
    for ((b, a), elems) in &e.entries {
        for el in elems {
            objects.push((element_object_id(a, b, el), a.clone(), b.clone(), el.clone()));
        }
    }
    let mut morphisms = Vec::new();
    let mut parts: BTreeMap<MorId, (MorId, MorId)> = BTreeMap::new();
    for (sid, sa, sb, se) in &objects {
        for (tid, ta, tb, te) in &objects {
            for alpha in a_cat.hom(sa, ta) {
                for beta in b_cat.hom(sb, tb) {
                    if e.act_left(alpha, se) == e.act_right(te, beta) {
                        let id = element_mor_id(alpha, beta, sid, tid);
                        parts.insert(id.clone(), (alpha.clone(), beta.clone()));
                        morphisms.push(MorData { id, src: sid.clone(), tgt: tid.clone() });
                    }
                }
            }
        }
    }
    let mut identities = BTreeMap::new();
    for (oid, a, b, _) in &objects {
        identities
            .insert(oid.clone(), element_mor_id(a_cat.identity(a), b_cat.identity(b), oid, oid));
    }
    let mut comp = BTreeMap::new();
    for m1 in &morphisms {
        for m2 in &morphisms {
            if m1.tgt != m2.src {
                continue;
            }
            let (a2, b2) = &parts[&m2.id];
            let (a1, b1) = &parts[&m1.id];
            comp.insert(
                (m2.id.clone(), m1.id.clone()),
                element_mor_id(&a_cat.compose(a2, a1), &b_cat.compose(b2, b1), &m1.src, &m2.tgt),
            );
        }
    }
    let total = Arc::new(FinCat::from_parts(
        objects.iter().map(|(id, ..)| id.clone()).collect(),
        morphisms,
        identities,
        comp,
    ));
    let mut q_obj = BTreeMap::new();
    let mut p_obj = BTreeMap::new();
    for (oid, a, b, _) in &objects {
        q_obj.insert(oid.clone(), a.clone());
        p_obj.insert(oid.clone(), b.clone());
    }
    let mut q_mor = BTreeMap::new();
    let mut p_mor = BTreeMap::new();
    for m in total.morphisms() {
        let (alpha, beta) = &parts[&m.id];
        q_mor.insert(m.id.clone(), alpha.clone());
        p_mor.insert(m.id.clone(), beta.clone());
    }
    SpanRep {
        total: total.clone(),
        q: FunctorMap { dom: total.clone(), cod: a_cat.clone(), on_obj: q_obj, on_mor: q_mor },
        p: FunctorMap { dom: total, cod: b_cat.clone(), on_obj: p_obj, on_mor: p_mor },
    }
}

/// Right lift: the unique morphism into `x` over `(identity, beta)`.
fn right_lifts(s: &SpanRep, x: &ObjId, beta: &str) -> Vec<MorId> {
    let idq = s.q.cod.identity(s.q.ob(x));
    s.total
        .morphisms()
        .iter()
        .filter(|m| m.tgt == *x && s.p.mor(&m.id) == beta && s.q.mor(&m.id) == idq)
        .map(|m| m.id.clone())
        .collect()
}

/// Left lift: the unique morphism out of `x` over `(alpha, identity)`.
fn left_lifts(s: &SpanRep, x: &ObjId, alpha: &str) -> Vec<MorId> {
    let idp = s.p.cod.identity(s.p.ob(x));
    s.total
        .morphisms()
        .iter()
        .filter(|m| m.src == *x && s.q.mor(&m.id) == alpha && s.p.mor(&m.id) == idp)
        .map(|m| m.id.clone())
        .collect()
}

/// Check the two-sided discrete fibration conditions, returning a witness on
/// failure: unique right lifts, unique left lifts, and every morphism equal
/// to the composite of the right lift of its codomain-side image after the
/// left lift of its domain-side image (which makes fibers discrete and the
/// two lifts commute).
pub fn check_tsdf(s: &SpanRep) -> std::result::Result<(), TsdfWitness> {
    for x in s.total.objects() {
        for beta in s.p.cod.morphisms() {
            if beta.tgt != *s.p.ob(x) {
                continue;
            }
            let lifts = right_lifts(s, x, &beta.id);
            if lifts.len() != 1 {
                return Err(TsdfWitness::RightLift {
                    object: x.clone(),
                    arrow: beta.id.clone(),
                    count: lifts.len(),
                });
            }
        }
        for alpha in s.q.cod.morphisms() {
            if alpha.src != *s.q.ob(x) {
                continue;
            }
            let lifts = left_lifts(s, x, &alpha.id);
            if lifts.len() != 1 {
                return Err(TsdfWitness::LeftLift {
                    object: x.clone(),
                    arrow: alpha.id.clone(),
                    count: lifts.len(),
                });
            }
        }
    }
    for m in s.total.morphisms() {
        let l = &left_lifts(s, &m.src, s.q.mor(&m.id))[0];
        let r = &right_lifts(s, &m.tgt, s.p.mor(&m.id))[0];
        let lm = s.total.mor(l);
        let rm = s.total.mor(r);
        if lm.tgt != rm.src || s.total.compose(r, l) != m.id {
            return Err(TsdfWitness::Factorization { morphism: m.id.clone() });
        }
    }
    Ok(())
}

pub fn is_tsdf(s: &SpanRep) -> bool {
    check_tsdf(s).is_ok()
}

/// Decode a two-sided discrete fibration into a module. Entries are fibers;
/// actions are given by the unique lifts.
pub fn span_to_module(s: &SpanRep) -> Result<Module> {
    check_tsdf(s).map_err(Error::NotDiscreteFibration)?;
    let a_cat = &s.q.cod;
    let b_cat = &s.p.cod;
    let mut entries: BTreeMap<(ObjId, ObjId), Vec<ElemId>> = BTreeMap::new();
    for x in s.total.objects() {
        entries.entry((s.p.ob(x).clone(), s.q.ob(x).clone())).or_default().push(x.clone());
    }
    for v in entries.values_mut() {
        v.sort();
    }
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for x in s.total.objects() {
        for alpha in a_cat.morphisms() {
            if alpha.src == *s.q.ob(x) {
                let lift = &left_lifts(s, x, &alpha.id)[0];
                left.insert((alpha.id.clone(), x.clone()), s.total.mor(lift).tgt.clone());
            }
        }
        for beta in b_cat.morphisms() {
            if beta.tgt == *s.p.ob(x) {
                let lift = &right_lifts(s, x, &beta.id)[0];
                right.insert((beta.id.clone(), x.clone()), s.total.mor(lift).src.clone());
            }
        }
    }
    let m = Module { dom: a_cat.clone(), cod: b_cat.clone(), entries, left, right };
    m.check_laws()?;
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{FinCat, RawCategory};
    use crate::comma::arrow_category;
    use crate::module::{hom_module, representable, Variance};

    fn walking_arrow() -> Arc<FinCat> {
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
    fn elements_of_hom_is_the_arrow_category() {
        let two = walking_arrow();
        let el = category_of_elements(&hom_module(&two));
        el.total.check_laws().unwrap();
        let ar = arrow_category(&two);
        assert_eq!(el.total.objects().len(), ar.cat.objects().len());
        assert_eq!(el.total.morphisms().len(), ar.cat.morphisms().len());
        assert!(is_tsdf(&el));
    }

    #[test]
    fn elements_of_empty_module_is_empty() {
        let two = walking_arrow();
        let mut e = hom_module(&two);
        e.entries.clear();
        e.left.clear();
        e.right.clear();
        let el = category_of_elements(&e);
        assert!(el.total.is_empty());
        assert!(is_tsdf(&el));
    }

    #[test]
    fn elements_of_representable() {
        let two = walking_arrow();
        let one = Arc::new(crate::cat::terminal());
        let f1 = FunctorMap::pick(&one, &two, "1");
        let el = category_of_elements(&representable(&f1, Variance::Covariant));
        assert_eq!(el.total.objects().len(), 2);
        assert_eq!(el.total.morphisms().len(), 3);
    }

    #[test]
    fn identity_span_on_arrow_is_not_discrete() {
        let two = walking_arrow();
        let id = FunctorMap::identity(&two);
        let s = SpanRep { total: two.clone(), q: id.clone(), p: id };
        match check_tsdf(&s) {
            Err(TsdfWitness::RightLift { count: 0, .. })
            | Err(TsdfWitness::LeftLift { count: 0, .. }) => {}
            other => panic!("expected a missing lift, got {other:?}"),
        }
    }

    #[test]
    fn non_discrete_fiber_is_rejected() {
        // A span over (point, point) whose total category has a non-identity
        // morphism inside one fiber.
        let one = Arc::new(crate::cat::terminal());
        let two = walking_arrow();
        let bang = FunctorMap::bang(&two, &one);
        let s = SpanRep { total: two, q: bang.clone(), p: bang };
        match check_tsdf(&s) {
            Err(TsdfWitness::RightLift { count: 2, .. })
            | Err(TsdfWitness::LeftLift { count: 2, .. }) => {}
            other => panic!("expected a doubled lift, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_hom_module() {
        let two = walking_arrow();
        let h = hom_module(&two);
        let el = category_of_elements(&h);
        let h2 = span_to_module(&el).unwrap();
        // entries correspond under (a, b, e) <-> e
        for ((b, a), elems) in &h.entries {
            let got = h2.entry(b, a);
            assert_eq!(got.len(), elems.len());
            for e in elems {
                assert!(got.contains(&element_object_id(a, b, e)));
            }
        }
        // actions correspond
        for ((alpha, e), v) in &h.left {
            let src = h.entries.iter().find(|(_, es)| es.contains(e)).unwrap().0;
            let x = element_object_id(&src.1, &src.0, e);
            let tgt_col = two.mor(alpha).tgt.clone();
            assert_eq!(
                *h2.act_left(alpha, &x),
                element_object_id(&tgt_col, &src.0, v)
            );
        }
    }
}

//! Comma categories, arrow categories, and 1-cell induction.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{FinCat, MorData, ObjId};
use crate::error::{Error, Result};
use crate::functor::{cats_eq, FunctorMap, NatTrans};

/// The comma category of a cospan `f: B -> A <- C :g` with its projections
/// and canonical square.
///
/// Objects are triples `(c, b, alpha: f(b) -> g(c))`; `p1` projects to `C`,
/// `p0` to `B`, and `phi: f . p0 => g . p1` has component `alpha` at each
/// object.
#[derive(Debug, Clone, PartialEq)]
pub struct CommaData {
    pub cat: Arc<FinCat>,
    pub p1: FunctorMap,
    pub p0: FunctorMap,
    pub phi: NatTrans,
    pub f: FunctorMap,
    pub g: FunctorMap,
}

pub fn comma_object_id(c: &str, b: &str, alpha: &str) -> ObjId {
    format!("({c},{b},{alpha})")
}

pub fn comma_morphism_id(gamma: &str, beta: &str, src: &str, tgt: &str) -> String {
    format!("({gamma},{beta}):{src}->{tgt}")
}

pub fn comma(f: &FunctorMap, g: &FunctorMap) -> Result<CommaData> {
    if !cats_eq(&f.cod, &g.cod) {
        return Err(Error::CodomainMismatch("comma requires cod(f) = cod(g)".into()));
    }
    let a = &f.cod;
    let b_cat = &f.dom;
    let c_cat = &g.dom;

    // objects (c, b, alpha: f(b) -> g(c))
    let mut objects: Vec<(ObjId, ObjId, ObjId, String)> = Vec::new(); // (id, c, b, alpha)
    for c in c_cat.objects() {
        for b in b_cat.objects() {
            for alpha in a.hom(f.ob(b), g.ob(c)) {
                objects.push((comma_object_id(c, b, alpha), c.clone(), b.clone(), alpha.clone()));
            }
        }
    }

    // morphisms (gamma: c -> c', beta: b -> b') with g(gamma) . alpha = alpha' . f(beta)
    let mut morphisms: Vec<MorData> = Vec::new();
    let mut mor_parts: BTreeMap<String, (String, String)> = BTreeMap::new(); // id -> (gamma, beta)
    for (sid, sc, sb, salpha) in &objects {
        for (tid, tc, tb, talpha) in &objects {
            for gamma in c_cat.hom(sc, tc) {
                for beta in b_cat.hom(sb, tb) {
                    if a.compose(g.mor(gamma), salpha) == a.compose(talpha, f.mor(beta)) {
                        let id = comma_morphism_id(gamma, beta, sid, tid);
                        mor_parts.insert(id.clone(), (gamma.clone(), beta.clone()));
                        morphisms.push(MorData { id, src: sid.clone(), tgt: tid.clone() });
                    }
                }
            }
        }
    }

    let mut identities = BTreeMap::new();
    for (oid, c, b, _) in &objects {
        identities.insert(
            oid.clone(),
            comma_morphism_id(c_cat.identity(c), b_cat.identity(b), oid, oid),
        );
    }

    let mut comp = BTreeMap::new();
    for m1 in &morphisms {
        for m2 in &morphisms {
            if m1.tgt != m2.src {
                continue;
            }
            let (g2, b2) = &mor_parts[&m2.id];
            let (g1, b1) = &mor_parts[&m1.id];
            let id = comma_morphism_id(
                &c_cat.compose(g2, g1),
                &b_cat.compose(b2, b1),
                &m1.src,
                &m2.tgt,
            );
            comp.insert((m2.id.clone(), m1.id.clone()), id);
        }
    }

    let cat = Arc::new(FinCat::from_parts(
        objects.iter().map(|(id, ..)| id.clone()).collect(),
        morphisms,
        identities,
        comp,
    ));

    let mut p1_obj = BTreeMap::new();
    let mut p0_obj = BTreeMap::new();
    let mut phi_comp = BTreeMap::new();
    for (oid, c, b, alpha) in &objects {
        p1_obj.insert(oid.clone(), c.clone());
        p0_obj.insert(oid.clone(), b.clone());
        phi_comp.insert(oid.clone(), alpha.clone());
    }
    let mut p1_mor = BTreeMap::new();
    let mut p0_mor = BTreeMap::new();
    for m in cat.morphisms() {
        let (gamma, beta) = &mor_parts[&m.id];
        p1_mor.insert(m.id.clone(), gamma.clone());
        p0_mor.insert(m.id.clone(), beta.clone());
    }
    let p1 = FunctorMap { dom: cat.clone(), cod: c_cat.clone(), on_obj: p1_obj, on_mor: p1_mor };
    let p0 = FunctorMap { dom: cat.clone(), cod: b_cat.clone(), on_obj: p0_obj, on_mor: p0_mor };
    let phi = NatTrans { src: f.compose(&p0), tgt: g.compose(&p1), components: phi_comp };

    Ok(CommaData { cat, p1, p0, phi, f: f.clone(), g: g.clone() })
}

/// `A^2 = id_A down id_A`, with `p1` the codomain projection and `p0` the
/// domain projection.
pub fn arrow_category(a: &Arc<FinCat>) -> CommaData {
    let id = FunctorMap::identity(a);
    comma(&id, &id).expect("identity cospan")
}

/// 1-cell induction: given `alpha: f.b => g.c`, the unique functor
/// `a: X -> f|g` with `p0.a = b`, `p1.a = c`, and `phi.a = alpha`.
pub fn induce_one_cell(
    alpha: &NatTrans,
    b: &FunctorMap,
    c: &FunctorMap,
    target: &CommaData,
) -> Result<FunctorMap> {
    if !cats_eq(&b.dom, &c.dom) {
        return Err(Error::BoundaryMismatch("b and c must share a domain".into()));
    }
    if !cats_eq(&b.cod, &target.f.dom) || !cats_eq(&c.cod, &target.g.dom) {
        return Err(Error::BoundaryMismatch("cone legs do not match the comma cospan".into()));
    }
    let fb = target.f.compose(b);
    let gc = target.g.compose(c);
    if alpha.src != fb || alpha.tgt != gc {
        return Err(Error::BoundaryMismatch(
            "2-cell boundary does not match f.b => g.c".into(),
        ));
    }
    let x = &b.dom;
    let mut on_obj = BTreeMap::new();
    for o in x.objects() {
        on_obj.insert(o.clone(), comma_object_id(c.ob(o), b.ob(o), alpha.at(o)));
    }
    let mut on_mor = BTreeMap::new();
    for m in x.morphisms() {
        on_mor.insert(
            m.id.clone(),
            comma_morphism_id(c.mor(&m.id), b.mor(&m.id), &on_obj[&m.src], &on_obj[&m.tgt]),
        );
    }
    let a = FunctorMap { dom: x.clone(), cod: target.cat.clone(), on_obj, on_mor };
    a.check_laws()?;
    debug_assert_eq!(target.p0.compose(&a), *b);
    debug_assert_eq!(target.p1.compose(&a), *c);
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{self, RawCategory};

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
    fn arrow_category_of_walking_arrow() {
        let two = walking_arrow();
        let ar = arrow_category(&two);
        assert_eq!(ar.cat.objects().len(), 3);
        assert_eq!(ar.cat.morphisms().len(), 6);
        ar.cat.check_laws().unwrap();
        ar.p0.check_laws().unwrap();
        ar.p1.check_laws().unwrap();
        ar.phi.check_laws().unwrap();
    }

    #[test]
    fn arrow_category_of_point_and_empty() {
        let one = Arc::new(cat::terminal());
        let ar = arrow_category(&one);
        assert_eq!(ar.cat.objects().len(), 1);
        assert_eq!(ar.cat.morphisms().len(), 1);
        let zero = Arc::new(cat::empty());
        let ar0 = arrow_category(&zero);
        assert!(ar0.cat.is_empty());
    }

    #[test]
    fn comma_of_points() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let f0 = FunctorMap::pick(&one, &two, "0");
        let f1 = FunctorMap::pick(&one, &two, "1");
        // hom(0, 1) is a singleton
        let c = comma(&f0, &f1).unwrap();
        assert_eq!(c.cat.objects().len(), 1);
        assert_eq!(c.cat.morphisms().len(), 1);
        // hom(1, 0) is empty
        let c = comma(&f1, &f0).unwrap();
        assert!(c.cat.is_empty());
    }

    #[test]
    fn induced_cell_from_phi_is_identity() {
        let two = walking_arrow();
        let ar = arrow_category(&two);
        let a = induce_one_cell(&ar.phi, &ar.p0, &ar.p1, &ar).unwrap();
        assert_eq!(a, FunctorMap::identity(&ar.cat));
    }

    #[test]
    fn induced_cell_picks_the_arrow_object() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let ar = arrow_category(&two);
        let b = FunctorMap::pick(&one, &two, "0");
        let c = FunctorMap::pick(&one, &two, "1");
        let alpha = NatTrans::validate(
            &BTreeMap::from([("*".to_string(), "a".to_string())]),
            &b,
            &c,
        )
        .unwrap();
        let a = induce_one_cell(&alpha, &b, &c, &ar).unwrap();
        assert_eq!(a.ob("*"), "(1,0,a)");
        // reading back the boundary is the identity on the input
        assert_eq!(ar.p0.compose(&a), b);
        assert_eq!(ar.p1.compose(&a), c);
        assert_eq!(ar.phi.whisker_right(&a).components, alpha.components);
    }

    #[test]
    fn mismatched_boundary_is_rejected() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let ar = arrow_category(&two);
        let b = FunctorMap::pick(&one, &two, "0");
        let c = FunctorMap::pick(&one, &two, "1");
        let alpha = NatTrans::validate(
            &BTreeMap::from([("*".to_string(), "a".to_string())]),
            &b,
            &c,
        )
        .unwrap();
        // swap the legs: boundary no longer matches
        assert!(matches!(
            induce_one_cell(&alpha, &c, &b, &ar),
            Err(Error::BoundaryMismatch(_))
        ));
    }
}

//! Exact squares, final and initial functors, fully faithful functors,
//! adjoint search, and pointwise Kan extensions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::cat::{self, MorId, ObjId};
use crate::cell::{cell_keys, Cell};
use crate::comma::{comma, comma_object_id, CommaData};
use crate::error::{Error, Result};
use crate::functor::{cats_eq, FunctorMap, NatTrans};
use crate::limits::{
    cofactorizations, colimit_of_diagram_budgeted, enumerate_cocones, enumerate_cones,
    factorizations, limit_of_diagram_budgeted, Cone,
};
use crate::module::{comma_module, representable, Variance};
use crate::tensor::{is_composite_cell, right_extension_module};

/// A square in the homotopy 2-category: `lam: f . h => g . k` over the
/// boundary `h: D -> B`, `k: D -> C`, `f: B -> A`, `g: C -> A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Square {
    pub h: FunctorMap,
    pub k: FunctorMap,
    pub f: FunctorMap,
    pub g: FunctorMap,
    pub lam: NatTrans,
}

impl Square {
    pub fn new(
        h: FunctorMap,
        k: FunctorMap,
        f: FunctorMap,
        g: FunctorMap,
        lam: NatTrans,
    ) -> Result<Square> {
        if !cats_eq(&h.dom, &k.dom) {
            return Err(Error::BoundaryMismatch("square legs must share a domain".into()));
        }
        if !cats_eq(&h.cod, &f.dom) || !cats_eq(&k.cod, &g.dom) || !cats_eq(&f.cod, &g.cod) {
            return Err(Error::BoundaryMismatch("square boundary does not compose".into()));
        }
        if lam.src != f.compose(&h) || lam.tgt != g.compose(&k) {
            return Err(Error::BoundaryMismatch("2-cell does not fill the square".into()));
        }
        Ok(Square { h, k, f, g, lam })
    }

    /// The comma square of a cospan `f: B -> A <- C :g`.
    pub fn comma_square(f: &FunctorMap, g: &FunctorMap) -> Result<(Square, CommaData)> {
        let c = comma(f, g)?;
        let sq = Square::new(c.p0.clone(), c.p1.clone(), f.clone(), g.clone(), c.phi.clone())?;
        Ok((sq, c))
    }
}

/// The canonical cell `k|C x B|h => f|g` of a square, with component
/// `(gamma: k(d) -> c, beta: b -> h(d)) |-> g(gamma) . lam_d . f(beta)`.
pub fn square_canonical_cell(s: &Square) -> Result<Cell> {
    let a = &s.f.cod;
    let kc = Arc::new(representable(&s.k, Variance::Contravariant));
    let bh = Arc::new(representable(&s.h, Variance::Covariant));
    let target = Arc::new(comma_module(&s.f, &s.g)?);
    let source = vec![kc, bh];
    let vf = FunctorMap::identity(&s.g.dom);
    let vg = FunctorMap::identity(&s.f.dom);
    let mut components = BTreeMap::new();
    for key in cell_keys(&source, &vf) {
        let (objs, elems) = &key;
        let d = &objs[1];
        let gamma = &elems[0]; // k(d) -> c in C
        let beta = &elems[1]; // b -> h(d) in B
        let v = a.compose(
            s.g.mor(gamma),
            &a.compose(s.lam.at(d), s.f.mor(beta)),
        );
        components.insert(key.clone(), v);
    }
    Cell::new(source, target, vf, vg, components)
}

/// A square is exact when its canonical cell is a composite, i.e. the
/// induced map `(k|C) (x) (B|h) -> f|g` is an entrywise bijection.
pub fn is_exact_square(s: &Square) -> Result<bool> {
    is_composite_cell(&square_canonical_cell(s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Final,
    Initial,
}

/// Finality and initiality, computed by two routes that must agree: the
/// exactness of the squares against the point, and comma connectivity
/// (`b|k` connected for all `b` for final, `k|b` for initial). On a negative
/// answer the first disconnected comma is reported.
pub fn is_final_or_initial(k: &FunctorMap, which: Which) -> Result<(bool, Option<ObjId>)> {
    let one = Arc::new(cat::terminal());
    let a = &k.dom;
    let b = &k.cod;
    let bang_a = FunctorMap::bang(a, &one);
    let bang_b = FunctorMap::bang(b, &one);
    let id_one = FunctorMap::identity(&one);

    let square = match which {
        Which::Final => Square::new(
            k.clone(),
            bang_a.clone(),
            bang_b.clone(),
            id_one.clone(),
            NatTrans::identity(&bang_a),
        )?,
        Which::Initial => Square::new(
            bang_a.clone(),
            k.clone(),
            id_one.clone(),
            bang_b.clone(),
            NatTrans::identity(&bang_a),
        )?,
    };
    let exact = is_exact_square(&square)?;

    let mut witness = None;
    let mut connected = true;
    for bo in b.objects() {
        let pick = FunctorMap::pick(&one, b, bo);
        let cdata = match which {
            Which::Final => comma(&pick, k)?,
            Which::Initial => comma(k, &pick)?,
        };
        if !cat::is_connected(&cdata.cat) {
            connected = false;
            witness = Some(bo.clone());
            break;
        }
    }
    if exact != connected {
        return Err(Error::OracleDisagreement(format!(
            "exactness={exact} but connectivity={connected} for {which:?}"
        )));
    }
    Ok((exact, witness))
}

pub fn is_final(k: &FunctorMap) -> Result<bool> {
    Ok(is_final_or_initial(k, Which::Final)?.0)
}

pub fn is_initial(k: &FunctorMap) -> Result<bool> {
    Ok(is_final_or_initial(k, Which::Initial)?.0)
}

/// Fully faithful functors: the canonical map `A(a, a') -> B(k a, k a')` is
/// a bijection for every pair; equivalently the cell `hom_A => k|k` is an
/// entrywise isomorphism, checked through the composite criterion. Both
/// routes are computed and must agree.
pub fn is_fully_faithful(k: &FunctorMap) -> Result<bool> {
    let a = &k.dom;
    let b = &k.cod;
    let mut direct = true;
    'outer: for x in a.objects() {
        for y in a.objects() {
            let mut image: Vec<MorId> =
                a.hom(x, y).iter().map(|m| k.mor(m).clone()).collect();
            image.sort();
            image.dedup();
            if image.len() != a.hom(x, y).len() || image.len() != b.hom(k.ob(x), k.ob(y)).len() {
                direct = false;
                break 'outer;
            }
        }
    }

    let hom = Arc::new(crate::module::hom_module(a));
    let kk = Arc::new(comma_module(k, k)?);
    let ida = FunctorMap::identity(a);
    let components = cell_keys(std::slice::from_ref(&hom), &ida)
        .into_iter()
        .map(|key| {
            let v = k.mor(&key.1[0]).clone();
            (key, v)
        })
        .collect();
    let cell = Cell::new(vec![hom], kk, ida.clone(), ida, components)?;
    let via_cell = is_composite_cell(&cell)?;

    if direct != via_cell {
        return Err(Error::OracleDisagreement(format!(
            "fully-faithful routes disagree: direct={direct}, cell={via_cell}"
        )));
    }
    Ok(direct)
}

/// A right adjoint with its unit and counit.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjunction {
    pub u: FunctorMap,
    /// `id_B => u . f`
    pub unit: NatTrans,
    /// `f . u => id_A`
    pub counit: NatTrans,
}

/// Search for a right adjoint of `f: B -> A`: the first `u` in canonical
/// order with a natural entrywise bijection `f|A ~ B|u`, with unit and
/// counit extracted from the bijection at identities and the triangle
/// identities verified.
pub fn find_right_adjoint(f: &FunctorMap) -> Result<Option<Adjunction>> {
    let b_cat = &f.dom;
    let a_cat = &f.cod;
    let f_slice = Arc::new(comma_module(f, &FunctorMap::identity(a_cat))?);
    for u in crate::functor::enumerate_functors(a_cat, b_cat)? {
        let bu = Arc::new(representable(&u, Variance::Covariant));
        let Some(iso) = crate::tensor::find_entrywise_iso(&f_slice, &bu)? else {
            continue;
        };
        // unit at b: image of id_{f(b)} in B(b, u(f(b)))
        let mut unit_components = BTreeMap::new();
        for bo in b_cat.objects() {
            let fb = f.ob(bo).clone();
            let key = (vec![fb.clone(), bo.clone()], vec![a_cat.identity(&fb).clone()]);
            unit_components.insert(bo.clone(), iso.components[&key].clone());
        }
        // counit at a: preimage of id_{u(a)} in A(f(u(a)), a)
        let mut counit_components = BTreeMap::new();
        for ao in a_cat.objects() {
            let ua = u.ob(ao).clone();
            let idua = b_cat.identity(&ua).clone();
            let preimage = f_slice
                .entry(ua.as_str(), ao.as_str())
                .iter()
                .find(|phi| {
                    let key = (vec![ao.clone(), ua.clone()], vec![(*phi).clone()]);
                    iso.components[&key] == idua
                })
                .expect("entrywise bijection is surjective")
                .clone();
            counit_components.insert(ao.clone(), preimage);
        }
        let unit = NatTrans::validate(
            &unit_components,
            &FunctorMap::identity(b_cat),
            &u.compose(f),
        )?;
        let counit = NatTrans::validate(
            &counit_components,
            &f.compose(&u),
            &FunctorMap::identity(a_cat),
        )?;
        // triangle identities
        let tri1 = b_cat.objects().iter().all(|bo| {
            a_cat.compose(counit.at(f.ob(bo)), f.mor(unit.at(bo))) == *a_cat.identity(f.ob(bo))
        });
        let tri2 = a_cat.objects().iter().all(|ao| {
            b_cat.compose(u.mor(counit.at(ao)), unit.at(u.ob(ao))) == *b_cat.identity(u.ob(ao))
        });
        if tri1 && tri2 {
            return Ok(Some(Adjunction { u, unit, counit }));
        }
    }
    Ok(None)
}

/// A pointwise Kan extension: the extension functor, its universal 2-cell,
/// and per-object the comma category and (co)limit cone that computed it.
/// For the right extension `mu: r . k => f`; for the left one
/// `mu: f => r . k`.
#[derive(Debug, Clone)]
pub struct KanResult {
    pub r: FunctorMap,
    pub mu: NatTrans,
    pub per_object: BTreeMap<ObjId, (CommaData, Cone)>,
    pub dir: Direction,
}

impl KanResult {
    /// The extended functor `f`, read off the boundary of `mu`.
    pub fn original(&self) -> &FunctorMap {
        match self.dir {
            Direction::Right => &self.mu.tgt,
            Direction::Left => &self.mu.src,
        }
    }
}

/// Compute the pointwise Kan extension of `f: A -> C` along `k: A -> B`.
/// Right extensions take limits over the commas `b|k`, left extensions take
/// colimits over `k|b`; absent if any required (co)limit is missing.
pub fn pointwise_kan(k: &FunctorMap, f: &FunctorMap, dir: Direction) -> Result<Option<KanResult>> {
    let mut budget = Budget::new("pointwise_kan");
    pointwise_kan_budgeted(k, f, dir, &mut budget)
}

pub(crate) fn pointwise_kan_budgeted(
    k: &FunctorMap,
    f: &FunctorMap,
    dir: Direction,
    budget: &mut Budget,
) -> Result<Option<KanResult>> {
    if !cats_eq(&k.dom, &f.dom) {
        return Err(Error::DomainMismatch("extension requires dom(k) = dom(f)".into()));
    }
    let one = Arc::new(cat::terminal());
    let b_cat = &k.cod;
    let c_cat = &f.cod;

    let mut per_object: BTreeMap<ObjId, (CommaData, Cone)> = BTreeMap::new();
    let mut diagrams: BTreeMap<ObjId, FunctorMap> = BTreeMap::new();
    for bo in b_cat.objects() {
        let pick = FunctorMap::pick(&one, b_cat, bo);
        let (cdata, diagram) = match dir {
            Direction::Right => {
                let cdata = comma(&pick, k)?;
                let d = f.compose(&cdata.p1);
                (cdata, d)
            }
            Direction::Left => {
                let cdata = comma(k, &pick)?;
                let d = f.compose(&cdata.p0);
                (cdata, d)
            }
        };
        let cone = match dir {
            Direction::Right => limit_of_diagram_budgeted(&diagram, budget)?,
            Direction::Left => colimit_of_diagram_budgeted(&diagram, budget)?,
        };
        let Some((_, cone)) = cone else {
            return Ok(None);
        };
        per_object.insert(bo.clone(), (cdata, cone));
        diagrams.insert(bo.clone(), diagram);
    }

    // r on objects: the chosen apex
    let mut on_obj: BTreeMap<ObjId, ObjId> = BTreeMap::new();
    for (bo, (_, cone)) in &per_object {
        on_obj.insert(bo.clone(), cone.apex.clone());
    }
    // r on morphisms, by the unique cone factorizations
    let mut on_mor: BTreeMap<MorId, MorId> = BTreeMap::new();
    for beta in b_cat.morphisms() {
        let (src_c, src_cone) = &per_object[&beta.src];
        let (tgt_c, tgt_cone) = &per_object[&beta.tgt];
        match dir {
            Direction::Right => {
                // restrict the source cone along b'|k -> b|k for beta: b -> b'
                let mut legs = BTreeMap::new();
                for o in tgt_c.cat.objects() {
                    let a = tgt_c.p1.ob(o).clone();
                    let alpha = tgt_c.phi.at(o); // beta.tgt -> k(a)
                    let prec = b_cat.compose(alpha, &beta.id); // beta.src -> k(a)
                    let src_obj = comma_object_id(&a, "*", &prec);
                    legs.insert(o.clone(), src_cone.legs[&src_obj].clone());
                }
                let restricted = Cone { apex: src_cone.apex.clone(), legs };
                let d = &diagrams[&beta.tgt];
                let mut facs = factorizations(d, tgt_cone, &restricted);
                if facs.len() != 1 {
                    return Err(Error::OracleDisagreement(format!(
                        "expected a unique factorization assembling the extension at {}, found {}",
                        beta.id,
                        facs.len()
                    )));
                }
                on_mor.insert(beta.id.clone(), facs.remove(0));
            }
            Direction::Left => {
                // restrict the target cocone along k|b -> k|b' for beta: b -> b'
                let mut legs = BTreeMap::new();
                for o in src_c.cat.objects() {
                    let a = src_c.p0.ob(o).clone();
                    let alpha = src_c.phi.at(o); // k(a) -> beta.src
                    let postc = b_cat.compose(&beta.id, alpha); // k(a) -> beta.tgt
                    let tgt_obj = comma_object_id("*", &a, &postc);
                    legs.insert(o.clone(), tgt_cone.legs[&tgt_obj].clone());
                }
                let restricted = Cone { apex: tgt_cone.apex.clone(), legs };
                let d = &diagrams[&beta.src];
                let mut facs = cofactorizations(d, src_cone, &restricted);
                if facs.len() != 1 {
                    return Err(Error::OracleDisagreement(format!(
                        "expected a unique cofactorization assembling the extension at {}, found {}",
                        beta.id,
                        facs.len()
                    )));
                }
                on_mor.insert(beta.id.clone(), facs.remove(0));
            }
        }
    }
    let r = FunctorMap { dom: b_cat.clone(), cod: c_cat.clone(), on_obj, on_mor };
    r.check_laws()?;

    // mu from the cone legs at identities
    let mut mu_components = BTreeMap::new();
    for ao in k.dom.objects() {
        let ka = k.ob(ao).clone();
        let (_, cone) = &per_object[&ka];
        let o = match dir {
            Direction::Right => comma_object_id(ao, "*", b_cat.identity(&ka)),
            Direction::Left => comma_object_id("*", ao, b_cat.identity(&ka)),
        };
        mu_components.insert(ao.clone(), cone.legs[&o].clone());
    }
    let mu = match dir {
        Direction::Right => NatTrans::validate(&mu_components, &r.compose(k), f)?,
        Direction::Left => NatTrans::validate(&mu_components, f, &r.compose(k))?,
    };
    Ok(Some(KanResult { r, mu, per_object, dir }))
}

/// Verify that `(r, mu)` is a pointwise right Kan extension of `f` along `k`
/// by two independent routes that must agree:
///
/// 1. module route: the comparison from `C|r` into the right extension of
///    `C|f` along `B|k`, induced by `mu`, is an entrywise bijection;
/// 2. 2-categorical route: for every object `b`, pasting `mu` with the comma
///    square of `(b, k)` yields a terminal cone over `b|k`, verified against
///    every competing cone.
pub fn verify_pointwise_kan(
    k: &FunctorMap,
    f: &FunctorMap,
    r: &FunctorMap,
    mu: &NatTrans,
) -> Result<bool> {
    if mu.src != r.compose(k) || mu.tgt != *f {
        return Err(Error::BoundaryMismatch("mu must have boundary r . k => f".into()));
    }
    let one = Arc::new(cat::terminal());
    let b_cat = &k.cod;
    let c_cat = &f.cod;

    // route 1: module-level right extension
    let bk = Arc::new(representable(k, Variance::Covariant));
    let cf = Arc::new(representable(f, Variance::Covariant));
    let (rext, eval) = right_extension_module(&bk, &cf)?;
    let mut route1 = true;
    'outer: for co in c_cat.objects() {
        for bo in b_cat.objects() {
            // comparison C|r(c, b) -> R(c, b)
            let cr_entry: Vec<MorId> = c_cat.hom(co, r.ob(bo)).to_vec();
            if cr_entry.len() != rext.entry(co, bo).len() {
                route1 = false;
                break 'outer;
            }
            let mut images = Vec::new();
            for psi in &cr_entry {
                // the family a |-> (x: b -> k a) |-> mu_a . r(x) . psi
                let image = rext
                    .entry(co, bo)
                    .iter()
                    .find(|rho| {
                        k.dom.objects().iter().all(|ao| {
                            bk.entry(bo, ao).iter().all(|x| {
                                let key = (
                                    vec![ao.clone(), bo.clone(), co.clone()],
                                    vec![x.clone(), (*rho).clone()],
                                );
                                let expected = c_cat.compose(
                                    mu.at(ao),
                                    &c_cat.compose(r.mor(x), psi),
                                );
                                eval.components[&key] == expected
                            })
                        })
                    })
                    .cloned();
                match image {
                    Some(i) => images.push(i),
                    None => {
                        route1 = false;
                        break 'outer;
                    }
                }
            }
            images.sort();
            images.dedup();
            if images.len() != cr_entry.len() {
                route1 = false;
                break 'outer;
            }
        }
    }

    // route 2: per-object terminal cones after pasting with comma squares
    let mut budget = Budget::new("verify_pointwise_kan");
    let mut route2 = true;
    'outer2: for bo in b_cat.objects() {
        let pick = FunctorMap::pick(&one, b_cat, bo);
        let cdata = comma(&pick, k)?;
        let d = f.compose(&cdata.p1);
        let mut legs = BTreeMap::new();
        for o in cdata.cat.objects() {
            let ao = cdata.p1.ob(o).clone();
            let beta = cdata.phi.at(o); // bo -> k(ao)
            legs.insert(o.clone(), c_cat.compose(mu.at(&ao), r.mor(beta)));
        }
        let cone = Cone { apex: r.ob(bo).clone(), legs };
        if !cone.check(&d) {
            route2 = false;
            break;
        }
        for competing in enumerate_cones(&d, &mut budget)? {
            if factorizations(&d, &cone, &competing).len() != 1 {
                route2 = false;
                break 'outer2;
            }
        }
    }

    if route1 != route2 {
        return Err(Error::OracleDisagreement(format!(
            "pointwise Kan routes disagree: module={route1}, cones={route2}"
        )));
    }
    Ok(route1)
}

/// Dual verification for left extensions, used by the oracles.
pub fn verify_pointwise_lan(
    k: &FunctorMap,
    f: &FunctorMap,
    r: &FunctorMap,
    mu: &NatTrans,
) -> Result<bool> {
    if mu.src != *f || mu.tgt != r.compose(k) {
        return Err(Error::BoundaryMismatch("mu must have boundary f => r . k".into()));
    }
    let one = Arc::new(cat::terminal());
    let b_cat = &k.cod;
    let c_cat = &f.cod;
    let mut budget = Budget::new("verify_pointwise_lan");
    for bo in b_cat.objects() {
        let pick = FunctorMap::pick(&one, b_cat, bo);
        let cdata = comma(k, &pick)?;
        let d = f.compose(&cdata.p0);
        let mut legs = BTreeMap::new();
        for o in cdata.cat.objects() {
            let ao = cdata.p0.ob(o).clone();
            let alpha = cdata.phi.at(o); // k(ao) -> bo
            legs.insert(o.clone(), c_cat.compose(r.mor(alpha), mu.at(&ao)));
        }
        let cocone = Cone { apex: r.ob(bo).clone(), legs };
        for competing in enumerate_cocones(&d, &mut budget)? {
            if cofactorizations(&d, &cocone, &competing).len() != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{FinCat, RawCategory};
    use crate::functor::enumerate_functors;

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

    fn discrete2() -> Arc<FinCat> {
        Arc::new(
            FinCat::validate(&RawCategory {
                objects: vec!["x".into(), "y".into()],
                morphisms: vec![],
                comp: vec![],
            })
            .unwrap(),
        )
    }

    #[test]
    fn comma_squares_are_exact() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let id = FunctorMap::identity(&two);
        let (sq, _) = Square::comma_square(&id, &id).unwrap();
        assert!(is_exact_square(&sq).unwrap());
        let f0 = FunctorMap::pick(&one, &two, "0");
        let f1 = FunctorMap::pick(&one, &two, "1");
        for (f, g) in [(&f0, &f1), (&f1, &f0), (&f0, &f0)] {
            let (sq, _) = Square::comma_square(f, g).unwrap();
            assert!(is_exact_square(&sq).unwrap());
        }
    }

    #[test]
    fn empty_pullback_square_is_not_exact() {
        // cospan: pick 0, pick 1 into the walking arrow; apex empty
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let zero = Arc::new(cat::empty());
        let f0 = FunctorMap::pick(&one, &two, "0");
        let f1 = FunctorMap::pick(&one, &two, "1");
        let h = FunctorMap::bang(&zero, &one);
        let k = FunctorMap::bang(&zero, &one);
        let lam = NatTrans {
            src: f0.compose(&h),
            tgt: f1.compose(&k),
            components: BTreeMap::new(),
        };
        let sq = Square::new(h, k, f0, f1, lam).unwrap();
        assert!(!is_exact_square(&sq).unwrap());
        // witness: the tensor entry is empty while f|g has one element
        let cell = square_canonical_cell(&sq).unwrap();
        assert_eq!(cell.target.entry("*", "*").len(), 1);
        assert!(cell.components.is_empty());
    }

    #[test]
    fn identity_squares_are_exact() {
        let two = walking_arrow();
        for k in enumerate_functors(&two, &two).unwrap() {
            let sq = Square::new(
                k.clone(),
                FunctorMap::identity(&two),
                FunctorMap::identity(&two),
                k.clone(),
                NatTrans::identity(&k),
            )
            .unwrap();
            assert!(is_exact_square(&sq).unwrap());
        }
    }

    #[test]
    fn final_and_initial_detection() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let p1 = FunctorMap::pick(&one, &two, "1");
        let p0 = FunctorMap::pick(&one, &two, "0");
        assert!(is_final(&p1).unwrap());
        let (final0, witness) = is_final_or_initial(&p0, Which::Final).unwrap();
        assert!(!final0);
        assert_eq!(witness.as_deref(), Some("1"));
        assert!(is_initial(&p0).unwrap());
        assert!(!is_initial(&p1).unwrap());
        let id = FunctorMap::identity(&two);
        assert!(is_final(&id).unwrap());
        assert!(is_initial(&id).unwrap());
    }

    #[test]
    fn fully_faithful_detection() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        assert!(is_fully_faithful(&FunctorMap::pick(&one, &two, "0")).unwrap());
        assert!(is_fully_faithful(&FunctorMap::identity(&two)).unwrap());
        assert!(!is_fully_faithful(&FunctorMap::bang(&two, &one)).unwrap());
    }

    #[test]
    fn adjoint_search() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        // ! : 2 -> 1 has right adjoint picking the terminal object 1
        let bang = FunctorMap::bang(&two, &one);
        let adj = find_right_adjoint(&bang).unwrap().unwrap();
        assert_eq!(adj.u.ob("*"), "1");
        // identity is self-adjoint
        let id = FunctorMap::identity(&two);
        let adj = find_right_adjoint(&id).unwrap().unwrap();
        assert_eq!(adj.u, id);
        // pick 0 : 1 -> 2 is left adjoint to ! (0 is initial)
        let p0 = FunctorMap::pick(&one, &two, "0");
        let adj = find_right_adjoint(&p0).unwrap().unwrap();
        assert_eq!(adj.u, FunctorMap::bang(&two, &one));
        assert_eq!(adj.unit.at("*"), "id:*");
        // pick 1 has no right adjoint
        let p1 = FunctorMap::pick(&one, &two, "1");
        assert!(find_right_adjoint(&p1).unwrap().is_none());
    }

    #[test]
    fn pointwise_kan_along_pick_zero() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let k = FunctorMap::pick(&one, &two, "0");
        let f = FunctorMap::pick(&one, &two, "0");
        let kan = pointwise_kan(&k, &f, Direction::Right).unwrap().unwrap();
        assert_eq!(kan.r, FunctorMap::identity(&two));
        assert_eq!(kan.mu.at("*"), "id:0");
        assert!(verify_pointwise_kan(&k, &f, &kan.r, &kan.mu).unwrap());
    }

    #[test]
    fn pointwise_kan_along_identity_is_the_functor() {
        let two = walking_arrow();
        let id = FunctorMap::identity(&two);
        for f in enumerate_functors(&two, &two).unwrap() {
            let kan = pointwise_kan(&id, &f, Direction::Right).unwrap().unwrap();
            assert_eq!(kan.r, f);
            assert_eq!(kan.mu, NatTrans::identity(&f));
            assert!(verify_pointwise_kan(&id, &f, &kan.r, &kan.mu).unwrap());
        }
    }

    #[test]
    fn pointwise_kan_missing_limit_is_absent() {
        // Ran along pick 0 : 1 -> 2 of a diagram into the discrete pair
        // needs a terminal object at 1 (the comma 1|k is empty), so it is
        // absent.
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let d2 = discrete2();
        let k = FunctorMap::pick(&one, &two, "0");
        let f = FunctorMap::pick(&one, &d2, "x");
        assert!(pointwise_kan(&k, &f, Direction::Right).unwrap().is_none());
    }

    #[test]
    fn perturbed_extension_fails_verification() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let k = FunctorMap::pick(&one, &two, "0");
        let f = FunctorMap::pick(&one, &two, "0");
        let kan = pointwise_kan(&k, &f, Direction::Right).unwrap().unwrap();
        // perturb r to the constant functor at 0 (an alternative extension)
        let r_bad = FunctorMap::constant(&two, &two, "0");
        let mu_bad = NatTrans::validate(
            &BTreeMap::from([("*".to_string(), "id:0".to_string())]),
            &r_bad.compose(&k),
            &f,
        )
        .unwrap();
        assert!(!verify_pointwise_kan(&k, &f, &r_bad, &mu_bad).unwrap());
        assert!(verify_pointwise_kan(&k, &f, &kan.r, &kan.mu).unwrap());
    }

    #[test]
    fn fully_faithful_k_gives_iso_mu() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        for (k, f) in [
            (FunctorMap::pick(&one, &two, "0"), FunctorMap::pick(&one, &two, "0")),
            (FunctorMap::pick(&one, &two, "1"), FunctorMap::pick(&one, &two, "1")),
            (FunctorMap::identity(&two), FunctorMap::identity(&two)),
        ] {
            if !is_fully_faithful(&k).unwrap() {
                continue;
            }
            if let Some(kan) = pointwise_kan(&k, &f, Direction::Right).unwrap() {
                assert!(kan.mu.is_pointwise_iso());
            }
        }
    }

    #[test]
    fn left_kan_along_pick_one() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let k = FunctorMap::pick(&one, &two, "1");
        let f = FunctorMap::pick(&one, &two, "1");
        let kan = pointwise_kan(&k, &f, Direction::Left).unwrap().unwrap();
        // Lan picks the initial object 0 at 0 and 1 at 1
        assert_eq!(kan.r, FunctorMap::identity(&two));
        assert!(verify_pointwise_lan(&k, &f, &kan.r, &kan.mu).unwrap());
    }
}

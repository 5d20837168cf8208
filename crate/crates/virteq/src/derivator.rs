//! Beck-Chevalley mates for comma squares and derivator axiom smoke checks,
//! computed inside functor categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::cat::{self, FinCat, MorId, ObjId};
use crate::comma::{arrow_category, comma_morphism_id, comma_object_id};
use crate::error::{Error, Result};
use crate::functor::{
    functor_category_budgeted, FunctorCategory, FunctorMap, NatTrans,
};
use crate::kan::{pointwise_kan_budgeted, Direction, KanResult, Square};
use crate::limits::{cofactorizations, factorizations, Cone};

/// Restriction along `w: B -> A` as a functor `E^A -> E^B` between functor
/// categories.
pub fn restriction_functor(
    w: &FunctorMap,
    ea: &FunctorCategory,
    eb: &FunctorCategory,
) -> FunctorMap {
    let mut on_obj = BTreeMap::new();
    for (i, x) in ea.objects.iter().enumerate() {
        let img = eb.object_id(&x.compose(w)).expect("restriction image exists");
        on_obj.insert(ea.cat.objects()[i].clone(), img.clone());
    }
    let mut on_mor = BTreeMap::new();
    for m in ea.cat.morphisms() {
        let xi = ea.morphism_at(&m.id);
        let img = eb.morphism_id(&xi.whisker_right(w)).expect("restriction image exists");
        on_mor.insert(m.id.clone(), img.clone());
    }
    FunctorMap { dom: ea.cat.clone(), cod: eb.cat.clone(), on_obj, on_mor }
}

/// A total pointwise Kan extension along a base functor, packaged as a
/// functor between functor categories.
pub struct KanFunctor {
    pub functor: FunctorMap,
    pub kans: BTreeMap<ObjId, KanResult>,
    pub dir: Direction,
}

/// The unique map into a right extension: given `zeta: w . g => x` (as a
/// transformation of diagrams), the factorization `w => Ran_g x`.
fn ran_factor(kan: &KanResult, w: &FunctorMap, zeta: &NatTrans) -> Result<NatTrans> {
    let mut components = BTreeMap::new();
    for (ao, (cdata, cone)) in &kan.per_object {
        // cone with apex w(ao): leg at (c, *, alpha: ao -> g c) is
        // zeta_c . w(alpha)
        let mut legs = BTreeMap::new();
        for o in cdata.cat.objects() {
            let c = cdata.p1.ob(o).clone();
            let alpha = cdata.phi.at(o);
            legs.insert(o.clone(), w.cod.compose(zeta.at(&c), w.mor(alpha)));
        }
        let cand = Cone { apex: w.ob(ao).clone(), legs };
        let diagram = diagram_of(kan, ao);
        let mut facs = factorizations(&diagram, cone, &cand);
        if facs.len() != 1 {
            return Err(Error::OracleDisagreement(format!(
                "expected a unique factorization into the extension at {ao}, found {}",
                facs.len()
            )));
        }
        components.insert(ao.clone(), facs.remove(0));
    }
    NatTrans::validate(&components, w, &kan.r)
}

/// The unique map out of a left extension: given `zeta: x => w . k`, the
/// factorization `Lan_k x => w`.
fn lan_factor(kan: &KanResult, w: &FunctorMap, zeta: &NatTrans) -> Result<NatTrans> {
    let mut components = BTreeMap::new();
    for (co, (cdata, cocone)) in &kan.per_object {
        let mut legs = BTreeMap::new();
        for o in cdata.cat.objects() {
            let a = cdata.p0.ob(o).clone();
            let alpha = cdata.phi.at(o);
            legs.insert(o.clone(), w.cod.compose(w.mor(alpha), zeta.at(&a)));
        }
        let cand = Cone { apex: w.ob(co).clone(), legs };
        let diagram = diagram_of(kan, co);
        let mut facs = cofactorizations(&diagram, cocone, &cand);
        if facs.len() != 1 {
            return Err(Error::OracleDisagreement(format!(
                "expected a unique cofactorization out of the extension at {co}, found {}",
                facs.len()
            )));
        }
        components.insert(co.clone(), facs.remove(0));
    }
    NatTrans::validate(&components, &kan.r, w)
}

/// The diagram whose (co)limit computed `kan` at `obj`: the extended functor
/// composed with the stored comma projection.
fn diagram_of(kan: &KanResult, obj: &ObjId) -> FunctorMap {
    let (cdata, _) = &kan.per_object[obj];
    match kan.dir {
        Direction::Right => kan.original().compose(&cdata.p1),
        Direction::Left => kan.original().compose(&cdata.p0),
    }
}

/// Build the right Kan extension along `g` as a functor `E^C -> E^A`
/// (`g: C -> A`); `None` when some object has no extension.
pub fn ran_functor(
    g: &FunctorMap,
    ec: &FunctorCategory,
    ea: &FunctorCategory,
    budget: &mut Budget,
) -> Result<Option<KanFunctor>> {
    kan_functor(g, ec, ea, Direction::Right, budget)
}

/// Build the left Kan extension along `k` as a functor; `None` when some
/// object has no extension.
pub fn lan_functor(
    k: &FunctorMap,
    ec: &FunctorCategory,
    ea: &FunctorCategory,
    budget: &mut Budget,
) -> Result<Option<KanFunctor>> {
    kan_functor(k, ec, ea, Direction::Left, budget)
}

fn kan_functor(
    base: &FunctorMap,
    edom: &FunctorCategory,
    ecod: &FunctorCategory,
    dir: Direction,
    budget: &mut Budget,
) -> Result<Option<KanFunctor>> {
    let mut kans: BTreeMap<ObjId, KanResult> = BTreeMap::new();
    let mut on_obj = BTreeMap::new();
    for (i, x) in edom.objects.iter().enumerate() {
        let Some(kan) = pointwise_kan_budgeted(base, x, dir, budget)? else {
            return Ok(None);
        };
        let oid = edom.cat.objects()[i].clone();
        let rid = ecod.object_id(&kan.r).expect("extension lives in the functor category");
        on_obj.insert(oid.clone(), rid.clone());
        kans.insert(oid, kan);
    }
    let mut on_mor = BTreeMap::new();
    for m in edom.cat.morphisms() {
        let xi = edom.morphism_at(&m.id).clone();
        let img = match dir {
            Direction::Right => {
                // Ran(xi): Ran X => Ran Y factoring xi . mu_X
                let kx = &kans[&m.src];
                let ky = &kans[&m.tgt];
                ran_factor(ky, &kx.r, &xi.vcomp(&kx.mu))?
            }
            Direction::Left => {
                // Lan(xi): Lan X => Lan Y factoring mu_Y . xi
                let kx = &kans[&m.src];
                let ky = &kans[&m.tgt];
                lan_factor(kx, &ky.r, &ky.mu.vcomp(&xi))?
            }
        };
        let mid = ecod.morphism_id(&img).expect("extension map lives in the functor category");
        on_mor.insert(m.id.clone(), mid.clone());
    }
    let functor =
        FunctorMap { dom: edom.cat.clone(), cod: ecod.cat.clone(), on_obj, on_mor };
    functor.check_laws()?;
    Ok(Some(KanFunctor { functor, kans, dir }))
}

/// Outcome of testing one Beck-Chevalley mate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MateOutcome {
    Iso,
    NotIso { witness: ObjId },
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeckChevalleyReport {
    pub right_mate: MateOutcome,
    pub left_mate: MateOutcome,
}

impl BeckChevalleyReport {
    pub fn holds(&self) -> Result<bool> {
        match (&self.right_mate, &self.left_mate) {
            (MateOutcome::NotApplicable, MateOutcome::NotApplicable) => Err(Error::NotApplicable(
                "neither mate has the required Kan extensions".into(),
            )),
            _ => Ok(!matches!(self.right_mate, MateOutcome::NotIso { .. })
                && !matches!(self.left_mate, MateOutcome::NotIso { .. })),
        }
    }
}

/// Convenience wrapper: does the Beck-Chevalley condition hold? Errors with
/// `NotApplicable` when neither mate can be formed.
pub fn beck_chevalley_holds(s: &Square, e: &Arc<FinCat>) -> Result<bool> {
    beck_chevalley(s, e)?.holds()
}

/// Test the Beck-Chevalley condition for a (comma) square and a target `E`:
/// form the mates of the induced square of restriction functors with the
/// right and left Kan extensions, when those exist, and check that they are
/// natural isomorphisms.
pub fn beck_chevalley(s: &Square, e: &Arc<FinCat>) -> Result<BeckChevalleyReport> {
    let mut budget = Budget::new("beck_chevalley");
    let a_cat = &s.f.cod;
    let b_cat = &s.f.dom;
    let c_cat = &s.g.dom;
    let d_cat = &s.h.dom;
    let ea = functor_category_budgeted(a_cat, e, &mut budget)?;
    let eb = functor_category_budgeted(b_cat, e, &mut budget)?;
    let ec = functor_category_budgeted(c_cat, e, &mut budget)?;
    let ed = functor_category_budgeted(d_cat, e, &mut budget)?;

    let f_star = restriction_functor(&s.f, &ea, &eb);
    let g_star = restriction_functor(&s.g, &ea, &ec);
    let h_star = restriction_functor(&s.h, &eb, &ed);
    let k_star = restriction_functor(&s.k, &ec, &ed);
    let _ = (&g_star, &h_star);

    // right mate: f* . Ran_g => Ran_h . k*
    let right_mate = match (
        ran_functor(&s.g, &ec, &ea, &mut budget)?,
        ran_functor(&s.h, &ed, &eb, &mut budget)?,
    ) {
        (Some(ran_g), Some(ran_h)) => {
            let f1 = f_star.compose(&ran_g.functor);
            let f2 = ran_h.functor.compose(&k_star);
            let mut components = BTreeMap::new();
            let mut witness = None;
            for (i, x) in ec.objects.iter().enumerate() {
                let xid = ec.cat.objects()[i].clone();
                let kan_g = &ran_g.kans[&xid];
                // zeta: (Ran_g X) . f . h => X . k
                let ranx_lam = kan_g.r.clone();
                let zeta = kan_g
                    .mu
                    .whisker_right(&s.k)
                    .vcomp(&s.lam.whisker_left(&ranx_lam));
                let xk = x.compose(&s.k);
                let xk_id = ed.object_id(&xk).expect("restriction image");
                let kan_h = &ran_h.kans[xk_id];
                let w = kan_g.r.compose(&s.f);
                let mate_at_x = ran_factor(kan_h, &w, &zeta)?;
                if !mate_at_x.is_pointwise_iso() && witness.is_none() {
                    witness = Some(xid.clone());
                }
                let mid =
                    eb.morphism_id(&mate_at_x).expect("mate component lives in E^B");
                components.insert(xid, mid.clone());
            }
            let mate = NatTrans::validate(&components, &f1, &f2)?;
            match witness {
                None => {
                    debug_assert!(mate.components.values().all(|m| eb.cat.is_iso_morphism(m)));
                    MateOutcome::Iso
                }
                Some(w) => MateOutcome::NotIso { witness: w },
            }
        }
        _ => MateOutcome::NotApplicable,
    };

    // left mate: Lan_k . h* => g* . Lan_f
    let left_mate = match (
        lan_functor(&s.k, &ed, &ec, &mut budget)?,
        lan_functor(&s.f, &eb, &ea, &mut budget)?,
    ) {
        (Some(lan_k), Some(lan_f)) => {
            let g1 = lan_k.functor.compose(&h_star);
            let g2 = g_star.compose(&lan_f.functor);
            let mut components = BTreeMap::new();
            let mut witness = None;
            for (i, y) in eb.objects.iter().enumerate() {
                let yid = eb.cat.objects()[i].clone();
                let kan_f = &lan_f.kans[&yid];
                // zeta: Y . h => (Lan_f Y) . g . k
                let zeta = s
                    .lam
                    .whisker_left(&kan_f.r)
                    .vcomp(&kan_f.mu.whisker_right(&s.h));
                let yh = y.compose(&s.h);
                let yh_id = ed.object_id(&yh).expect("restriction image");
                let kan_k = &lan_k.kans[yh_id];
                let w = kan_f.r.compose(&s.g);
                let mate_at_y = lan_factor(kan_k, &w, &zeta)?;
                if !mate_at_y.is_pointwise_iso() && witness.is_none() {
                    witness = Some(yid.clone());
                }
                let mid =
                    ec.morphism_id(&mate_at_y).expect("mate component lives in E^C");
                components.insert(yid, mid.clone());
            }
            let mate = NatTrans::validate(&components, &g1, &g2)?;
            match witness {
                None => {
                    debug_assert!(mate.components.values().all(|m| ec.cat.is_iso_morphism(m)));
                    MateOutcome::Iso
                }
                Some(w) => MateOutcome::NotIso { witness: w },
            }
        }
        _ => MateOutcome::NotApplicable,
    };

    Ok(BeckChevalleyReport { right_mate, left_mate })
}

/// Per-probe report of Kan extension existence (Der3).
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub probe: String,
    pub right_total: bool,
    pub left_total: bool,
    pub missing: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct DerivatorReport {
    /// exponentials carry coproducts to products, by explicit isomorphism
    pub der1: bool,
    /// transformations with all components invertible are invertible
    pub der2: bool,
    /// existence of right/left extensions along each probe
    pub der3: Vec<ProbeReport>,
    /// Beck-Chevalley for comma squares of probe cospans
    pub der4: bool,
    /// `E^(A x 2)` compares isomorphically to the arrow category of `E^A`
    pub der5: bool,
    pub notes: Vec<String>,
}

impl DerivatorReport {
    pub fn der3_total(&self) -> bool {
        self.der3.iter().all(|p| p.right_total && p.left_total)
    }
    pub fn all_pass(&self) -> bool {
        self.der1 && self.der2 && self.der3_total() && self.der4 && self.der5
    }
}

/// Check the derivator axioms for `E^(-)` against a list of probe functors.
pub fn derivator_checks(e: &Arc<FinCat>, probes: &[FunctorMap]) -> Result<DerivatorReport> {
    let mut budget = Budget::new("derivator_checks");
    let mut notes = Vec::new();

    // the pool of index categories seen in the probes
    let mut pool: Vec<Arc<FinCat>> = Vec::new();
    for p in probes {
        for c in [&p.dom, &p.cod] {
            if !pool.iter().any(|x| crate::functor::cats_eq(x, c)) {
                pool.push(c.clone());
            }
        }
    }

    // Der1: E^(A + B) ~ E^A x E^B
    let mut der1 = true;
    'der1: for a in &pool {
        for b in &pool {
            let sum = Arc::new(cat::coproduct(a, b));
            let e_sum = functor_category_budgeted(&sum, e, &mut budget)?;
            let e_a = functor_category_budgeted(a, e, &mut budget)?;
            let e_b = functor_category_budgeted(b, e, &mut budget)?;
            let prod = cat::product(&e_a.cat, &e_b.cat);
            let inl = injection(a, &sum, 0);
            let inr = injection(b, &sum, 1);
            let mut on_obj = BTreeMap::new();
            for (i, x) in e_sum.objects.iter().enumerate() {
                let xa = e_a.object_id(&x.compose(&inl)).expect("left part");
                let xb = e_b.object_id(&x.compose(&inr)).expect("right part");
                on_obj.insert(e_sum.cat.objects()[i].clone(), format!("({xa},{xb})"));
            }
            let mut on_mor = BTreeMap::new();
            for m in e_sum.cat.morphisms() {
                let xi = e_sum.morphism_at(&m.id);
                let na = e_a.morphism_id(&xi.whisker_right(&inl)).expect("left part");
                let nb = e_b.morphism_id(&xi.whisker_right(&inr)).expect("right part");
                on_mor.insert(m.id.clone(), format!("({na},{nb})"));
            }
            let prod = Arc::new(prod);
            let phi = FunctorMap { dom: e_sum.cat.clone(), cod: prod.clone(), on_obj, on_mor };
            if phi.check_laws().is_err()
                || !is_bijective_on_objects_and_morphisms(&phi)
            {
                der1 = false;
                notes.push("Der1 comparison is not an isomorphism".into());
                break 'der1;
            }
        }
    }

    // Der2: pointwise invertibility detects invertibility
    let mut der2 = true;
    'der2: for a in &pool {
        let fc = functor_category_budgeted(a, e, &mut budget)?;
        for (i, nat) in fc.morphisms.iter().enumerate() {
            let mid = &fc.cat.morphisms()[i].id;
            let pointwise = nat.is_pointwise_iso();
            let categorical = fc.cat.is_iso_morphism(mid);
            if pointwise != categorical {
                der2 = false;
                notes.push(format!("Der2 fails at {mid}"));
                break 'der2;
            }
        }
    }

    // Der3: existence reports
    let mut der3 = Vec::new();
    for (pi, p) in probes.iter().enumerate() {
        let fc = functor_category_budgeted(&p.dom, e, &mut budget)?;
        let mut right_total = true;
        let mut left_total = true;
        let mut missing = Vec::new();
        for (i, x) in fc.objects.iter().enumerate() {
            let xid = &fc.cat.objects()[i];
            if pointwise_kan_budgeted(p, x, Direction::Right, &mut budget)?.is_none() {
                right_total = false;
                missing.push(format!("right extension of {xid} along probe {pi}"));
            }
            if pointwise_kan_budgeted(p, x, Direction::Left, &mut budget)?.is_none() {
                left_total = false;
                missing.push(format!("left extension of {xid} along probe {pi}"));
            }
        }
        der3.push(ProbeReport { probe: format!("probe {pi}"), right_total, left_total, missing });
    }

    // Der4: Beck-Chevalley over probe comma squares
    let mut der4 = true;
    'der4: for p in probes {
        for q in probes {
            if !crate::functor::cats_eq(&p.cod, &q.cod) {
                continue;
            }
            let (sq, _) = Square::comma_square(p, q)?;
            let report = beck_chevalley(&sq, e)?;
            match report.holds() {
                Ok(true) => {}
                Ok(false) => {
                    der4 = false;
                    notes.push("Der4 mate failed to be an isomorphism".into());
                    break 'der4;
                }
                Err(_) => {
                    // no applicable mate: vacuous for this square
                    notes.push("Der4 square skipped: no applicable mate".into());
                }
            }
        }
    }

    // Der5: E^(A x 2) ~ arrow category of E^A
    let two = Arc::new(walking_arrow());
    let mut der5 = true;
    'der5: for a in &pool {
        let prod = Arc::new(cat::product(a, &two));
        let e_prod = functor_category_budgeted(&prod, e, &mut budget)?;
        let e_a = functor_category_budgeted(a, e, &mut budget)?;
        let arrows = arrow_category(&e_a.cat);
        let mut on_obj = BTreeMap::new();
        for (i, x) in e_prod.objects.iter().enumerate() {
            let x0 = slice_functor(x, a, &two, "0");
            let x1 = slice_functor(x, a, &two, "1");
            let alpha = transition_nat(x, a, &two, &x0, &x1);
            let id0 = e_a.object_id(&x0).expect("slice at 0");
            let id1 = e_a.object_id(&x1).expect("slice at 1");
            let nid = e_a.morphism_id(&alpha).expect("transition");
            on_obj.insert(
                e_prod.cat.objects()[i].clone(),
                comma_object_id(id1, id0, nid),
            );
        }
        let mut on_mor = BTreeMap::new();
        for m in e_prod.cat.morphisms() {
            let xi = e_prod.morphism_at(&m.id);
            let xi0 = slice_nat(xi, a, &two, "0");
            let xi1 = slice_nat(xi, a, &two, "1");
            let n0 = e_a.morphism_id(&xi0).expect("slice at 0");
            let n1 = e_a.morphism_id(&xi1).expect("slice at 1");
            on_mor.insert(
                m.id.clone(),
                comma_morphism_id(n1, n0, &on_obj[&m.src], &on_obj[&m.tgt]),
            );
        }
        let phi = FunctorMap {
            dom: e_prod.cat.clone(),
            cod: arrows.cat.clone(),
            on_obj,
            on_mor,
        };
        if phi.check_laws().is_err() || !is_bijective_on_objects_and_morphisms(&phi) {
            der5 = false;
            notes.push("Der5 comparison is not an isomorphism".into());
            break 'der5;
        }
    }

    Ok(DerivatorReport { der1, der2, der3, der4, der5, notes })
}

fn walking_arrow() -> FinCat {
    cat::FinCat::validate(&crate::cat::RawCategory {
        objects: vec!["0".into(), "1".into()],
        morphisms: vec![("a".into(), "0".into(), "1".into())],
        comp: vec![],
    })
    .expect("walking arrow")
}

fn injection(part: &Arc<FinCat>, sum: &Arc<FinCat>, idx: usize) -> FunctorMap {
    FunctorMap {
        dom: part.clone(),
        cod: sum.clone(),
        on_obj: part
            .objects()
            .iter()
            .map(|o| (o.clone(), format!("in{idx}:{o}")))
            .collect(),
        on_mor: part
            .morphisms()
            .iter()
            .map(|m| (m.id.clone(), format!("in{idx}:{}", m.id)))
            .collect(),
    }
}

fn is_bijective_on_objects_and_morphisms(f: &FunctorMap) -> bool {
    let mut objs: Vec<&ObjId> = f.on_obj.values().collect();
    objs.sort();
    objs.dedup();
    let mut mors: Vec<&MorId> = f.on_mor.values().collect();
    mors.sort();
    mors.dedup();
    objs.len() == f.dom.objects().len()
        && objs.len() == f.cod.objects().len()
        && mors.len() == f.dom.morphisms().len()
        && mors.len() == f.cod.morphisms().len()
}

fn pair_id(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// Restrict a functor on `A x 2` to the slice at `t` (an object of `2`).
fn slice_functor(x: &FunctorMap, a: &Arc<FinCat>, two: &Arc<FinCat>, t: &str) -> FunctorMap {
    FunctorMap {
        dom: a.clone(),
        cod: x.cod.clone(),
        on_obj: a
            .objects()
            .iter()
            .map(|o| (o.clone(), x.ob(&pair_id(o, t)).clone()))
            .collect(),
        on_mor: a
            .morphisms()
            .iter()
            .map(|m| (m.id.clone(), x.mor(&pair_id(&m.id, two.identity(t))).clone()))
            .collect(),
    }
}

/// The transformation between the two slices given by the arrow of `2`.
fn transition_nat(
    x: &FunctorMap,
    a: &Arc<FinCat>,
    _two: &Arc<FinCat>,
    x0: &FunctorMap,
    x1: &FunctorMap,
) -> NatTrans {
    NatTrans {
        src: x0.clone(),
        tgt: x1.clone(),
        components: a
            .objects()
            .iter()
            .map(|o| (o.clone(), x.mor(&pair_id(a.identity(o), "a")).clone()))
            .collect(),
    }
}

fn slice_nat(xi: &NatTrans, a: &Arc<FinCat>, two: &Arc<FinCat>, t: &str) -> NatTrans {
    NatTrans {
        src: slice_functor(&xi.src, a, two, t),
        tgt: slice_functor(&xi.tgt, a, two, t),
        components: a
            .objects()
            .iter()
            .map(|o| (o.clone(), xi.at(&pair_id(o, t)).clone()))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> Arc<FinCat> {
        Arc::new(walking_arrow())
    }

    #[test]
    fn beck_chevalley_identity_cospan() {
        let two = arrow();
        let id = FunctorMap::identity(&two);
        let (sq, _) = Square::comma_square(&id, &id).unwrap();
        let report = beck_chevalley(&sq, &two).unwrap();
        assert!(report.holds().unwrap(), "{report:?}");
    }

    #[test]
    fn beck_chevalley_empty_comma() {
        // cospan pick 1, pick 0: the comma is empty; mates relate extensions
        // along empty diagrams
        let two = arrow();
        let one = Arc::new(cat::terminal());
        let p0 = FunctorMap::pick(&one, &two, "0");
        let p1 = FunctorMap::pick(&one, &two, "1");
        let (sq, cdata) = Square::comma_square(&p1, &p0).unwrap();
        assert!(cdata.cat.is_empty());
        let report = beck_chevalley(&sq, &two).unwrap();
        assert!(report.holds().unwrap(), "{report:?}");
    }

    #[test]
    fn beck_chevalley_trivial_target() {
        let two = arrow();
        let one = Arc::new(cat::terminal());
        let p0 = FunctorMap::pick(&one, &two, "0");
        let id = FunctorMap::identity(&two);
        let (sq, _) = Square::comma_square(&p0, &id).unwrap();
        let report = beck_chevalley(&sq, &one).unwrap();
        assert!(report.holds().unwrap(), "{report:?}");
    }

    #[test]
    fn derivator_on_the_arrow_lattice() {
        let two = arrow();
        let one = Arc::new(cat::terminal());
        let probes = vec![FunctorMap::pick(&one, &two, "0"), FunctorMap::bang(&two, &one)];
        let report = derivator_checks(&two, &probes).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn derivator_reports_missing_extension_for_discrete_target() {
        let two = arrow();
        let one = Arc::new(cat::terminal());
        let d2 = Arc::new(
            cat::FinCat::validate(&crate::cat::RawCategory {
                objects: vec!["x".into(), "y".into()],
                morphisms: vec![],
                comp: vec![],
            })
            .unwrap(),
        );
        let probes = vec![FunctorMap::pick(&one, &two, "1")];
        let report = derivator_checks(&d2, &probes).unwrap();
        assert!(!report.der3_total(), "{report:?}");
        assert!(!report.der3[0].missing.is_empty());
    }
}

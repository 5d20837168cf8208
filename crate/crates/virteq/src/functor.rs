//! Functors, natural transformations, their brute-force enumeration, and
//! functor categories.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::cat::{FinCat, MorData, MorId, ObjId};
use crate::error::{Error, Result};

pub fn cats_eq(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone)]
pub struct FunctorMap {
    pub dom: Arc<FinCat>,
    pub cod: Arc<FinCat>,
    pub on_obj: BTreeMap<ObjId, ObjId>,
    pub on_mor: BTreeMap<MorId, MorId>,
}

impl PartialEq for FunctorMap {
    fn eq(&self, other: &Self) -> bool {
        cats_eq(&self.dom, &other.dom)
            && cats_eq(&self.cod, &other.cod)
            && self.on_obj == other.on_obj
            && self.on_mor == other.on_mor
    }
}
impl Eq for FunctorMap {}

/// Raw functor data; identity images may be omitted and are forced.
#[derive(Debug, Clone, Default)]
pub struct RawFunctor {
    pub on_obj: BTreeMap<String, String>,
    pub on_mor: BTreeMap<String, String>,
}

impl FunctorMap {
    pub fn validate(raw: &RawFunctor, dom: &Arc<FinCat>, cod: &Arc<FinCat>) -> Result<FunctorMap> {
        let mut on_obj = BTreeMap::new();
        for o in dom.objects() {
            let img = raw
                .on_obj
                .get(o)
                .ok_or_else(|| Error::NotFunctorial(format!("object {o} has no image")))?;
            if !cod.has_object(img) {
                return Err(Error::DanglingRef(format!("object image {img}")));
            }
            on_obj.insert(o.clone(), img.clone());
        }
        for key in raw.on_obj.keys() {
            if !dom.has_object(key) {
                return Err(Error::DanglingRef(format!("object {key}")));
            }
        }
        let mut on_mor = BTreeMap::new();
        for m in dom.morphisms() {
            let img = if let Some(img) = raw.on_mor.get(&m.id) {
                img.clone()
            } else if dom.is_identity(&m.id) {
                cod.identity(&on_obj[&m.src]).clone()
            } else {
                return Err(Error::NotFunctorial(format!("morphism {} has no image", m.id)));
            };
            let im = cod
                .try_mor(&img)
                .ok_or_else(|| Error::DanglingRef(format!("morphism image {img}")))?;
            if im.src != on_obj[&m.src] || im.tgt != on_obj[&m.tgt] {
                return Err(Error::NotFunctorial(format!(
                    "morphism {} maps to {img} with mismatched endpoints",
                    m.id
                )));
            }
            on_mor.insert(m.id.clone(), img);
        }
        for key in raw.on_mor.keys() {
            if dom.try_mor(key).is_none() {
                return Err(Error::DanglingRef(format!("morphism {key}")));
            }
        }
        let f = FunctorMap { dom: dom.clone(), cod: cod.clone(), on_obj, on_mor };
        f.check_laws()?;
        Ok(f)
    }

    /// Exhaustive preservation checks.
    pub fn check_laws(&self) -> Result<()> {
        for o in self.dom.objects() {
            if self.on_mor[self.dom.identity(o)] != *self.cod.identity(&self.on_obj[o]) {
                return Err(Error::NotFunctorial(format!("identity of {o} not preserved")));
            }
        }
        for ((s, f), v) in self.dom.comp_table() {
            let img = self.cod.try_compose(&self.on_mor[s], &self.on_mor[f]);
            if img != Some(&self.on_mor[v]) {
                return Err(Error::NotFunctorial(format!("composition ({s} o {f}) not preserved")));
            }
        }
        Ok(())
    }

    pub fn identity(cat: &Arc<FinCat>) -> FunctorMap {
        FunctorMap {
            dom: cat.clone(),
            cod: cat.clone(),
            on_obj: cat.objects().iter().map(|o| (o.clone(), o.clone())).collect(),
            on_mor: cat.morphisms().iter().map(|m| (m.id.clone(), m.id.clone())).collect(),
        }
    }

    /// Composite `self o first`.
    pub fn compose(&self, first: &FunctorMap) -> FunctorMap {
        assert!(cats_eq(&first.cod, &self.dom), "functor composition boundary mismatch");
        FunctorMap {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            on_obj: first.on_obj.iter().map(|(o, v)| (o.clone(), self.on_obj[v].clone())).collect(),
            on_mor: first.on_mor.iter().map(|(m, v)| (m.clone(), self.on_mor[v].clone())).collect(),
        }
    }

    /// Constant functor at `obj`.
    pub fn constant(dom: &Arc<FinCat>, cod: &Arc<FinCat>, obj: &str) -> FunctorMap {
        FunctorMap {
            dom: dom.clone(),
            cod: cod.clone(),
            on_obj: dom.objects().iter().map(|o| (o.clone(), obj.to_string())).collect(),
            on_mor: dom
                .morphisms()
                .iter()
                .map(|m| (m.id.clone(), cod.identity(obj).clone()))
                .collect(),
        }
    }

    /// The unique functor to the terminal category.
    pub fn bang(dom: &Arc<FinCat>, one: &Arc<FinCat>) -> FunctorMap {
        FunctorMap::constant(dom, one, &one.objects()[0])
    }

    /// The functor from the terminal category picking `obj`.
    pub fn pick(one: &Arc<FinCat>, cod: &Arc<FinCat>, obj: &str) -> FunctorMap {
        FunctorMap::constant(one, cod, obj)
    }

    pub fn ob(&self, o: &str) -> &ObjId {
        &self.on_obj[o]
    }

    pub fn mor(&self, m: &str) -> &MorId {
        &self.on_mor[m]
    }

    pub fn is_parallel_to(&self, other: &FunctorMap) -> bool {
        cats_eq(&self.dom, &other.dom) && cats_eq(&self.cod, &other.cod)
    }
}

#[derive(Debug, Clone)]
pub struct NatTrans {
    pub src: FunctorMap,
    pub tgt: FunctorMap,
    pub components: BTreeMap<ObjId, MorId>,
}

impl PartialEq for NatTrans {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.tgt == other.tgt && self.components == other.components
    }
}
impl Eq for NatTrans {}

impl NatTrans {
    pub fn validate(
        components: &BTreeMap<String, String>,
        src: &FunctorMap,
        tgt: &FunctorMap,
    ) -> Result<NatTrans> {
        if !src.is_parallel_to(tgt) {
            return Err(Error::NotParallel("source and target functors".into()));
        }
        let dom = &src.dom;
        let cod = &src.cod;
        let mut comp = BTreeMap::new();
        for a in dom.objects() {
            let c = components
                .get(a)
                .ok_or_else(|| Error::NaturalityViolation(format!("no component at {a}")))?;
            let cm = cod
                .try_mor(c)
                .ok_or_else(|| Error::DanglingRef(format!("component {c}")))?;
            if cm.src != *src.ob(a) || cm.tgt != *tgt.ob(a) {
                return Err(Error::NaturalityViolation(format!(
                    "component at {a} has endpoints {} -> {}, expected {} -> {}",
                    cm.src,
                    cm.tgt,
                    src.ob(a),
                    tgt.ob(a)
                )));
            }
            comp.insert(a.clone(), c.clone());
        }
        for key in components.keys() {
            if !dom.has_object(key) {
                return Err(Error::DanglingRef(format!("component object {key}")));
            }
        }
        let nat = NatTrans { src: src.clone(), tgt: tgt.clone(), components: comp };
        nat.check_laws()?;
        Ok(nat)
    }

    pub fn check_laws(&self) -> Result<()> {
        let cod = &self.src.cod;
        for m in self.src.dom.morphisms() {
            let lhs = cod.compose(self.tgt.mor(&m.id), &self.components[&m.src]);
            let rhs = cod.compose(&self.components[&m.tgt], self.src.mor(&m.id));
            if lhs != rhs {
                return Err(Error::NaturalityViolation(m.id.clone()));
            }
        }
        Ok(())
    }

    pub fn identity(f: &FunctorMap) -> NatTrans {
        NatTrans {
            src: f.clone(),
            tgt: f.clone(),
            components: f
                .dom
                .objects()
                .iter()
                .map(|a| (a.clone(), f.cod.identity(f.ob(a)).clone()))
                .collect(),
        }
    }

    /// Vertical composite `self . first` (first, then self).
    pub fn vcomp(&self, first: &NatTrans) -> NatTrans {
        assert!(first.tgt == self.src, "vertical composition boundary mismatch");
        let cod = &self.src.cod;
        NatTrans {
            src: first.src.clone(),
            tgt: self.tgt.clone(),
            components: first
                .components
                .iter()
                .map(|(a, m)| (a.clone(), cod.compose(&self.components[a], m)))
                .collect(),
        }
    }

    /// Whisker on the right with `k`: the transformation `self . k` with
    /// components at `x` given by the component at `k(x)`.
    pub fn whisker_right(&self, k: &FunctorMap) -> NatTrans {
        assert!(cats_eq(&k.cod, &self.src.dom), "whisker boundary mismatch");
        NatTrans {
            src: self.src.compose(k),
            tgt: self.tgt.compose(k),
            components: k
                .dom
                .objects()
                .iter()
                .map(|x| (x.clone(), self.components[k.ob(x)].clone()))
                .collect(),
        }
    }

    /// Whisker on the left with `h`: the transformation `h . self`.
    pub fn whisker_left(&self, h: &FunctorMap) -> NatTrans {
        assert!(cats_eq(&self.src.cod, &h.dom), "whisker boundary mismatch");
        NatTrans {
            src: h.compose(&self.src),
            tgt: h.compose(&self.tgt),
            components: self
                .components
                .iter()
                .map(|(a, m)| (a.clone(), h.mor(m).clone()))
                .collect(),
        }
    }

    pub fn at(&self, a: &str) -> &MorId {
        &self.components[a]
    }

    /// Componentwise isomorphism test.
    pub fn is_pointwise_iso(&self) -> bool {
        self.components.values().all(|m| self.src.cod.is_iso_morphism(m))
    }
}

/// All functors from `a` to `b` in canonical (lexicographic) order: by object
/// image tuple, then by morphism image tuple.
pub fn enumerate_functors(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Result<Vec<FunctorMap>> {
    let mut budget = Budget::new("enumerate_functors");
    enumerate_functors_budgeted(a, b, &mut budget)
}

pub(crate) fn enumerate_functors_budgeted(
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
    budget: &mut Budget,
) -> Result<Vec<FunctorMap>> {
    if !a.is_empty() && b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut on_obj: BTreeMap<ObjId, ObjId> = BTreeMap::new();
    let objs: Vec<&ObjId> = a.objects().iter().collect();
    // Non-identity morphisms in canonical order drive the second stage.
    let gens: Vec<&MorData> =
        a.morphisms().iter().filter(|m| !a.is_identity(&m.id)).collect();
    assign_objects(a, b, &objs, 0, &mut on_obj, &gens, &mut out, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn assign_objects(
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
    objs: &[&ObjId],
    i: usize,
    on_obj: &mut BTreeMap<ObjId, ObjId>,
    gens: &[&MorData],
    out: &mut Vec<FunctorMap>,
    budget: &mut Budget,
) -> Result<()> {
    if i == objs.len() {
        let mut on_mor: BTreeMap<MorId, MorId> = BTreeMap::new();
        for o in a.objects() {
            on_mor.insert(a.identity(o).clone(), b.identity(&on_obj[o]).clone());
        }
        return assign_morphisms(a, b, gens, 0, on_obj, &mut on_mor, out, budget);
    }
    for img in b.objects() {
        budget.charge(1)?;
        on_obj.insert(objs[i].clone(), img.clone());
        assign_objects(a, b, objs, i + 1, on_obj, gens, out, budget)?;
    }
    on_obj.remove(objs[i]);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn assign_morphisms(
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
    gens: &[&MorData],
    i: usize,
    on_obj: &BTreeMap<ObjId, ObjId>,
    on_mor: &mut BTreeMap<MorId, MorId>,
    out: &mut Vec<FunctorMap>,
    budget: &mut Budget,
) -> Result<()> {
    if i == gens.len() {
        // All composition constraints were checked incrementally.
        out.push(FunctorMap {
            dom: a.clone(),
            cod: b.clone(),
            on_obj: on_obj.clone(),
            on_mor: on_mor.clone(),
        });
        return Ok(());
    }
    let m = gens[i];
    for img in b.hom(&on_obj[&m.src], &on_obj[&m.tgt]) {
        budget.charge(1)?;
        on_mor.insert(m.id.clone(), img.clone());
        if composition_consistent(a, b, on_mor, &m.id) {
            assign_morphisms(a, b, gens, i + 1, on_obj, on_mor, out, budget)?;
        }
    }
    on_mor.remove(&m.id);
    Ok(())
}

/// Check every composition constraint in which `new` participates and whose
/// morphisms all have assigned images.
fn composition_consistent(
    a: &FinCat,
    b: &FinCat,
    on_mor: &BTreeMap<MorId, MorId>,
    new: &MorId,
) -> bool {
    for ((s, f), v) in a.comp_table() {
        if s != new && f != new && v != new {
            continue;
        }
        let (Some(si), Some(fi), Some(vi)) = (on_mor.get(s), on_mor.get(f), on_mor.get(v)) else {
            continue;
        };
        if b.try_compose(si, fi) != Some(vi) {
            return false;
        }
    }
    true
}

/// All natural transformations from `f` to `g` in canonical order of their
/// component tuples.
pub fn enumerate_nats(f: &FunctorMap, g: &FunctorMap) -> Result<Vec<NatTrans>> {
    let mut budget = Budget::new("enumerate_nats");
    enumerate_nats_budgeted(f, g, &mut budget)
}

pub(crate) fn enumerate_nats_budgeted(
    f: &FunctorMap,
    g: &FunctorMap,
    budget: &mut Budget,
) -> Result<Vec<NatTrans>> {
    if !f.is_parallel_to(g) {
        return Err(Error::NotParallel("enumerate_nats".into()));
    }
    let mut out = Vec::new();
    let mut comp: BTreeMap<ObjId, MorId> = BTreeMap::new();
    let objs: Vec<&ObjId> = f.dom.objects().iter().collect();
    nat_dfs(f, g, &objs, 0, &mut comp, &mut out, budget)?;
    Ok(out)
}

fn nat_dfs(
    f: &FunctorMap,
    g: &FunctorMap,
    objs: &[&ObjId],
    i: usize,
    comp: &mut BTreeMap<ObjId, MorId>,
    out: &mut Vec<NatTrans>,
    budget: &mut Budget,
) -> Result<()> {
    if i == objs.len() {
        out.push(NatTrans { src: f.clone(), tgt: g.clone(), components: comp.clone() });
        return Ok(());
    }
    let a = objs[i];
    let cod = &f.cod;
    'cand: for c in cod.hom(f.ob(a), g.ob(a)) {
        budget.charge(1)?;
        // check naturality squares whose other endpoint is already assigned
        for m in f.dom.morphisms() {
            let (other, flip) = if m.src == **a {
                (&m.tgt, false)
            } else if m.tgt == **a {
                (&m.src, true)
            } else {
                continue;
            };
            let Some(oc) = comp.get(other).or(if *other == **a { Some(c) } else { None }) else {
                continue;
            };
            let (ca, cb) = if flip { (oc, c) } else { (c, oc) };
            // square for m: src -> tgt: g(m) o comp[src] == comp[tgt] o f(m)
            if cod.compose(g.mor(&m.id), ca) != cod.compose(cb, f.mor(&m.id)) {
                continue 'cand;
            }
        }
        comp.insert((*a).clone(), c.clone());
        nat_dfs(f, g, objs, i + 1, comp, out, budget)?;
        comp.remove(a);
    }
    Ok(())
}

/// A functor category together with the functors and naturals its objects and
/// morphisms stand for.
#[derive(Debug, Clone)]
pub struct FunctorCategory {
    pub cat: Arc<FinCat>,
    pub objects: Vec<FunctorMap>,
    pub morphisms: Vec<NatTrans>,
    obj_ids: Vec<ObjId>,
    mor_ids: Vec<MorId>,
}

impl FunctorCategory {
    pub fn object_id(&self, f: &FunctorMap) -> Option<&ObjId> {
        self.objects.iter().position(|x| x == f).map(|i| &self.obj_ids[i])
    }

    pub fn object_at(&self, id: &str) -> &FunctorMap {
        let i = self.obj_ids.iter().position(|x| x == id).expect("unknown functor object");
        &self.objects[i]
    }

    pub fn morphism_id(&self, n: &NatTrans) -> Option<&MorId> {
        self.morphisms.iter().position(|x| x == n).map(|i| &self.mor_ids[i])
    }

    pub fn morphism_at(&self, id: &str) -> &NatTrans {
        let i = self.mor_ids.iter().position(|x| x == id).expect("unknown nat morphism");
        &self.morphisms[i]
    }
}

fn padded(prefix: &str, i: usize, total: usize) -> String {
    let width = total.max(1).to_string().len();
    format!("{prefix}{i:0width$}")
}

/// The category of functors `a -> e` with natural transformations, built by
/// exhaustive enumeration.
pub fn functor_category(a: &Arc<FinCat>, e: &Arc<FinCat>) -> Result<FunctorCategory> {
    let mut budget = Budget::new("functor_category");
    functor_category_budgeted(a, e, &mut budget)
}

pub(crate) fn functor_category_budgeted(
    a: &Arc<FinCat>,
    e: &Arc<FinCat>,
    budget: &mut Budget,
) -> Result<FunctorCategory> {
    let functors = enumerate_functors_budgeted(a, e, budget)?;
    let n = functors.len();
    let obj_ids: Vec<ObjId> = (0..n).map(|i| padded("F", i, n)).collect();

    let mut nats: Vec<(usize, usize, NatTrans)> = Vec::new();
    for (i, f) in functors.iter().enumerate() {
        for (j, g) in functors.iter().enumerate() {
            for nat in enumerate_nats_budgeted(f, g, budget)? {
                nats.push((i, j, nat));
            }
        }
    }
    let total = nats.len();
    let mor_ids: Vec<MorId> = (0..total).map(|i| padded("n", i, total)).collect();

    let mut identities = BTreeMap::new();
    let mut morphisms = Vec::new();
    let mut index_of: BTreeMap<(usize, usize, Vec<(ObjId, MorId)>), usize> = BTreeMap::new();
    for (idx, (i, j, nat)) in nats.iter().enumerate() {
        morphisms.push(MorData {
            id: mor_ids[idx].clone(),
            src: obj_ids[*i].clone(),
            tgt: obj_ids[*j].clone(),
        });
        let key = (*i, *j, nat.components.clone().into_iter().collect::<Vec<_>>());
        index_of.insert(key, idx);
        if *i == *j && *nat == NatTrans::identity(&functors[*i]) {
            identities.insert(obj_ids[*i].clone(), mor_ids[idx].clone());
        }
    }

    let mut comp = BTreeMap::new();
    for (fi, (i1, j1, n1)) in nats.iter().enumerate() {
        for (si, (i2, j2, n2)) in nats.iter().enumerate() {
            if j1 != i2 {
                continue;
            }
            budget.charge(1)?;
            let v = n2.vcomp(n1);
            let key = (*i1, *j2, v.components.into_iter().collect::<Vec<_>>());
            let vi = index_of[&key];
            comp.insert((mor_ids[si].clone(), mor_ids[fi].clone()), mor_ids[vi].clone());
        }
    }

    let cat = FinCat::from_parts(obj_ids.clone(), morphisms, identities, comp);
    Ok(FunctorCategory {
        cat: Arc::new(cat),
        objects: functors,
        morphisms: nats.into_iter().map(|(_, _, n)| n).collect(),
        obj_ids,
        mor_ids,
    })
}

//! Finite categories presented by explicit composition tables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ObjId = String;
pub type MorId = String;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MorData {
    pub id: MorId,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// A finite category: objects, morphisms (identities included), and a total
/// composition table on composable pairs, keyed `(second, first)`.
///
/// All fields are immutable after construction; categories are shared via
/// [`Arc`].
#[derive(Debug, Clone)]
pub struct FinCat {
    objects: Vec<ObjId>,
    morphisms: Vec<MorData>,
    identities: BTreeMap<ObjId, MorId>,
    comp: BTreeMap<(MorId, MorId), MorId>,
    // derived lookup caches
    mor_by_id: BTreeMap<MorId, usize>,
    hom: BTreeMap<(ObjId, ObjId), Vec<MorId>>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.comp == other.comp
    }
}
impl Eq for FinCat {}

/// Raw description of a category before validation. Identities are implicit
/// and synthesized with names `id:<obj>`.
#[derive(Debug, Clone, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// `(id, src, tgt)` for the non-identity morphisms.
    pub morphisms: Vec<(String, String, String)>,
    /// `((second, first), composite)` on composable non-identity pairs.
    pub comp: Vec<((String, String), String)>,
}

pub fn identity_name(obj: &str) -> MorId {
    format!("id:{obj}")
}

impl FinCat {
    /// Validate a raw description into a category, synthesizing identities
    /// and checking every law exhaustively.
    pub fn validate(raw: &RawCategory) -> Result<FinCat> {
        let mut objects: Vec<ObjId> = raw.objects.clone();
        objects.sort();
        for w in objects.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateId(format!("object {}", w[0])));
            }
        }
        let objset: BTreeSet<&String> = objects.iter().collect();

        let mut morphisms: Vec<MorData> = Vec::new();
        for (id, src, tgt) in &raw.morphisms {
            if !objset.contains(src) {
                return Err(Error::DanglingRef(format!("morphism {id}: source {src}")));
            }
            if !objset.contains(tgt) {
                return Err(Error::DanglingRef(format!("morphism {id}: target {tgt}")));
            }
            morphisms.push(MorData { id: id.clone(), src: src.clone(), tgt: tgt.clone() });
        }
        let mut identities = BTreeMap::new();
        for obj in &objects {
            let id = identity_name(obj);
            identities.insert(obj.clone(), id.clone());
            morphisms.push(MorData { id, src: obj.clone(), tgt: obj.clone() });
        }
        morphisms.sort();
        for w in morphisms.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateId(format!("morphism {}", w[0].id)));
            }
        }

        let by_id: BTreeMap<MorId, usize> =
            morphisms.iter().enumerate().map(|(i, m)| (m.id.clone(), i)).collect();

        // Composition table: copy declared entries, then force identity
        // composites. Declared entries may mention identities as long as they
        // agree with the forced value.
        let mut comp: BTreeMap<(MorId, MorId), MorId> = BTreeMap::new();
        for ((second, first), value) in &raw.comp {
            let s = by_id
                .get(second)
                .ok_or_else(|| Error::DanglingRef(format!("comp second {second}")))?;
            let f = by_id
                .get(first)
                .ok_or_else(|| Error::DanglingRef(format!("comp first {first}")))?;
            let v = by_id
                .get(value)
                .ok_or_else(|| Error::DanglingRef(format!("comp value {value}")))?;
            let (s, f, v) = (&morphisms[*s], &morphisms[*f], &morphisms[*v]);
            if f.tgt != s.src || v.src != f.src || v.tgt != s.tgt {
                return Err(Error::BadComposite {
                    second: second.clone(),
                    first: first.clone(),
                    value: value.clone(),
                });
            }
            if comp.insert((second.clone(), first.clone()), value.clone()).is_some() {
                return Err(Error::DuplicateId(format!("comp entry ({second}, {first})")));
            }
        }
        for m in &morphisms {
            let id_src = identity_name(&m.src);
            let id_tgt = identity_name(&m.tgt);
            for (key, forced) in [
                ((m.id.clone(), id_src), m.id.clone()),
                ((id_tgt, m.id.clone()), m.id.clone()),
            ] {
                match comp.get(&key) {
                    None => {
                        comp.insert(key, forced);
                    }
                    Some(v) if *v == forced => {}
                    Some(_) => return Err(Error::IdentityViolation(m.id.clone())),
                }
            }
        }

        let mut hom: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        for m in &morphisms {
            hom.entry((m.src.clone(), m.tgt.clone())).or_default().push(m.id.clone());
        }

        let cat = FinCat { objects, morphisms, identities, comp, mor_by_id: by_id, hom };
        cat.check_laws()?;
        Ok(cat)
    }

    /// Build a category that is correct by construction, filling in identity
    /// composites. Panics on malformed input; used by the internal
    /// constructions (products, commas, functor categories, ...).
    pub(crate) fn from_parts(
        mut objects: Vec<ObjId>,
        mut morphisms: Vec<MorData>,
        identities: BTreeMap<ObjId, MorId>,
        mut comp: BTreeMap<(MorId, MorId), MorId>,
    ) -> FinCat {
        objects.sort();
        morphisms.sort();
        for m in &morphisms {
            let id_src = identities[&m.src].clone();
            let id_tgt = identities[&m.tgt].clone();
            comp.entry((m.id.clone(), id_src)).or_insert_with(|| m.id.clone());
            comp.entry((id_tgt, m.id.clone())).or_insert_with(|| m.id.clone());
        }
        let mor_by_id = morphisms.iter().enumerate().map(|(i, m)| (m.id.clone(), i)).collect();
        let mut hom: BTreeMap<(ObjId, ObjId), Vec<MorId>> = BTreeMap::new();
        for m in &morphisms {
            hom.entry((m.src.clone(), m.tgt.clone())).or_default().push(m.id.clone());
        }
        FinCat { objects, morphisms, identities, comp, mor_by_id, hom }
    }

    /// Exhaustive identity, totality, and associativity checks.
    pub fn check_laws(&self) -> Result<()> {
        for m in &self.morphisms {
            let id_src = &self.identities[&m.src];
            let id_tgt = &self.identities[&m.tgt];
            if self.comp.get(&(m.id.clone(), id_src.clone())) != Some(&m.id)
                || self.comp.get(&(id_tgt.clone(), m.id.clone())) != Some(&m.id)
            {
                return Err(Error::IdentityViolation(m.id.clone()));
            }
        }
        for f in &self.morphisms {
            for g in &self.morphisms {
                let key = (g.id.clone(), f.id.clone());
                if f.tgt == g.src {
                    let v = self.comp.get(&key).ok_or_else(|| Error::MissingComposite {
                        second: g.id.clone(),
                        first: f.id.clone(),
                    })?;
                    let vm = self.mor(v);
                    if vm.src != f.src || vm.tgt != g.tgt {
                        return Err(Error::BadComposite {
                            second: g.id.clone(),
                            first: f.id.clone(),
                            value: v.clone(),
                        });
                    }
                } else if self.comp.contains_key(&key) {
                    return Err(Error::BadComposite {
                        second: g.id.clone(),
                        first: f.id.clone(),
                        value: self.comp[&key].clone(),
                    });
                }
            }
        }
        for f in &self.morphisms {
            for g in &self.morphisms {
                if f.tgt != g.src {
                    continue;
                }
                let gf = self.compose(&g.id, &f.id);
                for h in &self.morphisms {
                    if g.tgt != h.src {
                        continue;
                    }
                    let hg = self.compose(&h.id, &g.id);
                    if self.compose(&h.id, &gf) != self.compose(&hg, &f.id) {
                        return Err(Error::AssocViolation {
                            h: h.id.clone(),
                            g: g.id.clone(),
                            f: f.id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[ObjId] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[MorData] {
        &self.morphisms
    }

    pub fn has_object(&self, o: &str) -> bool {
        self.objects.binary_search_by(|x| x.as_str().cmp(o)).is_ok()
    }

    pub fn mor(&self, id: &str) -> &MorData {
        &self.morphisms[self.mor_by_id[id]]
    }

    pub fn try_mor(&self, id: &str) -> Option<&MorData> {
        self.mor_by_id.get(id).map(|i| &self.morphisms[*i])
    }

    pub fn identity(&self, obj: &str) -> &MorId {
        &self.identities[obj]
    }

    pub fn identities(&self) -> &BTreeMap<ObjId, MorId> {
        &self.identities
    }

    pub fn is_identity(&self, mor: &str) -> bool {
        let m = self.mor(mor);
        self.identities[&m.src] == m.id
    }

    /// Composite `second o first`. Panics on non-composable input.
    pub fn compose(&self, second: &str, first: &str) -> MorId {
        self.comp[&(second.to_string(), first.to_string())].clone()
    }

    pub fn try_compose(&self, second: &str, first: &str) -> Option<&MorId> {
        self.comp.get(&(second.to_string(), first.to_string()))
    }

    /// Morphisms from `src` to `tgt` in canonical order.
    pub fn hom(&self, src: &str, tgt: &str) -> &[MorId] {
        static EMPTY: Vec<MorId> = Vec::new();
        self.hom.get(&(src.to_string(), tgt.to_string())).unwrap_or(&EMPTY)
    }

    pub fn comp_table(&self) -> &BTreeMap<(MorId, MorId), MorId> {
        &self.comp
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Mutually inverse pair `x -> y -> x`, if one exists (least in canonical
    /// order).
    pub fn find_iso(&self, x: &str, y: &str) -> Option<(MorId, MorId)> {
        for f in self.hom(x, y) {
            for g in self.hom(y, x) {
                if self.compose(g, f) == *self.identity(x) && self.compose(f, g) == *self.identity(y)
                {
                    return Some((f.clone(), g.clone()));
                }
            }
        }
        None
    }

    pub fn are_isomorphic_objects(&self, x: &str, y: &str) -> bool {
        self.find_iso(x, y).is_some()
    }

    pub fn is_iso_morphism(&self, f: &str) -> bool {
        let m = self.mor(f);
        self.hom(&m.tgt, &m.src).iter().any(|g| {
            self.compose(g, f) == *self.identity(&m.src) && self.compose(f, g) == *self.identity(&m.tgt)
        })
    }
}

/// Kinds accepted by [`construct`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructKind {
    Terminal,
    Opposite,
    Product,
    Coproduct,
}

pub fn construct(kind: ConstructKind, operands: &[Arc<FinCat>]) -> Result<FinCat> {
    let arity = match kind {
        ConstructKind::Terminal => 0,
        ConstructKind::Opposite => 1,
        ConstructKind::Product | ConstructKind::Coproduct => 2,
    };
    if operands.len() != arity {
        return Err(Error::DomainMismatch(format!(
            "{kind:?} expects {arity} operands, got {}",
            operands.len()
        )));
    }
    Ok(match kind {
        ConstructKind::Terminal => terminal(),
        ConstructKind::Opposite => opposite(&operands[0]),
        ConstructKind::Product => product(&operands[0], &operands[1]),
        ConstructKind::Coproduct => coproduct(&operands[0], &operands[1]),
    })
}

pub fn terminal() -> FinCat {
    let obj = "*".to_string();
    let identities = BTreeMap::from([(obj.clone(), identity_name(&obj))]);
    FinCat::from_parts(
        vec![obj.clone()],
        vec![MorData { id: identity_name(&obj), src: obj.clone(), tgt: obj }],
        identities,
        BTreeMap::new(),
    )
}

pub fn empty() -> FinCat {
    FinCat::from_parts(Vec::new(), Vec::new(), BTreeMap::new(), BTreeMap::new())
}

/// Same object and morphism ids, sources and targets swapped, table
/// transposed. Involutive on the nose.
pub fn opposite(a: &FinCat) -> FinCat {
    let morphisms = a
        .morphisms()
        .iter()
        .map(|m| MorData { id: m.id.clone(), src: m.tgt.clone(), tgt: m.src.clone() })
        .collect();
    let comp = a
        .comp_table()
        .iter()
        .map(|((s, f), v)| ((f.clone(), s.clone()), v.clone()))
        .collect();
    FinCat::from_parts(a.objects().to_vec(), morphisms, a.identities().clone(), comp)
}

fn pair_id(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

pub fn product(a: &FinCat, b: &FinCat) -> FinCat {
    let mut objects = Vec::new();
    let mut identities = BTreeMap::new();
    for x in a.objects() {
        for y in b.objects() {
            let o = pair_id(x, y);
            identities.insert(o.clone(), pair_id(a.identity(x), b.identity(y)));
            objects.push(o);
        }
    }
    let mut morphisms = Vec::new();
    for m in a.morphisms() {
        for n in b.morphisms() {
            morphisms.push(MorData {
                id: pair_id(&m.id, &n.id),
                src: pair_id(&m.src, &n.src),
                tgt: pair_id(&m.tgt, &n.tgt),
            });
        }
    }
    let mut comp = BTreeMap::new();
    for ((s1, f1), v1) in a.comp_table() {
        for ((s2, f2), v2) in b.comp_table() {
            comp.insert((pair_id(s1, s2), pair_id(f1, f2)), pair_id(v1, v2));
        }
    }
    FinCat::from_parts(objects, morphisms, identities, comp)
}

pub fn coproduct(a: &FinCat, b: &FinCat) -> FinCat {
    let tag = |i: usize, id: &str| format!("in{i}:{id}");
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut identities = BTreeMap::new();
    let mut comp = BTreeMap::new();
    for (i, c) in [a, b].iter().enumerate() {
        for x in c.objects() {
            objects.push(tag(i, x));
            identities.insert(tag(i, x), tag(i, c.identity(x)));
        }
        for m in c.morphisms() {
            morphisms.push(MorData { id: tag(i, &m.id), src: tag(i, &m.src), tgt: tag(i, &m.tgt) });
        }
        for ((s, f), v) in c.comp_table() {
            comp.insert((tag(i, s), tag(i, f)), tag(i, v));
        }
    }
    FinCat::from_parts(objects, morphisms, identities, comp)
}

/// Connectivity of the undirected morphism graph. The empty category is not
/// connected.
pub fn is_connected(c: &FinCat) -> bool {
    if c.is_empty() {
        return false;
    }
    let mut seen: BTreeSet<&ObjId> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let start = &c.objects()[0];
    seen.insert(start);
    queue.push_back(start);
    while let Some(o) = queue.pop_front() {
        for m in c.morphisms() {
            let next = if m.src == *o && !seen.contains(&m.tgt) {
                Some(&m.tgt)
            } else if m.tgt == *o && !seen.contains(&m.src) {
                Some(&m.src)
            } else {
                None
            };
            if let Some(n) = next {
                seen.insert(n);
                queue.push_back(n);
            }
        }
    }
    seen.len() == c.objects().len()
}

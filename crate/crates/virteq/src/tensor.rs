//! Horizontal composites of modules as coend quotients, right extensions as
//! ends, and the composite-cell criterion.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::cat::ObjId;
use crate::cell::{cell_keys, enumerate_cells_budgeted, Cell, CellKey};
use crate::error::{Error, Result};
use crate::functor::{cats_eq, FunctorMap};
use crate::module::{hom_module, ElemId, Module};

/// Union-find over indices; roots are least indices.
struct Uf {
    parent: Vec<usize>,
}

impl Uf {
    fn new(n: usize) -> Self {
        Uf { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, x: usize, y: usize) {
        let (px, py) = (self.find(x), self.find(y));
        if px != py {
            self.parent[px.max(py)] = px.min(py);
        }
    }
}

fn tensor_elem_id(c: &str, a: &str, rep: &(ObjId, ElemId, ElemId)) -> ElemId {
    format!("({c},{a})#({},{},{})", rep.0, rep.1, rep.2)
}

struct ClassTable {
    /// class representatives, sorted; the representative is the least triple
    reps: Vec<(ObjId, ElemId, ElemId)>,
    rep_by_triple: BTreeMap<(ObjId, ElemId, ElemId), usize>,
}

impl ClassTable {
    fn rep_of(&self, t: &(ObjId, ElemId, ElemId)) -> &(ObjId, ElemId, ElemId) {
        &self.reps[self.rep_by_triple[t]]
    }
}

fn entry_table(e: &Module, f: &Module, c: &str, a: &str) -> ClassTable {
    let b_cat = &e.cod;
    let mut triples: Vec<(ObjId, ElemId, ElemId)> = Vec::new();
    for b in b_cat.objects() {
        for x in e.entry(b, a) {
            for y in f.entry(c, b) {
                triples.push((b.clone(), x.clone(), y.clone()));
            }
        }
    }
    triples.sort();
    let index: BTreeMap<&(ObjId, ElemId, ElemId), usize> =
        triples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut uf = Uf::new(triples.len());
    // generating relation: for beta: b' -> b, x in E(b, a), y in F(c, b'):
    // (b', x.beta, y) ~ (b, x, beta.y)
    for beta in b_cat.morphisms() {
        for x in e.entry(&beta.tgt, a) {
            let xb = e.act_right(x, &beta.id);
            for y in f.entry(c, &beta.src) {
                let by = f.act_left(&beta.id, y);
                let t1 = (beta.src.clone(), xb.clone(), y.clone());
                let t2 = (beta.tgt.clone(), x.clone(), by.clone());
                uf.union(index[&t1], index[&t2]);
            }
        }
    }
    let roots: Vec<usize> = {
        let mut uf = uf;
        (0..triples.len()).map(|i| uf.find(i)).collect()
    };
    let mut rep_set: Vec<usize> = roots.clone();
    rep_set.sort_unstable();
    rep_set.dedup();
    let root_to_rep: BTreeMap<usize, usize> =
        rep_set.iter().enumerate().map(|(k, r)| (*r, k)).collect();
    let reps: Vec<(ObjId, ElemId, ElemId)> =
        rep_set.iter().map(|r| triples[*r].clone()).collect();
    let rep_by_triple = triples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), root_to_rep[&roots[i]]))
        .collect();
    ClassTable { reps, rep_by_triple }
}

/// The composite `E (x) F` of `E: A -|-> B` and `F: B -|-> C`.
///
/// Entry `(c, a)` is the set of triples `(b, x in E(b,a), y in F(c,b))`
/// modulo the equivalence generated by `(x.beta, y) ~ (x, beta.y)`, with the
/// least triple of each class as representative. Returns the module together
/// with the binary cocartesian quotient cell `E x F => E (x) F`.
pub fn tensor(e: &Arc<Module>, f: &Arc<Module>) -> Result<(Arc<Module>, Cell)> {
    if !cats_eq(&e.cod, &f.dom) {
        return Err(Error::MiddleMismatch("tensor requires cod(E) = dom(F)".into()));
    }
    let a_cat = &e.dom;
    let c_cat = &f.cod;

    let mut entry_classes: BTreeMap<(ObjId, ObjId), ClassTable> = BTreeMap::new();
    for c in c_cat.objects() {
        for a in a_cat.objects() {
            entry_classes.insert((c.clone(), a.clone()), entry_table(e, f, c, a));
        }
    }

    let mut entries = BTreeMap::new();
    for ((c, a), table) in &entry_classes {
        if table.reps.is_empty() {
            continue;
        }
        let mut ids: Vec<ElemId> =
            table.reps.iter().map(|rep| tensor_elem_id(c, a, rep)).collect();
        ids.sort();
        entries.insert((c.clone(), a.clone()), ids);
    }

    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for ((c, a), table) in &entry_classes {
        for rep in &table.reps {
            let id = tensor_elem_id(c, a, rep);
            for alpha in a_cat.morphisms() {
                if alpha.src != *a {
                    continue;
                }
                let moved =
                    (rep.0.clone(), e.act_left(&alpha.id, &rep.1).clone(), rep.2.clone());
                let target = &entry_classes[&(c.clone(), alpha.tgt.clone())];
                left.insert(
                    (alpha.id.clone(), id.clone()),
                    tensor_elem_id(c, &alpha.tgt, target.rep_of(&moved)),
                );
            }
            for gamma in c_cat.morphisms() {
                if gamma.tgt != *c {
                    continue;
                }
                let moved =
                    (rep.0.clone(), rep.1.clone(), f.act_right(&rep.2, &gamma.id).clone());
                let target = &entry_classes[&(gamma.src.clone(), a.clone())];
                right.insert(
                    (gamma.id.clone(), id.clone()),
                    tensor_elem_id(&gamma.src, a, target.rep_of(&moved)),
                );
            }
        }
    }

    let module =
        Arc::new(Module { dom: a_cat.clone(), cod: c_cat.clone(), entries, left, right });

    let source = vec![e.clone(), f.clone()];
    let vf = FunctorMap::identity(a_cat);
    let vg = FunctorMap::identity(c_cat);
    let mut components = BTreeMap::new();
    for key in cell_keys(&source, &vf) {
        let (objs, elems) = &key;
        let (a, b, c) = (&objs[0], &objs[1], &objs[2]);
        let triple = (b.clone(), elems[0].clone(), elems[1].clone());
        let table = &entry_classes[&(c.clone(), a.clone())];
        components.insert(key.clone(), tensor_elem_id(c, a, table.rep_of(&triple)));
    }
    let cell = Cell { source, target: module.clone(), vf, vg, components };
    Ok((module, cell))
}

fn rext_elem_id(c: &str, b: &str, idx: usize, total: usize) -> ElemId {
    let width = total.max(1).to_string().len();
    format!("({c},{b})#eta{idx:0width$}")
}

/// A family `eta_a: K(b, a) -> F(c, a)`, stored as `(a, k-element) -> f-element`.
type Family = BTreeMap<(ObjId, ElemId), ElemId>;

fn natural_families(k: &Module, f: &Module, c: &ObjId, b: &ObjId) -> Vec<Family> {
    let a_cat = &k.dom;
    let mut slots: Vec<(ObjId, ElemId)> = Vec::new();
    for a in a_cat.objects() {
        for x in k.entry(b, a) {
            slots.push((a.clone(), x.clone()));
        }
    }
    fn dfs(
        slots: &[(ObjId, ElemId)],
        i: usize,
        k: &Module,
        f: &Module,
        c: &ObjId,
        chosen: &mut Family,
        out: &mut Vec<Family>,
    ) {
        if i == slots.len() {
            out.push(chosen.clone());
            return;
        }
        let (a, x) = &slots[i];
        'cand: for v in f.entry(c, a) {
            // naturality: eta_{a'}(alpha . x) = alpha . eta_a(x)
            for alpha in k.dom.morphisms() {
                if alpha.src == *a {
                    let ax = k.act_left(&alpha.id, x);
                    let other = if alpha.tgt == *a && ax == x {
                        Some(v)
                    } else {
                        chosen.get(&(alpha.tgt.clone(), ax.clone()))
                    };
                    if let Some(w) = other {
                        if f.act_left(&alpha.id, v) != w {
                            continue 'cand;
                        }
                    }
                }
                if alpha.tgt == *a {
                    for ((a0, x0), w) in chosen.iter() {
                        if *a0 == alpha.src
                            && k.act_left(&alpha.id, x0) == x
                            && f.act_left(&alpha.id, w) != v
                        {
                            continue 'cand;
                        }
                    }
                }
            }
            chosen.insert((a.clone(), x.clone()), v.clone());
            dfs(slots, i + 1, k, f, c, chosen, out);
            chosen.remove(&(a.clone(), x.clone()));
        }
    }
    let mut out = Vec::new();
    dfs(&slots, 0, k, f, c, &mut BTreeMap::new(), &mut out);
    out.sort();
    out
}

/// Right extension of `F: A -|-> C` along `K: A -|-> B`.
///
/// The entry `R(c, b)` is the set of families `eta_a: K(b, a) -> F(c, a)`
/// natural in `a`, computed by exhaustive filtration; returns the module
/// together with the evaluation cell `K x R => F`, `(x, eta) |-> eta(x)`.
pub fn right_extension_module(k: &Arc<Module>, f: &Arc<Module>) -> Result<(Arc<Module>, Cell)> {
    if !cats_eq(&k.dom, &f.dom) {
        return Err(Error::DomainMismatch("right extension requires dom(K) = dom(F)".into()));
    }
    let a_cat = &k.dom;
    let b_cat = &k.cod;
    let c_cat = &f.cod;

    let mut tables: BTreeMap<(ObjId, ObjId), Vec<Family>> = BTreeMap::new();
    for c in c_cat.objects() {
        for b in b_cat.objects() {
            tables.insert((c.clone(), b.clone()), natural_families(k, f, c, b));
        }
    }

    let mut entries = BTreeMap::new();
    for ((c, b), fams) in &tables {
        if !fams.is_empty() {
            entries.insert(
                (c.clone(), b.clone()),
                (0..fams.len()).map(|i| rext_elem_id(c, b, i, fams.len())).collect(),
            );
        }
    }

    let find_id = |c: &ObjId, b: &ObjId, fam: &Family| -> ElemId {
        let fams = &tables[&(c.clone(), b.clone())];
        let idx = fams.binary_search(fam).expect("family must exist");
        rext_elem_id(c, b, idx, fams.len())
    };
    let family_of = |c: &ObjId, b: &ObjId, id: &ElemId| -> &Family {
        let fams = &tables[&(c.clone(), b.clone())];
        let idx = (0..fams.len())
            .find(|i| rext_elem_id(c, b, *i, fams.len()) == *id)
            .expect("family id");
        &fams[idx]
    };

    // left action by beta: b -> b': (beta . eta)_a(x) = eta_a(x . beta)
    let mut left = BTreeMap::new();
    // right action by gamma: c' -> c: (eta . gamma)_a(x) = eta_a(x) . gamma
    let mut right = BTreeMap::new();
    for ((c, b), fams) in &tables {
        for (i, fam) in fams.iter().enumerate() {
            let id = rext_elem_id(c, b, i, fams.len());
            for beta in b_cat.morphisms() {
                if beta.src != *b {
                    continue;
                }
                let mut moved: Family = BTreeMap::new();
                for a in a_cat.objects() {
                    for x in k.entry(&beta.tgt, a) {
                        let xb = k.act_right(x, &beta.id);
                        moved
                            .insert((a.clone(), x.clone()), fam[&(a.clone(), xb.clone())].clone());
                    }
                }
                left.insert((beta.id.clone(), id.clone()), find_id(c, &beta.tgt, &moved));
            }
            for gamma in c_cat.morphisms() {
                if gamma.tgt != *c {
                    continue;
                }
                let moved: Family = fam
                    .iter()
                    .map(|(key, v)| (key.clone(), f.act_right(v, &gamma.id).clone()))
                    .collect();
                right.insert((gamma.id.clone(), id.clone()), find_id(&gamma.src, b, &moved));
            }
        }
    }

    let module =
        Arc::new(Module { dom: b_cat.clone(), cod: c_cat.clone(), entries, left, right });

    let source = vec![k.clone(), module.clone()];
    let vf = FunctorMap::identity(a_cat);
    let vg = FunctorMap::identity(c_cat);
    let mut components = BTreeMap::new();
    for key in cell_keys(&source, &vf) {
        let (objs, elems) = &key;
        let (a, b, c) = (&objs[0], &objs[1], &objs[2]);
        let fam = family_of(c, b, &elems[1]);
        components.insert(key.clone(), fam[&(a.clone(), elems[0].clone())].clone());
    }
    let cell = Cell { source, target: f.clone(), vf, vg, components };
    Ok((module, cell))
}

/// A unary cell with identity boundaries exhibiting an entrywise bijection,
/// found by enumeration; `None` if the modules are not isomorphic.
pub fn find_entrywise_iso(e: &Arc<Module>, f: &Arc<Module>) -> Result<Option<Cell>> {
    if !cats_eq(&e.dom, &f.dom) || !cats_eq(&f.cod, &e.cod) {
        return Ok(None);
    }
    for b in e.cod.objects() {
        for a in e.dom.objects() {
            if e.entry(b, a).len() != f.entry(b, a).len() {
                return Ok(None);
            }
        }
    }
    let vf = FunctorMap::identity(&e.dom);
    let vg = FunctorMap::identity(&e.cod);
    let mut budget = Budget::new("find_entrywise_iso");
    let cells = enumerate_cells_budgeted(std::slice::from_ref(e), f, &vf, &vg, &mut budget)?;
    Ok(cells.into_iter().find(is_entrywise_bijective))
}

/// Does a unary cell restrict to a bijection from each source entry onto the
/// corresponding target entry?
pub fn is_entrywise_bijective(c: &Cell) -> bool {
    let e = &c.source[0];
    let f = &c.target;
    let mut images: BTreeMap<(ObjId, ObjId), Vec<ElemId>> = BTreeMap::new();
    for ((objs, _), v) in c.components.iter() {
        images
            .entry((objs[1].clone(), objs[0].clone()))
            .or_default()
            .push(v.clone());
    }
    for b in e.cod.objects() {
        for a in e.dom.objects() {
            let mut img =
                images.get(&(b.clone(), a.clone())).cloned().unwrap_or_default();
            img.sort();
            img.dedup();
            let target_entry = f.entry(c.vg.ob(b), c.vf.ob(a));
            if img.len() != e.entry(b, a).len() || target_entry.len() != img.len() {
                return false;
            }
        }
    }
    true
}

/// The iterated tensor of a composable list together with a decode table
/// sending each element (keyed by its entry, since ids may repeat across
/// entries) to a representative entry tuple of the list.
type Decode = BTreeMap<((ObjId, ObjId), ElemId), CellKey>;

pub(crate) fn iterated_tensor(source: &[Arc<Module>]) -> Result<(Arc<Module>, Decode)> {
    assert!(!source.is_empty());
    let mut acc = source[0].clone();
    let mut decode: Decode = BTreeMap::new();
    for ((b, a), elems) in &acc.entries {
        for el in elems {
            decode.insert(
                ((b.clone(), a.clone()), el.clone()),
                (vec![a.clone(), b.clone()], vec![el.clone()]),
            );
        }
    }
    for m in &source[1..] {
        let (t, q) = tensor(&acc, m)?;
        let mut next: Decode = BTreeMap::new();
        for ((objs, elems), class) in &q.components {
            let outer_key = ((objs[2].clone(), objs[0].clone()), class.clone());
            if next.contains_key(&outer_key) {
                continue;
            }
            let inner = &decode[&((objs[1].clone(), objs[0].clone()), elems[0].clone())];
            let mut o = inner.0.clone();
            o.push(objs[2].clone());
            let mut e = inner.1.clone();
            e.push(elems[1].clone());
            next.insert(outer_key, (o, e));
        }
        decode = next;
        acc = t;
    }
    Ok((acc, decode))
}

/// Is a cell with identity vertical boundary a composite (cocartesian) cell?
/// True iff the canonical comparison from the iterated tensor of the source
/// to the target, induced by the cell, is a bijection on every entry.
pub fn is_composite_cell(c: &Cell) -> Result<bool> {
    if !c.has_identity_boundary() {
        return Err(Error::NonIdentityBoundary(
            "composite detection needs identity vertical functors".into(),
        ));
    }
    let a_cat = c.vf.dom.clone();
    let c_cat = c.vg.dom.clone();
    if c.source.is_empty() {
        // comparison hom_A(b, a) -> F(b, a): gamma |-> gamma . c[b]
        let f = &c.target;
        for b in a_cat.objects() {
            for a in a_cat.objects() {
                let mut image: Vec<ElemId> = a_cat
                    .hom(b, a)
                    .iter()
                    .map(|gamma| {
                        let base = &c.components[&(vec![b.clone()], vec![])];
                        f.act_left(gamma, base).clone()
                    })
                    .collect();
                image.sort();
                image.dedup();
                if image.len() != a_cat.hom(b, a).len() || image.len() != f.entry(b, a).len() {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    let (acc, decode) = iterated_tensor(&c.source)?;
    for co in c_cat.objects() {
        for ao in a_cat.objects() {
            let mut image: Vec<ElemId> = Vec::new();
            for el in acc.entry(co, ao) {
                let key = &decode[&((co.clone(), ao.clone()), el.clone())];
                image.push(c.components[key].clone());
            }
            image.sort();
            image.dedup();
            if image.len() != acc.entry(co, ao).len()
                || image.len() != c.target.entry(co, ao).len()
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The left unit law cell `hom_A x E => E`, `(gamma, e) |-> gamma . e`.
pub fn left_unit_cell(e: &Arc<Module>) -> Cell {
    let h = Arc::new(hom_module(&e.dom));
    let source = vec![h, e.clone()];
    let vf = FunctorMap::identity(&e.dom);
    let vg = FunctorMap::identity(&e.cod);
    let components = cell_keys(&source, &vf)
        .into_iter()
        .map(|k| {
            let v = e.act_left(&k.1[0], &k.1[1]).clone();
            (k, v)
        })
        .collect();
    Cell { source, target: e.clone(), vf, vg, components }
}

/// The right unit law cell `E x hom_B => E`, `(e, delta) |-> e . delta`.
pub fn right_unit_cell(e: &Arc<Module>) -> Cell {
    let h = Arc::new(hom_module(&e.cod));
    let source = vec![e.clone(), h];
    let vf = FunctorMap::identity(&e.dom);
    let vg = FunctorMap::identity(&e.cod);
    let components = cell_keys(&source, &vf)
        .into_iter()
        .map(|k| {
            let v = e.act_right(&k.1[0], &k.1[1]).clone();
            (k, v)
        })
        .collect();
    Cell { source, target: e.clone(), vf, vg, components }
}

/// The two-sided unit law cell `hom_A x E x hom_B => E`.
pub fn both_unit_cell(e: &Arc<Module>) -> Cell {
    let ha = Arc::new(hom_module(&e.dom));
    let hb = Arc::new(hom_module(&e.cod));
    let source = vec![ha, e.clone(), hb];
    let vf = FunctorMap::identity(&e.dom);
    let vg = FunctorMap::identity(&e.cod);
    let components = cell_keys(&source, &vf)
        .into_iter()
        .map(|k| {
            let ge = e.act_left(&k.1[0], &k.1[1]).clone();
            let v = e.act_right(&ge, &k.1[2]).clone();
            (k, v)
        })
        .collect();
    Cell { source, target: e.clone(), vf, vg, components }
}

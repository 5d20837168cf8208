//! Multicells of the virtual double category of modules.
//!
//! A cell has a composable list of source modules, a target module, two
//! vertical boundary functors, and one target element per entry tuple of the
//! source, natural in every object variable. Cells with empty source are
//! indexed by objects of the common domain category.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::cat::{FinCat, ObjId};
use crate::error::{Error, Result};
use crate::functor::{cats_eq, FunctorMap};
use crate::module::{ElemId, Module};

/// Entry tuple of a composable list: the object chain (length n+1, or 1 for
/// an empty list) and the element chain (length n).
pub type CellKey = (Vec<ObjId>, Vec<ElemId>);

#[derive(Debug, Clone)]
pub struct Cell {
    pub source: Vec<Arc<Module>>,
    pub target: Arc<Module>,
    pub vf: FunctorMap,
    pub vg: FunctorMap,
    pub components: BTreeMap<CellKey, ElemId>,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.vf == other.vf
            && self.vg == other.vg
            && self.components == other.components
    }
}
impl Eq for Cell {}

/// All entry tuples of `mods` whose object chain starts at one of `starts`.
/// The object chain includes the start, so it has length `mods.len() + 1`.
pub fn chain_tuples(mods: &[Arc<Module>], starts: &[ObjId]) -> Vec<CellKey> {
    let mut out = Vec::new();
    for s in starts {
        chain_rec(mods, 0, &mut vec![s.clone()], &mut Vec::new(), &mut out);
    }
    out
}

fn chain_rec(
    mods: &[Arc<Module>],
    i: usize,
    objs: &mut Vec<ObjId>,
    elems: &mut Vec<ElemId>,
    out: &mut Vec<CellKey>,
) {
    if i == mods.len() {
        out.push((objs.clone(), elems.clone()));
        return;
    }
    let m = &mods[i];
    let prev = objs[i].clone();
    for next in m.cod.objects() {
        for e in m.entry(next, &prev) {
            objs.push(next.clone());
            elems.push(e.clone());
            chain_rec(mods, i + 1, objs, elems, out);
            objs.pop();
            elems.pop();
        }
    }
}

/// How one side of a naturality constraint transforms the chosen component.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Act {
    Id,
    Left(String),
    Right(String),
}

fn apply(target: &Module, act: &Act, v: &ElemId) -> ElemId {
    match act {
        Act::Id => v.clone(),
        Act::Left(m) => target.act_left(m, v).clone(),
        Act::Right(m) => target.act_right(v, m).clone(),
    }
}

/// One elementary naturality constraint: `act1(c[k1]) == act2(c[k2])`.
#[derive(Debug, Clone)]
struct Constraint {
    k1: CellKey,
    act1: Act,
    k2: CellKey,
    act2: Act,
    /// the morphism whose move produced this constraint, for error reports
    mor: String,
}

fn boundary_category(source: &[Arc<Module>], vf: &FunctorMap) -> Arc<FinCat> {
    if source.is_empty() {
        vf.dom.clone()
    } else {
        source[0].dom.clone()
    }
}

fn check_boundary(
    source: &[Arc<Module>],
    target: &Module,
    vf: &FunctorMap,
    vg: &FunctorMap,
) -> Result<()> {
    for w in source.windows(2) {
        if !cats_eq(&w[0].cod, &w[1].dom) {
            return Err(Error::BoundaryMismatch("source list is not composable".into()));
        }
    }
    let first = boundary_category(source, vf);
    let last = if source.is_empty() { vg.dom.clone() } else { source.last().unwrap().cod.clone() };
    if source.is_empty() && !cats_eq(&vf.dom, &vg.dom) {
        return Err(Error::BoundaryMismatch(
            "empty source requires a common domain for the vertical functors".into(),
        ));
    }
    if !cats_eq(&vf.dom, &first) || !cats_eq(&vg.dom, &last) {
        return Err(Error::BoundaryMismatch("vertical functors do not match the source".into()));
    }
    if !cats_eq(&vf.cod, &target.dom) || !cats_eq(&vg.cod, &target.cod) {
        return Err(Error::BoundaryMismatch("vertical functors do not match the target".into()));
    }
    Ok(())
}

/// The expected component keys of a cell with this source over `vf.dom`.
pub fn cell_keys(source: &[Arc<Module>], vf: &FunctorMap) -> Vec<CellKey> {
    let a = boundary_category(source, vf);
    chain_tuples(source, a.objects())
}

/// Generate every elementary naturality constraint.
fn constraints(
    source: &[Arc<Module>],
    vf: &FunctorMap,
    vg: &FunctorMap,
) -> Vec<Constraint> {
    let mut out = Vec::new();
    let n = source.len();
    let a0 = boundary_category(source, vf);
    if n == 0 {
        for alpha in a0.morphisms() {
            out.push(Constraint {
                k1: (vec![alpha.src.clone()], vec![]),
                act1: Act::Left(vf.mor(&alpha.id).clone()),
                k2: (vec![alpha.tgt.clone()], vec![]),
                act2: Act::Right(vg.mor(&alpha.id).clone()),
                mor: alpha.id.clone(),
            });
        }
        return out;
    }
    let tuples = chain_tuples(source, a0.objects());
    // left boundary moves
    for t in &tuples {
        for alpha in a0.morphisms() {
            if alpha.src != t.0[0] {
                continue;
            }
            let mut objs = t.0.clone();
            let mut elems = t.1.clone();
            objs[0] = alpha.tgt.clone();
            elems[0] = source[0].act_left(&alpha.id, &elems[0]).clone();
            out.push(Constraint {
                k1: (objs, elems),
                act1: Act::Id,
                k2: t.clone(),
                act2: Act::Left(vf.mor(&alpha.id).clone()),
                mor: alpha.id.clone(),
            });
        }
    }
    // right boundary moves
    let an = &source[n - 1].cod;
    for t in &tuples {
        for alpha in an.morphisms() {
            if alpha.tgt != t.0[n] {
                continue;
            }
            let mut objs = t.0.clone();
            let mut elems = t.1.clone();
            objs[n] = alpha.src.clone();
            elems[n - 1] = source[n - 1].act_right(&elems[n - 1], &alpha.id).clone();
            out.push(Constraint {
                k1: (objs, elems),
                act1: Act::Id,
                k2: t.clone(),
                act2: Act::Right(vg.mor(&alpha.id).clone()),
                mor: alpha.id.clone(),
            });
        }
    }
    // middle moves at junction p between source[p-1] and source[p]:
    // c(..., e'.alpha, f, ...) = c(..., e', alpha.f, ...)
    for p in 1..n {
        let mid = &source[p].dom;
        let prefixes = chain_tuples(&source[..p - 1], a0.objects());
        // covers modules 0..p-1; object chains end at position p-1
        for prefix in &prefixes {
            let a_pm1 = prefix.0.last().unwrap().clone();
            for alpha in mid.morphisms() {
                let x = &alpha.src;
                let xp = &alpha.tgt;
                for e_prime in source[p - 1].entry(xp, &a_pm1) {
                    let lowered = source[p - 1].act_right(e_prime, &alpha.id).clone();
                    for suffix in chain_tuples(&source[p..], std::slice::from_ref(x)) {
                        let mut lhs_objs = prefix.0.clone();
                        lhs_objs.extend_from_slice(&suffix.0);
                        let mut lhs_elems = prefix.1.clone();
                        lhs_elems.push(lowered.clone());
                        lhs_elems.extend_from_slice(&suffix.1);
                        let raised = source[p].act_left(&alpha.id, &suffix.1[0]).clone();
                        let mut rhs_objs = prefix.0.clone();
                        rhs_objs.push(xp.clone());
                        rhs_objs.extend_from_slice(&suffix.0[1..]);
                        let mut rhs_elems = prefix.1.clone();
                        rhs_elems.push(e_prime.clone());
                        rhs_elems.push(raised);
                        rhs_elems.extend_from_slice(&suffix.1[1..]);
                        out.push(Constraint {
                            k1: (lhs_objs, lhs_elems),
                            act1: Act::Id,
                            k2: (rhs_objs, rhs_elems),
                            act2: Act::Id,
                            mor: alpha.id.clone(),
                        });
                    }
                }
            }
        }
    }
    out
}

impl Cell {
    pub fn new(
        source: Vec<Arc<Module>>,
        target: Arc<Module>,
        vf: FunctorMap,
        vg: FunctorMap,
        components: BTreeMap<CellKey, ElemId>,
    ) -> Result<Cell> {
        check_boundary(&source, &target, &vf, &vg)?;
        let keys = cell_keys(&source, &vf);
        if components.len() != keys.len() {
            return Err(Error::BoundaryMismatch(format!(
                "component table has {} entries, expected {}",
                components.len(),
                keys.len()
            )));
        }
        for key in &keys {
            let v = components.get(key).ok_or_else(|| {
                Error::BoundaryMismatch(format!("missing component at {key:?}"))
            })?;
            let row = vg.ob(key.0.last().unwrap());
            let col = vf.ob(&key.0[0]);
            if !target.entry(row, col).contains(v) {
                return Err(Error::BoundaryMismatch(format!(
                    "component {v} at {key:?} is not in the target entry ({row},{col})"
                )));
            }
        }
        let cell = Cell { source, target, vf, vg, components };
        cell.check_naturality()?;
        Ok(cell)
    }

    pub fn check_naturality(&self) -> Result<()> {
        for c in constraints(&self.source, &self.vf, &self.vg) {
            let v1 = apply(&self.target, &c.act1, &self.components[&c.k1]);
            let v2 = apply(&self.target, &c.act2, &self.components[&c.k2]);
            if v1 != v2 {
                return Err(Error::NaturalityViolation(c.mor));
            }
        }
        Ok(())
    }

    /// Identity cell on a module.
    pub fn identity(m: &Arc<Module>) -> Cell {
        let vf = FunctorMap::identity(&m.dom);
        let vg = FunctorMap::identity(&m.cod);
        let components = cell_keys(std::slice::from_ref(m), &vf)
            .into_iter()
            .map(|k| {
                let v = k.1[0].clone();
                (k, v)
            })
            .collect();
        Cell { source: vec![m.clone()], target: m.clone(), vf, vg, components }
    }

    pub fn arity(&self) -> usize {
        self.source.len()
    }

    pub fn has_identity_boundary(&self) -> bool {
        self.vf == FunctorMap::identity(&self.vf.dom) && self.vg == FunctorMap::identity(&self.vg.dom)
    }

    /// Component at a key, panicking on unknown keys.
    pub fn at(&self, objs: &[&str], elems: &[&str]) -> &ElemId {
        let key = (
            objs.iter().map(|s| s.to_string()).collect(),
            elems.iter().map(|s| s.to_string()).collect(),
        );
        &self.components[&key]
    }
}

/// Multicategorical substitution: plug one cell per source module of `outer`.
/// Inner targets must match the outer source modules and vertical boundaries
/// must agree at the junctions.
pub fn substitute_cells(outer: &Cell, inners: &[Cell]) -> Result<Cell> {
    if inners.len() != outer.source.len() {
        return Err(Error::BoundaryMismatch(format!(
            "expected {} inner cells, got {}",
            outer.source.len(),
            inners.len()
        )));
    }
    if inners.is_empty() {
        return Ok(outer.clone());
    }
    for (i, inner) in inners.iter().enumerate() {
        if *inner.target != *outer.source[i] {
            return Err(Error::BoundaryMismatch(format!(
                "inner cell {i} does not target outer source module {i}"
            )));
        }
    }
    for w in inners.windows(2) {
        if w[0].vg != w[1].vf {
            return Err(Error::BoundaryMismatch(
                "adjacent inner cells do not share a vertical functor".into(),
            ));
        }
    }
    let vf = outer.vf.compose(&inners[0].vf);
    let vg = outer.vg.compose(&inners.last().unwrap().vg);
    let source: Vec<Arc<Module>> =
        inners.iter().flat_map(|c| c.source.iter().cloned()).collect();

    let mut components = BTreeMap::new();
    for key in cell_keys(&source, &vf) {
        let (objs, elems) = &key;
        let mut pos = 0usize;
        let mut outer_objs = Vec::with_capacity(inners.len() + 1);
        let mut outer_elems = Vec::with_capacity(inners.len());
        outer_objs.push(inners[0].vf.ob(&objs[0]).clone());
        for inner in inners {
            let k = inner.source.len();
            let seg_objs: Vec<ObjId> = objs[pos..=pos + k].to_vec();
            let seg_elems: Vec<ElemId> = elems[pos..pos + k].to_vec();
            let v = inner.components[&(seg_objs, seg_elems)].clone();
            outer_elems.push(v);
            outer_objs.push(inner.vg.ob(&objs[pos + k]).clone());
            pos += k;
        }
        let v = outer.components[&(outer_objs, outer_elems)].clone();
        components.insert(key, v);
    }
    Cell::new(source, outer.target.clone(), vf, vg, components)
}

/// All cells with the given boundary, in canonical order of their component
/// tables.
pub fn enumerate_cells(
    source: &[Arc<Module>],
    target: &Arc<Module>,
    vf: &FunctorMap,
    vg: &FunctorMap,
) -> Result<Vec<Cell>> {
    let mut budget = Budget::new("enumerate_cells");
    enumerate_cells_budgeted(source, target, vf, vg, &mut budget)
}

pub(crate) fn enumerate_cells_budgeted(
    source: &[Arc<Module>],
    target: &Arc<Module>,
    vf: &FunctorMap,
    vg: &FunctorMap,
    budget: &mut Budget,
) -> Result<Vec<Cell>> {
    check_boundary(source, target, vf, vg)?;
    let keys = cell_keys(source, vf);
    let index: BTreeMap<&CellKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let all = constraints(source, vf, vg);
    // constraint indexed by the later of its two keys
    let mut by_last: Vec<Vec<(usize, &Constraint)>> = vec![Vec::new(); keys.len()];
    for c in &all {
        let i1 = index[&c.k1];
        let i2 = index[&c.k2];
        let last = i1.max(i2);
        by_last[last].push((i1.min(i2), c));
    }
    // candidate values per key
    let candidates: Vec<Vec<ElemId>> = keys
        .iter()
        .map(|k| {
            let row = vg.ob(k.0.last().unwrap());
            let col = vf.ob(&k.0[0]);
            target.entry(row, col).to_vec()
        })
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<Option<ElemId>> = vec![None; keys.len()];
    cell_dfs(
        source, target, vf, vg, &keys, &candidates, &by_last, &index, 0, &mut chosen, &mut out,
        budget,
    )?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cell_dfs(
    source: &[Arc<Module>],
    target: &Arc<Module>,
    vf: &FunctorMap,
    vg: &FunctorMap,
    keys: &[CellKey],
    candidates: &[Vec<ElemId>],
    by_last: &[Vec<(usize, &Constraint)>],
    index: &BTreeMap<&CellKey, usize>,
    i: usize,
    chosen: &mut Vec<Option<ElemId>>,
    out: &mut Vec<Cell>,
    budget: &mut Budget,
) -> Result<()> {
    if i == keys.len() {
        let components = keys
            .iter()
            .zip(chosen.iter())
            .map(|(k, v)| (k.clone(), v.clone().unwrap()))
            .collect();
        out.push(Cell {
            source: source.to_vec(),
            target: target.clone(),
            vf: vf.clone(),
            vg: vg.clone(),
            components,
        });
        return Ok(());
    }
    'cand: for v in &candidates[i] {
        budget.charge(1)?;
        chosen[i] = Some(v.clone());
        for (_, c) in &by_last[i] {
            let (Some(v1), Some(v2)) =
                (&chosen[index[&c.k1]], &chosen[index[&c.k2]])
            else {
                continue;
            };
            if apply(target, &c.act1, v1) != apply(target, &c.act2, v2) {
                chosen[i] = None;
                continue 'cand;
            }
        }
        cell_dfs(
            source, target, vf, vg, keys, candidates, by_last, index, i + 1, chosen, out, budget,
        )?;
        chosen[i] = None;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{self, FinCat, RawCategory};
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
    fn identity_cell_is_valid() {
        let two = walking_arrow();
        let h = Arc::new(hom_module(&two));
        let c = Cell::identity(&h);
        c.check_naturality().unwrap();
        let rebuilt = Cell::new(
            c.source.clone(),
            c.target.clone(),
            c.vf.clone(),
            c.vg.clone(),
            c.components.clone(),
        );
        assert!(rebuilt.is_ok());
    }

    #[test]
    fn nullary_cell_over_points() {
        // nullary cell () => hom(2) over (pick 0, pick 1) with component the arrow
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let h = Arc::new(hom_module(&two));
        let vf = FunctorMap::pick(&one, &two, "0");
        let vg = FunctorMap::pick(&one, &two, "1");
        // component at * lives in hom(vg *, vf *) = hom(1, 0)... empty!
        // The valid orientation is vf = pick 1, vg = pick 0 for entry (0, 1).
        let c = Cell::new(
            vec![],
            h.clone(),
            vg.clone(),
            vf.clone(),
            BTreeMap::from([((vec!["*".to_string()], vec![]), "a".to_string())]),
        );
        assert!(c.is_ok(), "{c:?}");
        // and the mis-typed orientation is rejected
        assert!(Cell::new(
            vec![],
            h,
            vf,
            vg,
            BTreeMap::from([((vec!["*".to_string()], vec![]), "a".to_string())]),
        )
        .is_err());
    }

    #[test]
    fn perturbed_cell_violates_naturality() {
        // unary cell hom(2) => hom(2): replace the component at the arrow
        // entry by a mismatched identity and watch naturality fail.
        let two = walking_arrow();
        let h = Arc::new(hom_module(&two));
        let mut c = Cell::identity(&h);
        let key = (vec!["1".to_string(), "0".to_string()], vec!["a".to_string()]);
        assert_eq!(c.components[&key], "a");
        // the only other candidate in entry (0, 1) does not exist, so break a
        // different square: swap the identity component at (0,0) with... the
        // entry there is a singleton too. Use a bigger category instead.
        let par = Arc::new(
            FinCat::validate(&RawCategory {
                objects: vec!["x".into(), "y".into()],
                morphisms: vec![
                    ("u".into(), "x".into(), "y".into()),
                    ("v".into(), "x".into(), "y".into()),
                ],
                comp: vec![],
            })
            .unwrap(),
        );
        let hp = Arc::new(hom_module(&par));
        let mut cp = Cell::identity(&hp);
        let key_u = (vec!["y".to_string(), "x".to_string()], vec!["u".to_string()]);
        cp.components.insert(key_u, "v".to_string());
        assert!(matches!(cp.check_naturality(), Err(Error::NaturalityViolation(_))));
        // the unperturbed one is fine
        c.components.insert(key.clone(), "a".to_string());
        c.check_naturality().unwrap();
    }

    #[test]
    fn cell_counts() {
        let one = Arc::new(cat::terminal());
        let two = walking_arrow();
        let h1 = Arc::new(hom_module(&one));
        let id1 = FunctorMap::identity(&one);
        assert_eq!(
            enumerate_cells(&[h1.clone()], &h1, &id1, &id1).unwrap().len(),
            1
        );
        // nullary source over the walking arrow into its hom module:
        // naturality forces the identity family.
        let h2 = Arc::new(hom_module(&two));
        let id2 = FunctorMap::identity(&two);
        assert_eq!(enumerate_cells(&[], &h2, &id2, &id2).unwrap().len(), 1);
    }

    #[test]
    fn yoneda_cell_count_for_representables() {
        // cells B|f => B|g over identities biject with Nat(f, g)
        let two = walking_arrow();
        let fs = crate::functor::enumerate_functors(&two, &two).unwrap();
        for f in &fs {
            for g in &fs {
                let bf = Arc::new(representable(f, Variance::Covariant));
                let bg = Arc::new(representable(g, Variance::Covariant));
                let ida = FunctorMap::identity(&two);
                let idb = FunctorMap::identity(&two);
                let cells = enumerate_cells(&[bf], &bg, &ida, &idb).unwrap();
                let nats = crate::functor::enumerate_nats(f, g).unwrap();
                assert_eq!(cells.len(), nats.len(), "mismatch for {f:?} => {g:?}");
            }
        }
    }

    #[test]
    fn substitution_laws() {
        let two = walking_arrow();
        let h = Arc::new(hom_module(&two));
        let id_cell = Cell::identity(&h);
        // substitute identities into the identity
        let c = substitute_cells(&id_cell, &[id_cell.clone()]).unwrap();
        assert_eq!(c, id_cell);
    }
}

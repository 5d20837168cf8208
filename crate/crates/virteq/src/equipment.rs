//! The virtual-equipment structure on modules: restriction and unit cells,
//! companions and conjoints of functors, and the transposition bijections.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::FinCat;
use crate::cell::{cell_keys, Cell};
use crate::error::{Error, Result};
use crate::functor::{FunctorMap, NatTrans};
use crate::module::{hom_module, representable, restrict_module, Module, Variance};

/// Restriction of a module along a pair of functors, together with its
/// cartesian cell (identity on elements).
pub fn restriction_cell(
    e: &Arc<Module>,
    a: &FunctorMap,
    b: &FunctorMap,
) -> Result<(Arc<Module>, Cell)> {
    let restricted = Arc::new(restrict_module(e, a, b)?);
    let components = cell_keys(std::slice::from_ref(&restricted), &FunctorMap::identity(&a.dom))
        .into_iter()
        .map(|k| {
            let v = k.1[0].clone();
            (k, v)
        })
        .collect();
    let cell = Cell {
        source: vec![restricted.clone()],
        target: e.clone(),
        vf: a.clone(),
        vg: b.clone(),
        components,
    };
    Ok((restricted, cell))
}

/// Factor a cell with vertical boundary `(a o f', b o g')` through the
/// cartesian restriction cell: the same component family retyped over
/// `(f', g')`.
pub fn factor_through_restriction(
    chi: &Cell,
    rho_source: &Arc<Module>,
    a: &FunctorMap,
    b: &FunctorMap,
    f_prime: &FunctorMap,
    g_prime: &FunctorMap,
) -> Result<Cell> {
    if chi.vf != a.compose(f_prime) || chi.vg != b.compose(g_prime) {
        return Err(Error::BoundaryMismatch(
            "vertical boundary does not factor through the restriction".into(),
        ));
    }
    Cell::new(
        chi.source.clone(),
        rho_source.clone(),
        f_prime.clone(),
        g_prime.clone(),
        chi.components.clone(),
    )
}

/// The nullary cocartesian unit cell `() => hom_A` with identity components.
pub fn nullary_unit_cell(a: &Arc<FinCat>) -> Cell {
    let h = Arc::new(hom_module(a));
    let id = FunctorMap::identity(a);
    let components = a
        .objects()
        .iter()
        .map(|o| ((vec![o.clone()], vec![]), a.identity(o).clone()))
        .collect();
    Cell { source: vec![], target: h, vf: id.clone(), vg: id, components }
}

/// The unit cell of a functor: `hom_A => hom_B` over `(f, f)`, acting by `f`
/// on morphisms.
pub fn functor_unit_cell(f: &FunctorMap) -> Cell {
    let ha = Arc::new(hom_module(&f.dom));
    let hb = Arc::new(hom_module(&f.cod));
    let components = cell_keys(std::slice::from_ref(&ha), &FunctorMap::identity(&f.dom))
        .into_iter()
        .map(|k| {
            let v = f.mor(&k.1[0]).clone();
            (k, v)
        })
        .collect();
    Cell { source: vec![ha], target: hb, vf: f.clone(), vg: f.clone(), components }
}

/// The four canonical cells displaying `B|f` as the companion and `f|B` as
/// the conjoint of a functor `f: A -> B`.
#[derive(Debug, Clone)]
pub struct CompanionCells {
    /// `hom_A => B|f` over `(id, f)`
    pub kappa_cov: Cell,
    /// `B|f => hom_B` over `(f, id)` (restriction cartesian cell)
    pub rho_cov: Cell,
    /// `hom_A => f|B` over `(f, id)`
    pub kappa_con: Cell,
    /// `f|B => hom_B` over `(id, f)` (restriction cartesian cell)
    pub rho_con: Cell,
}

pub fn companion_conjoint_cells(f: &FunctorMap) -> CompanionCells {
    let a = &f.dom;
    let b = &f.cod;
    let ha = Arc::new(hom_module(a));
    let hb = Arc::new(hom_module(b));
    let cov = Arc::new(representable(f, Variance::Covariant));
    let con = Arc::new(representable(f, Variance::Contravariant));
    let ida = FunctorMap::identity(a);
    let idb = FunctorMap::identity(b);

    let kappa_cov = Cell {
        source: vec![ha.clone()],
        target: cov.clone(),
        vf: ida.clone(),
        vg: f.clone(),
        components: cell_keys(std::slice::from_ref(&ha), &ida)
            .into_iter()
            .map(|k| {
                let v = f.mor(&k.1[0]).clone();
                (k, v)
            })
            .collect(),
    };
    let rho_cov = Cell {
        source: vec![cov.clone()],
        target: hb.clone(),
        vf: f.clone(),
        vg: idb.clone(),
        components: cell_keys(std::slice::from_ref(&cov), &ida)
            .into_iter()
            .map(|k| {
                let v = k.1[0].clone();
                (k, v)
            })
            .collect(),
    };
    let kappa_con = Cell {
        source: vec![ha.clone()],
        target: con.clone(),
        vf: f.clone(),
        vg: ida.clone(),
        components: cell_keys(std::slice::from_ref(&ha), &ida)
            .into_iter()
            .map(|k| {
                let v = f.mor(&k.1[0]).clone();
                (k, v)
            })
            .collect(),
    };
    let rho_con = Cell {
        source: vec![con.clone()],
        target: hb,
        vf: idb,
        vg: f.clone(),
        components: cell_keys(std::slice::from_ref(&con), &FunctorMap::identity(b))
            .into_iter()
            .map(|k| {
                let v = k.1[0].clone();
                (k, v)
            })
            .collect(),
    };
    CompanionCells { kappa_cov, rho_cov, kappa_con, rho_con }
}

/// Factor a cell through the nullary unit cell at junction `slot`: the
/// unique cell with `hom_A` inserted at `slot` whose restriction along the
/// unit cell is the given cell.
pub fn factor_through_unit(chi: &Cell, slot: usize) -> Result<Cell> {
    let n = chi.source.len();
    if slot > n {
        return Err(Error::BoundaryMismatch(format!(
            "slot {slot} out of range for source of length {n}"
        )));
    }
    let juncture: Arc<FinCat> = if n == 0 {
        chi.vf.dom.clone()
    } else if slot == 0 {
        chi.source[0].dom.clone()
    } else {
        chi.source[slot - 1].cod.clone()
    };
    let h = Arc::new(hom_module(&juncture));
    let mut source = chi.source.clone();
    source.insert(slot, h);

    let mut components = BTreeMap::new();
    for key in cell_keys(&source, &chi.vf) {
        let (objs, elems) = &key;
        // gamma: objs[slot+1] -> objs[slot] is the hom entry
        let gamma = &elems[slot];
        let value = if slot < n {
            // absorb gamma into the following module's element
            let mut o = objs.clone();
            o.remove(slot + 1);
            let mut e = elems.clone();
            e.remove(slot);
            e[slot] = chi.source[slot].act_left(gamma, &e[slot]).clone();
            chi.components[&(o, e)].clone()
        } else {
            // hom is last: push gamma onto the target by the right action
            let mut o = objs.clone();
            o.remove(slot + 1);
            let mut e = elems.clone();
            e.remove(slot);
            let base = &chi.components[&(o, e)];
            chi.target.act_right(base, chi.vg.mor(gamma)).clone()
        };
        components.insert(key, value);
    }
    Cell::new(source, chi.target.clone(), chi.vf.clone(), chi.vg.clone(), components)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransposeDirection {
    Add,
    Remove,
}

/// Recover `f` from a module that is literally `representable(f, Covariant)`.
pub fn recover_covariant_rep(m: &Module) -> Result<FunctorMap> {
    let a = &m.dom;
    let b = &m.cod;
    let mut on_obj = BTreeMap::new();
    for ao in a.objects() {
        let mut hits =
            b.objects().iter().filter(|bo| m.entry(bo, ao).contains(b.identity(bo)));
        let bo = hits
            .next()
            .ok_or_else(|| Error::ShapeMismatch(format!("no identity element in column {ao}")))?;
        if hits.next().is_some() {
            return Err(Error::ShapeMismatch(format!("ambiguous identity element in column {ao}")));
        }
        on_obj.insert(ao.clone(), bo.clone());
    }
    let mut on_mor = BTreeMap::new();
    for alpha in a.morphisms() {
        let id_elem = b.identity(&on_obj[&alpha.src]).clone();
        on_mor.insert(alpha.id.clone(), m.act_left(&alpha.id, &id_elem).clone());
    }
    let f = FunctorMap { dom: a.clone(), cod: b.clone(), on_obj, on_mor };
    f.check_laws().map_err(|_| Error::ShapeMismatch("recovered map is not a functor".into()))?;
    if representable(&f, Variance::Covariant) != *m {
        return Err(Error::ShapeMismatch("module is not a covariant representable".into()));
    }
    Ok(f)
}

/// Recover `f` from a module that is literally `representable(f, Contravariant)`.
pub fn recover_contravariant_rep(m: &Module) -> Result<FunctorMap> {
    let b = &m.dom;
    let a = &m.cod;
    let mut on_obj = BTreeMap::new();
    for ao in a.objects() {
        let mut hits =
            b.objects().iter().filter(|bo| m.entry(ao, bo).contains(b.identity(bo)));
        let bo = hits
            .next()
            .ok_or_else(|| Error::ShapeMismatch(format!("no identity element in row {ao}")))?;
        if hits.next().is_some() {
            return Err(Error::ShapeMismatch(format!("ambiguous identity element in row {ao}")));
        }
        on_obj.insert(ao.clone(), bo.clone());
    }
    let mut on_mor = BTreeMap::new();
    for alpha in a.morphisms() {
        let id_elem = b.identity(&on_obj[&alpha.tgt]).clone();
        on_mor.insert(alpha.id.clone(), m.act_right(&id_elem, &alpha.id).clone());
    }
    let f = FunctorMap { dom: a.clone(), cod: b.clone(), on_obj, on_mor };
    f.check_laws().map_err(|_| Error::ShapeMismatch("recovered map is not a functor".into()))?;
    if representable(&f, Variance::Contravariant) != *m {
        return Err(Error::ShapeMismatch("module is not a contravariant representable".into()));
    }
    Ok(f)
}

/// The transposition bijections of the equipment: trade a non-identity
/// vertical functor for a representable end-cap of the source list, or back.
///
/// With `Side::Left` and `Add`, a cell `E* => F` over `(f, g)` becomes
/// `f|B, E* => F` over `(id, g)`; `Remove` inverts this, requiring the
/// end-cap to be a contravariant representable and the vertical functor an
/// identity. `Side::Right` handles the dual `D|g` cap; `Both` does both.
pub fn transpose_cell(c: &Cell, side: Side, direction: TransposeDirection) -> Result<Cell> {
    match (side, direction) {
        (Side::Both, TransposeDirection::Add) => {
            let c = transpose_cell(c, Side::Left, TransposeDirection::Add)?;
            transpose_cell(&c, Side::Right, TransposeDirection::Add)
        }
        (Side::Both, TransposeDirection::Remove) => {
            let c = transpose_cell(c, Side::Left, TransposeDirection::Remove)?;
            transpose_cell(&c, Side::Right, TransposeDirection::Remove)
        }
        (Side::Left, TransposeDirection::Add) => {
            let f = &c.vf;
            let cap = Arc::new(representable(f, Variance::Contravariant));
            let mut source = c.source.clone();
            source.insert(0, cap);
            let vf = FunctorMap::identity(&f.cod);
            let mut components = BTreeMap::new();
            for key in cell_keys(&source, &vf) {
                let (objs, elems) = &key;
                // phi: f(objs[1]) -> objs[0] in B
                let phi = &elems[0];
                let inner = (objs[1..].to_vec(), elems[1..].to_vec());
                let base = &c.components[&inner];
                components.insert(key.clone(), c.target.act_left(phi, base).clone());
            }
            Cell::new(source, c.target.clone(), vf, c.vg.clone(), components)
        }
        (Side::Left, TransposeDirection::Remove) => {
            if c.source.is_empty() {
                return Err(Error::ShapeMismatch("no end-cap to remove".into()));
            }
            if c.vf != FunctorMap::identity(&c.vf.dom) {
                return Err(Error::ShapeMismatch(
                    "left vertical functor must be an identity to remove".into(),
                ));
            }
            let f = recover_contravariant_rep(&c.source[0])?;
            let source = c.source[1..].to_vec();
            let mut components = BTreeMap::new();
            for key in cell_keys(&source, &f) {
                let (objs, elems) = &key;
                let fb = f.ob(&objs[0]).clone();
                let id_elem = f.cod.identity(&fb).clone();
                let mut o = vec![fb];
                o.extend_from_slice(objs);
                let mut e = vec![id_elem];
                e.extend_from_slice(elems);
                components.insert(key.clone(), c.components[&(o, e)].clone());
            }
            Cell::new(source, c.target.clone(), f, c.vg.clone(), components)
        }
        (Side::Right, TransposeDirection::Add) => {
            let g = &c.vg;
            let cap = Arc::new(representable(g, Variance::Covariant));
            let mut source = c.source.clone();
            source.push(cap);
            let vg = FunctorMap::identity(&g.cod);
            let mut components = BTreeMap::new();
            for key in cell_keys(&source, &c.vf) {
                let (objs, elems) = &key;
                let n = elems.len();
                // psi: objs[n] -> g(objs[n-1]) in D
                let psi = &elems[n - 1];
                let inner = (objs[..n].to_vec(), elems[..n - 1].to_vec());
                let base = &c.components[&inner];
                components.insert(key.clone(), c.target.act_right(base, psi).clone());
            }
            Cell::new(source, c.target.clone(), c.vf.clone(), vg, components)
        }
        (Side::Right, TransposeDirection::Remove) => {
            if c.source.is_empty() {
                return Err(Error::ShapeMismatch("no end-cap to remove".into()));
            }
            if c.vg != FunctorMap::identity(&c.vg.dom) {
                return Err(Error::ShapeMismatch(
                    "right vertical functor must be an identity to remove".into(),
                ));
            }
            let g = recover_covariant_rep(c.source.last().unwrap())?;
            let source = c.source[..c.source.len() - 1].to_vec();
            let mut components = BTreeMap::new();
            for key in cell_keys(&source, &c.vf) {
                let (objs, elems) = &key;
                let ga = g.ob(objs.last().unwrap()).clone();
                let id_elem = g.cod.identity(&ga).clone();
                let mut o = objs.clone();
                o.push(ga);
                let mut e = elems.clone();
                e.push(id_elem);
                components.insert(key.clone(), c.components[&(o, e)].clone());
            }
            Cell::new(source, c.target.clone(), c.vf.clone(), g, components)
        }
    }
}

/// The covariant embedding on 2-cells: a natural transformation `f => g`
/// becomes the cell `B|f => B|g` postcomposing with its components.
pub fn nat_as_representable_cell(alpha: &NatTrans) -> Cell {
    let f = &alpha.src;
    let g = &alpha.tgt;
    let b = &f.cod;
    let bf = Arc::new(representable(f, Variance::Covariant));
    let bg = Arc::new(representable(g, Variance::Covariant));
    let ida = FunctorMap::identity(&f.dom);
    let idb = FunctorMap::identity(b);
    let components = cell_keys(std::slice::from_ref(&bf), &ida)
        .into_iter()
        .map(|k| {
            let v = b.compose(alpha.at(&k.0[0]), &k.1[0]);
            (k, v)
        })
        .collect();
    Cell { source: vec![bf], target: bg, vf: ida, vg: idb, components }
}

/// Inverse of [`nat_as_representable_cell`]: read the components off at the
/// identity elements.
pub fn representable_cell_as_nat(c: &Cell) -> Result<NatTrans> {
    if c.arity() != 1 || !c.has_identity_boundary() {
        return Err(Error::ShapeMismatch(
            "expected a unary cell with identity vertical boundary".into(),
        ));
    }
    let f = recover_covariant_rep(&c.source[0])?;
    let g = recover_covariant_rep(&c.target)?;
    let components: BTreeMap<String, String> = f
        .dom
        .objects()
        .iter()
        .map(|a| {
            let fb = f.ob(a).clone();
            let key = (vec![a.clone(), fb.clone()], vec![f.cod.identity(&fb).clone()]);
            (a.clone(), c.components[&key].clone())
        })
        .collect();
    NatTrans::validate(&components, &f, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{self, FinCat, RawCategory};
    use crate::cell::{enumerate_cells, substitute_cells};
    use crate::functor::enumerate_functors;
    use crate::tensor::{left_unit_cell, right_unit_cell};

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
    fn unit_cell_is_natural() {
        let two = walking_arrow();
        let iota = nullary_unit_cell(&two);
        iota.check_naturality().unwrap();
        assert_eq!(iota.at(&["0"], &[]), "id:0");
        assert_eq!(iota.at(&["1"], &[]), "id:1");
        let one = Arc::new(cat::terminal());
        let iota1 = nullary_unit_cell(&one);
        assert_eq!(iota1.at(&["*"], &[]), "id:*");
    }

    #[test]
    fn factoring_identity_through_unit_gives_composition_cell() {
        let two = walking_arrow();
        let h = Arc::new(hom_module(&two));
        let id_cell = Cell::identity(&h);
        // insert the unit on the left of the single hom slot
        let hat = factor_through_unit(&id_cell, 0).unwrap();
        assert_eq!(hat, left_unit_cell(&h));
        // and substituting the unit back returns the identity cell
        let iota = nullary_unit_cell(&two);
        let back = substitute_cells(&hat, &[iota, Cell::identity(&h)]).unwrap();
        assert_eq!(back, id_cell);
    }

    #[test]
    fn unit_factorization_is_unique_on_probes() {
        let two = walking_arrow();
        let h = Arc::new(hom_module(&two));
        let id_cell = Cell::identity(&h);
        for slot in [0usize, 1] {
            let hat = factor_through_unit(&id_cell, slot).unwrap();
            let iota = nullary_unit_cell(&two);
            // every cell over the extended source whose unit substitution is
            // the identity cell must be `hat`
            let candidates =
                enumerate_cells(&hat.source, &hat.target, &hat.vf, &hat.vg).unwrap();
            let mut found = 0;
            for cand in candidates {
                let inners: Vec<Cell> = if slot == 0 {
                    vec![iota.clone(), Cell::identity(&h)]
                } else {
                    vec![Cell::identity(&h), iota.clone()]
                };
                if substitute_cells(&cand, &inners).unwrap() == id_cell {
                    assert_eq!(cand, hat);
                    found += 1;
                }
            }
            assert_eq!(found, 1);
        }
    }

    #[test]
    fn functor_unit_cell_laws() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let id2 = functor_unit_cell(&FunctorMap::identity(&two));
        assert_eq!(id2, Cell::identity(&Arc::new(hom_module(&two))));
        let f1 = FunctorMap::pick(&one, &two, "1");
        let c = functor_unit_cell(&f1);
        c.check_naturality().unwrap();
        assert_eq!(c.at(&["*", "*"], &["id:*"]), "id:1");
    }

    #[test]
    fn companion_composites_equal_the_functor_unit() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        for f in [
            FunctorMap::pick(&one, &two, "0"),
            FunctorMap::pick(&one, &two, "1"),
            FunctorMap::identity(&two),
        ] {
            let cc = companion_conjoint_cells(&f);
            cc.kappa_cov.check_naturality().unwrap();
            cc.rho_cov.check_naturality().unwrap();
            cc.kappa_con.check_naturality().unwrap();
            cc.rho_con.check_naturality().unwrap();
            let f2 = functor_unit_cell(&f);
            assert_eq!(substitute_cells(&cc.rho_cov, &[cc.kappa_cov.clone()]).unwrap(), f2);
            assert_eq!(substitute_cells(&cc.rho_con, &[cc.kappa_con.clone()]).unwrap(), f2);
        }
    }

    #[test]
    fn companion_pasting_identities_with_composition() {
        // (kappa, rho) pasted into the unit-absorption cells reproduce the
        // one-sided absorption of the representable itself
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        for f in [
            FunctorMap::pick(&one, &two, "0"),
            FunctorMap::pick(&one, &two, "1"),
            FunctorMap::identity(&two),
        ] {
            let cc = companion_conjoint_cells(&f);
            let cov = cc.rho_cov.source[0].clone();
            let con = cc.rho_con.source[0].clone();
            let lhs =
                substitute_cells(&right_unit_cell(&cov), &[cc.kappa_cov.clone(), cc.rho_cov.clone()])
                    .unwrap();
            assert_eq!(lhs, left_unit_cell(&cov));
            let rhs =
                substitute_cells(&left_unit_cell(&con), &[cc.rho_con.clone(), cc.kappa_con.clone()])
                    .unwrap();
            assert_eq!(rhs, right_unit_cell(&con));
        }
    }

    #[test]
    fn transpositions_round_trip_and_count() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let f = FunctorMap::pick(&one, &two, "0");
        let g = FunctorMap::pick(&one, &two, "1");
        // cells E => F over (f, g) with E = hom_1, F = hom_2
        let e = Arc::new(hom_module(&one));
        let ftarget = Arc::new(hom_module(&two));
        let cells = enumerate_cells(&[e.clone()], &ftarget, &f, &g).unwrap();
        let idb = FunctorMap::identity(&two);
        for c in &cells {
            let t = transpose_cell(c, Side::Both, TransposeDirection::Add).unwrap();
            t.check_naturality().unwrap();
            let back = transpose_cell(&t, Side::Both, TransposeDirection::Remove).unwrap();
            assert_eq!(&back, c);
        }
        // cardinality: |cells(E => F over (f,g))| = |cells(f|B x E x D|g => F over ids)|
        let capped_source = vec![
            Arc::new(representable(&f, Variance::Contravariant)),
            e.clone(),
            Arc::new(representable(&g, Variance::Covariant)),
        ];
        let capped = enumerate_cells(&capped_source, &ftarget, &idb, &idb).unwrap();
        assert_eq!(cells.len(), capped.len());
        // and transposing every capped cell lands back in the uncapped set
        for t in &capped {
            let c = transpose_cell(t, Side::Both, TransposeDirection::Remove).unwrap();
            assert!(cells.contains(&c));
            let t2 = transpose_cell(&c, Side::Both, TransposeDirection::Add).unwrap();
            assert_eq!(&t2, t);
        }
    }

    #[test]
    fn nat_cell_bijection_round_trip() {
        let two = walking_arrow();
        let fs = enumerate_functors(&two, &two).unwrap();
        for f in &fs {
            for g in &fs {
                let nats = crate::functor::enumerate_nats(f, g).unwrap();
                for alpha in &nats {
                    let cell = nat_as_representable_cell(alpha);
                    cell.check_naturality().unwrap();
                    let back = representable_cell_as_nat(&cell).unwrap();
                    assert_eq!(&back, alpha);
                }
                // counts agree with the enumerated cells
                let bf = Arc::new(representable(f, Variance::Covariant));
                let bg = Arc::new(representable(g, Variance::Covariant));
                let ida = FunctorMap::identity(&two);
                let cells = enumerate_cells(&[bf], &bg, &ida, &ida).unwrap();
                assert_eq!(cells.len(), nats.len());
            }
        }
    }

    #[test]
    fn identity_nat_gives_identity_cell() {
        let two = walking_arrow();
        let id = FunctorMap::identity(&two);
        let alpha = NatTrans::identity(&id);
        let cell = nat_as_representable_cell(&alpha);
        let h = Arc::new(representable(&id, Variance::Covariant));
        assert_eq!(cell, Cell::identity(&h));
    }

    #[test]
    fn contravariant_embedding_reverses_cells() {
        // cells g|B => f|B over identities biject with Nat(f => g)
        let two = walking_arrow();
        let fs = enumerate_functors(&two, &two).unwrap();
        for f in &fs {
            for g in &fs {
                let fb = Arc::new(representable(f, Variance::Contravariant));
                let gb = Arc::new(representable(g, Variance::Contravariant));
                let idb = FunctorMap::identity(&two);
                let cells = enumerate_cells(&[gb], &fb, &idb, &idb).unwrap();
                let nats = crate::functor::enumerate_nats(f, g).unwrap();
                assert_eq!(cells.len(), nats.len());
            }
        }
    }
}

//! Brute-force oracles cross-validating the fast-path operations. Each suite
//! replays a construction through an independent route and reports the first
//! counterexample in canonical order.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::cat::{self, ObjId};
use crate::cell::{enumerate_cells, substitute_cells, Cell};
use crate::comma::comma;
use crate::error::Result;
use crate::functor::{cats_eq, enumerate_functors, enumerate_nats, FunctorMap};
use crate::kan::{find_right_adjoint, is_exact_square, square_canonical_cell, Square, Which};
use crate::module::{comma_module, ElemId, Module};
use crate::tensor::{
    find_entrywise_iso, is_composite_cell, right_extension_module, tensor,
};
use crate::testkit::catalog::Catalog;
use crate::testkit::gen::{gen_extension_pair, gen_functor, gen_module_pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    /// (a) tensor vs direct coend by fixpoint closure
    Tensor,
    /// (b) right extension vs its universal property against enumerate_cells
    RightExtension,
    /// (c) adjunction search vs triangle-identity brute force
    Adjunction,
    /// (d) finality via connectivity vs exactness
    Finality,
    /// (e) composite detection vs factorization enumeration
    Composite,
}

pub const ALL_SUITES: &[SuiteName] = &[
    SuiteName::Tensor,
    SuiteName::RightExtension,
    SuiteName::Adjunction,
    SuiteName::Finality,
    SuiteName::Composite,
];

impl std::fmt::Display for SuiteName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SuiteName::Tensor => "tensor-vs-coend",
            SuiteName::RightExtension => "right-extension-universality",
            SuiteName::Adjunction => "adjunction-vs-triangles",
            SuiteName::Finality => "finality-vs-connectivity",
            SuiteName::Composite => "composite-vs-factorization",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

/// Run one oracle suite over `size` seeded instances.
pub fn oracle_suite(name: SuiteName, seed: u64, size: usize) -> Result<SuiteReport> {
    match name {
        SuiteName::Tensor => tensor_suite(seed, size),
        SuiteName::RightExtension => right_extension_suite(seed, size),
        SuiteName::Adjunction => adjunction_suite(seed, size),
        SuiteName::Finality => finality_suite(seed, size),
        SuiteName::Composite => composite_suite(seed, size),
    }
}

/// Run every suite, reports in suite-name order.
pub fn run_all_suites(seed: u64, size: usize) -> Result<Vec<SuiteReport>> {
    ALL_SUITES.iter().map(|s| oracle_suite(*s, seed, size)).collect()
}

/// Independent coend computation: partition the triples of each entry by
/// repeated sweeps of the generating relation (no union-find), and compare
/// against the partition induced by the quotient cell. `None` on agreement,
/// or the offending entry.
pub fn tensor_agrees_with_oracle(
    e: &Arc<Module>,
    f: &Arc<Module>,
    t: &Arc<Module>,
    q: &Cell,
) -> Option<String> {
    let a_cat = &e.dom;
    let b_cat = &e.cod;
    let c_cat = &f.cod;
    for co in c_cat.objects() {
        for ao in a_cat.objects() {
            // triples and the fast-path classes they map to
            let mut triples: Vec<(ObjId, ElemId, ElemId)> = Vec::new();
            for bo in b_cat.objects() {
                for x in e.entry(bo, ao) {
                    for y in f.entry(co, bo) {
                        triples.push((bo.clone(), x.clone(), y.clone()));
                    }
                }
            }
            // oracle partition: naive sweeps to a fixpoint
            let mut class: BTreeMap<(ObjId, ElemId, ElemId), usize> =
                triples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
            loop {
                let mut changed = false;
                for beta in b_cat.morphisms() {
                    for x in e.entry(&beta.tgt, ao) {
                        let xb = e.act_right(x, &beta.id).clone();
                        for y in f.entry(co, &beta.src) {
                            let by = f.act_left(&beta.id, y).clone();
                            let t1 = (beta.src.clone(), xb.clone(), y.clone());
                            let t2 = (beta.tgt.clone(), x.clone(), by.clone());
                            let (c1, c2) = (class[&t1], class[&t2]);
                            if c1 != c2 {
                                let m = c1.min(c2);
                                for v in class.values_mut() {
                                    if *v == c1 || *v == c2 {
                                        *v = m;
                                    }
                                }
                                changed = true;
                            }
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            // fast-path partition, read off the quotient cell
            let mut fast: BTreeMap<(ObjId, ElemId, ElemId), ElemId> = BTreeMap::new();
            for (bo, x, y) in &triples {
                let key = (
                    vec![ao.clone(), bo.clone(), co.clone()],
                    vec![x.clone(), y.clone()],
                );
                fast.insert((bo.clone(), x.clone(), y.clone()), q.components[&key].clone());
            }
            // same partition?
            for t1 in &triples {
                for t2 in &triples {
                    let oracle_same = class[t1] == class[t2];
                    let fast_same = fast[t1] == fast[t2];
                    if oracle_same != fast_same {
                        return Some(format!(
                            "entry ({co},{ao}): triples {t1:?} and {t2:?} disagree \
                             (oracle {oracle_same}, fast {fast_same})"
                        ));
                    }
                }
            }
            // and the number of classes matches the entry size
            let mut oracle_classes: Vec<usize> = triples.iter().map(|t| class[t]).collect();
            oracle_classes.sort_unstable();
            oracle_classes.dedup();
            if oracle_classes.len() != t.entry(co, ao).len() {
                return Some(format!(
                    "entry ({co},{ao}): oracle found {} classes, module has {}",
                    oracle_classes.len(),
                    t.entry(co, ao).len()
                ));
            }
        }
    }
    None
}

fn tensor_suite(seed: u64, size: usize) -> Result<SuiteReport> {
    let catalog = Catalog::new()?;
    let mut cases = 0;
    // catalog pairs first
    for a in catalog.small_names() {
        let ca = catalog.cat(a);
        let h = Arc::new(crate::module::hom_module(ca));
        let (t, q) = tensor(&h, &h)?;
        cases += 1;
        if let Some(w) = tensor_agrees_with_oracle(&h, &h, &t, &q) {
            return Ok(fail(SuiteName::Tensor, cases, w));
        }
    }
    for i in 0..size as u64 {
        let (e, f) = gen_module_pair(seed.wrapping_add(i).wrapping_mul(0x9e37))?;
        let (t, q) = tensor(&e, &f)?;
        cases += 1;
        if let Some(w) = tensor_agrees_with_oracle(&e, &f, &t, &q) {
            return Ok(fail(SuiteName::Tensor, cases, w));
        }
    }
    Ok(pass(SuiteName::Tensor, cases))
}

/// Check the right-extension universal property of `(r, mu)` against every
/// probe sequence of length at most two drawn from the catalog pool.
pub fn right_extension_universal(
    catalog: &Catalog,
    k: &Arc<Module>,
    f: &Arc<Module>,
    r: &Arc<Module>,
    mu: &Cell,
    max_probes: usize,
) -> Result<Option<String>> {
    let b_cat = &k.cod;
    let c_cat = &f.cod;
    let idb = FunctorMap::identity(b_cat);
    let idc = FunctorMap::identity(c_cat);
    let mut sequences: Vec<Vec<Arc<Module>>> = Vec::new();
    if cats_eq(b_cat, c_cat) {
        sequences.push(vec![]);
    }
    for m in catalog.modules_between(b_cat, c_cat) {
        sequences.push(vec![m]);
    }
    let mut mids: Vec<Arc<crate::cat::FinCat>> = vec![b_cat.clone(), c_cat.clone()];
    for name in catalog.small_names() {
        let c = catalog.cat(name);
        if !mids.iter().any(|x| cats_eq(x, c)) {
            mids.push(c.clone());
        }
    }
    for mid in &mids {
        for m1 in catalog.modules_between(b_cat, mid) {
            for m2 in catalog.modules_between(mid, c_cat) {
                sequences.push(vec![m1.clone(), m2.clone()]);
            }
        }
    }
    sequences.truncate(max_probes);
    for seq in &sequences {
        let vf = if seq.is_empty() { idb.clone() } else { idb.clone() };
        let lhs = enumerate_cells(seq, r, &vf, &idc)?;
        let mut full = vec![k.clone()];
        full.extend(seq.iter().cloned());
        let rhs = enumerate_cells(&full, f, &FunctorMap::identity(&k.dom), &idc)?;
        // composition with mu must be a bijection lhs -> rhs
        let mut images = Vec::new();
        for nu in &lhs {
            let mut inners = vec![Cell::identity(k)];
            if seq.is_empty() {
                // substituting a nullary cell into the R slot of mu
                inners.push(nu.clone());
            } else {
                inners.push(nu.clone());
            }
            let composite = substitute_cells(mu, &inners)?;
            if !rhs.contains(&composite) {
                return Ok(Some("composite escapes the enumerated cell set".into()));
            }
            images.push(composite);
        }
        images.sort_by(|a, b| format!("{:?}", a.components).cmp(&format!("{:?}", b.components)));
        images.dedup();
        if images.len() != lhs.len() {
            return Ok(Some(format!(
                "composition with mu is not injective on a probe of length {}",
                seq.len()
            )));
        }
        if lhs.len() != rhs.len() {
            return Ok(Some(format!(
                "probe of length {}: {} cells into R but {} cells into F",
                seq.len(),
                lhs.len(),
                rhs.len()
            )));
        }
    }
    Ok(None)
}

fn right_extension_suite(seed: u64, size: usize) -> Result<SuiteReport> {
    let catalog = Catalog::new()?;
    let mut cases = 0;
    for i in 0..size as u64 {
        let (k, f) = gen_extension_pair(&catalog, seed.wrapping_add(i).wrapping_mul(0x51a7))?;
        let (r, mu) = right_extension_module(&k, &f)?;
        cases += 1;
        if let Some(w) = right_extension_universal(&catalog, &k, &f, &r, &mu, 40)? {
            return Ok(fail(SuiteName::RightExtension, cases, w));
        }
    }
    Ok(pass(SuiteName::RightExtension, cases))
}

/// Brute-force adjunction detection: search for any unit/counit pair
/// satisfying the triangle identities.
pub fn has_right_adjoint_by_triangles(f: &FunctorMap) -> Result<bool> {
    let b_cat = &f.dom;
    let a_cat = &f.cod;
    let id_b = FunctorMap::identity(b_cat);
    let id_a = FunctorMap::identity(a_cat);
    for u in enumerate_functors(a_cat, b_cat)? {
        let uf = u.compose(f);
        let fu = f.compose(&u);
        for unit in enumerate_nats(&id_b, &uf)? {
            'counit: for counit in enumerate_nats(&fu, &id_a)? {
                for bo in b_cat.objects() {
                    if a_cat.compose(counit.at(f.ob(bo)), f.mor(unit.at(bo)))
                        != *a_cat.identity(f.ob(bo))
                    {
                        continue 'counit;
                    }
                }
                for ao in a_cat.objects() {
                    if b_cat.compose(u.mor(counit.at(ao)), unit.at(u.ob(ao)))
                        != *b_cat.identity(u.ob(ao))
                    {
                        continue 'counit;
                    }
                }
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn adjunction_suite(seed: u64, size: usize) -> Result<SuiteReport> {
    let catalog = Catalog::new()?;
    let mut cases = 0;
    for f in catalog.functors() {
        if f.dom.is_empty() && !f.cod.is_empty() {
            // a right adjoint to the empty inclusion would need a terminal
            // object; still well-posed, keep it in the run
        }
        let fast = find_right_adjoint(f)?;
        let oracle = has_right_adjoint_by_triangles(f)?;
        cases += 1;
        if fast.is_some() != oracle {
            return Ok(fail(
                SuiteName::Adjunction,
                cases,
                format!("disagreement on a catalog functor (fast {}, oracle {oracle})", fast.is_some()),
            ));
        }
        if let Some(adj) = fast {
            // the found adjunction must exhibit f|A ~ B|u
            let fa = Arc::new(comma_module(f, &FunctorMap::identity(&f.cod))?);
            let bu = Arc::new(crate::module::representable(&adj.u, crate::module::Variance::Covariant));
            if find_entrywise_iso(&fa, &bu)?.is_none() {
                return Ok(fail(
                    SuiteName::Adjunction,
                    cases,
                    "found adjunction without the slice equivalence".into(),
                ));
            }
        }
    }
    // a few random draws on top of the catalog
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..size.min(20) {
        let a = Arc::new(crate::testkit::gen::gen_category(rng.gen(), 3, crate::testkit::GenStyle::Poset));
        let b = Arc::new(crate::testkit::gen::gen_category(rng.gen(), 3, crate::testkit::GenStyle::Poset));
        let Some(f) = gen_functor(rng.gen(), &b, &a)? else { continue };
        let fast = find_right_adjoint(&f)?;
        let oracle = has_right_adjoint_by_triangles(&f)?;
        cases += 1;
        if fast.is_some() != oracle {
            return Ok(fail(
                SuiteName::Adjunction,
                cases,
                format!("disagreement on a random functor (fast {}, oracle {oracle})", fast.is_some()),
            ));
        }
    }
    Ok(pass(SuiteName::Adjunction, cases))
}

/// Independent connectivity oracle for finality/initiality.
pub fn final_by_connectivity(k: &FunctorMap, which: Which) -> Result<bool> {
    let one = Arc::new(cat::terminal());
    for bo in k.cod.objects() {
        let pick = FunctorMap::pick(&one, &k.cod, bo);
        let cdata = match which {
            Which::Final => comma(&pick, k)?,
            Which::Initial => comma(k, &pick)?,
        };
        if !cat::is_connected(&cdata.cat) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Independent exactness oracle for finality/initiality.
pub fn final_by_exactness(k: &FunctorMap, which: Which) -> Result<bool> {
    let one = Arc::new(cat::terminal());
    let bang_a = FunctorMap::bang(&k.dom, &one);
    let bang_b = FunctorMap::bang(&k.cod, &one);
    let id_one = FunctorMap::identity(&one);
    let sq = match which {
        Which::Final => Square::new(
            k.clone(),
            bang_a.clone(),
            bang_b,
            id_one,
            crate::functor::NatTrans::identity(&bang_a),
        )?,
        Which::Initial => Square::new(
            bang_a.clone(),
            k.clone(),
            id_one,
            bang_b,
            crate::functor::NatTrans::identity(&bang_a),
        )?,
    };
    is_exact_square(&sq)
}

fn finality_suite(seed: u64, size: usize) -> Result<SuiteReport> {
    let catalog = Catalog::new()?;
    let mut cases = 0;
    for k in catalog.functors() {
        for which in [Which::Final, Which::Initial] {
            let conn = final_by_connectivity(k, which)?;
            let exact = final_by_exactness(k, which)?;
            cases += 1;
            if conn != exact {
                return Ok(fail(
                    SuiteName::Finality,
                    cases,
                    format!("connectivity {conn} vs exactness {exact} on a catalog functor"),
                ));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..size.min(30) {
        let a = Arc::new(crate::testkit::gen::gen_category(rng.gen(), 3, crate::testkit::GenStyle::Poset));
        let b = Arc::new(crate::testkit::gen::gen_category(rng.gen(), 3, crate::testkit::GenStyle::Poset));
        let Some(k) = gen_functor(rng.gen(), &a, &b)? else { continue };
        for which in [Which::Final, Which::Initial] {
            let conn = final_by_connectivity(&k, which)?;
            let exact = final_by_exactness(&k, which)?;
            cases += 1;
            if conn != exact {
                return Ok(fail(
                    SuiteName::Finality,
                    cases,
                    format!("connectivity {conn} vs exactness {exact} on a random functor"),
                ));
            }
        }
    }
    Ok(pass(SuiteName::Finality, cases))
}

/// Oracle for cocartesianness of a cell with identity boundary: substitution
/// with the cell must biject cells out of the reduced boundary with cells
/// out of the expanded one, for every probe target drawn from the catalog.
pub fn composite_by_factorization(catalog: &Catalog, c: &Cell) -> Result<Option<bool>> {
    let a_cat = c.vf.dom.clone();
    let c_cat = c.vg.dom.clone();
    let ida = FunctorMap::identity(&a_cat);
    let idc = FunctorMap::identity(&c_cat);
    let mut targets = catalog.modules_between(&a_cat, &c_cat);
    targets.push(c.target.clone());
    if targets.is_empty() {
        return Ok(None);
    }
    for h in &targets {
        let reduced = enumerate_cells(std::slice::from_ref(&c.target), h, &ida, &idc)?;
        let expanded = enumerate_cells(&c.source, h, &ida, &idc)?;
        let mut images = Vec::new();
        for chi in &reduced {
            let composite = substitute_cells(chi, std::slice::from_ref(c))?;
            if !expanded.contains(&composite) {
                return Ok(Some(false));
            }
            images.push(composite);
        }
        images.sort_by(|a, b| format!("{:?}", a.components).cmp(&format!("{:?}", b.components)));
        images.dedup();
        if images.len() != reduced.len() || reduced.len() != expanded.len() {
            return Ok(Some(false));
        }
    }
    Ok(Some(true))
}

fn composite_suite(seed: u64, size: usize) -> Result<SuiteReport> {
    let catalog = Catalog::new()?;
    let mut cases = 0;
    // true cases: quotient cells of random tensors
    for i in 0..size as u64 {
        let (e, f) = gen_module_pair(seed.wrapping_add(i).wrapping_mul(0xabcd))?;
        let (_, q) = tensor(&e, &f)?;
        let fast = is_composite_cell(&q)?;
        cases += 1;
        if !fast {
            return Ok(fail(
                SuiteName::Composite,
                cases,
                "tensor quotient cell not detected as a composite".into(),
            ));
        }
        if let Some(oracle) = composite_by_factorization(&catalog, &q)? {
            if !oracle {
                return Ok(fail(
                    SuiteName::Composite,
                    cases,
                    "oracle rejects a tensor quotient cell".into(),
                ));
            }
        }
    }
    // false case: the canonical cell of the empty-pullback square
    let two = catalog.cat("arrow");
    let one = catalog.cat("terminal");
    let zero = catalog.cat("empty");
    let f0 = FunctorMap::pick(one, two, "0");
    let f1 = FunctorMap::pick(one, two, "1");
    let bang = FunctorMap::bang(zero, one);
    let lam = crate::functor::NatTrans {
        src: f0.compose(&bang),
        tgt: f1.compose(&bang),
        components: BTreeMap::new(),
    };
    let sq = Square::new(bang.clone(), bang, f0, f1, lam)?;
    let cell = square_canonical_cell(&sq)?;
    cases += 1;
    let fast = is_composite_cell(&cell)?;
    let oracle = composite_by_factorization(&catalog, &cell)?;
    if fast {
        return Ok(fail(
            SuiteName::Composite,
            cases,
            "empty-pullback canonical cell wrongly detected as composite".into(),
        ));
    }
    if oracle == Some(true) {
        return Ok(fail(
            SuiteName::Composite,
            cases,
            "oracle wrongly accepts the empty-pullback canonical cell".into(),
        ));
    }
    Ok(pass(SuiteName::Composite, cases))
}

fn pass(suite: SuiteName, cases: usize) -> SuiteReport {
    SuiteReport { suite: suite.to_string(), cases, pass: true, counterexample: None }
}

fn fail(suite: SuiteName, cases: usize, w: String) -> SuiteReport {
    SuiteReport { suite: suite.to_string(), cases, pass: false, counterexample: Some(w) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_suite_passes_small() {
        let r = oracle_suite(SuiteName::Tensor, 7, 5).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn corrupted_tensor_is_reported_with_its_entry() {
        // fuse two classes of a product-like tensor by hand: the oracle must
        // name the entry
        let one = Arc::new(cat::terminal());
        let mk = |elems: &[&str]| {
            Arc::new(Module {
                dom: one.clone(),
                cod: one.clone(),
                entries: BTreeMap::from([(
                    ("*".to_string(), "*".to_string()),
                    elems.iter().map(|s| s.to_string()).collect(),
                )]),
                left: elems
                    .iter()
                    .map(|e| (("id:*".to_string(), e.to_string()), e.to_string()))
                    .collect(),
                right: elems
                    .iter()
                    .map(|e| (("id:*".to_string(), e.to_string()), e.to_string()))
                    .collect(),
            })
        };
        let e = mk(&["p", "q"]);
        let f = mk(&["m"]);
        let (t, mut q) = tensor(&e, &f).unwrap();
        // corrupt: send both tuples to the same class
        let k1 = (
            vec!["*".to_string(), "*".to_string(), "*".to_string()],
            vec!["p".to_string(), "m".to_string()],
        );
        let k2 = (
            vec!["*".to_string(), "*".to_string(), "*".to_string()],
            vec!["q".to_string(), "m".to_string()],
        );
        let v = q.components[&k1].clone();
        q.components.insert(k2, v);
        let w = tensor_agrees_with_oracle(&e, &f, &t, &q);
        assert!(w.is_some());
        assert!(w.unwrap().contains("entry (*,*)"), "witness names the entry");
    }

    #[test]
    fn finality_suite_passes_small() {
        let r = oracle_suite(SuiteName::Finality, 11, 5).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

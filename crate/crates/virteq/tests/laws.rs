//! Property tests for the algebraic laws the spec pins down as invariants,
//! driven by seeded generators.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use virteq::budget::Budget;
use virteq::cat::{self, FinCat, MorData};
use virteq::cell::{cell_keys, enumerate_cells, substitute_cells, Cell};
use virteq::comma::comma;
use virteq::equipment::{
    factor_through_restriction, factor_through_unit, nullary_unit_cell, restriction_cell,
};
use virteq::functor::{enumerate_functors, functor_category, FunctorMap};
use virteq::limits::{enumerate_cones, factorizations, limit_of_diagram};
use virteq::module::{hom_module, representable, Module, Variance};
use virteq::span::{category_of_elements, is_tsdf, span_to_module};
use virteq::tensor::{find_entrywise_iso, is_composite_cell, tensor};
use virteq::testkit::{gen_category, gen_functor, gen_module, gen_module_pair, GenStyle};

/// Build the pullback of two functors into a common category, as a plain
/// category of pairs, through the validating constructor. Only an oracle;
/// both inputs here are thin, so composites of non-identities never land on
/// identities.
fn pullback_category(p: &FunctorMap, q: &FunctorMap) -> FinCat {
    assert!(virteq::functor::cats_eq(&p.cod, &q.cod));
    let mut raw = cat::RawCategory::default();
    for x in p.dom.objects() {
        for y in q.dom.objects() {
            if p.ob(x) == q.ob(y) {
                raw.objects.push(format!("<{x};{y}>"));
            }
        }
    }
    let mor_id = |m: &str, n: &str| format!("<{m};{n}>");
    let is_id_pair = |m: &str, n: &str| p.dom.is_identity(m) && q.dom.is_identity(n);
    let mut pairs: Vec<(MorData, (String, String))> = Vec::new();
    for m in p.dom.morphisms() {
        for n in q.dom.morphisms() {
            if p.mor(&m.id) == q.mor(&n.id) && !is_id_pair(&m.id, &n.id) {
                let d = MorData {
                    id: mor_id(&m.id, &n.id),
                    src: format!("<{};{}>", m.src, n.src),
                    tgt: format!("<{};{}>", m.tgt, n.tgt),
                };
                raw.morphisms.push((d.id.clone(), d.src.clone(), d.tgt.clone()));
                pairs.push((d, (m.id.clone(), n.id.clone())));
            }
        }
    }
    let name_of = |m: &str, n: &str, src: &str| -> String {
        if is_id_pair(m, n) {
            format!("id:{src}")
        } else {
            mor_id(m, n)
        }
    };
    for (m1, (a1, b1)) in &pairs {
        for (m2, (a2, b2)) in &pairs {
            if m1.tgt != m2.src {
                continue;
            }
            let ca = p.dom.compose(a2, a1);
            let cb = q.dom.compose(b2, b1);
            raw.comp.push((
                (m2.id.clone(), m1.id.clone()),
                name_of(&ca, &cb, &m1.src),
            ));
        }
    }
    FinCat::validate(&raw).expect("pullback of thin categories is a category")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Base change: comma(f, g.k) is isomorphic to the pullback of the
    /// comma projection p1 along k.
    #[test]
    fn comma_base_change(seed in 0u64..6000) {
        let a = Arc::new(gen_category(seed, 3, GenStyle::Poset));
        let b = Arc::new(gen_category(seed.wrapping_add(1), 3, GenStyle::Poset));
        let c = Arc::new(gen_category(seed.wrapping_add(2), 3, GenStyle::Poset));
        let c2 = Arc::new(gen_category(seed.wrapping_add(3), 3, GenStyle::Poset));
        let f = gen_functor(seed.wrapping_add(4), &b, &a).unwrap().unwrap();
        let g = gen_functor(seed.wrapping_add(5), &c, &a).unwrap().unwrap();
        let k = gen_functor(seed.wrapping_add(6), &c2, &c).unwrap().unwrap();
        let direct = comma(&f, &g.compose(&k)).unwrap();
        let base = comma(&f, &g).unwrap();
        let pb = pullback_category(&base.p1, &k);
        prop_assert_eq!(direct.cat.objects().len(), pb.objects().len());
        prop_assert_eq!(direct.cat.morphisms().len(), pb.morphisms().len());
        pb.check_laws().unwrap();
        // explicit iso on objects: (c', b, alpha) <-> <(k c', b, alpha); c'>
        for o in direct.cat.objects() {
            let cpart = direct.p1.ob(o);
            let bpart = direct.p0.ob(o);
            let alpha = direct.phi.at(o);
            let image = format!(
                "<{};{}>",
                virteq::comma::comma_object_id(k.ob(cpart), bpart, alpha),
                cpart
            );
            prop_assert!(pb.has_object(&image), "missing {}", image);
        }
    }

    /// The fiber of the comma projections over (c, b) is the hom-set
    /// A(f b, g c), matching the comma module entries.
    #[test]
    fn comma_fibers_match_comma_module(seed in 0u64..6000) {
        let a = Arc::new(gen_category(seed, 3, GenStyle::QuotientFree));
        let b = Arc::new(gen_category(seed.wrapping_add(1), 3, GenStyle::Poset));
        let c = Arc::new(gen_category(seed.wrapping_add(2), 3, GenStyle::Poset));
        let f = gen_functor(seed.wrapping_add(3), &b, &a).unwrap().unwrap();
        let g = gen_functor(seed.wrapping_add(4), &c, &a).unwrap().unwrap();
        let cdata = comma(&f, &g).unwrap();
        let module = virteq::module::comma_module(&f, &g).unwrap();
        for co in c.objects() {
            for bo in b.objects() {
                let fiber = cdata
                    .cat
                    .objects()
                    .iter()
                    .filter(|o| cdata.p1.ob(o) == co && cdata.p0.ob(o) == bo)
                    .count();
                prop_assert_eq!(fiber, module.entry(bo, co).len());
            }
        }
    }

    /// Tensor associativity: both bracketings of a composable triple are
    /// composites with isomorphic targets.
    #[test]
    fn tensor_associativity(seed in 0u64..4000) {
        let (e, f) = gen_module_pair(seed).unwrap();
        // a third module out of f's codomain
        let d = Arc::new(gen_category(seed.wrapping_add(9), 2, GenStyle::Poset));
        let q = Arc::new(gen_category(seed.wrapping_add(10), 2, GenStyle::Poset));
        let u = gen_functor(seed.wrapping_add(11), &d, &q).unwrap().unwrap();
        let v = gen_functor(seed.wrapping_add(12), &f.cod, &q).unwrap().unwrap();
        let g = Arc::new(virteq::module::comma_module(&u, &v).unwrap());
        let (ef, q1) = tensor(&e, &f).unwrap();
        let (ef_g, q2) = tensor(&ef, &g).unwrap();
        let left = substitute_cells(&q2, &[q1, Cell::identity(&g)]).unwrap();
        let (fg, r1) = tensor(&f, &g).unwrap();
        let (e_fg, r2) = tensor(&e, &fg).unwrap();
        let right = substitute_cells(&r2, &[Cell::identity(&e), r1]).unwrap();
        prop_assert!(is_composite_cell(&left).unwrap());
        prop_assert!(is_composite_cell(&right).unwrap());
        prop_assert!(find_entrywise_iso(&ef_g, &e_fg).unwrap().is_some());
    }

    /// Restriction is cartesian: every cell whose vertical boundary factors
    /// through the restriction functors factors uniquely through rho.
    #[test]
    fn restriction_universal_property(seed in 0u64..4000) {
        let e = gen_module(seed).unwrap();
        let a2 = Arc::new(gen_category(seed.wrapping_add(21), 2, GenStyle::Poset));
        let b2 = Arc::new(gen_category(seed.wrapping_add(22), 2, GenStyle::Poset));
        let af = gen_functor(seed.wrapping_add(23), &a2, &e.dom).unwrap().unwrap();
        let bf = gen_functor(seed.wrapping_add(24), &b2, &e.cod).unwrap().unwrap();
        let (restricted, rho) = restriction_cell(&e, &af, &bf).unwrap();
        rho.check_naturality().unwrap();
        restricted.check_laws().unwrap();
        // probe: cells from the restricted module over (af, bf), i.e. with
        // f' and g' identities
        let chi_set = enumerate_cells(&[restricted.clone()], &e, &af, &bf).unwrap();
        for chi in chi_set.iter().take(8) {
            let idf = FunctorMap::identity(&a2);
            let idg = FunctorMap::identity(&b2);
            let factored =
                factor_through_restriction(chi, &restricted, &af, &bf, &idf, &idg).unwrap();
            // rho . factored == chi
            let recomposed = {
                let mut c = factored.clone();
                // composing with rho just retypes the boundary back
                c.vf = af.clone();
                c.vg = bf.clone();
                c.target = e.clone();
                Cell::new(c.source, c.target, c.vf, c.vg, c.components).unwrap()
            };
            prop_assert_eq!(&recomposed, chi);
            // uniqueness: any other factored cell with that property equals it
            let all = enumerate_cells(&[restricted.clone()], &restricted, &idf, &idg).unwrap();
            let hits = all
                .iter()
                .filter(|cand| {
                    let mut c = (*cand).clone();
                    c.vf = af.clone();
                    c.vg = bf.clone();
                    c.target = e.clone();
                    Cell::new(c.source, c.target, c.vf, c.vg, c.components)
                        .map(|x| &x == chi)
                        .unwrap_or(false)
                })
                .count();
            prop_assert_eq!(hits, 1);
        }
    }

    /// Yoneda for modules: nullary cells into E over (id, f) biject with
    /// unary cells B|f => E.
    #[test]
    fn yoneda_for_modules(seed in 0u64..4000) {
        let e = gen_module(seed.wrapping_add(77)).unwrap();
        let a = e.dom.clone();
        let b = e.cod.clone();
        let f = gen_functor(seed.wrapping_add(78), &a, &b).unwrap().unwrap();
        let ida = FunctorMap::identity(&a);
        let idb = FunctorMap::identity(&b);
        let nullary = enumerate_cells(&[], &e, &ida, &f).unwrap();
        let bf = Arc::new(representable(&f, Variance::Covariant));
        let unary = enumerate_cells(&[bf.clone()], &e, &ida, &idb).unwrap();
        prop_assert_eq!(nullary.len(), unary.len());
        // explicit bijection: nu |-> (phi |-> nu(a) . phi), read back at the
        // identity elements
        for nu in &nullary {
            let components: BTreeMap<_, _> = cell_keys(std::slice::from_ref(&bf), &ida)
                .into_iter()
                .map(|k| {
                    let base = &nu.components[&(vec![k.0[0].clone()], vec![])];
                    let v = e.act_right(base, &k.1[0]).clone();
                    (k, v)
                })
                .collect();
            let cell =
                Cell::new(vec![bf.clone()], e.clone(), ida.clone(), idb.clone(), components)
                    .unwrap();
            prop_assert!(unary.contains(&cell));
            // read back
            for ao in a.objects() {
                let fb = f.ob(ao).clone();
                let key = (vec![ao.clone(), fb.clone()], vec![b.identity(&fb).clone()]);
                prop_assert_eq!(
                    &cell.components[&key],
                    &nu.components[&(vec![ao.clone()], vec![])]
                );
            }
        }
    }

    /// The unit cell is cocartesian: factorization through it exists, is a
    /// valid cell, restores the original on substitution, and is unique.
    #[test]
    fn unit_cell_cocartesian_on_probes(seed in 0u64..3000) {
        let (e, f) = gen_module_pair(seed.wrapping_add(31)).unwrap();
        let (t, q) = tensor(&e, &f).unwrap();
        let _ = t;
        for slot in 0..=q.source.len() {
            let hat = factor_through_unit(&q, slot).unwrap();
            let juncture = if slot == 0 {
                e.dom.clone()
            } else if slot == 1 {
                e.cod.clone()
            } else {
                f.cod.clone()
            };
            let iota = nullary_unit_cell(&juncture);
            let mut inners: Vec<Cell> =
                vec![Cell::identity(&e), Cell::identity(&f)];
            inners.insert(slot, iota);
            let back = substitute_cells(&hat, &inners).unwrap();
            prop_assert_eq!(back, q.clone());
        }
    }

    /// Round trip between modules and spans on random draws.
    #[test]
    fn span_round_trip(seed in 0u64..4000) {
        let e = gen_module(seed.wrapping_add(555)).unwrap();
        let el = category_of_elements(&e);
        prop_assert!(is_tsdf(&el));
        let decoded = span_to_module(&el).unwrap();
        prop_assert_eq!(decoded.total_elements(), e.total_elements());
        for ((b, a), elems) in &e.entries {
            prop_assert_eq!(decoded.entry(b, a).len(), elems.len());
        }
    }

    /// Chosen limits factor every cone uniquely.
    #[test]
    fn limit_unique_factorization(seed in 0u64..3000) {
        let j = Arc::new(gen_category(seed, 3, GenStyle::Poset));
        let c = Arc::new(gen_category(seed.wrapping_add(1), 3, GenStyle::Poset));
        let d = gen_functor(seed.wrapping_add(2), &j, &c).unwrap().unwrap();
        if let Some((_, cone)) = limit_of_diagram(&d).unwrap() {
            let mut budget = Budget::new("laws");
            for competing in enumerate_cones(&d, &mut budget).unwrap() {
                prop_assert_eq!(factorizations(&d, &cone, &competing).len(), 1);
            }
        }
    }

    /// The functor category over the point is isomorphic to the target, via
    /// evaluation.
    #[test]
    fn functor_category_over_point(seed in 0u64..3000) {
        let e = Arc::new(gen_category(seed, 3, GenStyle::QuotientFree));
        let one = Arc::new(cat::terminal());
        let fc = functor_category(&one, &e).unwrap();
        prop_assert_eq!(fc.cat.objects().len(), e.objects().len());
        prop_assert_eq!(fc.cat.morphisms().len(), e.morphisms().len());
        // evaluation at * is a bijection on objects and morphisms
        let mut obj_images: Vec<&String> =
            fc.objects.iter().map(|f| f.ob("*")).collect();
        obj_images.sort();
        obj_images.dedup();
        prop_assert_eq!(obj_images.len(), e.objects().len());
        let mut mor_images: Vec<&String> =
            fc.morphisms.iter().map(|n| n.at("*")).collect();
        mor_images.sort();
        mor_images.dedup();
        prop_assert_eq!(mor_images.len(), e.morphisms().len());
    }

    /// Two bracketings of a triple substitution agree.
    #[test]
    fn substitution_associativity(seed in 0u64..3000) {
        let (e, f) = gen_module_pair(seed.wrapping_add(91)).unwrap();
        let (t, q) = tensor(&e, &f).unwrap();
        let outer = Cell::identity(&t);
        // (outer . q) . (id, id) == outer . (q . (id, id))
        let l1 = substitute_cells(&outer, &[q.clone()]).unwrap();
        let l2 = substitute_cells(&l1, &[Cell::identity(&e), Cell::identity(&f)]).unwrap();
        let r1 = substitute_cells(&q, &[Cell::identity(&e), Cell::identity(&f)]).unwrap();
        let r2 = substitute_cells(&outer, &[r1]).unwrap();
        prop_assert_eq!(l2, r2);
    }

    /// Every functor enumerated between random categories validates, and
    /// the enumeration is deterministic.
    #[test]
    fn enumeration_soundness(seed in 0u64..3000) {
        let a = Arc::new(gen_category(seed, 3, GenStyle::QuotientFree));
        let b = Arc::new(gen_category(seed.wrapping_add(1), 3, GenStyle::Poset));
        let fs1 = enumerate_functors(&a, &b).unwrap();
        let fs2 = enumerate_functors(&a, &b).unwrap();
        prop_assert_eq!(&fs1, &fs2);
        for f in &fs1 {
            f.check_laws().unwrap();
        }
    }
}

#[test]
fn hom_tensor_unit_laws_on_catalog() {
    // hom (x) E ~ E ~ E (x) hom for catalog hom modules
    let catalog = virteq::testkit::Catalog::new().unwrap();
    for name in catalog.small_names() {
        let a = catalog.cat(name);
        let h = Arc::new(hom_module(a));
        let (left, _) = tensor(&Arc::new(hom_module(a)), &h).unwrap();
        assert!(find_entrywise_iso(&left, &h).unwrap().is_some(), "unit law fails at {name}");
    }
}

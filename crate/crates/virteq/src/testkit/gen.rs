//! Seeded random generators for categories, functors, cospans, and modules.
//! Every draw is deterministic in the seed and always satisfies the
//! validation laws.

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::cat::{FinCat, RawCategory};
use crate::error::Result;
use crate::functor::{enumerate_functors, FunctorMap};
use crate::module::{comma_module, hom_module, representable, restrict_module, Module, Variance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenStyle {
    /// A random partial order viewed as a category; composition is forced.
    Poset,
    /// The free category on a random leveled acyclic multigraph with at most
    /// two parallel edges; paths have length at most three.
    QuotientFree,
}

/// Generate a random category with at most `max_objects` objects.
pub fn gen_category(seed: u64, max_objects: usize, style: GenStyle) -> FinCat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_objects.max(1));
    match style {
        GenStyle::Poset => gen_poset(&mut rng, n),
        GenStyle::QuotientFree => gen_free(&mut rng, n),
    }
}

fn gen_poset(rng: &mut ChaCha8Rng, n: usize) -> FinCat {
    // random relation on i < j, then transitive closure
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                le[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut morphisms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                morphisms.push((format!("x{i}<x{j}"), format!("x{i}"), format!("x{j}")));
            }
        }
    }
    let mut comp = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k && le[i][j] && le[j][k] {
                    comp.push((
                        (format!("x{j}<x{k}"), format!("x{i}<x{j}")),
                        format!("x{i}<x{k}"),
                    ));
                }
            }
        }
    }
    FinCat::validate(&RawCategory { objects: objects.clone(), morphisms, comp })
        .expect("generated poset is a category")
}

fn gen_free(rng: &mut ChaCha8Rng, n: usize) -> FinCat {
    // place objects on at most four levels; edges go one level up
    let levels: Vec<usize> = (0..n).map(|i| i * 4 / n.max(1)).collect();
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    let mut eid = 0usize;
    for i in 0..n {
        for j in 0..n {
            if levels[j] == levels[i] + 1 {
                let parallel = if rng.gen_bool(0.3) { 2 } else { 1 };
                if rng.gen_bool(0.6) {
                    for _ in 0..parallel {
                        edges.push((i, j, format!("e{eid}")));
                        eid += 1;
                    }
                }
            }
        }
    }
    // paths of length 1..=3
    let mut paths: Vec<(usize, usize, Vec<String>)> = Vec::new();
    for (s, t, e) in &edges {
        paths.push((*s, *t, vec![e.clone()]));
    }
    let mut frontier = paths.clone();
    for _ in 0..2 {
        let mut next = Vec::new();
        for (s, t, p) in &frontier {
            for (s2, t2, e) in &edges {
                if s2 == t {
                    let mut q = p.clone();
                    q.push(e.clone());
                    next.push((*s, *t2, q));
                }
            }
        }
        paths.extend(next.clone());
        frontier = next;
    }
    let path_id = |p: &[String]| format!("p:{}", p.join("."));
    let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let morphisms: Vec<(String, String, String)> = paths
        .iter()
        .map(|(s, t, p)| (path_id(p), format!("x{s}"), format!("x{t}")))
        .collect();
    let mut comp = Vec::new();
    for (s1, t1, p1) in &paths {
        for (_s2, t2, p2) in paths.iter().filter(|(s2, _, _)| s2 == t1) {
            let mut q = p1.clone();
            q.extend(p2.iter().cloned());
            comp.push(((path_id(p2), path_id(p1)), path_id(&q)));
            let _ = (s1, t2);
        }
    }
    FinCat::validate(&RawCategory { objects, morphisms, comp })
        .expect("generated free category is a category")
}

/// Draw a functor between two categories uniformly from the enumeration.
pub fn gen_functor(seed: u64, dom: &Arc<FinCat>, cod: &Arc<FinCat>) -> Result<Option<FunctorMap>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = enumerate_functors(dom, cod)?;
    if all.is_empty() {
        return Ok(None);
    }
    let i = rng.gen_range(0..all.len());
    Ok(Some(all[i].clone()))
}

/// A random cospan `f: B -> A <- C :g` over categories within the given
/// object bound.
pub fn gen_cospan(seed: u64, max_objects: usize) -> Result<(FunctorMap, FunctorMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..64 {
        let style = if rng.gen_bool(0.7) { GenStyle::Poset } else { GenStyle::QuotientFree };
        let a = Arc::new(gen_category(seed.wrapping_mul(3).wrapping_add(attempt), max_objects, style));
        let b = Arc::new(gen_category(
            seed.wrapping_mul(5).wrapping_add(attempt).wrapping_add(1),
            max_objects,
            GenStyle::Poset,
        ));
        let c = Arc::new(gen_category(
            seed.wrapping_mul(7).wrapping_add(attempt).wrapping_add(2),
            max_objects,
            GenStyle::Poset,
        ));
        if a.morphisms().len() > 12 || b.morphisms().len() > 12 || c.morphisms().len() > 12 {
            continue;
        }
        let f = gen_functor(rng.gen(), &b, &a)?;
        let g = gen_functor(rng.gen(), &c, &a)?;
        if let (Some(f), Some(g)) = (f, g) {
            return Ok((f, g));
        }
    }
    // categories with at least one object always admit constant functors, so
    // this is unreachable in practice; fall back to the identity cospan
    let a = Arc::new(gen_category(seed, 1, GenStyle::Poset));
    let id = FunctorMap::identity(&a);
    Ok((id.clone(), id))
}

/// A random valid module, built from validity-preserving constructors over
/// random posets: comma modules, representables, restrictions, and homs.
pub fn gen_module(seed: u64) -> Result<Arc<Module>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kind = rng.gen_range(0..4u8);
    let sa: u64 = rng.gen();
    let sb: u64 = rng.gen();
    let sq: u64 = rng.gen();
    let a = Arc::new(gen_category(sa, 3, GenStyle::Poset));
    let b = Arc::new(gen_category(sb, 3, GenStyle::Poset));
    let q = Arc::new(gen_category(sq, 3, GenStyle::Poset));
    Ok(match kind {
        0 => {
            // comma module of a random cospan into q: a module a -|-> b
            let f = gen_functor(rng.gen(), &b, &q)?.expect("posets are nonempty");
            let g = gen_functor(rng.gen(), &a, &q)?.expect("posets are nonempty");
            Arc::new(comma_module(&f, &g)?)
        }
        1 => {
            let f = gen_functor(rng.gen(), &a, &b)?.expect("posets are nonempty");
            Arc::new(representable(&f, Variance::Covariant))
        }
        2 => {
            let f = gen_functor(rng.gen(), &a, &b)?.expect("posets are nonempty");
            Arc::new(representable(&f, Variance::Contravariant))
        }
        _ => {
            // restriction of a hom module along two functors
            let u = gen_functor(rng.gen(), &a, &q)?.expect("posets are nonempty");
            let v = gen_functor(rng.gen(), &b, &q)?.expect("posets are nonempty");
            let h = hom_module(&q);
            Arc::new(restrict_module(&h, &u, &v)?)
        }
    })
}

/// A composable pair of random modules sharing their middle category.
pub fn gen_module_pair(seed: u64) -> Result<(Arc<Module>, Arc<Module>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mid = Arc::new(gen_category(rng.gen(), 3, GenStyle::Poset));
    let a = Arc::new(gen_category(rng.gen(), 3, GenStyle::Poset));
    let c = Arc::new(gen_category(rng.gen(), 3, GenStyle::Poset));
    let qa = Arc::new(gen_category(rng.gen(), 3, GenStyle::Poset));
    let qb = Arc::new(gen_category(rng.gen(), 3, GenStyle::Poset));
    // E: a -|-> mid, F: mid -|-> c
    let f1 = gen_functor(rng.gen(), &mid, &qa)?.expect("posets are nonempty");
    let g1 = gen_functor(rng.gen(), &a, &qa)?.expect("posets are nonempty");
    let e = Arc::new(comma_module(&f1, &g1)?);
    let f2 = gen_functor(rng.gen(), &c, &qb)?.expect("posets are nonempty");
    let g2 = gen_functor(rng.gen(), &mid, &qb)?.expect("posets are nonempty");
    let f = Arc::new(comma_module(&f2, &g2)?);
    Ok((e, f))
}

/// A random pair `(K: A -|-> B, F: A -|-> C)` sharing their domain, with the
/// boundary categories drawn from the catalog so that catalog probe
/// sequences typecheck against them.
pub fn gen_extension_pair(
    catalog: &crate::testkit::Catalog,
    seed: u64,
) -> Result<(Arc<Module>, Arc<Module>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // nonempty small categories keep the draw total
    let pool: Vec<&str> =
        catalog.small_names().iter().map(|s| s.as_str()).filter(|s| *s != "empty").collect();
    let mut pick_cat = |rng: &mut ChaCha8Rng| catalog.cat(pool[rng.gen_range(0..pool.len())]).clone();
    let a = pick_cat(&mut rng);
    let b = pick_cat(&mut rng);
    let c = pick_cat(&mut rng);
    let module_to = |rng: &mut ChaCha8Rng, x: &Arc<crate::cat::FinCat>| -> Result<Arc<Module>> {
        if rng.gen_bool(0.5) {
            let f = gen_functor(rng.gen(), &a, x)?.expect("nonempty catalog categories");
            Ok(Arc::new(representable(&f, Variance::Covariant)))
        } else {
            let z = catalog.cat(pool[rng.gen_range(0..pool.len())]).clone();
            let u = gen_functor(rng.gen(), x, &z)?.expect("nonempty catalog categories");
            let v = gen_functor(rng.gen(), &a, &z)?.expect("nonempty catalog categories");
            Ok(Arc::new(comma_module(&u, &v)?))
        }
    };
    let k = module_to(&mut rng, &b)?;
    let f = module_to(&mut rng, &c)?;
    Ok((k, f))
}

//! Named small categories and the functor/cospan pools drawn from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cat::{self, FinCat, RawCategory};
use crate::error::Result;
use crate::functor::{cats_eq, enumerate_functors, FunctorMap};
use crate::module::{comma_module, hom_module, representable, Module, Variance};

fn build(objects: &[&str], morphisms: &[(&str, &str, &str)], comp: &[((&str, &str), &str)]) -> FinCat {
    FinCat::validate(&RawCategory {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        morphisms: morphisms
            .iter()
            .map(|(i, s, t)| (i.to_string(), s.to_string(), t.to_string()))
            .collect(),
        comp: comp
            .iter()
            .map(|((s, f), v)| ((s.to_string(), f.to_string()), v.to_string()))
            .collect(),
    })
    .expect("catalog category")
}

/// The catalog: named desk-scale categories, every functor among the small
/// ones (at most three objects), and a curated collection of cospans for the
/// heavyweight suites.
pub struct Catalog {
    cats: BTreeMap<String, Arc<FinCat>>,
    small: Vec<String>,
    functors: Vec<FunctorMap>,
    cospans: Vec<(FunctorMap, FunctorMap)>,
}


impl Catalog {
    pub fn new() -> Result<Catalog> {
        let mut cats: BTreeMap<String, Arc<FinCat>> = BTreeMap::new();
        cats.insert("empty".into(), Arc::new(cat::empty()));
        cats.insert("terminal".into(), Arc::new(cat::terminal()));
        cats.insert(
            "arrow".into(),
            Arc::new(build(&["0", "1"], &[("a", "0", "1")], &[])),
        );
        cats.insert(
            "chain3".into(),
            Arc::new(build(
                &["0", "1", "2"],
                &[("f", "0", "1"), ("g", "1", "2"), ("gf", "0", "2")],
                &[(("g", "f"), "gf")],
            )),
        );
        cats.insert(
            "parallel".into(),
            Arc::new(build(&["x", "y"], &[("u", "x", "y"), ("v", "x", "y")], &[])),
        );
        cats.insert(
            "span".into(),
            Arc::new(build(&["a", "b", "c"], &[("l", "a", "b"), ("r", "a", "c")], &[])),
        );
        cats.insert(
            "cospan".into(),
            Arc::new(build(&["x", "y", "z"], &[("l", "x", "z"), ("r", "y", "z")], &[])),
        );
        cats.insert("disc2".into(), Arc::new(build(&["x", "y"], &[], &[])));
        // commutative square poset: s < l, s < r, l < t, r < t, s < t
        cats.insert(
            "square".into(),
            Arc::new(build(
                &["s", "l", "r", "t"],
                &[
                    ("sl", "s", "l"),
                    ("sr", "s", "r"),
                    ("lt", "l", "t"),
                    ("rt", "r", "t"),
                    ("st", "s", "t"),
                ],
                &[(("lt", "sl"), "st"), (("rt", "sr"), "st")],
            )),
        );
        // diamond lattice: bot < x, bot < y, x < top, y < top, bot < top
        cats.insert(
            "diamond".into(),
            Arc::new(build(
                &["bot", "x", "y", "top"],
                &[
                    ("bx", "bot", "x"),
                    ("by", "bot", "y"),
                    ("xt", "x", "top"),
                    ("yt", "y", "top"),
                    ("bt", "bot", "top"),
                ],
                &[(("xt", "bx"), "bt"), (("yt", "by"), "bt")],
            )),
        );

        let small: Vec<String> = ["empty", "terminal", "arrow", "chain3", "parallel", "span",
            "cospan", "disc2"]
            .iter()
            .map(|s| s.to_string())
            .collect();

        let mut functors = Vec::new();
        for a in &small {
            for b in &small {
                functors.extend(enumerate_functors(&cats[a], &cats[b])?);
            }
        }

        // Cospans for the functor-category suites. The full quadratic set is
        // far outside the enumeration budget once discrete commas appear, so
        // the catalog fixes a representative family: everything between the
        // one- and two-object ordered categories, plus identity cospans and
        // point slices of the three-object ones.
        let mut cospans: Vec<(FunctorMap, FunctorMap)> = Vec::new();
        let tiny = ["empty", "terminal", "arrow"];
        for apex in ["terminal", "arrow"] {
            let a = &cats[apex];
            let mut pool: Vec<FunctorMap> = Vec::new();
            for b in tiny {
                pool.extend(enumerate_functors(&cats[b], a)?);
            }
            for f in &pool {
                for g in &pool {
                    cospans.push((f.clone(), g.clone()));
                }
            }
        }
        let one = cats["terminal"].clone();
        for apex in ["chain3", "parallel", "span", "cospan"] {
            let a = &cats[apex];
            let id = FunctorMap::identity(a);
            cospans.push((id.clone(), id.clone()));
            let picks: Vec<FunctorMap> =
                a.objects().iter().map(|o| FunctorMap::pick(&one, a, o)).collect();
            for p in &picks {
                cospans.push((p.clone(), id.clone()));
                cospans.push((id.clone(), p.clone()));
                for q in &picks {
                    cospans.push((p.clone(), q.clone()));
                }
            }
        }

        Ok(Catalog { cats, small, functors, cospans })
    }

    pub fn cat(&self, name: &str) -> &Arc<FinCat> {
        &self.cats[name]
    }

    pub fn names(&self) -> Vec<&str> {
        self.cats.keys().map(|s| s.as_str()).collect()
    }

    pub fn small_names(&self) -> &[String] {
        &self.small
    }

    pub fn cats(&self) -> impl Iterator<Item = (&String, &Arc<FinCat>)> {
        self.cats.iter()
    }

    /// Every functor among the small categories, in canonical order.
    pub fn functors(&self) -> &[FunctorMap] {
        &self.functors
    }

    /// Parallel pairs of catalog functors.
    pub fn parallel_pairs(&self) -> Vec<(&FunctorMap, &FunctorMap)> {
        let mut out = Vec::new();
        for f in &self.functors {
            for g in &self.functors {
                if f.is_parallel_to(g) {
                    out.push((f, g));
                }
            }
        }
        out
    }

    /// Composable pairs `(f: A -> B, g: B -> C)` of catalog functors.
    pub fn composable_pairs(&self) -> Vec<(&FunctorMap, &FunctorMap)> {
        let mut out = Vec::new();
        for f in &self.functors {
            for g in &self.functors {
                if cats_eq(&f.cod, &g.dom) {
                    out.push((f, g));
                }
            }
        }
        out
    }

    /// The curated cospan family for comma-square suites.
    pub fn cospans(&self) -> &[(FunctorMap, FunctorMap)] {
        &self.cospans
    }

    /// A pool of modules from `x` to `y` for probe sequences: the hom module
    /// when the endpoints agree, representables of catalog functors, and
    /// comma modules of catalog cospans (which contribute empty and
    /// multi-element entries). Deduplicated, capped at twenty.
    pub fn modules_between(&self, x: &Arc<FinCat>, y: &Arc<FinCat>) -> Vec<Arc<Module>> {
        let mut out: Vec<Arc<Module>> = Vec::new();
        let mut push = |m: Module| {
            if out.len() < 20 && !out.iter().any(|x| **x == m) {
                out.push(Arc::new(m));
            }
        };
        if cats_eq(x, y) {
            push(hom_module(x));
        }
        for f in &self.functors {
            if cats_eq(&f.dom, x) && cats_eq(&f.cod, y) {
                push(representable(f, Variance::Covariant));
            }
            if cats_eq(&f.dom, y) && cats_eq(&f.cod, x) {
                push(representable(f, Variance::Contravariant));
            }
        }
        for f in &self.functors {
            if !cats_eq(&f.dom, y) {
                continue;
            }
            for g in &self.functors {
                if cats_eq(&g.dom, x) && cats_eq(&g.cod, &f.cod) {
                    push(comma_module(f, g).expect("catalog cospan"));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_and_validates() {
        let c = Catalog::new().unwrap();
        for (name, cat) in c.cats() {
            cat.check_laws().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        assert_eq!(c.cat("diamond").objects().len(), 4);
        assert_eq!(c.cat("diamond").morphisms().len(), 9);
        assert_eq!(c.cat("square").morphisms().len(), 9);
        assert!(c.functors().len() > 100);
        assert!(!c.cospans().is_empty());
    }

    #[test]
    fn catalog_functors_validate() {
        let c = Catalog::new().unwrap();
        for f in c.functors() {
            f.check_laws().unwrap();
        }
    }
}

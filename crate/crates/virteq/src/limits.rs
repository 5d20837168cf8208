//! Limits and colimits of finite diagrams by exhaustive cone enumeration.

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::cat::{MorId, ObjId};
use crate::error::Result;
use crate::functor::FunctorMap;

/// A cone over a diagram `d: J -> C`: an apex of `C` and one leg per object
/// of `J`, commuting with every morphism of the diagram.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub apex: ObjId,
    pub legs: BTreeMap<ObjId, MorId>,
}

impl Cone {
    pub fn check(&self, d: &FunctorMap) -> bool {
        let c = &d.cod;
        d.dom.objects().iter().all(|j| {
            let leg = &self.legs[j];
            let m = c.mor(leg);
            m.src == self.apex && m.tgt == *d.ob(j)
        }) && d.dom.morphisms().iter().all(|m| {
            c.compose(d.mor(&m.id), &self.legs[&m.src]) == self.legs[&m.tgt]
        })
    }
}

/// All cones over `d` in canonical order (by apex, then legs).
pub fn enumerate_cones(d: &FunctorMap, budget: &mut Budget) -> Result<Vec<Cone>> {
    let mut out = Vec::new();
    let objs: Vec<&ObjId> = d.dom.objects().iter().collect();
    for apex in d.cod.objects() {
        let mut legs = BTreeMap::new();
        cone_dfs(d, apex, &objs, 0, &mut legs, &mut out, budget)?;
    }
    Ok(out)
}

fn cone_dfs(
    d: &FunctorMap,
    apex: &ObjId,
    objs: &[&ObjId],
    i: usize,
    legs: &mut BTreeMap<ObjId, MorId>,
    out: &mut Vec<Cone>,
    budget: &mut Budget,
) -> Result<()> {
    if i == objs.len() {
        out.push(Cone { apex: apex.clone(), legs: legs.clone() });
        return Ok(());
    }
    let j = objs[i];
    'cand: for leg in d.cod.hom(apex, d.ob(j)) {
        budget.charge(1)?;
        for m in d.dom.morphisms() {
            // commutation for morphisms touching j whose other leg is known
            if m.src == **j {
                let Some(tl) = legs.get(&m.tgt).or(if m.tgt == **j { Some(leg) } else { None })
                else {
                    continue;
                };
                if d.cod.compose(d.mor(&m.id), leg) != *tl {
                    continue 'cand;
                }
            } else if m.tgt == **j {
                let Some(sl) = legs.get(&m.src) else { continue };
                if d.cod.compose(d.mor(&m.id), sl) != *leg {
                    continue 'cand;
                }
            }
        }
        legs.insert((*j).clone(), leg.clone());
        cone_dfs(d, apex, objs, i + 1, legs, out, budget)?;
        legs.remove(j);
    }
    Ok(())
}

/// Factorizations of `cone` through `limit`: morphisms `m: cone.apex ->
/// limit.apex` with `limit.legs o m = cone.legs`.
pub fn factorizations(d: &FunctorMap, limit: &Cone, cone: &Cone) -> Vec<MorId> {
    d.cod
        .hom(&cone.apex, &limit.apex)
        .iter()
        .filter(|m| {
            d.dom
                .objects()
                .iter()
                .all(|j| d.cod.compose(&limit.legs[j], m) == cone.legs[j])
        })
        .cloned()
        .collect()
}

/// The limit of a finite diagram: a terminal cone, or `None`. Ties among
/// isomorphic terminal cones break to the least apex (then least legs) in
/// canonical order. The unique-factorization property is verified
/// exhaustively against every cone.
pub fn limit_of_diagram(d: &FunctorMap) -> Result<Option<(ObjId, Cone)>> {
    let mut budget = Budget::new("limit_of_diagram");
    limit_of_diagram_budgeted(d, &mut budget)
}

pub(crate) fn limit_of_diagram_budgeted(
    d: &FunctorMap,
    budget: &mut Budget,
) -> Result<Option<(ObjId, Cone)>> {
    let cones = enumerate_cones(d, budget)?;
    for cand in &cones {
        budget.charge(1)?;
        if cones.iter().all(|c| factorizations(d, cand, c).len() == 1) {
            return Ok(Some((cand.apex.clone(), cand.clone())));
        }
    }
    Ok(None)
}

/// Cocone under a diagram: apex and legs `d(j) -> apex`.
pub type Cocone = Cone;

/// All cocones under `d`.
pub fn enumerate_cocones(d: &FunctorMap, budget: &mut Budget) -> Result<Vec<Cocone>> {
    let mut out = Vec::new();
    let objs: Vec<&ObjId> = d.dom.objects().iter().collect();
    for apex in d.cod.objects() {
        let mut legs = BTreeMap::new();
        cocone_dfs(d, apex, &objs, 0, &mut legs, &mut out, budget)?;
    }
    Ok(out)
}

fn cocone_dfs(
    d: &FunctorMap,
    apex: &ObjId,
    objs: &[&ObjId],
    i: usize,
    legs: &mut BTreeMap<ObjId, MorId>,
    out: &mut Vec<Cocone>,
    budget: &mut Budget,
) -> Result<()> {
    if i == objs.len() {
        out.push(Cone { apex: apex.clone(), legs: legs.clone() });
        return Ok(());
    }
    let j = objs[i];
    'cand: for leg in d.cod.hom(d.ob(j), apex) {
        budget.charge(1)?;
        for m in d.dom.morphisms() {
            if m.src == **j {
                let Some(tl) = legs.get(&m.tgt).or(if m.tgt == **j { Some(leg) } else { None })
                else {
                    continue;
                };
                if d.cod.compose(tl, d.mor(&m.id)) != *leg {
                    continue 'cand;
                }
            } else if m.tgt == **j {
                let Some(sl) = legs.get(&m.src) else { continue };
                if d.cod.compose(leg, d.mor(&m.id)) != *sl {
                    continue 'cand;
                }
            }
        }
        legs.insert((*j).clone(), leg.clone());
        cocone_dfs(d, apex, objs, i + 1, legs, out, budget)?;
        legs.remove(j);
    }
    Ok(())
}

pub fn cofactorizations(d: &FunctorMap, colimit: &Cocone, cocone: &Cocone) -> Vec<MorId> {
    d.cod
        .hom(&colimit.apex, &cocone.apex)
        .iter()
        .filter(|m| {
            d.dom
                .objects()
                .iter()
                .all(|j| d.cod.compose(m, &colimit.legs[j]) == cocone.legs[j])
        })
        .cloned()
        .collect()
}

/// The colimit of a finite diagram: an initial cocone, or `None`.
pub fn colimit_of_diagram(d: &FunctorMap) -> Result<Option<(ObjId, Cocone)>> {
    let mut budget = Budget::new("colimit_of_diagram");
    colimit_of_diagram_budgeted(d, &mut budget)
}

pub(crate) fn colimit_of_diagram_budgeted(
    d: &FunctorMap,
    budget: &mut Budget,
) -> Result<Option<(ObjId, Cocone)>> {
    let cocones = enumerate_cocones(d, budget)?;
    for cand in &cocones {
        budget.charge(1)?;
        if cocones.iter().all(|c| cofactorizations(d, cand, c).len() == 1) {
            return Ok(Some((cand.apex.clone(), cand.clone())));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{self, FinCat, RawCategory};
    use std::sync::Arc;

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

    fn discrete2() -> Arc<FinCat> {
        Arc::new(
            FinCat::validate(&RawCategory {
                objects: vec!["x".into(), "y".into()],
                morphisms: vec![],
                comp: vec![],
            })
            .unwrap(),
        )
    }

    #[test]
    fn limit_of_empty_diagram_is_terminal_object() {
        let two = walking_arrow();
        let zero = Arc::new(cat::empty());
        let d = FunctorMap {
            dom: zero,
            cod: two,
            on_obj: BTreeMap::new(),
            on_mor: BTreeMap::new(),
        };
        let (apex, _) = limit_of_diagram(&d).unwrap().unwrap();
        assert_eq!(apex, "1");
    }

    #[test]
    fn limit_of_point_diagram_is_that_point() {
        let two = walking_arrow();
        let one = Arc::new(cat::terminal());
        let d = FunctorMap::pick(&one, &two, "0");
        let (apex, cone) = limit_of_diagram(&d).unwrap().unwrap();
        assert_eq!(apex, "0");
        assert_eq!(cone.legs["*"], "id:0");
    }

    #[test]
    fn product_in_the_arrow_category() {
        let two = walking_arrow();
        let d2 = discrete2();
        let d = FunctorMap {
            dom: d2.clone(),
            cod: two.clone(),
            on_obj: BTreeMap::from([("x".into(), "0".into()), ("y".into(), "1".into())]),
            on_mor: BTreeMap::from([
                ("id:x".into(), "id:0".into()),
                ("id:y".into(), "id:1".into()),
            ]),
        };
        let (apex, cone) = limit_of_diagram(&d).unwrap().unwrap();
        assert_eq!(apex, "0");
        assert!(cone.check(&d));
    }

    #[test]
    fn missing_limit_is_none() {
        let d2 = discrete2();
        let zero = Arc::new(cat::empty());
        // empty diagram into a category without terminal object
        let d = FunctorMap {
            dom: zero,
            cod: d2,
            on_obj: BTreeMap::new(),
            on_mor: BTreeMap::new(),
        };
        assert!(limit_of_diagram(&d).unwrap().is_none());
    }

    #[test]
    fn colimit_of_empty_diagram_is_initial_object() {
        let two = walking_arrow();
        let zero = Arc::new(cat::empty());
        let d = FunctorMap {
            dom: zero,
            cod: two,
            on_obj: BTreeMap::new(),
            on_mor: BTreeMap::new(),
        };
        let (apex, _) = colimit_of_diagram(&d).unwrap().unwrap();
        assert_eq!(apex, "0");
    }
}

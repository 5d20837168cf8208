//! The input file format and canonical serialization.
//!
//! A workspace file is a single JSON document with top-level arrays
//! `categories`, `functors`, `modules`, `nats`, and `squares`. Identities are
//! implicit in category blocks and synthesized as `id:<obj>`; functor tables
//! may omit identity images. Entry keys are `"b|a"`, action keys
//! `"mor|elem"`, composition keys `"second|first"`. Output is always sorted,
//! LF-terminated, and timestamp-free.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cat::{FinCat, RawCategory};
use crate::error::{Error, Result};
use crate::functor::{FunctorMap, NatTrans, RawFunctor};
use crate::kan::{KanResult, Square};
use crate::module::{validate_module, Module, RawModule};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FileDoc {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub categories: Vec<CategoryDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nats: Vec<NatDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub squares: Vec<SquareDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub name: String,
    #[serde(default)]
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    /// composition table keyed `second|first`, non-identity pairs only
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comp: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub name: String,
    pub dom: String,
    pub cod: String,
    #[serde(default)]
    pub on_obj: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub on_mor: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub name: String,
    pub dom: String,
    pub cod: String,
    /// entry sets keyed `b|a`
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub entries: BTreeMap<String, Vec<String>>,
    /// left action keyed `mor|elem`
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub left: BTreeMap<String, String>,
    /// right action keyed `mor|elem`
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub right: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NatDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
    #[serde(default)]
    pub components: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SquareDoc {
    pub name: String,
    pub h: String,
    pub k: String,
    pub f: String,
    pub g: String,
    /// components of `lam: f.h => g.k`, keyed by objects of the apex
    #[serde(default)]
    pub lam: BTreeMap<String, String>,
}

/// A named registry of fully validated values.
#[derive(Debug, Clone, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, Arc<FinCat>>,
    pub functors: BTreeMap<String, FunctorMap>,
    pub modules: BTreeMap<String, Arc<Module>>,
    pub nats: BTreeMap<String, NatTrans>,
    pub squares: BTreeMap<String, Square>,
}

fn split_key(key: &str, path: &str) -> Result<(String, String)> {
    let mut it = key.splitn(2, '|');
    match (it.next(), it.next()) {
        (Some(a), Some(b)) => Ok((a.to_string(), b.to_string())),
        _ => Err(Error::ParseError {
            path: path.to_string(),
            message: format!("key {key} is not of the form x|y"),
        }),
    }
}

fn check_id(id: &str, path: &str) -> Result<()> {
    if id.contains('|') {
        return Err(Error::ParseError {
            path: path.to_string(),
            message: format!("id {id} must not contain '|'"),
        });
    }
    Ok(())
}

impl Workspace {
    pub fn category(&self, name: &str) -> Result<&Arc<FinCat>> {
        self.categories
            .get(name)
            .ok_or_else(|| Error::DanglingRef(format!("category {name}")))
    }
    pub fn functor(&self, name: &str) -> Result<&FunctorMap> {
        self.functors.get(name).ok_or_else(|| Error::DanglingRef(format!("functor {name}")))
    }
    pub fn module(&self, name: &str) -> Result<&Arc<Module>> {
        self.modules.get(name).ok_or_else(|| Error::DanglingRef(format!("module {name}")))
    }
    pub fn square(&self, name: &str) -> Result<&Square> {
        self.squares.get(name).ok_or_else(|| Error::DanglingRef(format!("square {name}")))
    }

    /// Ingest one parsed document.
    pub fn ingest(&mut self, doc: &FileDoc, path: &str) -> Result<()> {
        for c in &doc.categories {
            if self.categories.contains_key(&c.name) {
                return Err(Error::ParseError {
                    path: path.into(),
                    message: format!("duplicate category name {}", c.name),
                });
            }
            for o in &c.objects {
                check_id(o, path)?;
            }
            let mut raw = RawCategory { objects: c.objects.clone(), ..Default::default() };
            for m in &c.morphisms {
                check_id(&m.id, path)?;
                raw.morphisms.push((m.id.clone(), m.src.clone(), m.tgt.clone()));
            }
            for (key, v) in &c.comp {
                let (second, first) = split_key(key, path)?;
                raw.comp.push(((second, first), v.clone()));
            }
            let cat = FinCat::validate(&raw).map_err(|e| Error::ValidationError {
                name: c.name.clone(),
                path: path.into(),
                source: Box::new(e),
            })?;
            self.categories.insert(c.name.clone(), Arc::new(cat));
        }
        for f in &doc.functors {
            if self.functors.contains_key(&f.name) {
                return Err(Error::ParseError {
                    path: path.into(),
                    message: format!("duplicate functor name {}", f.name),
                });
            }
            let dom = self.category(&f.dom)?.clone();
            let cod = self.category(&f.cod)?.clone();
            let raw = RawFunctor { on_obj: f.on_obj.clone(), on_mor: f.on_mor.clone() };
            let fm = FunctorMap::validate(&raw, &dom, &cod).map_err(|e| {
                Error::ValidationError {
                    name: f.name.clone(),
                    path: path.into(),
                    source: Box::new(e),
                }
            })?;
            self.functors.insert(f.name.clone(), fm);
        }
        for m in &doc.modules {
            if self.modules.contains_key(&m.name) {
                return Err(Error::ParseError {
                    path: path.into(),
                    message: format!("duplicate module name {}", m.name),
                });
            }
            let dom = self.category(&m.dom)?.clone();
            let cod = self.category(&m.cod)?.clone();
            let mut raw = RawModule::default();
            for (key, elems) in &m.entries {
                let (b, a) = split_key(key, path)?;
                for e in elems {
                    check_id(e, path)?;
                }
                raw.entries.insert((b, a), elems.clone());
            }
            for (key, v) in &m.left {
                raw.left.insert(split_key(key, path)?, v.clone());
            }
            for (key, v) in &m.right {
                raw.right.insert(split_key(key, path)?, v.clone());
            }
            let module = validate_module(&raw, &dom, &cod).map_err(|e| {
                Error::ValidationError {
                    name: m.name.clone(),
                    path: path.into(),
                    source: Box::new(e),
                }
            })?;
            self.modules.insert(m.name.clone(), Arc::new(module));
        }
        for n in &doc.nats {
            if self.nats.contains_key(&n.name) {
                return Err(Error::ParseError {
                    path: path.into(),
                    message: format!("duplicate nat name {}", n.name),
                });
            }
            let src = self.functor(&n.src)?.clone();
            let tgt = self.functor(&n.tgt)?.clone();
            let nat = NatTrans::validate(&n.components, &src, &tgt).map_err(|e| {
                Error::ValidationError {
                    name: n.name.clone(),
                    path: path.into(),
                    source: Box::new(e),
                }
            })?;
            self.nats.insert(n.name.clone(), nat);
        }
        for s in &doc.squares {
            if self.squares.contains_key(&s.name) {
                return Err(Error::ParseError {
                    path: path.into(),
                    message: format!("duplicate square name {}", s.name),
                });
            }
            let h = self.functor(&s.h)?.clone();
            let k = self.functor(&s.k)?.clone();
            let f = self.functor(&s.f)?.clone();
            let g = self.functor(&s.g)?.clone();
            let lam = NatTrans::validate(&s.lam, &f.compose(&h), &g.compose(&k)).map_err(
                |e| Error::ValidationError {
                    name: s.name.clone(),
                    path: path.into(),
                    source: Box::new(e),
                },
            )?;
            let square =
                Square::new(h, k, f, g, lam).map_err(|e| Error::ValidationError {
                    name: s.name.clone(),
                    path: path.into(),
                    source: Box::new(e),
                })?;
            self.squares.insert(s.name.clone(), square);
        }
        Ok(())
    }
}

/// Parse and validate one or more workspace files.
pub fn parse_input<P: AsRef<Path>>(paths: &[P]) -> Result<Workspace> {
    let mut ws = Workspace::default();
    for p in paths {
        let path = p.as_ref().display().to_string();
        let text = std::fs::read_to_string(p.as_ref())
            .map_err(|e| Error::Io { path: path.clone(), source: e })?;
        let doc: FileDoc = serde_json::from_str(&text).map_err(|e| Error::ParseError {
            path: path.clone(),
            message: e.to_string(),
        })?;
        ws.ingest(&doc, &path)?;
    }
    Ok(ws)
}

/// Rename references to identity morphisms to the canonical `id:<obj>` form
/// so that serialized categories re-validate to themselves.
fn identity_normal_form(cat: &FinCat, mor: &str) -> String {
    let m = cat.mor(mor);
    if cat.is_identity(mor) {
        format!("id:{}", m.src)
    } else {
        mor.to_string()
    }
}

pub fn category_to_doc(name: &str, cat: &FinCat) -> CategoryDoc {
    let morphisms = cat
        .morphisms()
        .iter()
        .filter(|m| !cat.is_identity(&m.id))
        .map(|m| MorphismDoc { id: m.id.clone(), src: m.src.clone(), tgt: m.tgt.clone() })
        .collect();
    let mut comp = BTreeMap::new();
    for ((second, first), v) in cat.comp_table() {
        if cat.is_identity(second) || cat.is_identity(first) {
            continue;
        }
        comp.insert(format!("{second}|{first}"), identity_normal_form(cat, v));
    }
    CategoryDoc { name: name.to_string(), objects: cat.objects().to_vec(), morphisms, comp }
}

pub fn functor_to_doc(name: &str, dom_name: &str, cod_name: &str, f: &FunctorMap) -> FunctorDoc {
    let on_mor = f
        .on_mor
        .iter()
        .filter(|(m, _)| !f.dom.is_identity(m))
        .map(|(m, v)| (m.clone(), identity_normal_form(&f.cod, v)))
        .collect();
    FunctorDoc {
        name: name.to_string(),
        dom: dom_name.to_string(),
        cod: cod_name.to_string(),
        on_obj: f.on_obj.clone(),
        on_mor,
    }
}

pub fn module_to_doc(name: &str, dom_name: &str, cod_name: &str, m: &Module) -> ModuleDoc {
    ModuleDoc {
        name: name.to_string(),
        dom: dom_name.to_string(),
        cod: cod_name.to_string(),
        entries: m
            .entries
            .iter()
            .map(|((b, a), v)| (format!("{b}|{a}"), v.clone()))
            .collect(),
        left: m
            .left
            .iter()
            .map(|((mor, e), v)| (format!("{mor}|{e}"), v.clone()))
            .collect(),
        right: m
            .right
            .iter()
            .map(|((mor, e), v)| (format!("{mor}|{e}"), v.clone()))
            .collect(),
    }
}

pub fn workspace_to_doc(ws: &Workspace) -> FileDoc {
    let mut doc = FileDoc::default();
    for (name, cat) in &ws.categories {
        doc.categories.push(category_to_doc(name, cat));
    }
    let cat_name = |c: &Arc<FinCat>| -> String {
        ws.categories
            .iter()
            .find(|(_, x)| crate::functor::cats_eq(x, c))
            .map(|(n, _)| n.clone())
            .unwrap_or_default()
    };
    for (name, f) in &ws.functors {
        doc.functors.push(functor_to_doc(name, &cat_name(&f.dom), &cat_name(&f.cod), f));
    }
    for (name, m) in &ws.modules {
        doc.modules.push(module_to_doc(name, &cat_name(&m.dom), &cat_name(&m.cod), m));
    }
    let functor_name = |f: &FunctorMap| -> String {
        ws.functors
            .iter()
            .find(|(_, x)| *x == f)
            .map(|(n, _)| n.clone())
            .unwrap_or_default()
    };
    for (name, n) in &ws.nats {
        doc.nats.push(NatDoc {
            name: name.clone(),
            src: functor_name(&n.src),
            tgt: functor_name(&n.tgt),
            components: n.components.clone().into_iter().collect(),
        });
    }
    for (name, s) in &ws.squares {
        doc.squares.push(SquareDoc {
            name: name.clone(),
            h: functor_name(&s.h),
            k: functor_name(&s.k),
            f: functor_name(&s.f),
            g: functor_name(&s.g),
            lam: s.lam.components.clone().into_iter().collect(),
        });
    }
    doc
}

/// Canonical rendering: pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

/// Serialize a Kan extension result: the functor, the 2-cell, and the
/// per-object cone table.
pub fn kan_result_to_json(ws_names: (&str, &str), kan: &KanResult) -> serde_json::Value {
    let (b_name, c_name) = ws_names;
    let per_object: BTreeMap<String, serde_json::Value> = kan
        .per_object
        .iter()
        .map(|(b, (cdata, cone))| {
            (
                b.clone(),
                serde_json::json!({
                    "comma_objects": cdata.cat.objects(),
                    "cone": {
                        "apex": cone.apex,
                        "legs": cone.legs,
                    },
                }),
            )
        })
        .collect();
    serde_json::json!({
        "r": functor_to_doc("r", b_name, c_name, &kan.r),
        "mu": kan.mu.components,
        "per_object": per_object,
    })
}

//! JSON files for simplicial sets, maps, complexes, categories, functors,
//! diagrams, pro-maps and test objects, plus DOT export.
//!
//! Wherever an object is expected, a file may instead give a string: either
//! a path relative to the referring file or `fixture:<name>`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::category::{FinCategory, Functor, Poset};
use crate::complexes::SimplicialComplex;
use crate::diagrams::{Diagram, FibrantTestObject, ProMap};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homology::groupoid_nerve;
use crate::simplex::{DegeneracyWord, FinSSet, NdId, SMap, SimplexRef, TruncatedSSet};

fn parse_err(what: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{what}: {msg}"))
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(what, "expected an object"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| parse_err(what, format!("missing \"{key}\"")))
}

fn string(v: &Value, what: &str) -> Result<String> {
    v.as_str().map(str::to_string).ok_or_else(|| parse_err(what, "expected a string"))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array().ok_or_else(|| parse_err(what, "expected an array"))?.iter().map(|s| string(s, what)).collect()
}

/// Ids of non-degenerate simplices in (dimension, lexicographic) order.
fn sorted_ids(x: &FinSSet) -> Vec<NdId> {
    let mut out = Vec::new();
    for d in 0..x.counts().len() {
        let mut ids: Vec<NdId> = x.ids(d).collect();
        ids.sort_by(|a, b| x.name(*a).cmp(x.name(*b)));
        out.extend(ids);
    }
    out
}

fn face_record(x: &FinSSet, s: &SimplexRef) -> Value {
    json!({ "degens": s.word.indices(), "base": x.name(s.base) })
}

fn parse_face_record(x: &FinSSet, v: &Value, what: &str) -> Result<SimplexRef> {
    // a bare name stands for the non-degenerate simplex
    if let Value::String(name) = v {
        let base = x.id(name).ok_or_else(|| Error::Validation(format!("{what}: unknown simplex {name:?}")))?;
        return Ok(SimplexRef::nd(base));
    }
    let m = obj(v, what)?;
    let base = string(field(m, "base", what)?, what)?;
    let base = x.id(&base).ok_or_else(|| Error::Validation(format!("{what}: unknown simplex {base:?}")))?;
    let degens: Vec<usize> = match m.get("degens") {
        Some(d) => serde_json::from_value(d.clone()).map_err(|e| parse_err(what, e))?,
        None => Vec::new(),
    };
    let word = DegeneracyWord::new(degens)?;
    let s = SimplexRef::new(word, base);
    x.check_ref(&s)?;
    Ok(s)
}

pub fn sset_to_json(x: &FinSSet) -> Value {
    let simplices: Vec<Vec<&str>> = (0..x.counts().len()).map(|d| x.names(d).iter().map(String::as_str).collect()).collect();
    let mut faces = Map::new();
    for id in sorted_ids(x).into_iter().filter(|id| id.dim > 0) {
        let fs: Vec<Value> = x.faces_of(id).iter().map(|f| face_record(x, f)).collect();
        faces.insert(x.name(id).to_string(), Value::Array(fs));
    }
    json!({ "simplices": simplices, "faces": faces })
}

/// Parses the simplicial-set format; also accepts a complex record.
pub fn sset_from_json(v: &Value) -> Result<FinSSet> {
    let m = obj(v, "simplicial set")?;
    if m.contains_key("vertices") {
        return Ok(complex_from_json(v)?.to_sset());
    }
    let names: Vec<Vec<String>> = field(m, "simplices", "simplicial set")?
        .as_array()
        .ok_or_else(|| parse_err("simplices", "expected an array of arrays"))?
        .iter()
        .map(|l| strings(l, "simplices"))
        .collect::<Result<_>>()?;
    let mut index = HashMap::new();
    for (d, level) in names.iter().enumerate() {
        for (i, n) in level.iter().enumerate() {
            index.insert(n.clone(), NdId::new(d, i));
        }
    }
    let empty = Map::new();
    let faces_in = match m.get("faces") {
        Some(f) => obj(f, "faces")?,
        None => &empty,
    };
    for k in faces_in.keys() {
        if !index.contains_key(k) {
            return Err(Error::Malformed(format!("faces given for unknown simplex {k:?}")));
        }
    }
    // faces refer to lower dimensions only, so a partial set resolves them
    let mut table: Vec<Vec<Vec<SimplexRef>>> = Vec::new();
    for (d, level) in names.iter().enumerate() {
        let partial = FinSSet::from_parts(names[..d].to_vec(), table.clone())?;
        let mut row = Vec::new();
        for n in level {
            if d == 0 {
                if faces_in.contains_key(n) {
                    return Err(Error::Malformed(format!("vertex {n:?} cannot have faces")));
                }
                row.push(Vec::new());
                continue;
            }
            let fs = field(faces_in, n, "faces")?.as_array().ok_or_else(|| parse_err(n, "expected an array of face records"))?;
            row.push(fs.iter().map(|f| parse_face_record(&partial, f, n)).collect::<Result<Vec<_>>>()?);
        }
        table.push(row);
    }
    FinSSet::from_parts(names, table)
}

/// Map record; `source` and `target` are given as references.
pub fn smap_to_json(f: &SMap, source: Value, target: Value) -> Value {
    let x = f.source();
    let mut on = Map::new();
    for id in sorted_ids(x) {
        on.insert(x.name(id).to_string(), face_record(f.target(), f.image(id)));
    }
    json!({ "source": source, "target": target, "on": on })
}

pub fn complex_to_json(k: &SimplicialComplex) -> Value {
    let facets: Vec<Vec<&str>> =
        k.facets().iter().map(|f| f.iter().map(|&v| k.vertices()[v].as_str()).collect()).collect();
    json!({ "vertices": k.vertices(), "facets": facets })
}

pub fn complex_from_json(v: &Value) -> Result<SimplicialComplex> {
    let m = obj(v, "complex")?;
    let vertices = strings(field(m, "vertices", "complex")?, "vertices")?;
    let facets: Vec<Vec<String>> = field(m, "facets", "complex")?
        .as_array()
        .ok_or_else(|| parse_err("facets", "expected an array"))?
        .iter()
        .map(|f| strings(f, "facets"))
        .collect::<Result<_>>()?;
    SimplicialComplex::new(vertices, &facets)
}

pub fn category_to_json(c: &FinCategory) -> Value {
    let morphisms: Vec<Value> = c
        .morphisms()
        .iter()
        .map(|m| json!({ "id": m.id, "src": c.objects()[m.src], "dst": c.objects()[m.dst] }))
        .collect();
    let mut compose = Vec::new();
    for f in 0..c.morphism_count() {
        for g in c.out_of(c.morphism(f).dst) {
            if !c.is_identity(f) && !c.is_identity(g) {
                let gf = c.compose(g, f);
                compose.push(json!([c.morphism(g).id, c.morphism(f).id, c.morphism(gf).id]));
            }
        }
    }
    let mut identities = Map::new();
    for (o, name) in c.objects().iter().enumerate() {
        identities.insert(name.clone(), json!(c.morphism(c.identity(o)).id));
    }
    json!({ "objects": c.objects(), "morphisms": morphisms, "compose": compose, "identities": identities })
}

pub fn category_from_json(v: &Value) -> Result<FinCategory> {
    let m = obj(v, "category")?;
    let objects = strings(field(m, "objects", "category")?, "objects")?;
    let mors = field(m, "morphisms", "category")?
        .as_array()
        .ok_or_else(|| parse_err("morphisms", "expected an array"))?
        .iter()
        .map(|r| {
            let r = obj(r, "morphism")?;
            Ok((
                string(field(r, "id", "morphism")?, "id")?,
                string(field(r, "src", "morphism")?, "src")?,
                string(field(r, "dst", "morphism")?, "dst")?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let compose = match m.get("compose") {
        Some(c) => c
            .as_array()
            .ok_or_else(|| parse_err("compose", "expected an array"))?
            .iter()
            .map(|t| {
                let t = strings(t, "compose")?;
                match <[String; 3]>::try_from(t) {
                    Ok([g, f, gf]) => Ok((g, f, gf)),
                    Err(_) => Err(parse_err("compose", "entries are [g, f, g∘f]")),
                }
            })
            .collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let identities: BTreeMap<String, String> = obj(field(m, "identities", "category")?, "identities")?
        .iter()
        .map(|(k, v)| Ok((k.clone(), string(v, "identities")?)))
        .collect::<Result<_>>()?;
    FinCategory::from_tables(objects, mors, compose, identities)
}

pub fn functor_to_json(f: &Functor, source: Value, target: Value) -> Value {
    let (s, t) = (&f.source, &f.target);
    let objects: Map<String, Value> =
        s.objects().iter().enumerate().map(|(o, n)| (n.clone(), json!(t.objects()[f.on_objects[o]]))).collect();
    let morphisms: Map<String, Value> =
        s.morphisms().iter().enumerate().map(|(m, r)| (r.id.clone(), json!(t.morphism(f.on_morphisms[m]).id))).collect();
    json!({ "source": source, "target": target, "objects": objects, "morphisms": morphisms })
}

pub fn poset_to_dot(p: &Poset, name: &str) -> String {
    let mut out = format!("digraph \"{name}\" {{\n");
    for (i, e) in p.elements().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", e.replace('"', "\\\""));
    }
    // covering relations only
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.lt(a, b) && !(0..p.len()).any(|c| p.lt(a, c) && p.lt(c, b)) {
                let _ = writeln!(out, "  n{a} -> n{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn category_to_dot(c: &FinCategory, name: &str) -> String {
    let mut out = format!("digraph \"{name}\" {{\n");
    for (i, o) in c.objects().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", o.replace('"', "\\\""));
    }
    for m in c.morphisms().iter().enumerate().filter(|(i, _)| !c.is_identity(*i)).map(|(_, m)| m) {
        let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", m.src, m.dst, m.id.replace('"', "\\\""));
    }
    out.push_str("}\n");
    out
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Resolves references relative to a directory.
#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into() }
    }

    /// Reads a file; references inside it resolve next to it.
    pub fn open(path: &Path) -> Result<(Loader, Value)> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Loader::new(base), v))
    }

    /// A reference as `(loader for its contents, value)`, or a fixture name.
    fn resolve(&self, v: &Value) -> Result<Resolved> {
        match v {
            Value::String(s) => match s.strip_prefix("fixture:") {
                Some(name) => Ok(Resolved::Fixture(name.to_string())),
                None => {
                    let (l, v) = Loader::open(&self.base.join(s))?;
                    Ok(Resolved::Value(l, v))
                }
            },
            _ => Ok(Resolved::Value(self.clone(), v.clone())),
        }
    }

    pub fn sset(&self, v: &Value) -> Result<Arc<FinSSet>> {
        match self.resolve(v)? {
            Resolved::Fixture(n) => fixtures::sset(&n)
                .map(Arc::new)
                .ok_or_else(|| Error::Validation(format!("no simplicial set fixture {n:?}"))),
            Resolved::Value(_, v) => sset_from_json(&v).map(Arc::new),
        }
    }

    pub fn complex(&self, v: &Value) -> Result<SimplicialComplex> {
        match self.resolve(v)? {
            Resolved::Fixture(n) => fixtures::complex(&n).ok_or_else(|| Error::Validation(format!("no complex fixture {n:?}"))),
            Resolved::Value(_, v) => complex_from_json(&v),
        }
    }

    pub fn category(&self, v: &Value) -> Result<Arc<FinCategory>> {
        match self.resolve(v)? {
            Resolved::Fixture(n) => {
                fixtures::category(&n).map(Arc::new).ok_or_else(|| Error::Validation(format!("no category fixture {n:?}")))
            }
            Resolved::Value(_, v) => category_from_json(&v).map(Arc::new),
        }
    }

    /// A map; `source` and `target` in the record win over the defaults,
    /// and must be present when no default is given.
    pub fn smap(&self, v: &Value, source: Option<&Arc<FinSSet>>, target: Option<&Arc<FinSSet>>) -> Result<SMap> {
        let (l, v) = match self.resolve(v)? {
            Resolved::Fixture(n) => return Err(Error::Validation(format!("no map fixture {n:?}"))),
            Resolved::Value(l, v) => (l, v),
        };
        let m = obj(&v, "map")?;
        let pick = |key: &str, default: Option<&Arc<FinSSet>>| -> Result<Arc<FinSSet>> {
            match (m.get(key), default) {
                (Some(r), Some(d)) => {
                    let x = l.sset(r)?;
                    if x.as_ref() != d.as_ref() {
                        return Err(Error::Validation(format!("map {key} differs from the expected simplicial set")));
                    }
                    Ok(d.clone())
                }
                (Some(r), None) => l.sset(r),
                (None, Some(d)) => Ok(d.clone()),
                (None, None) => Err(parse_err("map", format!("missing \"{key}\""))),
            }
        };
        let (s, t) = (pick("source", source)?, pick("target", target)?);
        let on = obj(field(m, "on", "map")?, "on")?;
        for k in on.keys() {
            if s.id(k).is_none() {
                return Err(Error::Validation(format!("map given on unknown simplex {k:?}")));
            }
        }
        let images = (0..s.counts().len())
            .map(|d| {
                s.ids(d)
                    .map(|id| {
                        let name = s.name(id);
                        let r = on.get(name).ok_or_else(|| Error::Validation(format!("map not given on {name:?}")))?;
                        parse_face_record(&t, r, name)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SMap::new(s, t, images)
    }

    /// A functor; the record's `source`/`target` are optional when given here.
    pub fn functor(&self, v: &Value, source: Option<&Arc<FinCategory>>, target: Option<&Arc<FinCategory>>) -> Result<Functor> {
        let (l, v) = match self.resolve(v)? {
            Resolved::Fixture(n) => return Err(Error::Validation(format!("no functor fixture {n:?}"))),
            Resolved::Value(l, v) => (l, v),
        };
        let m = obj(&v, "functor")?;
        let pick = |key: &str, default: Option<&Arc<FinCategory>>| -> Result<Arc<FinCategory>> {
            match (m.get(key), default) {
                (Some(r), Some(d)) => {
                    let c = l.category(r)?;
                    if c.as_ref() != d.as_ref() {
                        return Err(Error::Validation(format!("functor {key} differs from the expected category")));
                    }
                    Ok(d.clone())
                }
                (Some(r), None) => l.category(r),
                (None, Some(d)) => Ok(d.clone()),
                (None, None) => Err(parse_err("functor", format!("missing \"{key}\""))),
            }
        };
        let (s, t) = (pick("source", source)?, pick("target", target)?);
        let on_o = obj(field(m, "objects", "functor")?, "objects")?;
        let on_objects = s
            .objects()
            .iter()
            .map(|o| {
                let v = string(on_o.get(o).ok_or_else(|| Error::Validation(format!("functor not given on object {o}")))?, o)?;
                t.object_index(&v).ok_or_else(|| Error::Validation(format!("unknown object {v}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let empty = Map::new();
        let on_m = match m.get("morphisms") {
            Some(x) => obj(x, "morphisms")?,
            None => &empty,
        };
        let on_morphisms = (0..s.morphism_count())
            .map(|a| {
                let r = s.morphism(a);
                match on_m.get(&r.id) {
                    Some(v) => {
                        let v = string(v, &r.id)?;
                        t.morphism_index(&v).ok_or_else(|| Error::Validation(format!("unknown morphism {v}")))
                    }
                    // identities may be left out
                    None if s.is_identity(a) => Ok(t.identity(on_objects[r.src])),
                    None => Err(Error::Validation(format!("functor not given on morphism {}", r.id))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(s, t, on_objects, on_morphisms)
    }

    /// `{"index", "objects": {obj: sset}, "arrows": {morphism: map}}`;
    /// identity arrows may be left out, and arrow records may omit their
    /// source and target.
    pub fn diagram(&self, v: &Value) -> Result<Arc<Diagram>> {
        let (l, v) = match self.resolve(v)? {
            Resolved::Fixture(n) => return Err(Error::Validation(format!("no diagram fixture {n:?}"))),
            Resolved::Value(l, v) => (l, v),
        };
        let m = obj(&v, "diagram")?;
        let index = l.category(field(m, "index", "diagram")?)?;
        let objs = obj(field(m, "objects", "diagram")?, "objects")?;
        let objects = index
            .objects()
            .iter()
            .map(|o| l.sset(objs.get(o).ok_or_else(|| Error::Validation(format!("diagram has no value at {o}")))?))
            .collect::<Result<Vec<_>>>()?;
        let empty = Map::new();
        let arr = match m.get("arrows") {
            Some(a) => obj(a, "arrows")?,
            None => &empty,
        };
        let arrows = (0..index.morphism_count())
            .map(|a| {
                let r = index.morphism(a);
                match arr.get(&r.id) {
                    Some(v) => l.smap(v, Some(&objects[r.src]), Some(&objects[r.dst])),
                    None if index.is_identity(a) => Ok(SMap::identity(objects[r.src].clone())),
                    None => Err(Error::Validation(format!("diagram has no map at {}", r.id))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Diagram::new(index, objects, arrows).map(Arc::new)
    }

    /// `{"x": diagram over I, "y": diagram over J, "alpha": functor J → I,
    /// "theta": {object of J: map X(α(j)) → Y(j)}}`.
    pub fn promap(&self, v: &Value) -> Result<ProMap> {
        let (l, v) = match self.resolve(v)? {
            Resolved::Fixture(n) => return Err(Error::Validation(format!("no pro-map fixture {n:?}"))),
            Resolved::Value(l, v) => (l, v),
        };
        let m = obj(&v, "pro-map")?;
        let x = l.diagram(field(m, "x", "pro-map")?)?;
        let y = l.diagram(field(m, "y", "pro-map")?)?;
        let alpha = l.functor(field(m, "alpha", "pro-map")?, Some(&y.index), Some(&x.index))?;
        let th = obj(field(m, "theta", "pro-map")?, "theta")?;
        let theta = y
            .index
            .objects()
            .iter()
            .enumerate()
            .map(|(j, o)| {
                let r = th.get(o).ok_or_else(|| Error::Validation(format!("θ not given at {o}")))?;
                l.smap(r, Some(&x.objects[alpha.on_objects[j]]), Some(&y.objects[j]))
            })
            .collect::<Result<Vec<_>>>()?;
        ProMap::new(alpha, x, y, theta)
    }

    /// `{"name", "groupoid": category}` or `{"name", "assume_fibrant":
    /// sset, "cap": n?}`.
    pub fn fibrant(&self, v: &Value) -> Result<FibrantTestObject> {
        let (l, v) = match self.resolve(v)? {
            Resolved::Fixture(n) => {
                let c = fixtures::category(&n).ok_or_else(|| Error::Validation(format!("no groupoid fixture {n:?}")))?;
                return FibrantTestObject::groupoid(&n, c);
            }
            Resolved::Value(l, v) => (l, v),
        };
        let m = obj(&v, "test object")?;
        let name = match m.get("name") {
            Some(n) => string(n, "name")?,
            None => "Z".to_string(),
        };
        if let Some(g) = m.get("groupoid") {
            let c = l.category(g)?;
            return FibrantTestObject::groupoid(&name, c.as_ref().clone());
        }
        let x = l.sset(field(m, "assume_fibrant", "test object")?)?;
        let space = match m.get("cap") {
            Some(c) => TruncatedSSet { space: x, cap: Some(c.as_u64().ok_or_else(|| parse_err("cap", "expected an integer"))? as usize), kan: false },
            None => TruncatedSSet { space: x, cap: None, kan: false },
        };
        Ok(FibrantTestObject::assumed(&name, space))
    }
}

enum Resolved {
    Fixture(String),
    Value(Loader, Value),
}

/// A groupoid nerve record for export, through dimension `d`.
pub fn groupoid_nerve_json(c: &FinCategory, d: usize) -> Result<Value> {
    Ok(sset_to_json(&groupoid_nerve(c, d)?.space))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{CATEGORY_NAMES, COMPLEX_NAMES, SSET_NAMES};

    #[test]
    fn sset_round_trip() {
        for name in SSET_NAMES {
            let x = fixtures::sset(name).unwrap();
            let text = to_text(&sset_to_json(&x));
            let back = sset_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, x, "{name}");
            assert_eq!(to_text(&sset_to_json(&back)), text);
        }
    }

    #[test]
    fn complex_and_category_round_trip() {
        for name in COMPLEX_NAMES {
            let k = fixtures::complex(name).unwrap();
            assert_eq!(complex_from_json(&complex_to_json(&k)).unwrap(), k);
        }
        for name in CATEGORY_NAMES {
            let c = fixtures::category(name).unwrap();
            assert_eq!(category_from_json(&category_to_json(&c)).unwrap(), c, "{name}");
        }
    }

    #[test]
    fn map_round_trip() {
        let l = Loader::new(".");
        let x = Arc::new(fixtures::sset("circle").unwrap());
        let p = Arc::new(fixtures::sset("delta0").unwrap());
        let f = SMap::constant(x.clone(), p.clone(), NdId::new(0, 0)).unwrap();
        let v = smap_to_json(&f, json!("fixture:circle"), json!("fixture:delta0"));
        let g = l.smap(&v, None, None).unwrap();
        assert!(g.same_as(&f));
    }

    #[test]
    fn bad_face_is_located() {
        let mut v = sset_to_json(&fixtures::sset("delta1").unwrap());
        v["faces"]["[0,1]"][0]["base"] = json!("7");
        match sset_from_json(&v) {
            Err(Error::Validation(m)) => assert!(m.contains("[0,1]") && m.contains('7')),
            other => panic!("{other:?}"),
        }
    }
}

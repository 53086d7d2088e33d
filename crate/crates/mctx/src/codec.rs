//! JSON encodings for objects, morphisms, splices, contexts and lenses.
//!
//! Atom carriers are declared once per file under `"objects"`; every object
//! reference is a list of atom (or alias) names resolved against that
//! signature. Rationals travel as `"p/q"` strings. Encoding and decoding
//! round-trip exactly.

use crate::context::{Context, HoleRow};
use crate::duosplice::{ParSplit, ParUnit};
use crate::error::{Error, Result};
use crate::lens::Lens;
use crate::object::{Atom, ObjectList};
use crate::rational::{format_ratio, parse_ratio};
use crate::splice::{HoleType, NHoleSplice};
use crate::theory::{FinFnMorphism, FinStochMorphism, FreeTerm, Morphism};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;

/// Atom carriers plus object aliases, as declared by a file's `"objects"`
/// and `"aliases"` sections.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    pub carriers: BTreeMap<String, usize>,
    pub aliases: BTreeMap<String, Vec<String>>,
}

impl Signature {
    pub fn atom(&self, name: &str) -> Result<Atom> {
        let carrier = self
            .carriers
            .get(name)
            .ok_or_else(|| Error::Protocol(format!("unknown atom `{name}`")))?;
        Ok(Atom::new(name, *carrier))
    }

    /// Resolves one name, expanding aliases to their atom lists.
    pub fn resolve_name(&self, name: &str) -> Result<ObjectList> {
        if let Some(expansion) = self.aliases.get(name) {
            let mut atoms = Vec::new();
            for n in expansion {
                atoms.extend(self.resolve_name(n)?.0);
            }
            return Ok(ObjectList(atoms));
        }
        Ok(ObjectList::single(self.atom(name)?))
    }

    /// Resolves a list of names into one object.
    pub fn resolve(&self, names: &[&str]) -> Result<ObjectList> {
        let mut atoms = Vec::new();
        for n in names {
            atoms.extend(self.resolve_name(n)?.0);
        }
        Ok(ObjectList(atoms))
    }

    pub fn from_json(v: &Value) -> Result<Signature> {
        let mut sig = Signature::default();
        if let Some(objects) = v.get("objects") {
            let map = objects
                .as_object()
                .ok_or_else(|| Error::Protocol("`objects` must map atom names to carriers".into()))?;
            for (name, carrier) in map {
                let c = carrier
                    .as_u64()
                    .filter(|&c| c >= 1)
                    .ok_or_else(|| Error::Protocol(format!("atom `{name}` needs a positive carrier")))?;
                sig.carriers.insert(name.clone(), c as usize);
            }
        }
        if let Some(aliases) = v.get("aliases") {
            let map = aliases
                .as_object()
                .ok_or_else(|| Error::Protocol("`aliases` must map names to atom lists".into()))?;
            for (name, list) in map {
                sig.aliases.insert(name.clone(), string_list(list, "alias expansion")?);
            }
        }
        Ok(sig)
    }
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .and_then(|a| a.iter().map(|x| x.as_str().map(String::from)).collect())
        .ok_or_else(|| Error::Protocol(format!("{what} must be a list of strings")))
}

pub fn object_to_json(obj: &ObjectList) -> Value {
    Value::Array(obj.0.iter().map(|a| Value::String(a.name.clone())).collect())
}

pub fn object_from_json(sig: &Signature, v: &Value) -> Result<ObjectList> {
    let names = string_list(v, "object")?;
    sig.resolve(&names.iter().map(String::as_str).collect::<Vec<_>>())
}

fn hole_to_json(h: &HoleType) -> Value {
    json!([object_to_json(&h.0), object_to_json(&h.1)])
}

fn hole_from_json(sig: &Signature, v: &Value) -> Result<HoleType> {
    let pair = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Protocol("hole must be a pair of objects".into()))?;
    Ok((object_from_json(sig, &pair[0])?, object_from_json(sig, &pair[1])?))
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

fn term_to_json(t: &FreeTerm) -> Value {
    match t {
        FreeTerm::Generator { name, .. } => json!({ "gen": name }),
        FreeTerm::Identity(obj) => json!({ "id": object_to_json(obj) }),
        FreeTerm::Compose(a, b) => json!({ "compose": [term_to_json(a), term_to_json(b)] }),
        FreeTerm::Tensor(a, b) => json!({ "tensor": [term_to_json(a), term_to_json(b)] }),
        FreeTerm::Symmetry(a, b) => json!({ "symmetry": [object_to_json(a), object_to_json(b)] }),
    }
}

fn term_from_json(
    sig: &Signature,
    generators: &BTreeMap<String, (ObjectList, ObjectList)>,
    v: &Value,
) -> Result<FreeTerm> {
    let obj = v.as_object().ok_or_else(|| Error::Protocol("term node must be an object".into()))?;
    if let Some(name) = obj.get("gen").and_then(Value::as_str) {
        let (dom, cod) = generators
            .get(name)
            .ok_or_else(|| Error::MissingGenerator(name.into()))?;
        return Ok(FreeTerm::generator(name, dom.clone(), cod.clone()));
    }
    if let Some(o) = obj.get("id") {
        return Ok(FreeTerm::Identity(object_from_json(sig, o)?));
    }
    if let Some(pair) = obj.get("compose").and_then(Value::as_array).filter(|a| a.len() == 2) {
        let a = term_from_json(sig, generators, &pair[0])?;
        let b = term_from_json(sig, generators, &pair[1])?;
        return a.compose(b);
    }
    if let Some(pair) = obj.get("tensor").and_then(Value::as_array).filter(|a| a.len() == 2) {
        let a = term_from_json(sig, generators, &pair[0])?;
        let b = term_from_json(sig, generators, &pair[1])?;
        return Ok(a.tensor(b));
    }
    if let Some(pair) = obj.get("symmetry").and_then(Value::as_array).filter(|a| a.len() == 2) {
        return Ok(FreeTerm::Symmetry(
            object_from_json(sig, &pair[0])?,
            object_from_json(sig, &pair[1])?,
        ));
    }
    Err(Error::Protocol("unrecognized term node".into()))
}

pub fn morphism_to_json(m: &Morphism) -> Value {
    let mut out = Map::new();
    out.insert("dom".into(), object_to_json(&m.dom()));
    out.insert("cod".into(), object_to_json(&m.cod()));
    match m {
        Morphism::FinFn(f) => {
            out.insert("kind".into(), "finfn".into());
            out.insert("table".into(), Value::Array(f.table.iter().map(|&t| t.into()).collect()));
        }
        Morphism::FinStoch(f) => {
            out.insert("kind".into(), "finstoch".into());
            let matrix: Vec<Value> = f
                .matrix
                .iter()
                .map(|row| Value::Array(row.iter().map(|r| Value::String(format_ratio(r))).collect()))
                .collect();
            out.insert("matrix".into(), Value::Array(matrix));
        }
        Morphism::Free { term, symmetric } => {
            out.insert("kind".into(), "term".into());
            out.insert("symmetric".into(), (*symmetric).into());
            out.insert("term".into(), term_to_json(term));
        }
    }
    Value::Object(out)
}

/// Decodes a morphism. Free-term nodes need the declared generator
/// boundaries, passed through `generators`.
pub fn morphism_from_json(
    sig: &Signature,
    generators: &BTreeMap<String, (ObjectList, ObjectList)>,
    v: &Value,
) -> Result<Morphism> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Protocol("morphism needs a `kind`".into()))?;
    let dom = object_from_json(sig, v.get("dom").unwrap_or(&Value::Null))?;
    let cod = object_from_json(sig, v.get("cod").unwrap_or(&Value::Null))?;
    match kind {
        "finfn" => {
            let table = v
                .get("table")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Protocol("finfn morphism needs a `table`".into()))?
                .iter()
                .map(|x| x.as_u64().map(|u| u as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Protocol("table entries must be nonnegative integers".into()))?;
            Ok(Morphism::FinFn(FinFnMorphism::new(dom, cod, table)?))
        }
        "finstoch" => {
            let rows = v
                .get("matrix")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Protocol("finstoch morphism needs a `matrix`".into()))?;
            let mut matrix = Vec::with_capacity(rows.len());
            for row in rows {
                let entries = row
                    .as_array()
                    .ok_or_else(|| Error::Protocol("matrix rows must be arrays".into()))?
                    .iter()
                    .map(|e| e.as_str().and_then(parse_ratio))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Protocol("matrix entries must be `p/q` strings".into()))?;
                matrix.push(entries);
            }
            Ok(Morphism::FinStoch(FinStochMorphism::new(dom, cod, matrix)?))
        }
        "term" => {
            let symmetric = v.get("symmetric").and_then(Value::as_bool).unwrap_or(true);
            let term = term_from_json(sig, generators, v.get("term").unwrap_or(&Value::Null))?;
            if term.dom() != dom || term.cod() != cod {
                return Err(Error::TypeMismatch { expected: dom, found: term.dom() });
            }
            Ok(Morphism::Free { term, symmetric })
        }
        other => Err(Error::Protocol(format!("unknown morphism kind `{other}`"))),
    }
}

// ---------------------------------------------------------------------------
// Splices, contexts, lenses
// ---------------------------------------------------------------------------

pub fn splice_to_json(s: &NHoleSplice) -> Value {
    let (a, b) = s.outer();
    json!({
        "splice": {
            "outer": [object_to_json(&a), object_to_json(&b)],
            "holes": s.holes().iter().map(hole_to_json).collect::<Vec<_>>(),
            "morphisms": s.morphisms().iter().map(morphism_to_json).collect::<Vec<_>>(),
        }
    })
}

pub fn splice_from_json(sig: &Signature, v: &Value) -> Result<NHoleSplice> {
    let body = v
        .get("splice")
        .ok_or_else(|| Error::Protocol("expected a `splice` record".into()))?;
    let holes = body
        .get("holes")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Protocol("splice needs `holes`".into()))?
        .iter()
        .map(|h| hole_from_json(sig, h))
        .collect::<Result<Vec<_>>>()?;
    let morphisms = decode_morphisms(sig, body.get("morphisms"))?;
    NHoleSplice::new(morphisms, holes)
}

pub fn parsplit_to_json(p: &ParSplit) -> Value {
    json!({
        "parsplit": {
            "holes": [hole_to_json(&p.left_hole), hole_to_json(&p.right_hole)],
            "morphisms": [morphism_to_json(&p.f), morphism_to_json(&p.g)],
        }
    })
}

pub fn parsplit_from_json(sig: &Signature, v: &Value) -> Result<ParSplit> {
    let body = v
        .get("parsplit")
        .ok_or_else(|| Error::Protocol("expected a `parsplit` record".into()))?;
    let holes = body
        .get("holes")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Protocol("parsplit needs two holes".into()))?;
    let ms = decode_morphisms(sig, body.get("morphisms"))?;
    if ms.len() != 2 {
        return Err(Error::Protocol("parsplit needs two morphisms".into()));
    }
    ParSplit::new(
        ms[0].clone(),
        ms[1].clone(),
        hole_from_json(sig, &holes[0])?,
        hole_from_json(sig, &holes[1])?,
    )
}

pub fn parunit_to_json(u: &ParUnit) -> Value {
    json!({ "parunit": { "morphisms": [morphism_to_json(&u.f), morphism_to_json(&u.g)] } })
}

pub fn parunit_from_json(sig: &Signature, v: &Value) -> Result<ParUnit> {
    let body = v
        .get("parunit")
        .ok_or_else(|| Error::Protocol("expected a `parunit` record".into()))?;
    let ms = decode_morphisms(sig, body.get("morphisms"))?;
    if ms.len() != 2 {
        return Err(Error::Protocol("parunit needs two morphisms".into()));
    }
    ParUnit::new(ms[0].clone(), ms[1].clone())
}

pub fn context_to_json(c: &Context) -> Value {
    let (a, b) = c.outer();
    if c.shape() == [1] {
        let row = &c.rows()[0];
        return json!({
            "context": {
                "outer": [object_to_json(&a), object_to_json(&b)],
                "hole": hole_to_json(&row.holes[0]),
                "residuals": [object_to_json(&row.residuals[0]), object_to_json(&row.residuals[1])],
                "f": morphism_to_json(&c.morphisms()[0]),
                "g": morphism_to_json(&c.morphisms()[1]),
            }
        });
    }
    json!({
        "context": {
            "outer": [object_to_json(&a), object_to_json(&b)],
            "morphisms": c.morphisms().iter().map(morphism_to_json).collect::<Vec<_>>(),
            "rows": c
                .rows()
                .iter()
                .map(|r| {
                    json!({
                        "residuals": r.residuals.iter().map(object_to_json).collect::<Vec<_>>(),
                        "holes": r.holes.iter().map(hole_to_json).collect::<Vec<_>>(),
                    })
                })
                .collect::<Vec<_>>(),
        }
    })
}

pub fn context_from_json(sig: &Signature, v: &Value) -> Result<Context> {
    let body = v
        .get("context")
        .ok_or_else(|| Error::Protocol("expected a `context` record".into()))?;
    if body.get("hole").is_some() {
        let hole = hole_from_json(sig, body.get("hole").unwrap())?;
        let residuals = body
            .get("residuals")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Protocol("context needs two residuals".into()))?;
        let m = object_from_json(sig, &residuals[0])?;
        let n = object_from_json(sig, &residuals[1])?;
        let generators = BTreeMap::new();
        let f = morphism_from_json(sig, &generators, body.get("f").unwrap_or(&Value::Null))?;
        let g = morphism_from_json(sig, &generators, body.get("g").unwrap_or(&Value::Null))?;
        return Context::single(f, m, hole, n, g);
    }
    let morphisms = decode_morphisms(sig, body.get("morphisms"))?;
    let rows = body
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Protocol("context needs `rows`".into()))?
        .iter()
        .map(|r| {
            let residuals = r
                .get("residuals")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Protocol("row needs residuals".into()))?
                .iter()
                .map(|o| object_from_json(sig, o))
                .collect::<Result<Vec<_>>>()?;
            let holes = r
                .get("holes")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Protocol("row needs holes".into()))?
                .iter()
                .map(|h| hole_from_json(sig, h))
                .collect::<Result<Vec<_>>>()?;
            HoleRow::new(residuals, holes)
        })
        .collect::<Result<Vec<_>>>()?;
    Context::new(morphisms, rows)
}

pub fn lens_to_json(l: &Lens) -> Value {
    json!({
        "lens": {
            "morphisms": l.morphisms().iter().map(morphism_to_json).collect::<Vec<_>>(),
            "residuals": l.residuals().iter().map(object_to_json).collect::<Vec<_>>(),
            "holes": l.holes().iter().map(hole_to_json).collect::<Vec<_>>(),
        }
    })
}

pub fn lens_from_json(sig: &Signature, v: &Value) -> Result<Lens> {
    let body = v.get("lens").ok_or_else(|| Error::Protocol("expected a `lens` record".into()))?;
    let morphisms = decode_morphisms(sig, body.get("morphisms"))?;
    let residuals = body
        .get("residuals")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Protocol("lens needs `residuals`".into()))?
        .iter()
        .map(|o| object_from_json(sig, o))
        .collect::<Result<Vec<_>>>()?;
    let holes = body
        .get("holes")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Protocol("lens needs `holes`".into()))?
        .iter()
        .map(|h| hole_from_json(sig, h))
        .collect::<Result<Vec<_>>>()?;
    Lens::new(morphisms, residuals, holes)
}

fn decode_morphisms(sig: &Signature, v: Option<&Value>) -> Result<Vec<Morphism>> {
    let generators = BTreeMap::new();
    v.and_then(Value::as_array)
        .ok_or_else(|| Error::Protocol("expected a `morphisms` array".into()))?
        .iter()
        .map(|m| morphism_from_json(sig, &generators, m))
        .collect()
}

// ---------------------------------------------------------------------------
// Presentations and counit reports
// ---------------------------------------------------------------------------

pub fn presentation_to_json(p: &crate::contour::Presentation) -> Value {
    use crate::contour::{Element, Equation};
    let elements: Vec<Value> = p
        .elements
        .iter()
        .map(|e| match e {
            Element::SeqUnit { name, obj } => json!({"kind": "sequnit", "name": name, "obj": obj}),
            Element::Mor { name, dom, cod } => json!({"kind": "mor", "name": name, "dom": dom, "cod": cod}),
            Element::SeqSplit { name, dom, left, right } => {
                json!({"kind": "seqsplit", "name": name, "dom": dom, "left": left, "right": right})
            }
            Element::ParUnit { name, obj } => json!({"kind": "parunit", "name": name, "obj": obj}),
            Element::ParSplit { name, dom, left, right } => {
                json!({"kind": "parsplit", "name": name, "dom": dom, "left": left, "right": right})
            }
        })
        .collect();
    let equations: Vec<Value> = p
        .equations
        .iter()
        .map(|q| match q {
            Equation::SeqAlpha { a, b, c, d } => json!({"kind": "alpha", "a": a, "b": b, "c": c, "d": d}),
            Equation::SeqUnitors { a, b, c, d, e } => {
                json!({"kind": "unitors", "a": a, "b": b, "c": c, "d": d, "e": e})
            }
            Equation::ParAlpha { a, b, c, d } => {
                json!({"kind": "par_alpha", "a": a, "b": b, "c": c, "d": d})
            }
            Equation::ParUnitors { a, b, c, d, e } => {
                json!({"kind": "par_unitors", "a": a, "b": b, "c": c, "d": d, "e": e})
            }
            Equation::Psi2 { a, b, c, d, e, f } => {
                json!({"kind": "psi2", "a": a, "b": b, "c": c, "d": d, "e": e, "f": f})
            }
            Equation::Psi0 { a, b, c, d } => json!({"kind": "psi0", "a": a, "b": b, "c": c, "d": d}),
            Equation::Phi2 { a, b, c, d } => json!({"kind": "phi2", "a": a, "b": b, "c": c, "d": d}),
            Equation::Phi0 { a, b } => json!({"kind": "phi0", "a": a, "b": b}),
        })
        .collect();
    json!({ "objects": p.objects, "elements": elements, "equations": equations })
}

pub fn presentation_from_json(v: &Value) -> Result<crate::contour::Presentation> {
    use crate::contour::{Element, Equation, Presentation};
    let objects = string_list(v.get("objects").unwrap_or(&Value::Null), "presentation objects")?;
    let text = |e: &Value, key: &str| -> Result<String> {
        e.get(key)
            .and_then(Value::as_str)
            .map(String::from)
            .ok_or_else(|| Error::Presentation(format!("missing `{key}`")))
    };
    let mut elements = Vec::new();
    for e in v.get("elements").and_then(Value::as_array).into_iter().flatten() {
        let kind = text(e, "kind")?;
        elements.push(match kind.as_str() {
            "sequnit" => Element::SeqUnit { name: text(e, "name")?, obj: text(e, "obj")? },
            "mor" => Element::Mor { name: text(e, "name")?, dom: text(e, "dom")?, cod: text(e, "cod")? },
            "seqsplit" => Element::SeqSplit {
                name: text(e, "name")?,
                dom: text(e, "dom")?,
                left: text(e, "left")?,
                right: text(e, "right")?,
            },
            "parunit" => Element::ParUnit { name: text(e, "name")?, obj: text(e, "obj")? },
            "parsplit" => Element::ParSplit {
                name: text(e, "name")?,
                dom: text(e, "dom")?,
                left: text(e, "left")?,
                right: text(e, "right")?,
            },
            other => return Err(Error::Presentation(format!("unknown element kind `{other}`"))),
        });
    }
    let mut equations = Vec::new();
    for q in v.get("equations").and_then(Value::as_array).into_iter().flatten() {
        let kind = text(q, "kind")?;
        equations.push(match kind.as_str() {
            "alpha" => Equation::SeqAlpha { a: text(q, "a")?, b: text(q, "b")?, c: text(q, "c")?, d: text(q, "d")? },
            "unitors" => Equation::SeqUnitors {
                a: text(q, "a")?,
                b: text(q, "b")?,
                c: text(q, "c")?,
                d: text(q, "d")?,
                e: text(q, "e")?,
            },
            "par_alpha" => {
                Equation::ParAlpha { a: text(q, "a")?, b: text(q, "b")?, c: text(q, "c")?, d: text(q, "d")? }
            }
            "par_unitors" => Equation::ParUnitors {
                a: text(q, "a")?,
                b: text(q, "b")?,
                c: text(q, "c")?,
                d: text(q, "d")?,
                e: text(q, "e")?,
            },
            "psi2" => Equation::Psi2 {
                a: text(q, "a")?,
                b: text(q, "b")?,
                c: text(q, "c")?,
                d: text(q, "d")?,
                e: text(q, "e")?,
                f: text(q, "f")?,
            },
            "psi0" => Equation::Psi0 { a: text(q, "a")?, b: text(q, "b")?, c: text(q, "c")?, d: text(q, "d")? },
            "phi2" => Equation::Phi2 { a: text(q, "a")?, b: text(q, "b")?, c: text(q, "c")?, d: text(q, "d")? },
            "phi0" => Equation::Phi0 { a: text(q, "a")?, b: text(q, "b")? },
            other => return Err(Error::Presentation(format!("unknown equation kind `{other}`"))),
        });
    }
    Ok(Presentation { objects, elements, equations })
}

pub fn counit_report_to_json(r: &crate::contour::CounitReport) -> Value {
    json!({
        "relations_checked": r.relations_checked,
        "violations": r
            .violations
            .iter()
            .map(|v| json!({"label": v.label, "lhs": v.lhs, "rhs": v.rhs}))
            .collect::<Vec<_>>(),
    })
}

//! Contour presentations: the category freely generated by tracing the
//! boundary of decomposition data, and the executable counit check.
//!
//! A presentation lists named units, morphisms and splits of a (pro- or
//! produo-)monoidal structure together with instances of its coherence
//! equations. Contouring emits two objects per source object, a fixed stock
//! of generators per element, and one relation family per equation instance.
//! No word problem is attempted: relations are checked only by interpreting
//! generators in a concrete theory.

use crate::error::{Error, Result};
use crate::object::ObjectList;
use crate::theory::Morphism;
use std::collections::BTreeMap;
use std::fmt;

// ---------------------------------------------------------------------------
// Input presentations
// ---------------------------------------------------------------------------

/// A named element of one of the five profunctor sorts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    /// `a ∈ 𝕍(obj; N)`.
    SeqUnit { name: String, obj: String },
    /// `b ∈ 𝕍(dom; cod)`.
    Mor { name: String, dom: String, cod: String },
    /// `c ∈ 𝕍(dom; left ◁ right)`.
    SeqSplit { name: String, dom: String, left: String, right: String },
    /// `a ∈ 𝕍(obj; I)`.
    ParUnit { name: String, obj: String },
    /// `a ∈ 𝕍(dom; left ⊗ right)`.
    ParSplit { name: String, dom: String, left: String, right: String },
}

impl Element {
    pub fn name(&self) -> &str {
        match self {
            Element::SeqUnit { name, .. }
            | Element::Mor { name, .. }
            | Element::SeqSplit { name, .. }
            | Element::ParUnit { name, .. }
            | Element::ParSplit { name, .. } => name,
        }
    }

    fn is_parallel(&self) -> bool {
        matches!(self, Element::ParUnit { .. } | Element::ParSplit { .. })
    }
}

/// A coherence-equation instance between named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equation {
    /// `α(a | b) = (c | d)`: `b` splits the second gap of `a`, `d` the first
    /// gap of `c`.
    SeqAlpha { a: String, b: String, c: String, d: String },
    /// `ρ(a | b) = c = λ(d | e)`.
    SeqUnitors { a: String, b: String, c: String, d: String, e: String },
    /// `α(a ≺₁ b) = c ≺₂ d` for the parallel tensor.
    ParAlpha { a: String, b: String, c: String, d: String },
    /// `λ(a ≺₁ b) = c = ρ(d ≺₂ e)` for the parallel tensor.
    ParUnitors { a: String, b: String, c: String, d: String, e: String },
    /// `ψ₂(a | b | c) = (d | e | f)`.
    Psi2 { a: String, b: String, c: String, d: String, e: String, f: String },
    /// `ψ₀(a) = (b | c | d)`.
    Psi0 { a: String, b: String, c: String, d: String },
    /// `φ₂(a | b | c) = d`.
    Phi2 { a: String, b: String, c: String, d: String },
    /// `φ₀(a) = b`.
    Phi0 { a: String, b: String },
}

impl Equation {
    fn is_parallel(&self) -> bool {
        !matches!(self, Equation::SeqAlpha { .. } | Equation::SeqUnitors { .. })
    }
}

/// Decomposition data to be contoured: objects, named elements, equation
/// instances. The same type serves the promonoidal fragment (no parallel
/// elements) and the full produoidal one.
#[derive(Clone, Debug, Default)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub elements: Vec<Element>,
    pub equations: Vec<Equation>,
}

impl Presentation {
    fn element(&self, name: &str) -> Result<&Element> {
        self.elements
            .iter()
            .find(|e| e.name() == name)
            .ok_or_else(|| Error::Presentation(format!("equation references unknown element `{name}`")))
    }

    fn seq_split(&self, name: &str) -> Result<(&str, &str, &str)> {
        match self.element(name)? {
            Element::SeqSplit { dom, left, right, .. } => Ok((dom, left, right)),
            other => Err(Error::Presentation(format!(
                "`{name}` is not a sequential split (found {other:?})"
            ))),
        }
    }

    fn par_split(&self, name: &str) -> Result<(&str, &str, &str)> {
        match self.element(name)? {
            Element::ParSplit { dom, left, right, .. } => Ok((dom, left, right)),
            other => Err(Error::Presentation(format!(
                "`{name}` is not a parallel split (found {other:?})"
            ))),
        }
    }

    fn seq_unit(&self, name: &str) -> Result<&str> {
        match self.element(name)? {
            Element::SeqUnit { obj, .. } => Ok(obj),
            other => {
                Err(Error::Presentation(format!("`{name}` is not a sequential unit (found {other:?})")))
            }
        }
    }

    fn par_unit(&self, name: &str) -> Result<&str> {
        match self.element(name)? {
            Element::ParUnit { obj, .. } => Ok(obj),
            other => {
                Err(Error::Presentation(format!("`{name}` is not a parallel unit (found {other:?})")))
            }
        }
    }

    fn mor(&self, name: &str) -> Result<(&str, &str)> {
        match self.element(name)? {
            Element::Mor { dom, cod, .. } => Ok((dom, cod)),
            other => Err(Error::Presentation(format!("`{name}` is not a morphism (found {other:?})"))),
        }
    }

    /// Validates that every equation instance references existing elements
    /// with matching boundary objects.
    pub fn validate(&self) -> Result<()> {
        for name in self.elements.iter().flat_map(|e| match e {
            Element::SeqUnit { obj, .. } | Element::ParUnit { obj, .. } => vec![obj],
            Element::Mor { dom, cod, .. } => vec![dom, cod],
            Element::SeqSplit { dom, left, right, .. } | Element::ParSplit { dom, left, right, .. } => {
                vec![dom, left, right]
            }
        }) {
            if !self.objects.contains(name) {
                return Err(Error::Presentation(format!("element references unknown object `{name}`")));
            }
        }
        let eq = |ctx: &str, x: &str, y: &str| -> Result<()> {
            if x != y {
                return Err(Error::Presentation(format!("{ctx}: expected object `{x}`, found `{y}`")));
            }
            Ok(())
        };
        for e in &self.equations {
            match e {
                Equation::SeqAlpha { a, b, c, d } => {
                    let (adom, a_l, a_r) = self.seq_split(a)?;
                    let (bdom, b_l, b_r) = self.seq_split(b)?;
                    let (cdom, c_l, c_r) = self.seq_split(c)?;
                    let (ddom, d_l, d_r) = self.seq_split(d)?;
                    eq("α: b fills the second gap of a", a_r, bdom)?;
                    eq("α: d fills the first gap of c", c_l, ddom)?;
                    eq("α: outer objects", adom, cdom)?;
                    eq("α: first leaves", a_l, d_l)?;
                    eq("α: middle leaves", b_l, d_r)?;
                    eq("α: last leaves", b_r, c_r)?;
                }
                Equation::SeqUnitors { a, b, c, d, e } => {
                    let (adom, a_l, a_r) = self.seq_split(a)?;
                    let b_obj = self.seq_unit(b)?;
                    let (cdom, ccod) = self.mor(c)?;
                    let (ddom, d_l, d_r) = self.seq_split(d)?;
                    let e_obj = self.seq_unit(e)?;
                    eq("ρ: unit fills the second gap", a_r, b_obj)?;
                    eq("λ: unit fills the first gap", d_l, e_obj)?;
                    eq("unitors: outer objects", adom, cdom)?;
                    eq("unitors: outer objects", adom, ddom)?;
                    eq("unitors: surviving leaf", a_l, ccod)?;
                    eq("unitors: surviving leaf", d_r, ccod)?;
                }
                Equation::ParAlpha { a, b, c, d } => {
                    let (adom, a_l, a_r) = self.par_split(a)?;
                    let (bdom, b_l, b_r) = self.par_split(b)?;
                    let (cdom, c_l, c_r) = self.par_split(c)?;
                    let (ddom, d_l, d_r) = self.par_split(d)?;
                    eq("α⊗: b fills the first slot of a", a_l, bdom)?;
                    eq("α⊗: d fills the second slot of c", c_r, ddom)?;
                    eq("α⊗: outer objects", adom, cdom)?;
                    eq("α⊗: first leaves", b_l, c_l)?;
                    eq("α⊗: middle leaves", b_r, d_l)?;
                    eq("α⊗: last leaves", a_r, d_r)?;
                }
                Equation::ParUnitors { a, b, c, d, e } => {
                    let (adom, a_l, a_r) = self.par_split(a)?;
                    let b_obj = self.par_unit(b)?;
                    let (cdom, ccod) = self.mor(c)?;
                    let (ddom, d_l, d_r) = self.par_split(d)?;
                    let e_obj = self.par_unit(e)?;
                    eq("λ⊗: unit fills the first slot", a_l, b_obj)?;
                    eq("ρ⊗: unit fills the second slot", d_r, e_obj)?;
                    eq("unitors⊗: outer objects", adom, cdom)?;
                    eq("unitors⊗: outer objects", adom, ddom)?;
                    eq("unitors⊗: surviving leaf", a_r, ccod)?;
                    eq("unitors⊗: surviving leaf", d_l, ccod)?;
                }
                Equation::Psi2 { a, b, c, d, e, f } => {
                    let (adom, a_l, a_r) = self.par_split(a)?;
                    let (bdom, b_l, b_r) = self.seq_split(b)?;
                    let (cdom, c_l, c_r) = self.seq_split(c)?;
                    let (ddom, d_l, d_r) = self.seq_split(d)?;
                    let (edom, e_l, e_r) = self.par_split(e)?;
                    let (fdom, f_l, f_r) = self.par_split(f)?;
                    eq("ψ₂: b under the first slot", a_l, bdom)?;
                    eq("ψ₂: c under the second slot", a_r, cdom)?;
                    eq("ψ₂: outer objects", adom, ddom)?;
                    eq("ψ₂: e under the first gap", d_l, edom)?;
                    eq("ψ₂: f under the second gap", d_r, fdom)?;
                    eq("ψ₂: leaves", b_l, e_l)?;
                    eq("ψ₂: leaves", c_l, e_r)?;
                    eq("ψ₂: leaves", b_r, f_l)?;
                    eq("ψ₂: leaves", c_r, f_r)?;
                }
                Equation::Psi0 { a, b, c, d } => {
                    let a_obj = self.par_unit(a)?;
                    let (bdom, b_l, b_r) = self.seq_split(b)?;
                    let c_obj = self.par_unit(c)?;
                    let d_obj = self.par_unit(d)?;
                    eq("ψ₀: outer objects", a_obj, bdom)?;
                    eq("ψ₀: first gap", b_l, c_obj)?;
                    eq("ψ₀: second gap", b_r, d_obj)?;
                }
                Equation::Phi2 { a, b, c, d } => {
                    let (adom, a_l, a_r) = self.par_split(a)?;
                    let b_obj = self.seq_unit(b)?;
                    let c_obj = self.seq_unit(c)?;
                    let d_obj = self.seq_unit(d)?;
                    eq("φ₂: first slot", a_l, b_obj)?;
                    eq("φ₂: second slot", a_r, c_obj)?;
                    eq("φ₂: outer objects", adom, d_obj)?;
                }
                Equation::Phi0 { a, b } => {
                    let a_obj = self.par_unit(a)?;
                    let b_obj = self.seq_unit(b)?;
                    eq("φ₀: objects", a_obj, b_obj)?;
                }
            }
        }
        Ok(())
    }

    /// Renames objects and elements through the two maps. Contouring
    /// commutes with renaming.
    pub fn rename(&self, obj: &impl Fn(&str) -> String, elem: &impl Fn(&str) -> String) -> Presentation {
        let ren_el = |e: &Element| match e {
            Element::SeqUnit { name, obj: o } => Element::SeqUnit { name: elem(name), obj: obj(o) },
            Element::Mor { name, dom, cod } => {
                Element::Mor { name: elem(name), dom: obj(dom), cod: obj(cod) }
            }
            Element::SeqSplit { name, dom, left, right } => Element::SeqSplit {
                name: elem(name),
                dom: obj(dom),
                left: obj(left),
                right: obj(right),
            },
            Element::ParUnit { name, obj: o } => Element::ParUnit { name: elem(name), obj: obj(o) },
            Element::ParSplit { name, dom, left, right } => Element::ParSplit {
                name: elem(name),
                dom: obj(dom),
                left: obj(left),
                right: obj(right),
            },
        };
        let ren_eq = |q: &Equation| match q {
            Equation::SeqAlpha { a, b, c, d } => {
                Equation::SeqAlpha { a: elem(a), b: elem(b), c: elem(c), d: elem(d) }
            }
            Equation::SeqUnitors { a, b, c, d, e } => Equation::SeqUnitors {
                a: elem(a),
                b: elem(b),
                c: elem(c),
                d: elem(d),
                e: elem(e),
            },
            Equation::ParAlpha { a, b, c, d } => {
                Equation::ParAlpha { a: elem(a), b: elem(b), c: elem(c), d: elem(d) }
            }
            Equation::ParUnitors { a, b, c, d, e } => Equation::ParUnitors {
                a: elem(a),
                b: elem(b),
                c: elem(c),
                d: elem(d),
                e: elem(e),
            },
            Equation::Psi2 { a, b, c, d, e, f } => Equation::Psi2 {
                a: elem(a),
                b: elem(b),
                c: elem(c),
                d: elem(d),
                e: elem(e),
                f: elem(f),
            },
            Equation::Psi0 { a, b, c, d } => {
                Equation::Psi0 { a: elem(a), b: elem(b), c: elem(c), d: elem(d) }
            }
            Equation::Phi2 { a, b, c, d } => {
                Equation::Phi2 { a: elem(a), b: elem(b), c: elem(c), d: elem(d) }
            }
            Equation::Phi0 { a, b } => Equation::Phi0 { a: elem(a), b: elem(b) },
        };
        Presentation {
            objects: self.objects.iter().map(|o| obj(o)).collect(),
            elements: self.elements.iter().map(ren_el).collect(),
            equations: self.equations.iter().map(ren_eq).collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Output presentations
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// `X^L` or `X^R` for a source object `X`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SideObject {
    pub base: String,
    pub side: Side,
}

impl fmt::Display for SideObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => "L",
            Side::Right => "R",
        };
        write!(f, "{}^{s}", self.base)
    }
}

fn lft(base: &str) -> SideObject {
    SideObject { base: base.into(), side: Side::Left }
}

fn rgt(base: &str) -> SideObject {
    SideObject { base: base.into(), side: Side::Right }
}

/// Tensor words of handed objects; the empty word is the unit.
pub type Word = Vec<SideObject>;

/// A formal morphism expression over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathExpr {
    Gen(String),
    Id(Word),
    /// Composition in diagram order.
    Seq(Vec<PathExpr>),
    /// Tensor, left to right.
    Par(Vec<PathExpr>),
}

impl PathExpr {
    pub fn gen(name: impl Into<String>) -> Self {
        PathExpr::Gen(name.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub dom: Word,
    pub cod: Word,
}

/// A relation `lhs = rhs` between two formal expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub lhs: PathExpr,
    pub rhs: PathExpr,
}

/// The freely presented (monoidal) category traced from a presentation.
#[derive(Clone, Debug, Default)]
pub struct CategoryPresentation {
    pub objects: Vec<SideObject>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

// ---------------------------------------------------------------------------
// Contour emission
// ---------------------------------------------------------------------------

fn g(name: &str, idx: usize) -> PathExpr {
    PathExpr::Gen(format!("{name}.{idx}"))
}

fn seq(parts: Vec<PathExpr>) -> PathExpr {
    PathExpr::Seq(parts)
}

fn par(parts: Vec<PathExpr>) -> PathExpr {
    PathExpr::Par(parts)
}

/// Contour of the promonoidal fragment. Rejects presentations carrying
/// parallel structure; those go through [`monoidal_contour`].
pub fn contour(p: &Presentation) -> Result<CategoryPresentation> {
    if p.elements.iter().any(Element::is_parallel) || p.equations.iter().any(Equation::is_parallel) {
        return Err(Error::Presentation(
            "presentation carries parallel structure; use the monoidal contour".into(),
        ));
    }
    monoidal_contour(p)
}

/// Contour of a produoidal presentation: a monoidal category presented by
/// generators and relations.
pub fn monoidal_contour(p: &Presentation) -> Result<CategoryPresentation> {
    p.validate()?;
    let mut out = CategoryPresentation::default();
    for obj in &p.objects {
        out.objects.push(lft(obj));
        out.objects.push(rgt(obj));
    }
    for e in &p.elements {
        let name = e.name();
        let gens = match e {
            Element::SeqUnit { obj, .. } => vec![Generator {
                name: format!("{name}.0"),
                dom: vec![lft(obj)],
                cod: vec![rgt(obj)],
            }],
            Element::Mor { dom, cod, .. } => vec![
                Generator { name: format!("{name}.0"), dom: vec![lft(dom)], cod: vec![lft(cod)] },
                Generator { name: format!("{name}.1"), dom: vec![rgt(cod)], cod: vec![rgt(dom)] },
            ],
            Element::SeqSplit { dom, left, right, .. } => vec![
                Generator { name: format!("{name}.0"), dom: vec![lft(dom)], cod: vec![lft(left)] },
                Generator { name: format!("{name}.1"), dom: vec![rgt(left)], cod: vec![lft(right)] },
                Generator { name: format!("{name}.2"), dom: vec![rgt(right)], cod: vec![rgt(dom)] },
            ],
            Element::ParUnit { obj, .. } => vec![
                Generator { name: format!("{name}.0"), dom: vec![lft(obj)], cod: vec![] },
                Generator { name: format!("{name}.1"), dom: vec![], cod: vec![rgt(obj)] },
            ],
            Element::ParSplit { dom, left, right, .. } => vec![
                Generator {
                    name: format!("{name}.0"),
                    dom: vec![lft(dom)],
                    cod: vec![lft(left), lft(right)],
                },
                Generator {
                    name: format!("{name}.1"),
                    dom: vec![rgt(left), rgt(right)],
                    cod: vec![rgt(dom)],
                },
            ],
        };
        out.generators.extend(gens);
    }
    for (k, e) in p.equations.iter().enumerate() {
        let label = |part: &str| format!("eq{k}.{part}");
        match e {
            Equation::SeqAlpha { a, b, c, d } => {
                out.relations.push(Relation {
                    label: label("first"),
                    lhs: g(a, 0),
                    rhs: seq(vec![g(c, 0), g(d, 0)]),
                });
                out.relations.push(Relation {
                    label: label("middle"),
                    lhs: seq(vec![g(a, 1), g(b, 0)]),
                    rhs: g(d, 1),
                });
                out.relations.push(Relation {
                    label: label("inner"),
                    lhs: g(b, 1),
                    rhs: seq(vec![g(d, 2), g(c, 1)]),
                });
                out.relations.push(Relation {
                    label: label("last"),
                    lhs: seq(vec![g(b, 2), g(a, 2)]),
                    rhs: g(c, 2),
                });
            }
            Equation::SeqUnitors { a, b, c, d, e } => {
                out.relations.push(Relation { label: label("rho"), lhs: g(a, 0), rhs: g(c, 0) });
                out.relations.push(Relation {
                    label: label("lambda"),
                    lhs: g(c, 0),
                    rhs: seq(vec![g(d, 0), g(e, 0), g(d, 1)]),
                });
                out.relations.push(Relation {
                    label: label("rho-out"),
                    lhs: seq(vec![g(a, 1), g(b, 0), g(a, 2)]),
                    rhs: g(c, 1),
                });
                out.relations.push(Relation { label: label("lambda-out"), lhs: g(c, 1), rhs: g(d, 2) });
            }
            Equation::ParAlpha { a, b, c, d } => {
                let (_, _, a_r) = p.par_split(a)?;
                let (_, b_l, _) = p.par_split(b)?;
                out.relations.push(Relation {
                    label: label("in"),
                    lhs: seq(vec![g(a, 0), par(vec![g(b, 0), PathExpr::Id(vec![lft(a_r)])])]),
                    rhs: seq(vec![g(c, 0), par(vec![PathExpr::Id(vec![lft(b_l)]), g(d, 0)])]),
                });
                out.relations.push(Relation {
                    label: label("out"),
                    lhs: seq(vec![par(vec![g(b, 1), PathExpr::Id(vec![rgt(a_r)])]), g(a, 1)]),
                    rhs: seq(vec![par(vec![PathExpr::Id(vec![rgt(b_l)]), g(d, 1)]), g(c, 1)]),
                });
            }
            Equation::ParUnitors { a, b, c, d, e } => {
                let (_, _, a_r) = p.par_split(a)?;
                let (_, d_l, _) = p.par_split(d)?;
                out.relations.push(Relation {
                    label: label("lambda-in"),
                    lhs: seq(vec![g(a, 0), par(vec![g(b, 0), PathExpr::Id(vec![lft(a_r)])])]),
                    rhs: g(c, 0),
                });
                out.relations.push(Relation {
                    label: label("rho-in"),
                    lhs: g(c, 0),
                    rhs: seq(vec![g(d, 0), par(vec![PathExpr::Id(vec![lft(d_l)]), g(e, 0)])]),
                });
                out.relations.push(Relation {
                    label: label("lambda-out"),
                    lhs: seq(vec![par(vec![g(b, 1), PathExpr::Id(vec![rgt(a_r)])]), g(a, 1)]),
                    rhs: g(c, 1),
                });
                out.relations.push(Relation {
                    label: label("rho-out"),
                    lhs: g(c, 1),
                    rhs: seq(vec![par(vec![PathExpr::Id(vec![rgt(d_l)]), g(e, 1)]), g(d, 1)]),
                });
            }
            Equation::Psi2 { a, b, c, d, e, f } => {
                out.relations.push(Relation {
                    label: label("in"),
                    lhs: seq(vec![g(a, 0), par(vec![g(b, 0), g(c, 0)])]),
                    rhs: seq(vec![g(d, 0), g(e, 0)]),
                });
                out.relations.push(Relation {
                    label: label("middle"),
                    lhs: par(vec![g(b, 1), g(c, 1)]),
                    rhs: seq(vec![g(e, 1), g(d, 1), g(f, 0)]),
                });
                out.relations.push(Relation {
                    label: label("out"),
                    lhs: seq(vec![par(vec![g(b, 2), g(c, 2)]), g(a, 1)]),
                    rhs: seq(vec![g(f, 1), g(d, 2)]),
                });
            }
            Equation::Psi0 { a, b, c, d } => {
                out.relations.push(Relation {
                    label: label("in"),
                    lhs: g(a, 0),
                    rhs: seq(vec![g(b, 0), g(c, 0)]),
                });
                out.relations.push(Relation {
                    label: label("middle"),
                    lhs: PathExpr::Id(vec![]),
                    rhs: seq(vec![g(c, 1), g(b, 1), g(d, 0)]),
                });
                out.relations.push(Relation {
                    label: label("out"),
                    lhs: g(a, 1),
                    rhs: seq(vec![g(d, 1), g(b, 2)]),
                });
            }
            Equation::Phi2 { a, b, c, d } => {
                out.relations.push(Relation {
                    label: label("fuse"),
                    lhs: seq(vec![g(a, 0), par(vec![g(b, 0), g(c, 0)]), g(a, 1)]),
                    rhs: g(d, 0),
                });
            }
            Equation::Phi0 { a, b } => {
                out.relations.push(Relation {
                    label: label("fuse"),
                    lhs: seq(vec![g(a, 0), g(a, 1)]),
                    rhs: g(b, 0),
                });
            }
        }
    }
    Ok(out)
}

/// Number of generators an element contributes; asserted by the suites.
pub fn generator_count(e: &Element) -> usize {
    match e {
        Element::SeqUnit { .. } => 1,
        Element::Mor { .. } | Element::ParUnit { .. } | Element::ParSplit { .. } => 2,
        Element::SeqSplit { .. } => 3,
    }
}

/// Number of relations an equation instance contributes.
pub fn relation_count(e: &Equation) -> usize {
    match e {
        Equation::SeqAlpha { .. } | Equation::SeqUnitors { .. } | Equation::ParUnitors { .. } => 4,
        Equation::ParAlpha { .. } => 2,
        Equation::Psi2 { .. } | Equation::Psi0 { .. } => 3,
        Equation::Phi2 { .. } | Equation::Phi0 { .. } => 1,
    }
}

// ---------------------------------------------------------------------------
// Counit check
// ---------------------------------------------------------------------------

/// Assignment of contour data back into a concrete theory: each handed
/// object to an object, each generator to a morphism.
#[derive(Clone, Debug, Default)]
pub struct ContourInterp {
    pub objects: BTreeMap<String, ObjectList>,
    pub generators: BTreeMap<String, Morphism>,
}

impl ContourInterp {
    pub fn object(&mut self, s: SideObject, obj: ObjectList) -> &mut Self {
        self.objects.insert(s.to_string(), obj);
        self
    }

    pub fn generator(&mut self, name: impl Into<String>, m: Morphism) -> &mut Self {
        self.generators.insert(name.into(), m);
        self
    }

    fn lookup(&self, s: &SideObject) -> Result<&ObjectList> {
        self.objects
            .get(&s.to_string())
            .ok_or_else(|| Error::Presentation(format!("no interpretation for object {s}")))
    }

    fn word(&self, w: &Word) -> Result<ObjectList> {
        let mut acc = ObjectList::unit();
        for s in w {
            acc = acc.tensor(self.lookup(s)?);
        }
        Ok(acc)
    }

    fn eval(&self, e: &PathExpr, kind: crate::theory::TheoryKind) -> Result<Morphism> {
        match e {
            PathExpr::Gen(name) => self
                .generators
                .get(name)
                .cloned()
                .ok_or_else(|| Error::Presentation(format!("no interpretation for generator `{name}`"))),
            PathExpr::Id(w) => Ok(Morphism::identity_in(kind, &self.word(w)?)),
            PathExpr::Seq(parts) => {
                let ms = parts.iter().map(|p| self.eval(p, kind)).collect::<Result<Vec<_>>>()?;
                Morphism::compose_all(&ms.iter().collect::<Vec<_>>())
            }
            PathExpr::Par(parts) => {
                let ms = parts.iter().map(|p| self.eval(p, kind)).collect::<Result<Vec<_>>>()?;
                Morphism::tensor_all(kind, &ms.iter().collect::<Vec<_>>())
            }
        }
    }
}

/// One failed relation, with both evaluated sides.
#[derive(Clone, Debug)]
pub struct Violation {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Default)]
pub struct CounitReport {
    pub relations_checked: usize,
    pub violations: Vec<Violation>,
}

impl CounitReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Interprets every generator of a contoured presentation in the concrete
/// theory and verifies each emitted relation under the theory's equality.
/// Instances produced by the splice constructions are expected to be clean;
/// that is the executable face of the splice–contour adjunction.
pub fn check_counit(
    pres: &CategoryPresentation,
    interp: &ContourInterp,
    kind: crate::theory::TheoryKind,
) -> Result<CounitReport> {
    let mut report = CounitReport::default();
    for gen in &pres.generators {
        let m = interp.eval(&PathExpr::Gen(gen.name.clone()), kind)?;
        let dom = interp.word(&gen.dom)?;
        let cod = interp.word(&gen.cod)?;
        if m.dom() != dom || m.cod() != cod {
            return Err(Error::Presentation(format!(
                "generator `{}` interpreted at {} -> {}, declared {} -> {}",
                gen.name,
                m.dom(),
                m.cod(),
                dom,
                cod
            )));
        }
    }
    for rel in &pres.relations {
        let lhs = interp.eval(&rel.lhs, kind)?;
        let rhs = interp.eval(&rel.rhs, kind)?;
        report.relations_checked += 1;
        if !lhs.equal(&rhs)? {
            report.violations.push(Violation {
                label: rel.label.clone(),
                lhs: format!("{lhs:?}"),
                rhs: format!("{rhs:?}"),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split(name: &str, dom: &str, left: &str, right: &str) -> Element {
        Element::SeqSplit { name: name.into(), dom: dom.into(), left: left.into(), right: right.into() }
    }

    #[test]
    fn single_split_emits_three_generators() {
        let p = Presentation {
            objects: vec!["C".into(), "Y".into(), "Z".into()],
            elements: vec![split("c", "C", "Y", "Z")],
            equations: vec![],
        };
        let out = contour(&p).unwrap();
        assert_eq!(out.objects.len(), 6);
        assert_eq!(out.generators.len(), 3);
        assert_eq!(out.generators[0].dom, vec![lft("C")]);
        assert_eq!(out.generators[0].cod, vec![lft("Y")]);
        assert_eq!(out.generators[1].dom, vec![rgt("Y")]);
        assert_eq!(out.generators[1].cod, vec![lft("Z")]);
        assert_eq!(out.generators[2].dom, vec![rgt("Z")]);
        assert_eq!(out.generators[2].cod, vec![rgt("C")]);
        assert!(out.relations.is_empty());
    }

    #[test]
    fn empty_presentation_is_discrete() {
        let p = Presentation { objects: vec!["A".into()], ..Default::default() };
        let out = contour(&p).unwrap();
        assert_eq!(out.objects.len(), 2);
        assert!(out.generators.is_empty());
        assert!(out.relations.is_empty());
    }

    #[test]
    fn alpha_instance_emits_four_relations() {
        let p = Presentation {
            objects: vec!["A".into(), "U".into(), "V".into(), "Y0".into(), "Y1".into(), "Y2".into()],
            elements: vec![
                split("a", "A", "Y0", "U"),
                split("b", "U", "Y1", "Y2"),
                split("c", "A", "V", "Y2"),
                split("d", "V", "Y0", "Y1"),
            ],
            equations: vec![Equation::SeqAlpha {
                a: "a".into(),
                b: "b".into(),
                c: "c".into(),
                d: "d".into(),
            }],
        };
        let out = contour(&p).unwrap();
        assert_eq!(out.relations.len(), 4);
        assert_eq!(out.relations[0].lhs, PathExpr::gen("a.0"));
    }

    #[test]
    fn phi0_and_psi0_schemas() {
        let p = Presentation {
            objects: vec!["A".into(), "W".into(), "W2".into()],
            elements: vec![
                Element::ParUnit { name: "a".into(), obj: "A".into() },
                Element::SeqUnit { name: "n".into(), obj: "A".into() },
                split("b", "A", "W", "W2"),
                Element::ParUnit { name: "c".into(), obj: "W".into() },
                Element::ParUnit { name: "d".into(), obj: "W2".into() },
            ],
            equations: vec![
                Equation::Phi0 { a: "a".into(), b: "n".into() },
                Equation::Psi0 { a: "a".into(), b: "b".into(), c: "c".into(), d: "d".into() },
            ],
        };
        let out = monoidal_contour(&p).unwrap();
        assert_eq!(out.relations.len(), 4);
        assert_eq!(
            out.relations[0].lhs,
            PathExpr::Seq(vec![PathExpr::gen("a.0"), PathExpr::gen("a.1")])
        );
        assert_eq!(out.relations[0].rhs, PathExpr::gen("n.0"));
        // units alone contribute single generators and nothing else
        let units_only = Presentation {
            objects: vec!["A".into()],
            elements: vec![Element::SeqUnit { name: "u".into(), obj: "A".into() }],
            equations: vec![],
        };
        let got = monoidal_contour(&units_only).unwrap();
        assert_eq!(got.generators.len(), 1);
    }

    #[test]
    fn ill_typed_equation_is_rejected() {
        let p = Presentation {
            objects: vec!["A".into(), "U".into(), "Y0".into(), "Y1".into(), "Y2".into()],
            elements: vec![
                split("a", "A", "Y0", "U"),
                split("b", "A", "Y1", "Y2"), // wrong anchor: should start at U
                split("c", "A", "U", "Y2"),
                split("d", "U", "Y0", "Y1"),
            ],
            equations: vec![Equation::SeqAlpha {
                a: "a".into(),
                b: "b".into(),
                c: "c".into(),
                d: "d".into(),
            }],
        };
        assert!(contour(&p).is_err());
    }

    #[test]
    fn renaming_commutes_with_emission() {
        let p = Presentation {
            objects: vec!["A".into(), "U".into(), "V".into(), "Y0".into(), "Y1".into(), "Y2".into()],
            elements: vec![
                split("a", "A", "Y0", "U"),
                split("b", "U", "Y1", "Y2"),
                split("c", "A", "V", "Y2"),
                split("d", "V", "Y0", "Y1"),
            ],
            equations: vec![Equation::SeqAlpha {
                a: "a".into(),
                b: "b".into(),
                c: "c".into(),
                d: "d".into(),
            }],
        };
        let obj_map = |s: &str| format!("{s}_r");
        let elem_map = |s: &str| format!("{s}_r");

        fn rename_gen(name: &str) -> String {
            let (base, idx) = name.rsplit_once('.').unwrap();
            format!("{base}_r.{idx}")
        }
        fn rename_word(w: &Word) -> Word {
            w.iter().map(|o| SideObject { base: format!("{}_r", o.base), side: o.side }).collect()
        }
        fn rename_expr(e: &PathExpr) -> PathExpr {
            match e {
                PathExpr::Gen(name) => PathExpr::Gen(rename_gen(name)),
                PathExpr::Id(w) => PathExpr::Id(rename_word(w)),
                PathExpr::Seq(parts) => PathExpr::Seq(parts.iter().map(rename_expr).collect()),
                PathExpr::Par(parts) => PathExpr::Par(parts.iter().map(rename_expr).collect()),
            }
        }

        let out = contour(&p).unwrap();
        let contour_then_rename = CategoryPresentation {
            objects: out
                .objects
                .iter()
                .map(|o| SideObject { base: obj_map(&o.base), side: o.side })
                .collect(),
            generators: out
                .generators
                .iter()
                .map(|gen| Generator {
                    name: rename_gen(&gen.name),
                    dom: rename_word(&gen.dom),
                    cod: rename_word(&gen.cod),
                })
                .collect(),
            relations: out
                .relations
                .iter()
                .map(|r| Relation {
                    label: r.label.clone(),
                    lhs: rename_expr(&r.lhs),
                    rhs: rename_expr(&r.rhs),
                })
                .collect(),
        };
        let rename_then_contour = contour(&p.rename(&obj_map, &elem_map)).unwrap();
        assert_eq!(contour_then_rename.objects, rename_then_contour.objects);
        assert_eq!(contour_then_rename.generators, rename_then_contour.generators);
        assert_eq!(contour_then_rename.relations, rename_then_contour.relations);
    }
}

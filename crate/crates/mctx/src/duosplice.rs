//! Spliced monoidal arrows: parallel splits and units, the four laxators,
//! and a tree form of nested elements used by the coherence oracles.
//!
//! A parallel split `f ⨾ (□ ⊗ □) ⨾ g` cuts a morphism along a tensor; a
//! parallel unit `f ∥ g` cuts it along the monoidal unit. The laxators turn
//! parallel sequences of holes into sequences of parallel holes and are
//! implemented as the canonical representatives of their defining equations.

use crate::error::{Error, Result};
use crate::object::ObjectList;
use crate::splice::{HoleType, NHoleSplice};
use crate::theory::Morphism;

/// `f: A → X ⊗ X'` and `g: Y ⊗ Y' → B` with declared hole types
/// `(X, Y)` and `(X', Y')`.
#[derive(Clone, Debug)]
pub struct ParSplit {
    pub f: Morphism,
    pub g: Morphism,
    pub left_hole: HoleType,
    pub right_hole: HoleType,
}

impl ParSplit {
    pub fn new(f: Morphism, g: Morphism, left_hole: HoleType, right_hole: HoleType) -> Result<Self> {
        let expect_cod = left_hole.0.tensor(&right_hole.0);
        if f.cod() != expect_cod {
            return Err(Error::TypeMismatch { expected: expect_cod, found: f.cod() });
        }
        let expect_dom = left_hole.1.tensor(&right_hole.1);
        if g.dom() != expect_dom {
            return Err(Error::TypeMismatch { expected: expect_dom, found: g.dom() });
        }
        Ok(ParSplit { f, g, left_hole, right_hole })
    }

    pub fn outer(&self) -> (ObjectList, ObjectList) {
        (self.f.dom(), self.g.cod())
    }

    /// Closes both holes and returns the composite `f ⨾ (h ⊗ k) ⨾ g`.
    pub fn fill(&self, h: &Morphism, k: &Morphism) -> Result<Morphism> {
        check_hole(&self.left_hole, h)?;
        check_hole(&self.right_hole, k)?;
        Morphism::compose_all(&[&self.f, &h.tensor(k)?, &self.g])
    }

    pub fn equal(&self, other: &ParSplit) -> Result<bool> {
        Ok(self.left_hole == other.left_hole
            && self.right_hole == other.right_hole
            && self.f.equal(&other.f)?
            && self.g.equal(&other.g)?)
    }
}

/// `f: A → I` and `g: I → B`.
#[derive(Clone, Debug)]
pub struct ParUnit {
    pub f: Morphism,
    pub g: Morphism,
}

impl ParUnit {
    pub fn new(f: Morphism, g: Morphism) -> Result<Self> {
        if !f.cod().is_unit() {
            return Err(Error::TypeMismatch { expected: ObjectList::unit(), found: f.cod() });
        }
        if !g.dom().is_unit() {
            return Err(Error::TypeMismatch { expected: ObjectList::unit(), found: g.dom() });
        }
        Ok(ParUnit { f, g })
    }

    pub fn outer(&self) -> (ObjectList, ObjectList) {
        (self.f.dom(), self.g.cod())
    }
}

fn check_hole(hole: &HoleType, m: &Morphism) -> Result<()> {
    if m.dom() != hole.0 || m.cod() != hole.1 {
        return Err(Error::TypeMismatch { expected: hole.0.clone(), found: m.dom() });
    }
    Ok(())
}

/// First laxator. Takes a parallel split whose holes carry sequential
/// splits and produces the canonical sequence of parallel holes:
/// `⟨f₀⨾(h₀⊗k₀) | h₁⊗k₁ | (h₂⊗k₂)⨾f₁⟩` with pure `(□ ⊗ □)` pairs.
pub fn psi2(
    outer: &ParSplit,
    left: &NHoleSplice,
    right: &NHoleSplice,
) -> Result<(NHoleSplice, ParSplit, ParSplit)> {
    expect_two_hole(left)?;
    expect_two_hole(right)?;
    check_fits(&outer.left_hole, left)?;
    check_fits(&outer.right_hole, right)?;
    let h = left.morphisms();
    let k = right.morphisms();
    let g0 = outer.f.compose(&h[0].tensor(&k[0])?)?;
    let g1 = h[1].tensor(&k[1])?;
    let g2 = h[2].tensor(&k[2])?.compose(&outer.g)?;
    let seq = NHoleSplice::two(g0, g1, g2)?;
    let p = pure_par(&outer.f, &left.holes()[0], &right.holes()[0])?;
    let q = pure_par(&outer.f, &left.holes()[1], &right.holes()[1])?;
    Ok((seq, p, q))
}

/// Second laxator: `⟨a₀ ∥ a₁⟩ ↦ ⟨a₀ | id_I | a₁⟩` with pure unit pairs in
/// both holes.
pub fn psi0(u: &ParUnit) -> Result<(NHoleSplice, ParUnit, ParUnit)> {
    let id_i = u.f.identity_like(&ObjectList::unit());
    let seq = NHoleSplice::two(u.f.clone(), id_i.clone(), u.g.clone())?;
    let pure = ParUnit::new(id_i.clone(), id_i)?;
    Ok((seq, pure.clone(), pure))
}

/// Third laxator: a parallel split whose holes carry sequential units fuses
/// to the single morphism `f₀ ⨾ (h₀ ⊗ h₁) ⨾ f₁`.
pub fn phi2(outer: &ParSplit, h0: &Morphism, h1: &Morphism) -> Result<Morphism> {
    check_hole(&outer.left_hole, h0)?;
    check_hole(&outer.right_hole, h1)?;
    Morphism::compose_all(&[&outer.f, &h0.tensor(h1)?, &outer.g])
}

/// Fourth laxator: `⟨a₀ ∥ a₁⟩ ↦ a₀ ⨾ a₁`.
pub fn phi0(u: &ParUnit) -> Result<Morphism> {
    u.f.compose(&u.g)
}

/// Parallel splits are representable: the same data read as a single-hole
/// splice on the fused hole `(X ⊗ X', Y ⊗ Y')`.
pub fn par_representable(p: &ParSplit) -> Result<NHoleSplice> {
    NHoleSplice::one(p.f.clone(), p.g.clone())
}

/// The inverse reinterpretation, choosing where to cut the fused hole.
pub fn par_from_splice(s: &NHoleSplice, left_hole: HoleType, right_hole: HoleType) -> Result<ParSplit> {
    if s.hole_count() != 1 {
        return Err(Error::ShapeMismatch {
            expected: "1-hole splice".into(),
            found: format!("{}-hole splice", s.hole_count()),
        });
    }
    ParSplit::new(s.morphisms()[0].clone(), s.morphisms()[1].clone(), left_hole, right_hole)
}

fn pure_par(like: &Morphism, left: &HoleType, right: &HoleType) -> Result<ParSplit> {
    let f = like.identity_like(&left.0.tensor(&right.0));
    let g = like.identity_like(&left.1.tensor(&right.1));
    ParSplit::new(f, g, left.clone(), right.clone())
}

fn expect_two_hole(s: &NHoleSplice) -> Result<()> {
    if s.hole_count() != 2 {
        return Err(Error::ShapeMismatch {
            expected: "2-hole splice".into(),
            found: format!("{}-hole splice", s.hole_count()),
        });
    }
    Ok(())
}

fn check_fits(hole: &HoleType, s: &NHoleSplice) -> Result<()> {
    let (a, b) = s.outer();
    if a != hole.0 || b != hole.1 {
        return Err(Error::TypeMismatch { expected: hole.0.clone(), found: a });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Nested elements
// ---------------------------------------------------------------------------

/// An element of an iterated split type, kept as an explicit tree. Leaves
/// are single-hole splices; the structural maps below are the coherence
/// morphisms and laxators acting on representatives. The extensional oracle
/// closes every leaf hole and compares composites.
#[derive(Clone, Debug)]
pub enum Elem {
    /// `f ⨾ □ ⨾ g`: a leaf with one typed hole. The tag identifies the
    /// hole across structural rewrites, so fills can follow the leaf.
    Mor { f: Morphism, g: Morphism, tag: usize },
    /// A sequential split whose two gaps carry further elements.
    Seq { parts: Box<[Morphism; 3]>, left: Box<Elem>, right: Box<Elem> },
    /// A parallel split whose two slots carry further elements.
    Par { f: Morphism, g: Morphism, left: Box<Elem>, right: Box<Elem> },
    /// A sequential unit: a bare morphism.
    SeqUnit(Morphism),
    /// A parallel unit `f ∥ g`.
    ParUnit { f: Morphism, g: Morphism },
}

impl Elem {
    pub fn outer(&self) -> (ObjectList, ObjectList) {
        match self {
            Elem::Mor { f, g, .. } => (f.dom(), g.cod()),
            Elem::Seq { parts, .. } => (parts[0].dom(), parts[2].cod()),
            Elem::Par { f, g, .. } => (f.dom(), g.cod()),
            Elem::SeqUnit(f) => (f.dom(), f.cod()),
            Elem::ParUnit { f, g } => (f.dom(), g.cod()),
        }
    }

    /// Leaf hole types indexed by their tags.
    pub fn leaf_holes(&self) -> Vec<HoleType> {
        let mut tagged = Vec::new();
        self.collect_holes(&mut tagged);
        tagged.sort_by_key(|(tag, _)| *tag);
        tagged.into_iter().map(|(_, h)| h).collect()
    }

    fn collect_holes(&self, out: &mut Vec<(usize, HoleType)>) {
        match self {
            Elem::Mor { f, g, tag } => out.push((*tag, (f.cod(), g.dom()))),
            Elem::Seq { left, right, .. } | Elem::Par { left, right, .. } => {
                left.collect_holes(out);
                right.collect_holes(out);
            }
            Elem::SeqUnit(_) | Elem::ParUnit { .. } => {}
        }
    }

    /// Closes every leaf hole (in order) and returns the composite morphism.
    pub fn fill_all(&self, fills: &[&Morphism]) -> Result<Morphism> {
        let mut idx = 0;
        let m = self.fill_walk(fills, &mut idx)?;
        if idx != fills.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{idx} hole fills"),
                found: format!("{}", fills.len()),
            });
        }
        Ok(m)
    }

    fn fill_walk(&self, fills: &[&Morphism], idx: &mut usize) -> Result<Morphism> {
        match self {
            Elem::Mor { f, g, tag } => {
                let h = fills.get(*tag).ok_or(Error::ShapeMismatch {
                    expected: format!("a fill for leaf {tag}"),
                    found: format!("{}", fills.len()),
                })?;
                *idx += 1;
                Morphism::compose_all(&[f, h, g])
            }
            Elem::Seq { parts, left, right } => {
                let l = left.fill_walk(fills, idx)?;
                let r = right.fill_walk(fills, idx)?;
                Morphism::compose_all(&[&parts[0], &l, &parts[1], &r, &parts[2]])
            }
            Elem::Par { f, g, left, right } => {
                let l = left.fill_walk(fills, idx)?;
                let r = right.fill_walk(fills, idx)?;
                Morphism::compose_all(&[f, &l.tensor(&r)?, g])
            }
            Elem::SeqUnit(f) => Ok(f.clone()),
            Elem::ParUnit { f, g } => f.compose(g),
        }
    }

    /// Acts on the outer boundary: pre-compose with `p`, post-compose with `q`.
    pub fn act(&self, p: &Morphism, q: &Morphism) -> Result<Elem> {
        Ok(match self {
            Elem::Mor { f, g, tag } => Elem::Mor { f: p.compose(f)?, g: g.compose(q)?, tag: *tag },
            Elem::Seq { parts, left, right } => Elem::Seq {
                parts: Box::new([p.compose(&parts[0])?, parts[1].clone(), parts[2].compose(q)?]),
                left: left.clone(),
                right: right.clone(),
            },
            Elem::Par { f, g, left, right } => Elem::Par {
                f: p.compose(f)?,
                g: g.compose(q)?,
                left: left.clone(),
                right: right.clone(),
            },
            Elem::SeqUnit(f) => Elem::SeqUnit(Morphism::compose_all(&[p, f, q])?),
            Elem::ParUnit { f, g } => Elem::ParUnit { f: p.compose(f)?, g: g.compose(q)? },
        })
    }

    fn expect_seq(&self) -> Result<(&[Morphism; 3], &Elem, &Elem)> {
        match self {
            Elem::Seq { parts, left, right } => Ok((parts, left, right)),
            _ => Err(shape_err("sequential split", self)),
        }
    }

    fn expect_par(&self) -> Result<(&Morphism, &Morphism, &Elem, &Elem)> {
        match self {
            Elem::Par { f, g, left, right } => Ok((f, g, left, right)),
            _ => Err(shape_err("parallel split", self)),
        }
    }

    fn expect_seq_unit(&self) -> Result<&Morphism> {
        match self {
            Elem::SeqUnit(f) => Ok(f),
            _ => Err(shape_err("sequential unit", self)),
        }
    }

    fn expect_par_unit(&self) -> Result<(&Morphism, &Morphism)> {
        match self {
            Elem::ParUnit { f, g } => Ok((f, g)),
            _ => Err(shape_err("parallel unit", self)),
        }
    }
}

fn shape_err(expected: &str, found: &Elem) -> Error {
    let found = match found {
        Elem::Mor { .. } => "single-hole element",
        Elem::Seq { .. } => "sequential split",
        Elem::Par { .. } => "parallel split",
        Elem::SeqUnit(_) => "sequential unit",
        Elem::ParUnit { .. } => "parallel unit",
    };
    Error::ShapeMismatch { expected: expected.into(), found: found.into() }
}

/// Structural maps on nested elements: the promonoidal coherences of both
/// tensors and the four laxators. Each is the canonical-representative form
/// of the corresponding defining equation; the coherence suites check them
/// extensionally by closing all holes.
pub mod tree {
    use super::*;

    /// `(x ◁ y) ◁ z  →  x ◁ (y ◁ z)`.
    pub fn seq_assoc_r(e: &Elem) -> Result<Elem> {
        let (t, nested, z) = e.expect_seq()?;
        let (s, x, y) = nested.expect_seq()?;
        let w0 = t[0].compose(&s[0])?;
        let w1 = s[1].clone();
        let w2 = s[2].compose(&t[1])?;
        let w3 = t[2].clone();
        let id_mid = w1.identity_like(&w1.dom());
        let id_b = w1.identity_like(&w3.cod());
        Ok(Elem::Seq {
            parts: Box::new([w0, id_mid, id_b]),
            left: Box::new(x.clone()),
            right: Box::new(Elem::Seq {
                parts: Box::new([w1, w2, w3]),
                left: Box::new(y.clone()),
                right: Box::new(z.clone()),
            }),
        })
    }

    /// `x ◁ (y ◁ z)  →  (x ◁ y) ◁ z`.
    pub fn seq_assoc_l(e: &Elem) -> Result<Elem> {
        let (t, x, nested) = e.expect_seq()?;
        let (s, y, z) = nested.expect_seq()?;
        let w0 = t[0].clone();
        let w1 = t[1].compose(&s[0])?;
        let w2 = s[1].clone();
        let w3 = s[2].compose(&t[2])?;
        let id_a = w0.identity_like(&w0.dom());
        let id_mid = w0.identity_like(&w2.cod());
        Ok(Elem::Seq {
            parts: Box::new([id_a, id_mid, w3]),
            left: Box::new(Elem::Seq {
                parts: Box::new([w0, w1, w2]),
                left: Box::new(x.clone()),
                right: Box::new(y.clone()),
            }),
            right: Box::new(z.clone()),
        })
    }

    /// `N ◁ x → x`: absorb a sequential unit on the left.
    pub fn seq_lambda(e: &Elem) -> Result<Elem> {
        let (t, unit, x) = e.expect_seq()?;
        let u = unit.expect_seq_unit()?;
        x.act(&Morphism::compose_all(&[&t[0], u, &t[1]])?, &t[2])
    }

    /// `x ◁ N → x`: absorb a sequential unit on the right.
    pub fn seq_rho(e: &Elem) -> Result<Elem> {
        let (t, x, unit) = e.expect_seq()?;
        let u = unit.expect_seq_unit()?;
        x.act(&t[0], &Morphism::compose_all(&[&t[1], u, &t[2]])?)
    }

    /// `(x ⊗ y) ⊗ z → x ⊗ (y ⊗ z)` (strict on objects, canonical on data).
    pub fn par_assoc_r(e: &Elem) -> Result<Elem> {
        let (f, g, nested, z) = e.expect_par()?;
        let (sf, sg, x, y) = nested.expect_par()?;
        let (z_in, z_out) = z.outer();
        let f2 = f.compose(&sf.tensor(&f.identity_like(&z_in))?)?;
        let g2 = sg.tensor(&g.identity_like(&z_out))?.compose(g)?;
        let (y_in, y_out) = y.outer();
        let inner_f = f.identity_like(&y_in.tensor(&z_in));
        let inner_g = f.identity_like(&y_out.tensor(&z_out));
        Ok(Elem::Par {
            f: f2,
            g: g2,
            left: Box::new(x.clone()),
            right: Box::new(Elem::Par {
                f: inner_f,
                g: inner_g,
                left: Box::new(y.clone()),
                right: Box::new(z.clone()),
            }),
        })
    }

    /// `x ⊗ (y ⊗ z) → (x ⊗ y) ⊗ z`.
    pub fn par_assoc_l(e: &Elem) -> Result<Elem> {
        let (f, g, x, nested) = e.expect_par()?;
        let (sf, sg, y, z) = nested.expect_par()?;
        let (x_in, x_out) = x.outer();
        let f2 = f.compose(&f.identity_like(&x_in).tensor(sf)?)?;
        let g2 = g.identity_like(&x_out).tensor(sg)?.compose(g)?;
        let (y_in, y_out) = y.outer();
        let inner_f = f.identity_like(&x_in.tensor(&y_in));
        let inner_g = f.identity_like(&x_out.tensor(&y_out));
        Ok(Elem::Par {
            f: f2,
            g: g2,
            left: Box::new(Elem::Par {
                f: inner_f,
                g: inner_g,
                left: Box::new(x.clone()),
                right: Box::new(y.clone()),
            }),
            right: Box::new(z.clone()),
        })
    }

    /// `I ⊗ x → x`: absorb a parallel unit on the left.
    pub fn par_lambda(e: &Elem) -> Result<Elem> {
        let (f, g, unit, x) = e.expect_par()?;
        let (u0, u1) = unit.expect_par_unit()?;
        let (x_in, x_out) = x.outer();
        let p = f.compose(&u0.tensor(&f.identity_like(&x_in))?)?;
        let q = u1.tensor(&g.identity_like(&x_out))?.compose(g)?;
        x.act(&p, &q)
    }

    /// `x ⊗ I → x`: absorb a parallel unit on the right.
    pub fn par_rho(e: &Elem) -> Result<Elem> {
        let (f, g, x, unit) = e.expect_par()?;
        let (u0, u1) = unit.expect_par_unit()?;
        let (x_in, x_out) = x.outer();
        let p = f.compose(&f.identity_like(&x_in).tensor(u0)?)?;
        let q = g.identity_like(&x_out).tensor(u1)?.compose(g)?;
        x.act(&p, &q)
    }

    /// First laxator on trees: `(a ◁ b) ⊗ (c ◁ d) → (a ⊗ c) ◁ (b ⊗ d)`.
    pub fn psi2(e: &Elem) -> Result<Elem> {
        let (f, g, l, r) = e.expect_par()?;
        let (h, a, b) = l.expect_seq()?;
        let (k, c, d) = r.expect_seq()?;
        let g0 = f.compose(&h[0].tensor(&k[0])?)?;
        let g1 = h[1].tensor(&k[1])?;
        let g2 = h[2].tensor(&k[2])?.compose(g)?;
        let pure = |x: &Elem, y: &Elem| -> Result<Elem> {
            let (xi, xo) = x.outer();
            let (yi, yo) = y.outer();
            Ok(Elem::Par {
                f: f.identity_like(&xi.tensor(&yi)),
                g: f.identity_like(&xo.tensor(&yo)),
                left: Box::new(x.clone()),
                right: Box::new(y.clone()),
            })
        };
        Ok(Elem::Seq {
            parts: Box::new([g0, g1, g2]),
            left: Box::new(pure(a, c)?),
            right: Box::new(pure(b, d)?),
        })
    }

    /// Second laxator on trees: `I → I ◁ I`.
    pub fn psi0(e: &Elem) -> Result<Elem> {
        let (f, g) = e.expect_par_unit()?;
        let id_i = f.identity_like(&ObjectList::unit());
        let pure = Elem::ParUnit { f: id_i.clone(), g: id_i.clone() };
        Ok(Elem::Seq {
            parts: Box::new([f.clone(), id_i, g.clone()]),
            left: Box::new(pure.clone()),
            right: Box::new(pure),
        })
    }

    /// Third laxator on trees: `N ⊗ N → N`.
    pub fn phi2(e: &Elem) -> Result<Elem> {
        let (f, g, l, r) = e.expect_par()?;
        let u0 = l.expect_seq_unit()?;
        let u1 = r.expect_seq_unit()?;
        Ok(Elem::SeqUnit(Morphism::compose_all(&[f, &u0.tensor(u1)?, g])?))
    }

    /// Fourth laxator on trees: `I → N`.
    pub fn phi0(e: &Elem) -> Result<Elem> {
        let (f, g) = e.expect_par_unit()?;
        Ok(Elem::SeqUnit(f.compose(g)?))
    }

    /// Applies `op` to the left child of a split (`op ◁ id` or `op ⊗ id`).
    pub fn map_left(e: &Elem, op: impl Fn(&Elem) -> Result<Elem>) -> Result<Elem> {
        Ok(match e {
            Elem::Seq { parts, left, right } => Elem::Seq {
                parts: parts.clone(),
                left: Box::new(op(left)?),
                right: right.clone(),
            },
            Elem::Par { f, g, left, right } => Elem::Par {
                f: f.clone(),
                g: g.clone(),
                left: Box::new(op(left)?),
                right: right.clone(),
            },
            other => return Err(shape_err("split", other)),
        })
    }

    /// Applies `op` to the right child of a split (`id ◁ op` or `id ⊗ op`).
    pub fn map_right(e: &Elem, op: impl Fn(&Elem) -> Result<Elem>) -> Result<Elem> {
        Ok(match e {
            Elem::Seq { parts, left, right } => Elem::Seq {
                parts: parts.clone(),
                left: left.clone(),
                right: Box::new(op(right)?),
            },
            Elem::Par { f, g, left, right } => Elem::Par {
                f: f.clone(),
                g: g.clone(),
                left: left.clone(),
                right: Box::new(op(right)?),
            },
            other => return Err(shape_err("split", other)),
        })
    }

    /// Applies `op` to both children of a split.
    pub fn map_both(e: &Elem, op: impl Fn(&Elem) -> Result<Elem>) -> Result<Elem> {
        map_left(&map_right(e, &op)?, &op)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::{enumerate_finfn_hom, FinFnMorphism};

    fn two() -> ObjectList {
        ObjectList::of(&[("B", 2)])
    }

    fn t(dom: &ObjectList, cod: &ObjectList, tab: Vec<usize>) -> Morphism {
        Morphism::FinFn(FinFnMorphism::new(dom.clone(), cod.clone(), tab).unwrap())
    }

    fn hole2() -> HoleType {
        (two(), two())
    }

    #[test]
    fn psi2_fill_before_equals_fill_after() {
        let b = two();
        let b2 = b.tensor(&b);
        let outer = ParSplit::new(
            t(&b, &b2, vec![0, 3]),
            t(&b2, &b, vec![0, 1, 1, 0]),
            hole2(),
            hole2(),
        )
        .unwrap();
        let left = NHoleSplice::two(t(&b, &b, vec![1, 0]), t(&b, &b, vec![0, 0]), t(&b, &b, vec![0, 1])).unwrap();
        let right = NHoleSplice::two(t(&b, &b, vec![1, 1]), t(&b, &b, vec![1, 0]), t(&b, &b, vec![0, 1])).unwrap();
        let (seq, p, q) = psi2(&outer, &left, &right).unwrap();

        let homs = enumerate_finfn_hom(&b, &b, 1 << 10).unwrap();
        for h1 in &homs {
            for k1 in &homs {
                for h2 in &homs {
                    for k2 in &homs {
                        let (h1, k1, h2, k2) = (
                            Morphism::FinFn(h1.clone()),
                            Morphism::FinFn(k1.clone()),
                            Morphism::FinFn(h2.clone()),
                            Morphism::FinFn(k2.clone()),
                        );
                        // before: fill both sequential splits, then the parallel split
                        let lfill = left.fill_all(&[&h1, &h2]).unwrap();
                        let rfill = right.fill_all(&[&k1, &k2]).unwrap();
                        let before = outer.fill(&lfill, &rfill).unwrap();
                        // after: fill the parallel pairs, then the sequential split
                        let first = p.fill(&h1, &k1).unwrap();
                        let second = q.fill(&h2, &k2).unwrap();
                        let after = seq.fill_all(&[&first, &second]).unwrap();
                        assert!(before.equal(&after).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn psi2_identity_case_keeps_outer() {
        let b = two();
        let b2 = b.tensor(&b);
        let id = t(&b, &b, vec![0, 1]);
        let outer = ParSplit::new(
            t(&b, &b2, vec![1, 2]),
            t(&b2, &b, vec![0, 0, 1, 1]),
            hole2(),
            hole2(),
        )
        .unwrap();
        let ids = NHoleSplice::two(id.clone(), id.clone(), id.clone()).unwrap();
        let (seq, _, _) = psi2(&outer, &ids, &ids).unwrap();
        // all inner morphisms identities: outer boundaries survive unit fusions
        assert!(seq.morphisms()[0].equal(&outer.f).unwrap());
        assert!(seq.morphisms()[2].equal(&outer.g).unwrap());
    }

    #[test]
    fn psi0_and_phi0_coherence() {
        let b = two();
        let u = ParUnit::new(t(&b, &ObjectList::unit(), vec![0, 0]), t(&ObjectList::unit(), &b, vec![1])).unwrap();
        let (seq, p, q) = psi0(&u).unwrap();
        // fill both I-typed holes with phi0 of the pure units, compare to phi0 of u
        let fill1 = phi0(&p).unwrap();
        let fill2 = phi0(&q).unwrap();
        let through = seq.fill_all(&[&fill1, &fill2]).unwrap();
        let direct = phi0(&u).unwrap();
        assert!(through.equal(&direct).unwrap());
    }

    #[test]
    fn phi2_matches_flat_composition() {
        let b = two();
        let b2 = b.tensor(&b);
        let outer = ParSplit::new(
            t(&b, &b2, vec![3, 0]),
            t(&b2, &b, vec![1, 0, 0, 1]),
            hole2(),
            hole2(),
        )
        .unwrap();
        let h0 = t(&b, &b, vec![1, 0]);
        let h1 = t(&b, &b, vec![1, 1]);
        let fused = phi2(&outer, &h0, &h1).unwrap();
        let flat = Morphism::compose_all(&[&outer.f, &h0.tensor(&h1).unwrap(), &outer.g]).unwrap();
        assert!(fused.equal(&flat).unwrap());
    }

    #[test]
    fn phi2_inverse_permutations_give_identity() {
        let b = two();
        let b2 = b.tensor(&b);
        let perm = t(&b2, &b2, vec![2, 0, 3, 1]);
        let perm_inv = t(&b2, &b2, vec![1, 3, 0, 2]);
        let outer = ParSplit::new(perm, perm_inv, hole2(), hole2()).unwrap();
        let id = t(&b, &b, vec![0, 1]);
        let fused = phi2(&outer, &id, &id).unwrap();
        assert!(fused.equal(&Morphism::identity_in(crate::theory::TheoryKind::FinFn, &b2)).unwrap());
    }

    #[test]
    fn representability_roundtrip_is_identity_on_data() {
        let b = two();
        let b2 = b.tensor(&b);
        let p = ParSplit::new(
            t(&b, &b2, vec![2, 1]),
            t(&b2, &b, vec![0, 1, 1, 0]),
            hole2(),
            hole2(),
        )
        .unwrap();
        let s = par_representable(&p).unwrap();
        let back = par_from_splice(&s, p.left_hole.clone(), p.right_hole.clone()).unwrap();
        assert!(back.equal(&p).unwrap());
        // fused fill equals the two-hole fill
        let h = t(&b, &b, vec![1, 0]);
        let k = t(&b, &b, vec![0, 0]);
        let fused_fill = s.fill_all(&[&h.tensor(&k).unwrap()]).unwrap();
        let double_fill = p.fill(&h, &k).unwrap();
        assert!(fused_fill.equal(&double_fill).unwrap());
    }

    #[test]
    fn par_unit_is_one_hole_of_unit_type() {
        let b = two();
        let u = ParUnit::new(t(&b, &ObjectList::unit(), vec![0, 0]), t(&ObjectList::unit(), &b, vec![0])).unwrap();
        // ParUnit corresponds to a one-hole splice of type (I, I)
        let s = NHoleSplice::one(u.f.clone(), u.g.clone()).unwrap();
        assert_eq!(s.holes()[0], (ObjectList::unit(), ObjectList::unit()));
    }
}

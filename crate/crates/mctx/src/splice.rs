//! Spliced arrows: sequential contexts with any number of typed holes.
//!
//! An n-hole splice `f₀ ⨾ □ ⨾ f₁ ⨾ … ⨾ □ ⨾ fₙ` records its boundary
//! morphisms and the types of its gaps. Elements here are genuine tuples
//! with no quotient: equality is componentwise, and the coherence
//! isomorphisms are fixed by how elements flatten into longer splices.

use crate::error::{Error, Result};
use crate::object::ObjectList;
use crate::theory::Morphism;

pub type HoleType = (ObjectList, ObjectList);

/// `morphisms.len() == holes.len() + 1`; zero holes is a bare morphism.
#[derive(Clone, Debug)]
pub struct NHoleSplice {
    morphisms: Vec<Morphism>,
    holes: Vec<HoleType>,
}

impl NHoleSplice {
    pub fn new(morphisms: Vec<Morphism>, holes: Vec<HoleType>) -> Result<Self> {
        if morphisms.len() != holes.len() + 1 {
            return Err(Error::ShapeMismatch {
                expected: format!("{} boundary morphisms", holes.len() + 1),
                found: format!("{}", morphisms.len()),
            });
        }
        for (k, (x, y)) in holes.iter().enumerate() {
            let before = morphisms[k].cod();
            if &before != x {
                return Err(Error::TypeMismatch { expected: x.clone(), found: before });
            }
            let after = morphisms[k + 1].dom();
            if &after != y {
                return Err(Error::TypeMismatch { expected: y.clone(), found: after });
            }
        }
        Ok(NHoleSplice { morphisms, holes })
    }

    /// A bare morphism, seen as a splice with no holes.
    pub fn bare(f: Morphism) -> Self {
        NHoleSplice { morphisms: vec![f], holes: Vec::new() }
    }

    /// `f ⨾ □ ⨾ g`.
    pub fn one(f: Morphism, g: Morphism) -> Result<Self> {
        let hole = (f.cod(), g.dom());
        NHoleSplice::new(vec![f, g], vec![hole])
    }

    /// `f ⨾ □ ⨾ g ⨾ □ ⨾ h`.
    pub fn two(f: Morphism, g: Morphism, h: Morphism) -> Result<Self> {
        let h1 = (f.cod(), g.dom());
        let h2 = (g.cod(), h.dom());
        NHoleSplice::new(vec![f, g, h], vec![h1, h2])
    }

    /// The identity splice `id ⨾ □ ⨾ id` on a hole type.
    pub fn identity(like: &Morphism, x: &ObjectList, y: &ObjectList) -> Self {
        NHoleSplice {
            morphisms: vec![like.identity_like(x), like.identity_like(y)],
            holes: vec![(x.clone(), y.clone())],
        }
    }

    pub fn hole_count(&self) -> usize {
        self.holes.len()
    }

    pub fn holes(&self) -> &[HoleType] {
        &self.holes
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn outer(&self) -> (ObjectList, ObjectList) {
        (self.morphisms[0].dom(), self.morphisms.last().unwrap().cod())
    }

    /// Componentwise equality (splices carry no quotient).
    pub fn equal(&self, other: &NHoleSplice) -> Result<bool> {
        if self.holes != other.holes || self.morphisms.len() != other.morphisms.len() {
            return Ok(false);
        }
        for (a, b) in self.morphisms.iter().zip(&other.morphisms) {
            if !a.equal(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fills hole `index` (1-based, matching the ≺ᵢ notation) with another
    /// splice, fusing the boundary morphisms by composition. Filling with a
    /// bare morphism degenerates to plain composition.
    pub fn fill(&self, index: usize, inner: &NHoleSplice) -> Result<NHoleSplice> {
        if index == 0 || index > self.holes.len() {
            return Err(Error::HoleIndex { index, holes: self.holes.len() });
        }
        let k = index - 1;
        let (x, y) = &self.holes[k];
        let (a, b) = inner.outer();
        if &a != x || &b != y {
            return Err(Error::TypeMismatch { expected: x.clone(), found: a });
        }
        let mut morphisms = Vec::with_capacity(self.morphisms.len() + inner.morphisms.len() - 2);
        let mut holes = Vec::with_capacity(self.holes.len() + inner.holes.len() - 1);
        morphisms.extend(self.morphisms[..k].iter().cloned());
        holes.extend(self.holes[..k].iter().cloned());
        if inner.hole_count() == 0 {
            let fused = Morphism::compose_all(&[&self.morphisms[k], &inner.morphisms[0], &self.morphisms[k + 1]])?;
            morphisms.push(fused);
        } else {
            morphisms.push(self.morphisms[k].compose(&inner.morphisms[0])?);
            morphisms.extend(inner.morphisms[1..inner.morphisms.len() - 1].iter().cloned());
            morphisms.push(inner.morphisms.last().unwrap().compose(&self.morphisms[k + 1])?);
            holes.extend(inner.holes.iter().cloned());
        }
        holes.extend(self.holes[k + 1..].iter().cloned());
        morphisms.extend(self.morphisms[k + 2..].iter().cloned());
        NHoleSplice::new(morphisms, holes)
    }

    /// Closes every hole with the given morphisms and returns the composite.
    pub fn fill_all(&self, fills: &[&Morphism]) -> Result<Morphism> {
        if fills.len() != self.holes.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} hole fills", self.holes.len()),
                found: format!("{}", fills.len()),
            });
        }
        let mut acc = self.morphisms[0].clone();
        for (k, fill) in fills.iter().enumerate() {
            let (x, y) = &self.holes[k];
            if &fill.dom() != x || &fill.cod() != y {
                return Err(Error::TypeMismatch { expected: x.clone(), found: fill.dom() });
            }
            acc = acc.compose(fill)?.compose(&self.morphisms[k + 1])?;
        }
        Ok(acc)
    }
}

/// The associator of spliced arrows. Takes a split with another split nested
/// in its second hole and returns the unique (up to dinaturality) pair with
/// the nesting in the first hole, characterized by both pairs flattening to
/// the same three-hole splice. The returned representative is canonical:
/// identity connector morphisms at the new anchor.
pub fn splice_alpha(outer: &NHoleSplice, inner: &NHoleSplice) -> Result<(NHoleSplice, NHoleSplice)> {
    expect_two(outer)?;
    expect_two(inner)?;
    let flat = outer.fill(2, inner)?;
    refit_nested_first(&flat)
}

/// Inverse direction: nesting in the first hole becomes nesting in the second.
pub fn splice_alpha_inv(outer: &NHoleSplice, inner: &NHoleSplice) -> Result<(NHoleSplice, NHoleSplice)> {
    expect_two(outer)?;
    expect_two(inner)?;
    let flat = outer.fill(1, inner)?;
    refit_nested_second(&flat)
}

/// Left unitor: `λ(⟨f₀|f₁|f₂⟩ | g) = ⟨f₀ ⨾ g ⨾ f₁ | f₂⟩` with the unit `g`
/// closing the first hole.
pub fn splice_lambda(split: &NHoleSplice, unit: &Morphism) -> Result<NHoleSplice> {
    expect_two(split)?;
    split.fill(1, &NHoleSplice::bare(unit.clone()))
}

/// Right unitor: `ρ(⟨f₀|f₁|f₂⟩ | g) = ⟨f₀ | f₁ ⨾ g ⨾ f₂⟩`.
pub fn splice_rho(split: &NHoleSplice, unit: &Morphism) -> Result<NHoleSplice> {
    expect_two(split)?;
    split.fill(2, &NHoleSplice::bare(unit.clone()))
}

fn expect_two(s: &NHoleSplice) -> Result<()> {
    if s.hole_count() != 2 {
        return Err(Error::ShapeMismatch {
            expected: "2-hole splice".into(),
            found: format!("{}-hole splice", s.hole_count()),
        });
    }
    Ok(())
}

/// Splits a 3-hole splice `⟨w₀|w₁|w₂|w₃⟩` as an outer split whose first hole
/// carries an inner split: outer `⟨id | id | w₃⟩`, inner `⟨w₀|w₁|w₂⟩`.
fn refit_nested_first(flat: &NHoleSplice) -> Result<(NHoleSplice, NHoleSplice)> {
    debug_assert_eq!(flat.hole_count(), 3);
    let w = flat.morphisms();
    let (a, _) = flat.outer();
    let anchor_out = w[2].cod();
    let inner = NHoleSplice::new(
        vec![w[0].clone(), w[1].clone(), w[2].clone()],
        vec![flat.holes()[0].clone(), flat.holes()[1].clone()],
    )?;
    let outer = NHoleSplice::new(
        vec![w[0].identity_like(&a), w[0].identity_like(&anchor_out), w[3].clone()],
        vec![(a, anchor_out), flat.holes()[2].clone()],
    )?;
    Ok((outer, inner))
}

/// Dual refit: outer `⟨w₀ | id | id⟩`, inner `⟨w₁|w₂|w₃⟩` in the second hole.
fn refit_nested_second(flat: &NHoleSplice) -> Result<(NHoleSplice, NHoleSplice)> {
    debug_assert_eq!(flat.hole_count(), 3);
    let w = flat.morphisms();
    let (_, b) = flat.outer();
    let anchor_in = w[1].dom();
    let inner = NHoleSplice::new(
        vec![w[1].clone(), w[2].clone(), w[3].clone()],
        vec![flat.holes()[1].clone(), flat.holes()[2].clone()],
    )?;
    let outer = NHoleSplice::new(
        vec![w[0].clone(), w[0].identity_like(&anchor_in), w[0].identity_like(&b)],
        vec![flat.holes()[0].clone(), (anchor_in, b)],
    )?;
    Ok((outer, inner))
}

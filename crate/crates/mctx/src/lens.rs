//! Monoidal lenses: incomplete morphisms with a one-sided residual.
//!
//! An n-stage lens is a chain `f₀ ⨾ (id_M₁ ⊗ ■) ⨾ f₁ ⨾ … ⨾ (id_Mₙ ⊗ ■) ⨾ fₙ`
//! with the residual always on the left. Over a symmetric theory the
//! parallel tensor of lenses is representable, which is what the session
//! pipeline uses to interleave parties stage by stage. Over the cartesian
//! theory a lens is exactly a get/put pair, and that pair is the canonical
//! form deciding equality.

use crate::context::{Context, HoleRow, SplicedElem};
use crate::error::{Error, Result};
use crate::object::ObjectList;
use crate::splice::{HoleType, NHoleSplice};
use crate::theory::{hom_probe, FinFnMorphism, Morphism, TheoryKind};

/// Polarized session objects: `Send(X)` stands for the pair `(X, I)` and
/// `Get(X)` for `(I, X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Polarized {
    Send(ObjectList),
    Get(ObjectList),
}

impl Polarized {
    /// The lens hole this polarized object denotes.
    pub fn hole(&self) -> HoleType {
        match self {
            Polarized::Send(x) => (x.clone(), ObjectList::unit()),
            Polarized::Get(x) => (ObjectList::unit(), x.clone()),
        }
    }
}

/// `morphisms.len() == stages + 1`; residuals and holes have one entry per
/// stage. Zero stages is a bare morphism.
#[derive(Clone, Debug)]
pub struct Lens {
    morphisms: Vec<Morphism>,
    residuals: Vec<ObjectList>,
    holes: Vec<HoleType>,
}

impl Lens {
    pub fn new(morphisms: Vec<Morphism>, residuals: Vec<ObjectList>, holes: Vec<HoleType>) -> Result<Self> {
        if morphisms.len() != holes.len() + 1 || residuals.len() != holes.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} morphisms and {} residuals", holes.len() + 1, holes.len()),
                found: format!("{} and {}", morphisms.len(), residuals.len()),
            });
        }
        for (k, (x, y)) in holes.iter().enumerate() {
            let want_cod = residuals[k].tensor(x);
            if morphisms[k].cod() != want_cod {
                return Err(Error::TypeMismatch { expected: want_cod, found: morphisms[k].cod() });
            }
            let want_dom = residuals[k].tensor(y);
            if morphisms[k + 1].dom() != want_dom {
                return Err(Error::TypeMismatch { expected: want_dom, found: morphisms[k + 1].dom() });
            }
        }
        Ok(Lens { morphisms, residuals, holes })
    }

    /// A bare morphism: the sequential unit of the lens algebra.
    pub fn unit(f: Morphism) -> Self {
        Lens { morphisms: vec![f], residuals: Vec::new(), holes: Vec::new() }
    }

    /// Single-stage lens `f ⨾ (id_M ⊗ ■) ⨾ g`.
    pub fn single(f: Morphism, m: ObjectList, hole: HoleType, g: Morphism) -> Result<Self> {
        Lens::new(vec![f, g], vec![m], vec![hole])
    }

    /// The identity lens `id_A ⨾ ■ ⨾ id_B` with unit residual.
    pub fn identity(kind: TheoryKind, a: &ObjectList, b: &ObjectList) -> Self {
        Lens {
            morphisms: vec![Morphism::identity_in(kind, a), Morphism::identity_in(kind, b)],
            residuals: vec![ObjectList::unit()],
            holes: vec![(a.clone(), b.clone())],
        }
    }

    pub fn stages(&self) -> usize {
        self.holes.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn residuals(&self) -> &[ObjectList] {
        &self.residuals
    }

    pub fn holes(&self) -> &[HoleType] {
        &self.holes
    }

    pub fn outer(&self) -> (ObjectList, ObjectList) {
        (self.morphisms[0].dom(), self.morphisms.last().unwrap().cod())
    }

    pub fn kind(&self) -> TheoryKind {
        self.morphisms[0].kind()
    }

    /// Componentwise equality of representatives.
    pub fn rep_equal(&self, other: &Lens) -> Result<bool> {
        if self.holes != other.holes || self.residuals != other.residuals {
            return Ok(false);
        }
        for (a, b) in self.morphisms.iter().zip(&other.morphisms) {
            if !a.equal(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closes every stage hole and returns the composite morphism.
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
            let layer = acc.identity_like(&self.residuals[k]).tensor(fill)?;
            acc = acc.compose(&layer)?.compose(&self.morphisms[k + 1])?;
        }
        Ok(acc)
    }

    /// When every residual is the unit the lens is, data for data, a spliced
    /// arrow again.
    pub fn as_splice(&self) -> Option<NHoleSplice> {
        if self.residuals.iter().any(|r| !r.is_unit()) {
            return None;
        }
        NHoleSplice::new(self.morphisms.clone(), self.holes.clone()).ok()
    }

    /// The lens as a two-sided context with unit right residuals (stage by
    /// stage). Used to cross-check against the context algebra.
    pub fn as_context(&self) -> Result<Context> {
        let rows = self
            .holes
            .iter()
            .zip(&self.residuals)
            .map(|(h, m)| HoleRow::new(vec![m.clone(), ObjectList::unit()], vec![h.clone()]))
            .collect::<Result<Vec<_>>>()?;
        Context::new(self.morphisms.clone(), rows)
    }
}

fn expect_stages(l: &Lens, n: usize) -> Result<()> {
    if l.stages() != n {
        return Err(Error::ShapeMismatch {
            expected: format!("{n}-stage lens"),
            found: format!("{}-stage lens", l.stages()),
        });
    }
    Ok(())
}

fn check_outer(found: (ObjectList, ObjectList), hole: &HoleType) -> Result<()> {
    if found.0 != hole.0 || found.1 != hole.1 {
        return Err(Error::TypeMismatch { expected: hole.0.clone(), found: found.0 });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Category and tensor structure
// ---------------------------------------------------------------------------

/// Nesting of single-stage lenses; residuals concatenate on the left.
pub fn lens_compose(outer: &Lens, inner: &Lens) -> Result<Lens> {
    expect_stages(outer, 1)?;
    expect_stages(inner, 1)?;
    check_outer(inner.outer(), &outer.holes[0])?;
    let m = &outer.residuals[0];
    let id_m = outer.morphisms[0].identity_like(m);
    let f = outer.morphisms[0].compose(&id_m.tensor(&inner.morphisms[0])?)?;
    let g = id_m.tensor(&inner.morphisms[1])?.compose(&outer.morphisms[1])?;
    Lens::single(f, m.tensor(&inner.residuals[0]), inner.holes[0].clone(), g)
}

/// Parallel tensor of single-stage lenses over a symmetric theory; the fused
/// hole is `(X ⊗ X', Y ⊗ Y')` per the representable parallel structure.
pub fn lens_tensor(l1: &Lens, l2: &Lens) -> Result<Lens> {
    expect_stages(l1, 1)?;
    expect_stages(l2, 1)?;
    let fused = lens_laxator_tensor(l1, l2)?;
    debug_assert_eq!(fused.stages(), 1);
    Ok(fused)
}

/// Stage-wise tensor of two lenses with equal stage counts: the iterated
/// laxator turning `(S₁ ◁ … ◁ Sₙ) ⊗ (T₁ ◁ … ◁ Tₙ)` into
/// `(S₁ ⊗ T₁) ◁ … ◁ (Sₙ ⊗ Tₙ)`.
pub fn lens_laxator_tensor(l1: &Lens, l2: &Lens) -> Result<Lens> {
    let kind = l1.kind();
    if !kind.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = l1.stages();
    if n != l2.stages() {
        return Err(Error::StageCount(l1.stages(), l2.stages()));
    }
    if n == 0 {
        return Ok(Lens::unit(l1.morphisms[0].tensor(&l2.morphisms[0])?));
    }
    let id = |o: &ObjectList| Morphism::identity_in(kind, o);
    let mut morphisms = Vec::with_capacity(n + 1);
    let mut residuals = Vec::with_capacity(n);
    let mut holes = Vec::with_capacity(n);
    for k in 0..=n {
        let pair = l1.morphisms[k].tensor(&l2.morphisms[k])?;
        // rearrange the joint boundary M ⊗ Y ⊗ N ⊗ Y' into (M ⊗ N) ⊗ (Y ⊗ Y')
        let step = if k == 0 {
            pair
        } else {
            let (_, y1) = &l1.holes[k - 1];
            let (_, y2) = &l2.holes[k - 1];
            let unshuffle = id(&l1.residuals[k - 1])
                .tensor(&Morphism::symmetry_in(kind, &l2.residuals[k - 1], y1)?)?
                .tensor(&id(y2))?;
            unshuffle.compose(&pair)?
        };
        // and M ⊗ X ⊗ N ⊗ X' into (M ⊗ N) ⊗ (X ⊗ X')
        let step = if k == n {
            step
        } else {
            let (x1, _) = &l1.holes[k];
            let (x2, _) = &l2.holes[k];
            let shuffle = id(&l1.residuals[k])
                .tensor(&Morphism::symmetry_in(kind, x1, &l2.residuals[k])?)?
                .tensor(&id(x2))?;
            step.compose(&shuffle)?
        };
        morphisms.push(step);
        if k < n {
            residuals.push(l1.residuals[k].tensor(&l2.residuals[k]));
            let (x1, y1) = &l1.holes[k];
            let (x2, y2) = &l2.holes[k];
            holes.push((x1.tensor(x2), y1.tensor(y2)));
        }
    }
    Lens::new(morphisms, residuals, holes)
}

/// Symmetry of the representable tensor: swap the declared cut of a fused
/// single-stage hole. An involution.
pub fn lens_sigma(l: &Lens, cut: (&HoleType, &HoleType)) -> Result<Lens> {
    expect_stages(l, 1)?;
    let kind = l.kind();
    let (h1, h2) = cut;
    let fused = (h1.0.tensor(&h2.0), h1.1.tensor(&h2.1));
    if fused != l.holes[0] {
        return Err(Error::TypeMismatch { expected: fused.0, found: l.holes[0].0.clone() });
    }
    let m = &l.residuals[0];
    let id_m = Morphism::identity_in(kind, m);
    let f = l.morphisms[0].compose(&id_m.tensor(&Morphism::symmetry_in(kind, &h1.0, &h2.0)?)?)?;
    let g = id_m
        .tensor(&Morphism::symmetry_in(kind, &h2.1, &h1.1)?)?
        .compose(&l.morphisms[1])?;
    Lens::single(f, m.clone(), (h2.0.tensor(&h1.0), h2.1.tensor(&h1.1)), g)
}

// ---------------------------------------------------------------------------
// Sequential actions, associators, unitors
// ---------------------------------------------------------------------------

/// Nest a lens into stage `index` (1-based) of another. With a single-stage
/// inner lens this is the action `≺ᵢ`; with a two-stage inner it is the
/// associator; with a bare morphism it is the unitor closing that stage.
pub fn lens_nest(outer: &Lens, index: usize, inner: &Lens) -> Result<Lens> {
    if index == 0 || index > outer.stages() {
        return Err(Error::HoleIndex { index, holes: outer.stages() });
    }
    let k = index - 1;
    check_outer(inner.outer(), &outer.holes[k])?;
    let m = &outer.residuals[k];
    let id_m = outer.morphisms[0].identity_like(m);
    let padded: Vec<Morphism> = inner
        .morphisms
        .iter()
        .map(|im| id_m.tensor(im))
        .collect::<Result<_>>()?;

    let mut morphisms: Vec<Morphism> = outer.morphisms[..k].to_vec();
    if inner.stages() == 0 {
        let fused =
            Morphism::compose_all(&[&outer.morphisms[k], &padded[0], &outer.morphisms[k + 1]])?;
        morphisms.push(fused);
    } else {
        morphisms.push(outer.morphisms[k].compose(&padded[0])?);
        morphisms.extend(padded[1..padded.len() - 1].iter().cloned());
        morphisms.push(padded.last().unwrap().compose(&outer.morphisms[k + 1])?);
    }
    morphisms.extend(outer.morphisms[k + 2..].iter().cloned());

    let mut residuals = outer.residuals.clone();
    let mut holes = outer.holes.clone();
    let inner_res: Vec<ObjectList> = inner.residuals.iter().map(|r| m.tensor(r)).collect();
    residuals.splice(k..k + 1, inner_res);
    holes.splice(k..k + 1, inner.holes.iter().cloned());
    Lens::new(morphisms, residuals, holes)
}

/// First action `≺₁` of a single-stage lens on a two-stage one.
pub fn lens_action_1(s: &Lens, c: &Lens) -> Result<Lens> {
    expect_stages(s, 2)?;
    expect_stages(c, 1)?;
    lens_nest(s, 1, c)
}

/// Second action `≺₂`.
pub fn lens_action_2(s: &Lens, c: &Lens) -> Result<Lens> {
    expect_stages(s, 2)?;
    expect_stages(c, 1)?;
    lens_nest(s, 2, c)
}

/// Sequential associator, inner split into the first stage:
/// `f₀ ⨾ (id_M ⊗ g₀) ⨾ (id_{M⊗P} ⊗ ■) ⨾ (id_M ⊗ g₁) ⨾ (id_{M⊗Q} ⊗ ■) ⨾ (id_M ⊗ g₂) ⨾ f₁ ⨾ (id_N ⊗ ■) ⨾ f₂`.
pub fn lens_assoc_1(s: &Lens, t: &Lens) -> Result<Lens> {
    expect_stages(s, 2)?;
    expect_stages(t, 2)?;
    lens_nest(s, 1, t)
}

/// Sequential associator, inner split into the second stage.
pub fn lens_assoc_2(s: &Lens, t: &Lens) -> Result<Lens> {
    expect_stages(s, 2)?;
    expect_stages(t, 2)?;
    lens_nest(s, 2, t)
}

/// Left unitor: `f₀ ⨾ (id_M ⊗ u) ⨾ f₁ ⨾ (id_N ⊗ ■) ⨾ f₂`.
pub fn lens_unitor_left(s: &Lens, u: &Morphism) -> Result<Lens> {
    expect_stages(s, 2)?;
    lens_nest(s, 1, &Lens::unit(u.clone()))
}

/// Right unitor: `f₀ ⨾ (id_M ⊗ ■) ⨾ f₁ ⨾ (id_N ⊗ u) ⨾ f₂`.
pub fn lens_unitor_right(s: &Lens, u: &Morphism) -> Result<Lens> {
    expect_stages(s, 2)?;
    lens_nest(s, 2, &Lens::unit(u.clone()))
}

// ---------------------------------------------------------------------------
// Send / Get functors
// ---------------------------------------------------------------------------

/// `Send f = (f ⨾ ■ ⨾ id_I)`: a lens from `(A, I)` to `(B, I)`.
pub fn send(f: &Morphism) -> Lens {
    let id_i = f.identity_like(&ObjectList::unit());
    Lens {
        morphisms: vec![f.clone(), id_i],
        residuals: vec![ObjectList::unit()],
        holes: vec![(f.cod(), ObjectList::unit())],
    }
}

/// `Get g = (id_I ⨾ ■ ⨾ g)` for `g : B → A`: a lens from `(I, A)` to `(I, B)`.
pub fn get(g: &Morphism) -> Lens {
    let id_i = g.identity_like(&ObjectList::unit());
    Lens {
        morphisms: vec![id_i, g.clone()],
        residuals: vec![ObjectList::unit()],
        holes: vec![(ObjectList::unit(), g.dom())],
    }
}

// ---------------------------------------------------------------------------
// Symmetric normalization
// ---------------------------------------------------------------------------

/// The one-sided coend reduction from spliced monoidal arrows onto lenses:
/// spliced arrows pick up unit residuals, parallel splits fuse their hole
/// through representability, parallel units fuse to a plain morphism.
pub fn sym_normalize(e: &SplicedElem) -> Result<Lens> {
    let i = ObjectList::unit();
    match e {
        SplicedElem::Seq(s) => {
            Lens::new(s.morphisms().to_vec(), vec![i; s.hole_count()], s.holes().to_vec())
        }
        SplicedElem::Par(p) => Lens::single(
            p.f.clone(),
            i,
            (p.left_hole.0.tensor(&p.right_hole.0), p.left_hole.1.tensor(&p.right_hole.1)),
            p.g.clone(),
        ),
        SplicedElem::ParUnit(u) => Ok(Lens::unit(crate::duosplice::phi0(u)?)),
    }
}

// ---------------------------------------------------------------------------
// Cartesian canonical forms
// ---------------------------------------------------------------------------

/// A lens over the cartesian theory in get/put form.
#[derive(Clone, Debug)]
pub struct CartesianLens {
    pub get: Morphism,
    pub put: Morphism,
}

impl CartesianLens {
    pub fn equal(&self, other: &CartesianLens) -> Result<bool> {
        Ok(self.get.equal(&other.get)? && self.put.equal(&other.put)?)
    }
}

/// Yoneda-reduction witness of the cartesian form: `get = f ⨾ π_X` and
/// `put = ((f ⨾ π_M) ⊗ id_Y) ⨾ g`.
pub fn to_getput(l: &Lens) -> Result<CartesianLens> {
    expect_stages(l, 1)?;
    if !l.kind().is_cartesian() {
        return Err(Error::NotCartesian("to_getput needs the finite-function theory"));
    }
    let m = &l.residuals[0];
    let (x, y) = &l.holes[0];
    let f = l.morphisms[0].as_finfn()?;
    let g = &l.morphisms[1];
    let unit = ObjectList::unit();
    let get = Morphism::FinFn(f.compose(&FinFnMorphism::project(m, x, &unit))?);
    let keep_m = Morphism::FinFn(f.compose(&FinFnMorphism::project(&unit, m, x))?);
    let put = keep_m.tensor(&g.identity_like(y))?.compose(g)?;
    Ok(CartesianLens { get, put })
}

/// The section of [`to_getput`]: residual `M = A`, source `copy` then `get`
/// on one branch, target the `put` itself.
pub fn from_getput(c: &CartesianLens) -> Result<Lens> {
    let a = c.get.dom();
    let x = c.get.cod();
    let put_dom = c.put.dom();
    let y = put_dom
        .strip_prefix(&a)
        .ok_or_else(|| Error::TypeMismatch { expected: a.clone(), found: put_dom.clone() })?;
    let copy = Morphism::FinFn(FinFnMorphism::copy(&a));
    let f = copy.compose(&c.get.identity_like(&a).tensor(&c.get)?)?;
    Lens::single(f, a, (x, y), c.put.clone())
}

/// Canonical chain of an n-stage cartesian lens: morphisms
/// `A → X₁`, `A ⊗ Y₁ → X₂`, …, `A ⊗ Y₁ ⊗ … ⊗ Yₙ → B`. Two lenses are
/// dinaturally equal over finite functions iff their chains agree.
pub fn cartesian_chain(l: &Lens) -> Result<Vec<Morphism>> {
    if !l.kind().is_cartesian() {
        return Err(Error::NotCartesian("canonical chains need the finite-function theory"));
    }
    let n = l.stages();
    if n == 0 {
        return Ok(vec![l.morphisms[0].clone()]);
    }
    let unit = ObjectList::unit();
    let mut chain = Vec::with_capacity(n + 1);
    let f0 = l.morphisms[0].as_finfn()?;
    let (x1, _) = &l.holes[0];
    chain.push(Morphism::FinFn(f0.compose(&FinFnMorphism::project(&l.residuals[0], x1, &unit))?));
    // mem : A ⊗ Y₁ ⊗ … ⊗ Y_{k-1} → M_k, the accumulated residual map
    let mut mem = Morphism::FinFn(f0.compose(&FinFnMorphism::project(&unit, &l.residuals[0], x1))?);
    for k in 1..=n {
        let (_, yk) = &l.holes[k - 1];
        let step = mem.tensor(&mem.identity_like(yk))?.compose(&l.morphisms[k])?;
        if k == n {
            chain.push(step);
        } else {
            let (xk1, _) = &l.holes[k];
            let sf = step.as_finfn()?;
            chain.push(Morphism::FinFn(
                sf.compose(&FinFnMorphism::project(&l.residuals[k], xk1, &unit))?,
            ));
            mem = Morphism::FinFn(sf.compose(&FinFnMorphism::project(&unit, &l.residuals[k], xk1))?);
        }
    }
    Ok(chain)
}

// ---------------------------------------------------------------------------
// Equality
// ---------------------------------------------------------------------------

/// Cap on the number of probing-fill combinations for stochastic lenses.
pub const PROBE_COMBO_LIMIT: usize = 1 << 16;

/// Sound observational comparison: closes every stage with every combination
/// of probing morphisms and compares composites.
pub fn probe_fill_equal(l1: &Lens, l2: &Lens) -> Result<bool> {
    if l1.outer() != l2.outer() || l1.holes != l2.holes {
        return Ok(false);
    }
    let kind = l1.kind();
    let probes: Vec<Vec<Morphism>> = l1
        .holes
        .iter()
        .map(|(x, y)| hom_probe(kind, x, y, PROBE_COMBO_LIMIT))
        .collect::<Result<_>>()?;
    let total: usize = probes.iter().map(|p| p.len()).product();
    if total > PROBE_COMBO_LIMIT {
        return Err(Error::NotEnumerable(format!(
            "{total} probing combinations exceed the limit {PROBE_COMBO_LIMIT}"
        )));
    }
    if probes.is_empty() {
        return l1.morphisms[0].equal(&l2.morphisms[0]);
    }
    let mut index = vec![0usize; probes.len()];
    loop {
        let fills: Vec<&Morphism> = index.iter().zip(&probes).map(|(&i, p)| &p[i]).collect();
        if !l1.fill_all(&fills)?.equal(&l2.fill_all(&fills)?)? {
            return Ok(false);
        }
        let mut k = probes.len();
        loop {
            if k == 0 {
                return Ok(true);
            }
            k -= 1;
            index[k] += 1;
            if index[k] < probes[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

/// A witness that two lenses differ: the stage fills that separate them.
pub fn probe_separating_fills(l1: &Lens, l2: &Lens) -> Result<Option<Vec<Morphism>>> {
    if l1.outer() != l2.outer() || l1.holes != l2.holes {
        return Err(Error::ShapeMismatch {
            expected: "lenses with equal boundary and holes".into(),
            found: "mismatched boundaries".into(),
        });
    }
    let kind = l1.kind();
    let probes: Vec<Vec<Morphism>> = l1
        .holes
        .iter()
        .map(|(x, y)| hom_probe(kind, x, y, PROBE_COMBO_LIMIT))
        .collect::<Result<_>>()?;
    if probes.is_empty() {
        return Ok(None);
    }
    let mut index = vec![0usize; probes.len()];
    loop {
        let fills: Vec<&Morphism> = index.iter().zip(&probes).map(|(&i, p)| &p[i]).collect();
        if !l1.fill_all(&fills)?.equal(&l2.fill_all(&fills)?)? {
            return Ok(Some(fills.into_iter().cloned().collect()));
        }
        let mut k = probes.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            index[k] += 1;
            if index[k] < probes[k].len() {
                break;
            }
            index[k] = 0;
        }
    }
}

/// The artifact's official lens equality: canonical chains over finite
/// functions (complete for the dinaturality quotient), probing fills over
/// finite stochastic maps (sound).
pub fn lens_equal(l1: &Lens, l2: &Lens) -> Result<bool> {
    if l1.outer() != l2.outer() || l1.holes != l2.holes {
        return Ok(false);
    }
    match l1.kind() {
        TheoryKind::FinFn => {
            let c1 = cartesian_chain(l1)?;
            let c2 = cartesian_chain(l2)?;
            for (a, b) in c1.iter().zip(&c2) {
                if !a.equal(b)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        TheoryKind::FinStoch => probe_fill_equal(l1, l2),
        TheoryKind::Free { .. } => Err(Error::NotEnumerable(
            "lens equality over the free theory needs an interpretation".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// Mixed-polarity isomorphisms
// ---------------------------------------------------------------------------

/// Fuses two polarized stages of a lens into one, realizing the definitional
/// isomorphisms `!A ◁ !B ≅ !A ⊗ !B`, `?A ◁ ?B ≅ ?A ⊗ ?B` and
/// `!A ◁ ?B ≅ !A ⊗ ?B`. The causal order `?A ◁ !B` admits no such fusion
/// and is rejected.
pub fn merge_polarized(l: &Lens) -> Result<Lens> {
    expect_stages(l, 2)?;
    let kind = l.kind();
    let (x1, y1) = l.holes[0].clone();
    let (x2, y2) = l.holes[1].clone();
    let (m2, f2) = (l.residuals[1].clone(), l.morphisms[2].clone());
    let id = |o: &ObjectList| Morphism::identity_in(kind, o);
    if y1.is_unit() && x2.is_unit() {
        // send then get: the middle step acts on the residual alone
        let f = l.morphisms[0].compose(&l.morphisms[1].tensor(&id(&x1))?)?;
        return Lens::single(f, m2, (x1, y2), f2);
    }
    if y1.is_unit() && y2.is_unit() {
        // send then send: gather both sends, reordering past the residual
        let f = l.morphisms[0]
            .compose(&l.morphisms[1].tensor(&id(&x1))?)?
            .compose(&id(&m2).tensor(&Morphism::symmetry_in(kind, &x2, &x1)?)?)?;
        return Lens::single(f, m2, (x1.tensor(&x2), ObjectList::unit()), f2);
    }
    if x1.is_unit() && x2.is_unit() {
        // get then get: receive both at once, feed them through in order
        let g = l.morphisms[1].tensor(&id(&y2))?.compose(&f2)?;
        return Lens::single(l.morphisms[0].clone(), l.residuals[0].clone(), (ObjectList::unit(), y1.tensor(&y2)), g);
    }
    Err(Error::ShapeMismatch {
        expected: "stages polarized as send◁get, send◁send or get◁get".into(),
        found: format!("holes ({x1}, {y1}) and ({x2}, {y2})"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::enumerate_finfn_hom;

    fn two() -> ObjectList {
        ObjectList::of(&[("B", 2)])
    }

    fn t(dom: &ObjectList, cod: &ObjectList, tab: Vec<usize>) -> Morphism {
        Morphism::FinFn(FinFnMorphism::new(dom.clone(), cod.clone(), tab).unwrap())
    }

    #[test]
    fn identity_lens_is_a_two_sided_unit() {
        let b = two();
        let b2 = b.tensor(&b);
        let l = Lens::single(
            t(&b, &b2, vec![0, 3]),
            b.clone(),
            (b.clone(), b.clone()),
            t(&b2, &b, vec![0, 0, 0, 1]),
        )
        .unwrap();
        let idl = Lens::identity(TheoryKind::FinFn, &b, &b);
        let left = lens_compose(&lens_identity_on(&l), &l).unwrap();
        assert!(left.rep_equal(&l).unwrap());
        let right = lens_compose(&l, &idl).unwrap();
        assert!(right.rep_equal(&l).unwrap());
    }

    fn lens_identity_on(l: &Lens) -> Lens {
        let (a, b) = l.outer();
        Lens::identity(l.kind(), &a, &b)
    }

    #[test]
    fn send_is_functorial() {
        let b = two();
        let f = t(&b, &b, vec![1, 0]);
        let g = t(&b, &b, vec![0, 0]);
        let fg = f.compose(&g).unwrap();
        let lhs = send(&fg);
        let rhs = lens_compose(&send(&f), &send(&g)).unwrap();
        assert!(lens_equal(&lhs, &rhs).unwrap());
        // send of identity is the context-identity-shaped lens on (A, I)
        let id_b = Morphism::identity_in(TheoryKind::FinFn, &b);
        let sid = send(&id_b);
        assert_eq!(sid.outer(), (b.clone(), ObjectList::unit()));
        assert!(sid.residuals()[0].is_unit());
    }

    #[test]
    fn get_is_contravariantly_functorial() {
        let b = two();
        let f = t(&b, &b, vec![1, 1]);
        let g = t(&b, &b, vec![1, 0]);
        let fg = f.compose(&g).unwrap();
        let lhs = get(&fg);
        let rhs = lens_compose(&get(&g), &get(&f)).unwrap();
        assert!(lens_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn tensor_fill_oracle() {
        let b = two();
        let b2 = b.tensor(&b);
        let l1 = Lens::single(
            t(&b, &b2, vec![1, 2]),
            b.clone(),
            (b.clone(), b.clone()),
            t(&b2, &b, vec![0, 1, 1, 0]),
        )
        .unwrap();
        let l2 = Lens::single(
            t(&b, &b2, vec![3, 0]),
            b.clone(),
            (b.clone(), b.clone()),
            t(&b2, &b, vec![1, 1, 0, 0]),
        )
        .unwrap();
        let fused = lens_tensor(&l1, &l2).unwrap();
        assert_eq!(fused.holes()[0], (b2.clone(), b2.clone()));
        let homs = enumerate_finfn_hom(&b, &b, 1 << 10).unwrap();
        for h in &homs {
            for k in &homs {
                let h = Morphism::FinFn(h.clone());
                let k = Morphism::FinFn(k.clone());
                let joint = h.tensor(&k).unwrap();
                let via_fused = fused.fill_all(&[&joint]).unwrap();
                let separately = l1.fill_all(&[&h]).unwrap().tensor(&l2.fill_all(&[&k]).unwrap()).unwrap();
                assert!(via_fused.equal(&separately).unwrap());
            }
        }
    }

    #[test]
    fn sigma_is_an_involution() {
        let b = two();
        let b2 = b.tensor(&b);
        let l = Lens::single(
            t(&b, &b2, vec![1, 2]),
            ObjectList::unit(),
            (b2.clone(), b2.clone()),
            t(&b2, &b, vec![0, 1, 1, 0]),
        )
        .unwrap();
        let h1 = (b.clone(), b.clone());
        let h2 = (b.clone(), b.clone());
        let once = lens_sigma(&l, (&h1, &h2)).unwrap();
        let twice = lens_sigma(&once, (&h2, &h1)).unwrap();
        assert!(lens_equal(&twice, &l).unwrap());
    }

    #[test]
    fn getput_roundtrip_is_fill_equal() {
        let b = two();
        let b2 = b.tensor(&b);
        let l = Lens::single(
            t(&b, &b2, vec![1, 2]),
            b.clone(),
            (b.clone(), b.clone()),
            t(&b2, &b, vec![0, 1, 1, 0]),
        )
        .unwrap();
        let gp = to_getput(&l).unwrap();
        let back = from_getput(&gp).unwrap();
        assert!(lens_equal(&l, &back).unwrap());
        // to_getput of the identity lens: get is the identity and put projects
        // out the fresh value
        let idl = Lens::identity(TheoryKind::FinFn, &b, &b);
        let gp = to_getput(&idl).unwrap();
        assert!(gp.get.equal(&Morphism::identity_in(TheoryKind::FinFn, &b)).unwrap());
        let proj2 = Morphism::FinFn(FinFnMorphism::project(&b, &b, &ObjectList::unit()));
        assert!(gp.put.equal(&proj2).unwrap());
    }

    #[test]
    fn sym_normalize_is_idempotent_on_its_image() {
        let b = two();
        let s = NHoleSplice::one(t(&b, &b, vec![1, 0]), t(&b, &b, vec![0, 0])).unwrap();
        let l1 = sym_normalize(&SplicedElem::Seq(s)).unwrap();
        let l2 = sym_normalize(&SplicedElem::Seq(l1.as_splice().unwrap())).unwrap();
        assert!(l1.rep_equal(&l2).unwrap());
    }

    #[test]
    fn merge_polarized_send_get_preserves_fills() {
        let b = two();
        // send B then get B with residual memory B
        let l = Lens::new(
            vec![
                t(&b, &b.tensor(&b), vec![1, 2]), // A → M ⊗ X₁
                t(&b, &b, vec![1, 0]),            // M → M' (middle, residual only)
                t(&b.tensor(&b), &b, vec![0, 1, 1, 0]), // M' ⊗ Y₂ → B
            ],
            vec![b.clone(), b.clone()],
            vec![(b.clone(), ObjectList::unit()), (ObjectList::unit(), b.clone())],
        )
        .unwrap();
        let merged = merge_polarized(&l).unwrap();
        assert_eq!(merged.holes()[0], (b.clone(), b.clone()));
        // u : X₁ → I is unique; v ranges over I → Y₂
        let u = t(&b, &ObjectList::unit(), vec![0, 0]);
        for point in 0..2 {
            let v = t(&ObjectList::unit(), &b, vec![point]);
            let two_stage = l.fill_all(&[&u, &v]).unwrap();
            let one_stage = merged.fill_all(&[&u.compose(&v).unwrap()]).unwrap();
            assert!(two_stage.equal(&one_stage).unwrap());
        }
    }

    #[test]
    fn merge_polarized_rejects_get_then_send() {
        let b = two();
        let l = Lens::new(
            vec![
                t(&b, &b, vec![0, 1]),                  // A → M (get stage: X₁ = I)
                t(&b.tensor(&b), &b.tensor(&b), vec![0, 1, 2, 3]), // M ⊗ Y₁ → M' ⊗ X₂
                t(&b, &b, vec![0, 1]),                  // M' → B (send stage: Y₂ = I)
            ],
            vec![b.clone(), b.clone()],
            vec![(ObjectList::unit(), b.clone()), (b.clone(), ObjectList::unit())],
        )
        .unwrap();
        assert!(merge_polarized(&l).is_err());
    }

    #[test]
    fn laxator_tensor_on_polarized_stages() {
        let b = two();
        // a 2-stage send◁get lens and its mirrored get◁send partner
        let p = Lens::new(
            vec![
                t(&b, &b.tensor(&b), vec![1, 2]),
                t(&b, &b, vec![0, 1]),
                t(&b.tensor(&b), &b, vec![0, 1, 1, 0]),
            ],
            vec![b.clone(), b.clone()],
            vec![(b.clone(), ObjectList::unit()), (ObjectList::unit(), b.clone())],
        )
        .unwrap();
        let q = Lens::new(
            vec![
                t(&b, &b, vec![1, 0]),
                t(&b.tensor(&b), &b.tensor(&b), vec![3, 1, 2, 0]),
                t(&b, &b, vec![0, 1]),
            ],
            vec![b.clone(), b.clone()],
            vec![(ObjectList::unit(), b.clone()), (b.clone(), ObjectList::unit())],
        )
        .unwrap();
        let joint = lens_laxator_tensor(&p, &q).unwrap();
        assert_eq!(joint.stages(), 2);
        // each fused stage has a (B, B)-shaped hole
        assert_eq!(joint.holes()[0], (b.clone(), b.clone()));
        assert_eq!(joint.holes()[1], (b.clone(), b.clone()));
        // fill-oracle against manual flat wiring with identity channels
        let id_b = Morphism::identity_in(TheoryKind::FinFn, &b);
        let composite = joint.fill_all(&[&id_b, &id_b]).unwrap();
        assert_eq!(composite.dom(), b.tensor(&b));
        assert_eq!(composite.cod(), b.tensor(&b));
    }
}

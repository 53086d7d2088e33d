//! Monoidal contexts: incomplete morphisms with two-sided residuals.
//!
//! A context is an alternating word of morphisms and *hole rows*; a hole row
//! interleaves residual objects with typed holes, so a single-hole context is
//! `f ⨾ (id_M ⊗ ■ ⊗ id_N) ⨾ g` and a parallel split packs two holes into one
//! row. Values are representatives of dinaturality classes; equality is the
//! separate decision operation [`fill_equal`].

use crate::duosplice::{ParSplit, ParUnit};
use crate::error::{Error, Result};
use crate::object::ObjectList;
use crate::splice::{HoleType, NHoleSplice};
use crate::theory::{hom_probe, FinFnMorphism, Morphism, TheoryKind};

/// One layer of holes: `residuals[0] ⊗ ■ ⊗ residuals[1] ⊗ … ⊗ ■ ⊗ residuals[m]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HoleRow {
    pub residuals: Vec<ObjectList>,
    pub holes: Vec<HoleType>,
}

impl HoleRow {
    pub fn new(residuals: Vec<ObjectList>, holes: Vec<HoleType>) -> Result<Self> {
        if residuals.len() != holes.len() + 1 {
            return Err(Error::ShapeMismatch {
                expected: format!("{} residuals", holes.len() + 1),
                found: format!("{}", residuals.len()),
            });
        }
        Ok(HoleRow { residuals, holes })
    }

    /// The boundary on the hole-entry side (using the `X` components).
    fn upper_boundary(&self) -> ObjectList {
        self.boundary(|h| &h.0)
    }

    /// The boundary on the hole-exit side (using the `Y` components).
    fn lower_boundary(&self) -> ObjectList {
        self.boundary(|h| &h.1)
    }

    fn boundary(&self, pick: impl Fn(&HoleType) -> &ObjectList) -> ObjectList {
        let mut parts: Vec<&ObjectList> = vec![&self.residuals[0]];
        for (k, h) in self.holes.iter().enumerate() {
            parts.push(pick(h));
            parts.push(&self.residuals[k + 1]);
        }
        ObjectList::tensor_all(&parts)
    }

    /// `id_{R₀} ⊗ h₁ ⊗ id_{R₁} ⊗ … ⊗ hₘ ⊗ id_{Rₘ}` for given hole fills.
    fn fill_morphism(&self, like: &Morphism, fills: &[&Morphism]) -> Result<Morphism> {
        debug_assert_eq!(fills.len(), self.holes.len());
        let mut acc = like.identity_like(&self.residuals[0]);
        for (k, fill) in fills.iter().enumerate() {
            let (x, y) = &self.holes[k];
            if &fill.dom() != x || &fill.cod() != y {
                return Err(Error::TypeMismatch { expected: x.clone(), found: fill.dom() });
            }
            acc = acc.tensor(fill)?.tensor(&like.identity_like(&self.residuals[k + 1]))?;
        }
        Ok(acc)
    }
}

/// `morphisms.len() == rows.len() + 1`. Zero rows is a plain morphism (the
/// sequential unit); the usual shapes are one row of one hole (a context),
/// two rows of one hole (a sequential split) and one row of two holes (a
/// parallel split).
#[derive(Clone, Debug)]
pub struct Context {
    morphisms: Vec<Morphism>,
    rows: Vec<HoleRow>,
}

impl Context {
    pub fn new(morphisms: Vec<Morphism>, rows: Vec<HoleRow>) -> Result<Self> {
        if morphisms.len() != rows.len() + 1 {
            return Err(Error::ShapeMismatch {
                expected: format!("{} morphisms", rows.len() + 1),
                found: format!("{}", morphisms.len()),
            });
        }
        for (k, row) in rows.iter().enumerate() {
            let upper = row.upper_boundary();
            if morphisms[k].cod() != upper {
                return Err(Error::TypeMismatch { expected: upper, found: morphisms[k].cod() });
            }
            let lower = row.lower_boundary();
            if morphisms[k + 1].dom() != lower {
                return Err(Error::TypeMismatch { expected: lower, found: morphisms[k + 1].dom() });
            }
        }
        Ok(Context { morphisms, rows })
    }

    /// A plain morphism seen as the unit-shaped context. There is only one
    /// unit shape: the sequential and parallel units coincide here, which is
    /// what makes the algebra normal.
    pub fn unit(f: Morphism) -> Self {
        Context { morphisms: vec![f], rows: Vec::new() }
    }

    /// Single-hole context `f ⨾ (id_M ⊗ ■ ⊗ id_N) ⨾ g`.
    pub fn single(f: Morphism, m: ObjectList, hole: HoleType, n: ObjectList, g: Morphism) -> Result<Self> {
        Context::new(vec![f, g], vec![HoleRow::new(vec![m, n], vec![hole])?])
    }

    /// Sequential split `f ⨾ (id_M ⊗ ■ ⊗ id_N) ⨾ g ⨾ (id_K ⊗ ■ ⊗ id_L) ⨾ h`.
    #[allow(clippy::too_many_arguments)]
    pub fn seq_split(
        f: Morphism,
        m: ObjectList,
        hole1: HoleType,
        n: ObjectList,
        g: Morphism,
        k: ObjectList,
        hole2: HoleType,
        l: ObjectList,
        h: Morphism,
    ) -> Result<Self> {
        Context::new(
            vec![f, g, h],
            vec![HoleRow::new(vec![m, n], vec![hole1])?, HoleRow::new(vec![k, l], vec![hole2])?],
        )
    }

    /// Parallel split `f ⨾ (id_M ⊗ ■ ⊗ id_N ⊗ ■ ⊗ id_O) ⨾ g`.
    pub fn par_split(
        f: Morphism,
        m: ObjectList,
        hole1: HoleType,
        n: ObjectList,
        hole2: HoleType,
        o: ObjectList,
        g: Morphism,
    ) -> Result<Self> {
        Context::new(vec![f, g], vec![HoleRow::new(vec![m, n, o], vec![hole1, hole2])?])
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn rows(&self) -> &[HoleRow] {
        &self.rows
    }

    pub fn outer(&self) -> (ObjectList, ObjectList) {
        (self.morphisms[0].dom(), self.morphisms.last().unwrap().cod())
    }

    /// Row sizes, e.g. `[1, 1]` for a sequential split, `[2]` for a parallel one.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.holes.len()).collect()
    }

    /// All hole types in reading order.
    pub fn holes(&self) -> Vec<HoleType> {
        self.rows.iter().flat_map(|r| r.holes.iter().cloned()).collect()
    }

    fn expect_shape(&self, shape: &[usize]) -> Result<()> {
        if self.shape() != shape {
            return Err(Error::ShapeMismatch {
                expected: format!("{:?}", shape),
                found: format!("{:?}", self.shape()),
            });
        }
        Ok(())
    }

    /// Componentwise equality of representatives (stricter than [`fill_equal`]).
    pub fn rep_equal(&self, other: &Context) -> Result<bool> {
        if self.rows != other.rows || self.morphisms.len() != other.morphisms.len() {
            return Ok(false);
        }
        for (a, b) in self.morphisms.iter().zip(&other.morphisms) {
            if !a.equal(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closes every hole (reading order) and returns the composite morphism.
    pub fn fill_all(&self, fills: &[&Morphism]) -> Result<Morphism> {
        let want: usize = self.rows.iter().map(|r| r.holes.len()).sum();
        if fills.len() != want {
            return Err(Error::ShapeMismatch {
                expected: format!("{want} hole fills"),
                found: format!("{}", fills.len()),
            });
        }
        let mut acc = self.morphisms[0].clone();
        let mut offset = 0;
        for (k, row) in self.rows.iter().enumerate() {
            let row_fills = &fills[offset..offset + row.holes.len()];
            offset += row.holes.len();
            let layer = row.fill_morphism(&acc, row_fills)?;
            acc = acc.compose(&layer)?.compose(&self.morphisms[k + 1])?;
        }
        Ok(acc)
    }

    /// When every residual is the unit, the context is (data for data) a
    /// spliced arrow again.
    pub fn as_splice(&self) -> Option<NHoleSplice> {
        if self.rows.iter().any(|r| r.residuals.iter().any(|x| !x.is_unit()) || r.holes.len() != 1) {
            return None;
        }
        let holes = self.rows.iter().map(|r| r.holes[0].clone()).collect();
        NHoleSplice::new(self.morphisms.clone(), holes).ok()
    }
}

// ---------------------------------------------------------------------------
// Identity, composition, fill
// ---------------------------------------------------------------------------

/// `id_A ⨾ ■ ⨾ id_B` with both residuals the unit.
pub fn ctx_identity(kind: TheoryKind, a: &ObjectList, b: &ObjectList) -> Context {
    let f = Morphism::identity_in(kind, a);
    let g = Morphism::identity_in(kind, b);
    Context::single(f, ObjectList::unit(), (a.clone(), b.clone()), ObjectList::unit(), g)
        .expect("identity context is well typed")
}

/// Nesting of single-hole contexts; residuals concatenate as `(M ⊗ M', N' ⊗ N)`.
pub fn ctx_compose(outer: &Context, inner: &Context) -> Result<Context> {
    outer.expect_shape(&[1])?;
    inner.expect_shape(&[1])?;
    let row = &outer.rows[0];
    let (m, n) = (&row.residuals[0], &row.residuals[1]);
    let hole = &row.holes[0];
    let (a2, b2) = inner.outer();
    if a2 != hole.0 || b2 != hole.1 {
        return Err(Error::TypeMismatch { expected: hole.0.clone(), found: a2 });
    }
    let irow = &inner.rows[0];
    let (m2, n2) = (&irow.residuals[0], &irow.residuals[1]);
    let like = &outer.morphisms[0];
    let f = outer.morphisms[0].compose(&sandwich(like, m, &inner.morphisms[0], n)?)?;
    let g = sandwich(like, m, &inner.morphisms[1], n)?.compose(&outer.morphisms[1])?;
    Context::single(f, m.tensor(m2), irow.holes[0].clone(), n2.tensor(n), g)
}

/// `id_M ⊗ h ⊗ id_N`.
fn sandwich(like: &Morphism, m: &ObjectList, h: &Morphism, n: &ObjectList) -> Result<Morphism> {
    like.identity_like(m).tensor(h)?.tensor(&like.identity_like(n))
}

/// Closing the single hole with a morphism: `f ⨾ (id_M ⊗ h ⊗ id_N) ⨾ g`.
pub fn fill(c: &Context, h: &Morphism) -> Result<Morphism> {
    c.expect_shape(&[1])?;
    c.fill_all(&[h])
}

/// The unit action `c ≺ h`, another name for [`fill`].
pub fn unit_action(c: &Context, h: &Morphism) -> Result<Morphism> {
    fill(c, h)
}

// ---------------------------------------------------------------------------
// Sequential action algebra
// ---------------------------------------------------------------------------

type SeqParts<'a> = (
    &'a Morphism,
    &'a ObjectList,
    &'a HoleType,
    &'a ObjectList,
    &'a Morphism,
    &'a ObjectList,
    &'a HoleType,
    &'a ObjectList,
    &'a Morphism,
);

fn seq_parts(s: &Context) -> SeqParts<'_> {
    (
        &s.morphisms[0],
        &s.rows[0].residuals[0],
        &s.rows[0].holes[0],
        &s.rows[0].residuals[1],
        &s.morphisms[1],
        &s.rows[1].residuals[0],
        &s.rows[1].holes[0],
        &s.rows[1].residuals[1],
        &s.morphisms[2],
    )
}

fn single_parts(c: &Context) -> (&Morphism, &ObjectList, &HoleType, &ObjectList, &Morphism) {
    (&c.morphisms[0], &c.rows[0].residuals[0], &c.rows[0].holes[0], &c.rows[0].residuals[1], &c.morphisms[1])
}

fn check_outer(found: (ObjectList, ObjectList), hole: &HoleType) -> Result<()> {
    if found.0 != hole.0 || found.1 != hole.1 {
        return Err(Error::TypeMismatch { expected: hole.0.clone(), found: found.0 });
    }
    Ok(())
}

/// Nest a single-hole context into the first gap of a sequential split.
pub fn seq_action_1(s: &Context, c: &Context) -> Result<Context> {
    s.expect_shape(&[1, 1])?;
    c.expect_shape(&[1])?;
    let (f, m, hole1, n, g, k, hole2, l, h) = seq_parts(s);
    check_outer(c.outer(), hole1)?;
    let (u, p, chole, q, v) = single_parts(c);
    let like = f;
    let f2 = f.compose(&sandwich(like, m, u, n)?)?;
    let g2 = sandwich(like, m, v, n)?.compose(g)?;
    Context::seq_split(
        f2,
        m.tensor(p),
        chole.clone(),
        q.tensor(n),
        g2,
        k.clone(),
        hole2.clone(),
        l.clone(),
        h.clone(),
    )
}

/// Nest a single-hole context into the second gap of a sequential split.
pub fn seq_action_2(s: &Context, c: &Context) -> Result<Context> {
    s.expect_shape(&[1, 1])?;
    c.expect_shape(&[1])?;
    let (f, m, hole1, n, g, k, hole2, l, h) = seq_parts(s);
    check_outer(c.outer(), hole2)?;
    let (u, p, chole, q, v) = single_parts(c);
    let like = f;
    let g2 = g.compose(&sandwich(like, k, u, l)?)?;
    let h2 = sandwich(like, k, v, l)?.compose(h)?;
    Context::seq_split(
        f.clone(),
        m.clone(),
        hole1.clone(),
        n.clone(),
        g2,
        k.tensor(p),
        chole.clone(),
        q.tensor(l),
        h2,
    )
}

/// Nest a sequential split into the hole of a single-hole context.
pub fn seq_action_both(c: &Context, s: &Context) -> Result<Context> {
    c.expect_shape(&[1])?;
    s.expect_shape(&[1, 1])?;
    let (f, m, hole, n, g) = single_parts(c);
    check_outer(s.outer(), hole)?;
    let (u, p, h1, q, v, r, h2, t, w) = seq_parts(s);
    let like = f;
    let f2 = f.compose(&sandwich(like, m, u, n)?)?;
    let mid = sandwich(like, m, v, n)?;
    let g2 = sandwich(like, m, w, n)?.compose(g)?;
    Context::seq_split(
        f2,
        m.tensor(p),
        h1.clone(),
        q.tensor(n),
        mid,
        m.tensor(r),
        h2.clone(),
        t.tensor(n),
        g2,
    )
}

/// Associativity, inner split into the first gap; yields three rows.
pub fn seq_assoc_left(s: &Context, t: &Context) -> Result<Context> {
    s.expect_shape(&[1, 1])?;
    t.expect_shape(&[1, 1])?;
    let (f, m, hole1, n, g, k, hole2, l, h) = seq_parts(s);
    check_outer(t.outer(), hole1)?;
    let (u, p, th1, q, v, r, th2, w, x) = seq_parts(t);
    let like = f;
    let f2 = f.compose(&sandwich(like, m, u, n)?)?;
    let mid1 = sandwich(like, m, v, n)?;
    let g2 = sandwich(like, m, x, n)?.compose(g)?;
    Context::new(
        vec![f2, mid1, g2, h.clone()],
        vec![
            HoleRow::new(vec![m.tensor(p), q.tensor(n)], vec![th1.clone()])?,
            HoleRow::new(vec![m.tensor(r), w.tensor(n)], vec![th2.clone()])?,
            HoleRow::new(vec![k.clone(), l.clone()], vec![hole2.clone()])?,
        ],
    )
}

/// Associativity, inner split into the second gap; yields three rows.
pub fn seq_assoc_right(s: &Context, t: &Context) -> Result<Context> {
    s.expect_shape(&[1, 1])?;
    t.expect_shape(&[1, 1])?;
    let (f, m, hole1, n, g, k, hole2, l, h) = seq_parts(s);
    check_outer(t.outer(), hole2)?;
    let (u, p, th1, q, v, r, th2, w, x) = seq_parts(t);
    let like = f;
    let g2 = g.compose(&sandwich(like, k, u, l)?)?;
    let mid = sandwich(like, k, v, l)?;
    let h2 = sandwich(like, k, x, l)?.compose(h)?;
    Context::new(
        vec![f.clone(), g2, mid, h2],
        vec![
            HoleRow::new(vec![m.clone(), n.clone()], vec![hole1.clone()])?,
            HoleRow::new(vec![k.tensor(p), q.tensor(l)], vec![th1.clone()])?,
            HoleRow::new(vec![k.tensor(r), w.tensor(l)], vec![th2.clone()])?,
        ],
    )
}

/// Left unitor: a plain morphism closes the first gap.
pub fn seq_unitor_left(s: &Context, u: &Morphism) -> Result<Context> {
    s.expect_shape(&[1, 1])?;
    let (f, m, hole1, n, g, k, hole2, l, h) = seq_parts(s);
    if u.dom() != hole1.0 || u.cod() != hole1.1 {
        return Err(Error::TypeMismatch { expected: hole1.0.clone(), found: u.dom() });
    }
    let f2 = f.compose(&sandwich(f, m, u, n)?)?.compose(g)?;
    Context::single(f2, k.clone(), hole2.clone(), l.clone(), h.clone())
}

/// Right unitor: a plain morphism closes the second gap.
pub fn seq_unitor_right(s: &Context, u: &Morphism) -> Result<Context> {
    s.expect_shape(&[1, 1])?;
    let (f, m, hole1, n, g, k, hole2, l, h) = seq_parts(s);
    if u.dom() != hole2.0 || u.cod() != hole2.1 {
        return Err(Error::TypeMismatch { expected: hole2.0.clone(), found: u.dom() });
    }
    let g2 = g.compose(&sandwich(f, k, u, l)?)?.compose(h)?;
    Context::single(f.clone(), m.clone(), hole1.clone(), n.clone(), g2)
}

// ---------------------------------------------------------------------------
// Parallel action algebra
// ---------------------------------------------------------------------------

type ParParts<'a> = (
    &'a Morphism,
    &'a ObjectList,
    &'a HoleType,
    &'a ObjectList,
    &'a HoleType,
    &'a ObjectList,
    &'a Morphism,
);

fn par_parts(p: &Context) -> ParParts<'_> {
    (
        &p.morphisms[0],
        &p.rows[0].residuals[0],
        &p.rows[0].holes[0],
        &p.rows[0].residuals[1],
        &p.rows[0].holes[1],
        &p.rows[0].residuals[2],
        &p.morphisms[1],
    )
}

/// Nest a single-hole context into the left slot of a parallel split.
pub fn par_action_1(p: &Context, c: &Context) -> Result<Context> {
    p.expect_shape(&[2])?;
    c.expect_shape(&[1])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    check_outer(c.outer(), hole1)?;
    let (u, pp, chole, qq, v) = single_parts(c);
    let like = f;
    let right_pad_in = n.tensor(&hole2.0).tensor(o);
    let right_pad_out = n.tensor(&hole2.1).tensor(o);
    let f2 = f.compose(&sandwich(like, m, u, &right_pad_in)?)?;
    let g2 = sandwich(like, m, v, &right_pad_out)?.compose(g)?;
    Context::par_split(f2, m.tensor(pp), chole.clone(), qq.tensor(n), hole2.clone(), o.clone(), g2)
}

/// Nest a single-hole context into the right slot of a parallel split.
pub fn par_action_2(p: &Context, c: &Context) -> Result<Context> {
    p.expect_shape(&[2])?;
    c.expect_shape(&[1])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    check_outer(c.outer(), hole2)?;
    let (u, pp, chole, qq, v) = single_parts(c);
    let like = f;
    let left_pad_in = m.tensor(&hole1.0).tensor(n);
    let left_pad_out = m.tensor(&hole1.1).tensor(n);
    let f2 = f.compose(&sandwich(like, &left_pad_in, u, o)?)?;
    let g2 = sandwich(like, &left_pad_out, v, o)?.compose(g)?;
    Context::par_split(f2, m.clone(), hole1.clone(), n.tensor(pp), chole.clone(), qq.tensor(o), g2)
}

/// Nest a parallel split into the hole of a single-hole context.
pub fn par_action_both(c: &Context, p: &Context) -> Result<Context> {
    c.expect_shape(&[1])?;
    p.expect_shape(&[2])?;
    let (f, m, hole, n, g) = single_parts(c);
    check_outer(p.outer(), hole)?;
    let (u, pp, h1, qq, h2, rr, v) = par_parts(p);
    let like = f;
    let f2 = f.compose(&sandwich(like, m, u, n)?)?;
    let g2 = sandwich(like, m, v, n)?.compose(g)?;
    Context::par_split(f2, m.tensor(pp), h1.clone(), qq.clone(), h2.clone(), rr.tensor(n), g2)
}

/// Parallel associativity, inner split into the left slot; one row of three.
pub fn par_assoc_left(p: &Context, q: &Context) -> Result<Context> {
    p.expect_shape(&[2])?;
    q.expect_shape(&[2])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    check_outer(q.outer(), hole1)?;
    let (u, pp, qh1, qq, qh2, rr, v) = par_parts(q);
    let like = f;
    let pad_in = n.tensor(&hole2.0).tensor(o);
    let pad_out = n.tensor(&hole2.1).tensor(o);
    let f2 = f.compose(&sandwich(like, m, u, &pad_in)?)?;
    let g2 = sandwich(like, m, v, &pad_out)?.compose(g)?;
    Context::new(
        vec![f2, g2],
        vec![HoleRow::new(
            vec![m.tensor(pp), qq.clone(), rr.tensor(n), o.clone()],
            vec![qh1.clone(), qh2.clone(), hole2.clone()],
        )?],
    )
}

/// Parallel associativity, inner split into the right slot.
pub fn par_assoc_right(p: &Context, q: &Context) -> Result<Context> {
    p.expect_shape(&[2])?;
    q.expect_shape(&[2])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    check_outer(q.outer(), hole2)?;
    let (u, pp, qh1, qq, qh2, rr, v) = par_parts(q);
    let like = f;
    let pad_in = m.tensor(&hole1.0).tensor(n);
    let pad_out = m.tensor(&hole1.1).tensor(n);
    let f2 = f.compose(&sandwich(like, &pad_in, u, o)?)?;
    let g2 = sandwich(like, &pad_out, v, o)?.compose(g)?;
    Context::new(
        vec![f2, g2],
        vec![HoleRow::new(
            vec![m.clone(), n.tensor(pp), qq.clone(), rr.tensor(o)],
            vec![hole1.clone(), qh1.clone(), qh2.clone()],
        )?],
    )
}

/// Left unitor of the parallel split: a plain morphism `u : X → Y` closes the
/// left slot, fused into the source morphism.
pub fn par_unitor_left(p: &Context, u: &Morphism) -> Result<Context> {
    p.expect_shape(&[2])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    if u.dom() != hole1.0 || u.cod() != hole1.1 {
        return Err(Error::TypeMismatch { expected: hole1.0.clone(), found: u.dom() });
    }
    let pad_in = n.tensor(&hole2.0).tensor(o);
    let f2 = f.compose(&sandwich(f, m, u, &pad_in)?)?;
    Context::single(f2, m.tensor(&hole1.1).tensor(n), hole2.clone(), o.clone(), g.clone())
}

/// The dinaturally slid form of [`par_unitor_left`]: `u` fused into the
/// target morphism across the remaining hole.
pub fn par_unitor_left_slid(p: &Context, u: &Morphism) -> Result<Context> {
    p.expect_shape(&[2])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    if u.dom() != hole1.0 || u.cod() != hole1.1 {
        return Err(Error::TypeMismatch { expected: hole1.0.clone(), found: u.dom() });
    }
    let pad_out = n.tensor(&hole2.1).tensor(o);
    let g2 = sandwich(f, m, u, &pad_out)?.compose(g)?;
    Context::single(f.clone(), m.tensor(&hole1.0).tensor(n), hole2.clone(), o.clone(), g2)
}

/// Right unitor of the parallel split, fused into the source morphism.
pub fn par_unitor_right(p: &Context, v: &Morphism) -> Result<Context> {
    p.expect_shape(&[2])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    if v.dom() != hole2.0 || v.cod() != hole2.1 {
        return Err(Error::TypeMismatch { expected: hole2.0.clone(), found: v.dom() });
    }
    let pad_in = m.tensor(&hole1.0).tensor(n);
    let f2 = f.compose(&sandwich(f, &pad_in, v, o)?)?;
    Context::single(f2, m.clone(), hole1.clone(), n.tensor(&hole2.1).tensor(o), g.clone())
}

/// The dinaturally slid form of [`par_unitor_right`].
pub fn par_unitor_right_slid(p: &Context, v: &Morphism) -> Result<Context> {
    p.expect_shape(&[2])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    if v.dom() != hole2.0 || v.cod() != hole2.1 {
        return Err(Error::TypeMismatch { expected: hole2.0.clone(), found: v.dom() });
    }
    let pad_out = m.tensor(&hole1.1).tensor(n);
    let g2 = sandwich(f, &pad_out, v, o)?.compose(g)?;
    Context::single(f.clone(), m.clone(), hole1.clone(), n.tensor(&hole2.0).tensor(o), g2)
}

/// Left-side laxator: a parallel split whose slots carry sequential splits
/// becomes a sequence of parallel hole pairs (two rows of two holes).
pub fn laxator_left(p: &Context, j: &Context, k: &Context) -> Result<Context> {
    p.expect_shape(&[2])?;
    j.expect_shape(&[1, 1])?;
    k.expect_shape(&[1, 1])?;
    let (f, m, hole1, n, hole2, o, g) = par_parts(p);
    check_outer(j.outer(), hole1)?;
    check_outer(k.outer(), hole2)?;
    let (j0, u, jh1, v, j1, u2, jh2, v2, j2) = seq_parts(j);
    let (k0, w, kh1, t, k1, w2, kh2, t2, k2) = seq_parts(k);
    let like = f;
    let layer = |a: &Morphism, b: &Morphism| -> Result<Morphism> {
        // id_M ⊗ a ⊗ id_N ⊗ b ⊗ id_O
        like.identity_like(m)
            .tensor(a)?
            .tensor(&like.identity_like(n))?
            .tensor(b)?
            .tensor(&like.identity_like(o))
    };
    let m0 = f.compose(&layer(j0, k0)?)?;
    let m1 = layer(j1, k1)?;
    let m2 = layer(j2, k2)?.compose(g)?;
    Context::new(
        vec![m0, m1, m2],
        vec![
            HoleRow::new(
                vec![m.tensor(u), v.tensor(n).tensor(w), t.tensor(o)],
                vec![jh1.clone(), kh1.clone()],
            )?,
            HoleRow::new(
                vec![m.tensor(u2), v2.tensor(n).tensor(w2), t2.tensor(o)],
                vec![jh2.clone(), kh2.clone()],
            )?,
        ],
    )
}

/// Right-side laxator: a sequential split whose gaps carry parallel splits,
/// assembled directly into two rows of two holes.
pub fn laxator_right(s: &Context, j: &Context, k: &Context) -> Result<Context> {
    s.expect_shape(&[1, 1])?;
    j.expect_shape(&[2])?;
    k.expect_shape(&[2])?;
    let (f, m, hole1, n, g, kk, hole2, l, h) = seq_parts(s);
    check_outer(j.outer(), hole1)?;
    check_outer(k.outer(), hole2)?;
    let (j0, p, jh1, q, jh2, r, j1) = par_parts(j);
    let (k0, p2, kh1, q2, kh2, r2, k1) = par_parts(k);
    let like = f;
    let m0 = f.compose(&sandwich(like, m, j0, n)?)?;
    let m1 = sandwich(like, m, j1, n)?.compose(g)?.compose(&sandwich(like, kk, k0, l)?)?;
    let m2 = sandwich(like, kk, k1, l)?.compose(h)?;
    Context::new(
        vec![m0, m1, m2],
        vec![
            HoleRow::new(vec![m.tensor(p), q.clone(), r.tensor(n)], vec![jh1.clone(), jh2.clone()])?,
            HoleRow::new(vec![kk.tensor(p2), q2.clone(), r2.tensor(l)], vec![kh1.clone(), kh2.clone()])?,
        ],
    )
}

// ---------------------------------------------------------------------------
// Normalization from spliced monoidal arrows
// ---------------------------------------------------------------------------

/// A flat element of the spliced-monoidal-arrow algebra, input to
/// [`normalize_from_duosplice`]. Sequential units are zero-hole splices.
#[derive(Clone, Debug)]
pub enum SplicedElem {
    Seq(NHoleSplice),
    Par(ParSplit),
    ParUnit(ParUnit),
}

/// The coend reduction onto monoidal contexts: spliced arrows pick up unit
/// residuals, parallel units fuse to a plain morphism, and parallel splits
/// keep their boundary pair with unit residuals throughout.
pub fn normalize_from_duosplice(e: &SplicedElem) -> Result<Context> {
    let i = ObjectList::unit();
    match e {
        SplicedElem::Seq(s) => {
            let rows = s
                .holes()
                .iter()
                .map(|h| HoleRow::new(vec![i.clone(), i.clone()], vec![h.clone()]))
                .collect::<Result<Vec<_>>>()?;
            Context::new(s.morphisms().to_vec(), rows)
        }
        SplicedElem::Par(p) => Context::par_split(
            p.f.clone(),
            i.clone(),
            p.left_hole.clone(),
            i.clone(),
            p.right_hole.clone(),
            i,
            p.g.clone(),
        ),
        SplicedElem::ParUnit(u) => Ok(Context::unit(crate::duosplice::phi0(u)?)),
    }
}

// ---------------------------------------------------------------------------
// Dinaturality rewriting
// ---------------------------------------------------------------------------

/// Which boundary the residual morphisms move from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlideDirection {
    /// `⟨f ⨾ (m ⊗ id ⊗ n) | g⟩ ↦ ⟨f | (m ⊗ id ⊗ n) ⨾ g⟩`.
    SourceToTarget,
    /// `⟨f | (m ⊗ id ⊗ n) ⨾ g⟩ ↦ ⟨f ⨾ (m ⊗ id ⊗ n) | g⟩`.
    TargetToSource,
}

/// A claimed factoring of one boundary of a single-hole context: `core` is
/// that boundary with the residual maps `m`, `n` peeled off.
#[derive(Clone, Debug)]
pub struct SlideFactorization {
    pub core: Morphism,
    pub m: Morphism,
    pub n: Morphism,
}

/// Rewrites a context along dinaturality. The caller supplies the syntactic
/// factorization; it is checked to recompose exactly before the slide.
pub fn dinat_slide(c: &Context, fact: &SlideFactorization, dir: SlideDirection) -> Result<Context> {
    c.expect_shape(&[1])?;
    let (f, m_obj, hole, n_obj, g) = single_parts(c);
    let (x, y) = hole;
    match dir {
        SlideDirection::SourceToTarget => {
            // f = core ⨾ (m ⊗ id_X ⊗ n), with m: M' → M, n: N' → N
            if &fact.m.cod() != m_obj || &fact.n.cod() != n_obj {
                return Err(Error::BadFactorization);
            }
            let wedge_in = fact.m.tensor(&f.identity_like(x))?.tensor(&fact.n)?;
            let recomposed = fact.core.compose(&wedge_in)?;
            if !recomposed.equal(f)? {
                return Err(Error::BadFactorization);
            }
            let wedge_out = fact.m.tensor(&f.identity_like(y))?.tensor(&fact.n)?;
            let g2 = wedge_out.compose(g)?;
            Context::single(fact.core.clone(), fact.m.dom(), hole.clone(), fact.n.dom(), g2)
        }
        SlideDirection::TargetToSource => {
            // g = (m ⊗ id_Y ⊗ n) ⨾ core, with m: M → M'', n: N → N''
            if &fact.m.dom() != m_obj || &fact.n.dom() != n_obj {
                return Err(Error::BadFactorization);
            }
            let wedge_out = fact.m.tensor(&f.identity_like(y))?.tensor(&fact.n)?;
            let recomposed = wedge_out.compose(&fact.core)?;
            if !recomposed.equal(g)? {
                return Err(Error::BadFactorization);
            }
            let wedge_in = fact.m.tensor(&f.identity_like(x))?.tensor(&fact.n)?;
            let f2 = f.compose(&wedge_in)?;
            Context::single(f2, fact.m.cod(), hole.clone(), fact.n.cod(), fact.core.clone())
        }
    }
}

// ---------------------------------------------------------------------------
// Observational equality
// ---------------------------------------------------------------------------

/// Cap on the size of enumerated hom sets and probing families.
pub const PROBE_LIMIT: usize = 1 << 16;

/// The canonical cartesian form of a single-hole context: the pair
/// `(get : A → X, put : A ⊗ Y → B)` with `put(a, y) = g(f_M(a), y, f_N(a))`.
/// Over finite functions this decides the dinaturality class completely.
pub fn cartesian_form(c: &Context) -> Result<(Morphism, Morphism)> {
    c.expect_shape(&[1])?;
    let (f, m, hole, n, g) = single_parts(c);
    let (x, y) = hole;
    let f = f
        .as_finfn()
        .map_err(|_| Error::NotCartesian("canonical get/put form needs finite functions"))?;
    let g = g.as_finfn()?;
    let get = f.compose(&FinFnMorphism::project(m, x, n))?;
    let a = f.dom.clone();
    let put_dom = a.tensor(y);
    let mut table = Vec::with_capacity(put_dom.carrier());
    let (cm, cx, cn, cy) = (m.carrier(), x.carrier(), n.carrier(), y.carrier());
    for av in 0..a.carrier() {
        // decode f(a) over M ⊗ X ⊗ N, row-major
        let image = f.table[av];
        let nv = image % cn;
        let mv = image / (cn * cx) % cm;
        for yv in 0..cy {
            let idx = (mv * cy + yv) * cn + nv;
            table.push(g.table[idx]);
        }
    }
    let put = FinFnMorphism::new(put_dom, g.cod.clone(), table)?;
    Ok((Morphism::FinFn(get), Morphism::FinFn(put)))
}

/// Sound observational comparison: closes the hole with every morphism of
/// the probing family and compares composites exactly.
pub fn probe_fill_equal(c1: &Context, c2: &Context) -> Result<bool> {
    c1.expect_shape(&[1])?;
    c2.expect_shape(&[1])?;
    if c1.outer() != c2.outer() || c1.rows[0].holes != c2.rows[0].holes {
        return Ok(false);
    }
    let (x, y) = &c1.rows[0].holes[0];
    let kind = c1.morphisms[0].kind();
    for h in hom_probe(kind, x, y, PROBE_LIMIT)? {
        if !fill(c1, &h)?.equal(&fill(c2, &h)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The artifact's official equality on single-hole contexts: canonical
/// get/put comparison over finite functions (complete for the dinaturality
/// quotient there), probing-family fills over finite stochastic maps (sound).
pub fn fill_equal(c1: &Context, c2: &Context) -> Result<bool> {
    c1.expect_shape(&[1])?;
    c2.expect_shape(&[1])?;
    if c1.outer() != c2.outer() || c1.rows[0].holes != c2.rows[0].holes {
        return Ok(false);
    }
    match c1.morphisms[0].kind() {
        TheoryKind::FinFn => {
            let (g1, p1) = cartesian_form(c1)?;
            let (g2, p2) = cartesian_form(c2)?;
            Ok(g1.equal(&g2)? && p1.equal(&p2)?)
        }
        TheoryKind::FinStoch => probe_fill_equal(c1, c2),
        TheoryKind::Free { .. } => Err(Error::NotEnumerable(
            "context equality over the free theory needs an interpretation".into(),
        )),
    }
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

    fn hole2() -> HoleType {
        (two(), two())
    }

    #[test]
    fn identity_context_fills_to_argument() {
        let c = ctx_identity(TheoryKind::FinFn, &two(), &two());
        let (m, n) = (&c.rows()[0].residuals[0], &c.rows()[0].residuals[1]);
        assert!(m.is_unit() && n.is_unit());
        let h = t(&two(), &two(), vec![1, 0]);
        assert!(fill(&c, &h).unwrap().equal(&h).unwrap());
    }

    #[test]
    fn compose_with_identity_is_literal() {
        let b = two();
        let b3 = ObjectList::of(&[("M", 2), ("B", 2), ("N", 2)]);
        let c = Context::single(
            t(&b, &b3, vec![0, 7]),
            ObjectList::of(&[("M", 2)]),
            hole2(),
            ObjectList::of(&[("N", 2)]),
            t(&b3, &b, vec![0, 1, 1, 0, 0, 1, 1, 0]),
        )
        .unwrap();
        let (a, bb) = c.outer();
        let left = ctx_compose(&ctx_identity(TheoryKind::FinFn, &a, &bb), &c).unwrap();
        assert!(left.rep_equal(&c).unwrap());
        let inner_id = ctx_identity(TheoryKind::FinFn, &two(), &two());
        let right = ctx_compose(&c, &inner_id).unwrap();
        assert!(right.rep_equal(&c).unwrap());
    }

    #[test]
    fn fill_the_and_copy_context_with_not() {
        // context: copy 2->4 as A -> M⊗X (M = X = 2-carrier, N = I), g = AND
        let b = two();
        let b2 = b.tensor(&b);
        let copy = t(&b, &b2, vec![0, 3]);
        let and = t(&b2, &b, vec![0, 0, 0, 1]);
        let c = Context::single(copy, b.clone(), hole2(), ObjectList::unit(), and).unwrap();
        let not = t(&b, &b, vec![1, 0]);
        let filled = fill(&c, &not).unwrap();
        // a ↦ AND(a, ¬a) = 0
        assert!(filled.equal(&t(&b, &b, vec![0, 0])).unwrap());
    }

    #[test]
    fn dinat_slide_preserves_fills_and_checks_factorization() {
        let b = two();
        let m_obj = two();
        let n_obj = two();
        let mid = ObjectList::tensor_all(&[&m_obj, &b, &n_obj]);
        let core = t(&b, &mid, vec![3, 5]);
        let m = t(&m_obj, &m_obj, vec![1, 0]);
        let n = t(&n_obj, &n_obj, vec![0, 0]);
        let wedge = m
            .tensor(&Morphism::identity_in(TheoryKind::FinFn, &b))
            .unwrap()
            .tensor(&n)
            .unwrap();
        let f = core.compose(&wedge).unwrap();
        let g = t(&mid, &b, vec![0, 1, 1, 0, 0, 1, 1, 0]);
        let c = Context::single(f, m_obj.clone(), hole2(), n_obj.clone(), g).unwrap();

        let slid = dinat_slide(
            &c,
            &SlideFactorization { core: core.clone(), m: m.clone(), n: n.clone() },
            SlideDirection::SourceToTarget,
        )
        .unwrap();
        assert!(fill_equal(&c, &slid).unwrap());
        assert!(probe_fill_equal(&c, &slid).unwrap());

        // identity slide is the identity rewrite
        let id_fact = SlideFactorization {
            core: c.morphisms()[0].clone(),
            m: Morphism::identity_in(TheoryKind::FinFn, &m_obj),
            n: Morphism::identity_in(TheoryKind::FinFn, &n_obj),
        };
        let same = dinat_slide(&c, &id_fact, SlideDirection::SourceToTarget).unwrap();
        assert!(same.rep_equal(&c).unwrap());

        // a factorization that does not recompose is rejected
        let bad = SlideFactorization { core, m: n, n: m };
        assert!(matches!(
            dinat_slide(&c, &bad, SlideDirection::SourceToTarget),
            Err(Error::BadFactorization)
        ));
    }

    #[test]
    fn fill_equal_separates_constant_contexts() {
        let b = two();
        let c0 = Context::single(
            t(&b, &b, vec![0, 0]),
            ObjectList::unit(),
            hole2(),
            ObjectList::unit(),
            t(&b, &b, vec![0, 1]),
        )
        .unwrap();
        let c1 = Context::single(
            t(&b, &b, vec![0, 0]),
            ObjectList::unit(),
            hole2(),
            ObjectList::unit(),
            t(&b, &b, vec![1, 0]),
        )
        .unwrap();
        assert!(!fill_equal(&c0, &c1).unwrap());
        assert!(!probe_fill_equal(&c0, &c1).unwrap());
    }

    #[test]
    fn normalize_seq_and_par_units() {
        let b = two();
        let f = t(&b, &b, vec![1, 0]);
        let g = t(&b, &b, vec![0, 0]);
        let s = NHoleSplice::one(f.clone(), g.clone()).unwrap();
        let ctx = normalize_from_duosplice(&SplicedElem::Seq(s)).unwrap();
        assert_eq!(ctx.shape(), vec![1]);
        assert!(ctx.rows()[0].residuals.iter().all(|r| r.is_unit()));
        // the normalized context is again a splice, and renormalizing is the identity
        let again = normalize_from_duosplice(&SplicedElem::Seq(ctx.as_splice().unwrap())).unwrap();
        assert!(again.rep_equal(&ctx).unwrap());

        let pu = ParUnit::new(
            t(&b, &ObjectList::unit(), vec![0, 0]),
            t(&ObjectList::unit(), &b, vec![1]),
        )
        .unwrap();
        let cu = normalize_from_duosplice(&SplicedElem::ParUnit(pu)).unwrap();
        assert_eq!(cu.shape(), Vec::<usize>::new());
        assert!(cu.morphisms()[0].equal(&t(&b, &b, vec![1, 1])).unwrap());
    }

    #[test]
    fn seq_action_respects_fill_oracle() {
        let b = two();
        let mid = ObjectList::of(&[("M", 2), ("B", 2), ("N", 2)]);
        let s = Context::seq_split(
            t(&b, &mid, vec![0, 7]),
            ObjectList::of(&[("M", 2)]),
            hole2(),
            ObjectList::of(&[("N", 2)]),
            t(&mid, &mid, vec![0, 1, 2, 3, 4, 5, 6, 7]),
            ObjectList::of(&[("M", 2)]),
            hole2(),
            ObjectList::of(&[("N", 2)]),
            t(&mid, &b, vec![0, 1, 1, 0, 0, 1, 1, 0]),
        )
        .unwrap();
        let mid2 = ObjectList::of(&[("P", 2), ("B", 2), ("Q", 2)]);
        let c = Context::single(
            t(&b, &mid2, vec![5, 2]),
            ObjectList::of(&[("P", 2)]),
            hole2(),
            ObjectList::of(&[("Q", 2)]),
            t(&mid2, &b, vec![1, 0, 0, 1, 1, 0, 0, 1]),
        )
        .unwrap();
        let nested = seq_action_1(&s, &c).unwrap();
        let homs = enumerate_finfn_hom(&b, &b, 1 << 10).unwrap();
        for h1 in &homs {
            for h2 in &homs {
                let (h1, h2) = (Morphism::FinFn(h1.clone()), Morphism::FinFn(h2.clone()));
                let via_op = nested.fill_all(&[&h1, &h2]).unwrap();
                let inner_filled = fill(&c, &h1).unwrap();
                let by_hand = s.fill_all(&[&inner_filled, &h2]).unwrap();
                assert!(via_op.equal(&by_hand).unwrap());
            }
        }
    }
}

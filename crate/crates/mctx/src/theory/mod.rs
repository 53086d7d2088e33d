//! Concrete monoidal theories behind one uniform morphism type.
//!
//! Three backends share the [`Morphism`] interface: finite functions
//! (cartesian), finite stochastic maps (symmetric, exact rationals), and
//! free symmetric-monoidal terms (syntax only, no equality). Everything
//! downstream (splices, contexts, lenses, sessions) is written against this
//! interface and never touches a backend directly.

pub mod finfn;
pub mod finstoch;
pub mod freeterm;

pub use finfn::{enumerate_hom as enumerate_finfn_hom, FinFnMorphism};
pub use finstoch::{probe_family as finstoch_probe_family, FinStochMorphism};
pub use freeterm::{eval_term, FreeTerm, Interpretation};

use crate::error::{Error, Result};
use crate::object::ObjectList;

/// Which backend a morphism lives in. The free theory records whether the
/// symmetry generator is admitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoryKind {
    FinFn,
    FinStoch,
    Free { symmetric: bool },
}

impl TheoryKind {
    pub fn name(&self) -> &'static str {
        match self {
            TheoryKind::FinFn => "finfn",
            TheoryKind::FinStoch => "finstoch",
            TheoryKind::Free { .. } => "free",
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            TheoryKind::FinFn | TheoryKind::FinStoch => true,
            TheoryKind::Free { symmetric } => *symmetric,
        }
    }

    /// Finite functions model a cartesian monoidal category; the others do not.
    pub fn is_cartesian(&self) -> bool {
        matches!(self, TheoryKind::FinFn)
    }
}

/// A theory-tagged arrow with explicit strict boundaries.
#[derive(Clone, Debug)]
pub enum Morphism {
    FinFn(FinFnMorphism),
    FinStoch(FinStochMorphism),
    Free { term: FreeTerm, symmetric: bool },
}

impl Morphism {
    pub fn kind(&self) -> TheoryKind {
        match self {
            Morphism::FinFn(_) => TheoryKind::FinFn,
            Morphism::FinStoch(_) => TheoryKind::FinStoch,
            Morphism::Free { symmetric, .. } => TheoryKind::Free { symmetric: *symmetric },
        }
    }

    pub fn dom(&self) -> ObjectList {
        match self {
            Morphism::FinFn(f) => f.dom.clone(),
            Morphism::FinStoch(f) => f.dom.clone(),
            Morphism::Free { term, .. } => term.dom(),
        }
    }

    pub fn cod(&self) -> ObjectList {
        match self {
            Morphism::FinFn(f) => f.cod.clone(),
            Morphism::FinStoch(f) => f.cod.clone(),
            Morphism::Free { term, .. } => term.cod(),
        }
    }

    pub fn identity_in(kind: TheoryKind, obj: &ObjectList) -> Morphism {
        match kind {
            TheoryKind::FinFn => Morphism::FinFn(FinFnMorphism::identity(obj)),
            TheoryKind::FinStoch => Morphism::FinStoch(FinStochMorphism::identity(obj)),
            TheoryKind::Free { symmetric } => {
                Morphism::Free { term: FreeTerm::Identity(obj.clone()), symmetric }
            }
        }
    }

    /// The identity morphism in the same theory as `self`.
    pub fn identity_like(&self, obj: &ObjectList) -> Morphism {
        Morphism::identity_in(self.kind(), obj)
    }

    fn check_same_theory(&self, other: &Morphism) -> Result<()> {
        if self.kind() != other.kind() {
            return Err(Error::TheoryMismatch(self.kind().name(), other.kind().name()));
        }
        Ok(())
    }

    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        self.check_same_theory(other)?;
        match (self, other) {
            (Morphism::FinFn(f), Morphism::FinFn(g)) => Ok(Morphism::FinFn(f.compose(g)?)),
            (Morphism::FinStoch(f), Morphism::FinStoch(g)) => Ok(Morphism::FinStoch(f.compose(g)?)),
            (Morphism::Free { term: f, symmetric }, Morphism::Free { term: g, .. }) => {
                Ok(Morphism::Free { term: f.clone().compose(g.clone())?, symmetric: *symmetric })
            }
            _ => unreachable!("theories already checked equal"),
        }
    }

    /// Composes a chain left to right. The chain must be nonempty.
    pub fn compose_all(chain: &[&Morphism]) -> Result<Morphism> {
        let mut acc = chain[0].clone();
        for m in &chain[1..] {
            acc = acc.compose(m)?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, other: &Morphism) -> Result<Morphism> {
        self.check_same_theory(other)?;
        match (self, other) {
            (Morphism::FinFn(f), Morphism::FinFn(g)) => Ok(Morphism::FinFn(f.tensor(g))),
            (Morphism::FinStoch(f), Morphism::FinStoch(g)) => Ok(Morphism::FinStoch(f.tensor(g))),
            (Morphism::Free { term: f, symmetric }, Morphism::Free { term: g, .. }) => {
                Ok(Morphism::Free { term: f.clone().tensor(g.clone()), symmetric: *symmetric })
            }
            _ => unreachable!("theories already checked equal"),
        }
    }

    /// Tensors a list of morphisms in order; empty input yields the identity
    /// on the unit object (which is absorbed by any later tensor).
    pub fn tensor_all(kind: TheoryKind, parts: &[&Morphism]) -> Result<Morphism> {
        let mut acc = Morphism::identity_in(kind, &ObjectList::unit());
        for m in parts {
            acc = acc.tensor(m)?;
        }
        Ok(acc)
    }

    pub fn symmetry_in(kind: TheoryKind, a: &ObjectList, b: &ObjectList) -> Result<Morphism> {
        if !kind.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(match kind {
            TheoryKind::FinFn => Morphism::FinFn(FinFnMorphism::symmetry(a, b)),
            TheoryKind::FinStoch => Morphism::FinStoch(FinStochMorphism::symmetry(a, b)),
            TheoryKind::Free { symmetric } => {
                Morphism::Free { term: FreeTerm::Symmetry(a.clone(), b.clone()), symmetric }
            }
        })
    }

    /// Exact equality. Decidable for the finite backends; free terms have no
    /// equality without an interpretation.
    pub fn equal(&self, other: &Morphism) -> Result<bool> {
        self.check_same_theory(other)?;
        match (self, other) {
            (Morphism::FinFn(f), Morphism::FinFn(g)) => {
                Ok(f.dom == g.dom && f.cod == g.cod && f.table == g.table)
            }
            (Morphism::FinStoch(f), Morphism::FinStoch(g)) => {
                Ok(f.dom == g.dom && f.cod == g.cod && f.matrix == g.matrix)
            }
            (Morphism::Free { .. }, Morphism::Free { .. }) => Err(Error::FreeEqualityUndecided),
            _ => unreachable!("theories already checked equal"),
        }
    }

    pub fn as_finfn(&self) -> Result<&FinFnMorphism> {
        match self {
            Morphism::FinFn(f) => Ok(f),
            other => Err(Error::TheoryMismatch("finfn", other.kind().name())),
        }
    }

    pub fn as_finstoch(&self) -> Result<&FinStochMorphism> {
        match self {
            Morphism::FinStoch(f) => Ok(f),
            other => Err(Error::TheoryMismatch("finstoch", other.kind().name())),
        }
    }
}

/// Morphisms `x → y` used by the observational-equality oracles.
///
/// For finite functions this is the full hom set. For finite stochastic maps
/// the hom set is infinite and a finite probing family stands in: all
/// deterministic maps plus point-mass/uniform mixtures with denominators up
/// to 4. The free theory has no enumerable homs.
pub fn hom_probe(kind: TheoryKind, x: &ObjectList, y: &ObjectList, limit: usize) -> Result<Vec<Morphism>> {
    match kind {
        TheoryKind::FinFn => Ok(finfn::enumerate_hom(x, y, limit)?
            .into_iter()
            .map(Morphism::FinFn)
            .collect()),
        TheoryKind::FinStoch => Ok(finstoch::probe_family(x, y, limit)?
            .into_iter()
            .map(Morphism::FinStoch)
            .collect()),
        TheoryKind::Free { .. } => Err(Error::NotEnumerable(
            "free theory has no enumerable hom sets or probing family".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> ObjectList {
        ObjectList::of(&[("B", 2)])
    }

    fn table(dom: &ObjectList, cod: &ObjectList, t: Vec<usize>) -> Morphism {
        Morphism::FinFn(FinFnMorphism::new(dom.clone(), cod.clone(), t).unwrap())
    }

    #[test]
    fn identity_laws() {
        let f = table(&two(), &two(), vec![1, 0]);
        let post = f.compose(&f.identity_like(&f.cod())).unwrap();
        let pre = f.identity_like(&f.dom()).compose(&f).unwrap();
        assert!(post.equal(&f).unwrap());
        assert!(pre.equal(&f).unwrap());
    }

    #[test]
    fn tensor_of_identities_is_identity_of_tensor() {
        let a = ObjectList::of(&[("A", 2)]);
        let b = ObjectList::of(&[("B", 3)]);
        let lhs = Morphism::identity_in(TheoryKind::FinFn, &a)
            .tensor(&Morphism::identity_in(TheoryKind::FinFn, &b))
            .unwrap();
        let rhs = Morphism::identity_in(TheoryKind::FinFn, &a.tensor(&b));
        assert!(lhs.equal(&rhs).unwrap());
    }

    #[test]
    fn symmetry_is_self_inverse() {
        let a = ObjectList::of(&[("A", 2)]);
        let b = ObjectList::of(&[("B", 3)]);
        let s = Morphism::symmetry_in(TheoryKind::FinFn, &a, &b).unwrap();
        let s_back = Morphism::symmetry_in(TheoryKind::FinFn, &b, &a).unwrap();
        let roundtrip = s.compose(&s_back).unwrap();
        assert!(roundtrip.equal(&Morphism::identity_in(TheoryKind::FinFn, &a.tensor(&b))).unwrap());
    }

    #[test]
    fn symmetry_with_unit_is_identity() {
        let a = ObjectList::of(&[("A", 3)]);
        let s = Morphism::symmetry_in(TheoryKind::FinFn, &ObjectList::unit(), &a).unwrap();
        assert!(s.equal(&Morphism::identity_in(TheoryKind::FinFn, &a)).unwrap());
    }

    #[test]
    fn theory_mismatch_is_reported() {
        let f = table(&two(), &two(), vec![0, 1]);
        let g = Morphism::FinStoch(FinStochMorphism::identity(&two()));
        assert!(matches!(f.compose(&g), Err(Error::TheoryMismatch(_, _))));
    }

    #[test]
    fn free_equality_is_undecided() {
        let t = FreeTerm::generator("f", two(), two());
        let m = Morphism::Free { term: t, symmetric: true };
        assert!(matches!(m.equal(&m), Err(Error::FreeEqualityUndecided)));
    }

    #[test]
    fn non_symmetric_free_theory_has_no_braiding() {
        let kind = TheoryKind::Free { symmetric: false };
        assert!(matches!(
            Morphism::symmetry_in(kind, &two(), &two()),
            Err(Error::NotSymmetric)
        ));
        assert!(Morphism::symmetry_in(TheoryKind::Free { symmetric: true }, &two(), &two()).is_ok());
    }

    #[test]
    fn eval_term_matches_hand_composition() {
        // the nested shape f0 ; (g ⊗ (h ; (k ⊗ (l0 ; l1)))) ; f1 on tables
        let b = two();
        let b2 = b.tensor(&b);
        let b3 = b2.tensor(&b);
        let f0 = table(&b, &b3, vec![0, 7]);
        let g = table(&b, &b, vec![1, 0]);
        let h = table(&b2, &b2, vec![3, 2, 1, 0]);
        let k = table(&b, &b, vec![0, 0]);
        let l0 = table(&b, &b2, vec![2, 1]);
        let l1 = table(&b2, &b, vec![0, 1, 1, 0]);
        let f1 = table(&b3, &b, vec![0, 1, 1, 0, 0, 1, 1, 0]);

        let term = {
            use FreeTerm as T;
            let gen = |n: &str, d: &ObjectList, c: &ObjectList| T::generator(n, d.clone(), c.clone());
            let inner = gen("l0", &b, &b2).compose(gen("l1", &b2, &b)).unwrap();
            let kl = gen("k", &b, &b).tensor(inner);
            let hkl = gen("h", &b2, &b2).compose(kl).unwrap();
            let body = gen("g", &b, &b).tensor(hkl);
            gen("f0", &b, &b3).compose(body).unwrap().compose(gen("f1", &b3, &b)).unwrap()
        };
        let interp = Interpretation::new()
            .with("f0", f0.clone())
            .with("g", g.clone())
            .with("h", h.clone())
            .with("k", k.clone())
            .with("l0", l0.clone())
            .with("l1", l1.clone())
            .with("f1", f1.clone());
        let evaluated = eval_term(&term, &interp).unwrap();

        let hand = {
            let inner = l0.compose(&l1).unwrap();
            let kl = k.tensor(&inner).unwrap();
            let hkl = h.compose(&kl).unwrap();
            let body = g.tensor(&hkl).unwrap();
            f0.compose(&body).unwrap().compose(&f1).unwrap()
        };
        assert!(evaluated.equal(&hand).unwrap());
    }
}

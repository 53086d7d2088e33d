//! Free symmetric-monoidal terms over named generators.
//!
//! Terms are syntax trees with derived boundaries; no quotient is imposed.
//! Equality of terms is only meaningful through an interpretation into a
//! finite theory, via [`eval_term`].

use crate::error::{Error, Result};
use crate::object::ObjectList;
use crate::theory::Morphism;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreeTerm {
    Generator { name: String, dom: ObjectList, cod: ObjectList },
    Identity(ObjectList),
    Compose(Box<FreeTerm>, Box<FreeTerm>),
    Tensor(Box<FreeTerm>, Box<FreeTerm>),
    Symmetry(ObjectList, ObjectList),
}

impl FreeTerm {
    pub fn generator(name: impl Into<String>, dom: ObjectList, cod: ObjectList) -> Self {
        FreeTerm::Generator { name: name.into(), dom, cod }
    }

    pub fn compose(self, other: FreeTerm) -> Result<FreeTerm> {
        if self.cod() != other.dom() {
            return Err(Error::TypeMismatch { expected: self.cod(), found: other.dom() });
        }
        Ok(FreeTerm::Compose(Box::new(self), Box::new(other)))
    }

    pub fn tensor(self, other: FreeTerm) -> FreeTerm {
        FreeTerm::Tensor(Box::new(self), Box::new(other))
    }

    pub fn dom(&self) -> ObjectList {
        match self {
            FreeTerm::Generator { dom, .. } => dom.clone(),
            FreeTerm::Identity(obj) => obj.clone(),
            FreeTerm::Compose(f, _) => f.dom(),
            FreeTerm::Tensor(f, g) => f.dom().tensor(&g.dom()),
            FreeTerm::Symmetry(a, b) => a.tensor(b),
        }
    }

    pub fn cod(&self) -> ObjectList {
        match self {
            FreeTerm::Generator { cod, .. } => cod.clone(),
            FreeTerm::Identity(obj) => obj.clone(),
            FreeTerm::Compose(_, g) => g.cod(),
            FreeTerm::Tensor(f, g) => f.cod().tensor(&g.cod()),
            FreeTerm::Symmetry(a, b) => b.tensor(a),
        }
    }
}

/// Assignment of generators to morphisms of a concrete theory. Objects pass
/// through unchanged: the interpretation is identity on atoms, which is all
/// the strict object model needs.
#[derive(Clone, Debug, Default)]
pub struct Interpretation {
    pub generators: BTreeMap<String, Morphism>,
}

impl Interpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: impl Into<String>, m: Morphism) -> Self {
        self.generators.insert(name.into(), m);
        self
    }
}

/// The unique strict monoidal functor out of the free presentation:
/// structural recursion sending identities to identities, composition to
/// composition, tensor to tensor and symmetries to braidings.
pub fn eval_term(term: &FreeTerm, interp: &Interpretation) -> Result<Morphism> {
    match term {
        FreeTerm::Generator { name, dom, cod } => {
            let m = interp
                .generators
                .get(name)
                .ok_or_else(|| Error::MissingGenerator(name.clone()))?;
            if &m.dom() != dom || &m.cod() != cod {
                return Err(Error::ArityMismatch {
                    name: name.clone(),
                    declared: format!("{} -> {}", dom, cod),
                    interpreted: format!("{} -> {}", m.dom(), m.cod()),
                });
            }
            Ok(m.clone())
        }
        FreeTerm::Identity(obj) => {
            // the target theory is fixed by the generators; identities adopt it
            let kind = interp
                .generators
                .values()
                .next()
                .map(|m| m.kind())
                .unwrap_or(crate::theory::TheoryKind::FinFn);
            Ok(Morphism::identity_in(kind, obj))
        }
        FreeTerm::Compose(f, g) => eval_term(f, interp)?.compose(&eval_term(g, interp)?),
        FreeTerm::Tensor(f, g) => eval_term(f, interp)?.tensor(&eval_term(g, interp)?),
        FreeTerm::Symmetry(a, b) => {
            let kind = interp
                .generators
                .values()
                .next()
                .map(|m| m.kind())
                .unwrap_or(crate::theory::TheoryKind::FinFn);
            Morphism::symmetry_in(kind, a, b)
        }
    }
}

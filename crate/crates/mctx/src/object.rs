//! Strict monoidal objects: flat lists of named atoms.
//!
//! Objects are kept strict throughout: the tensor of two objects is list
//! concatenation and the unit is the empty list. Every atom carries the size
//! of its carrier set, so index arithmetic over tensor products never needs
//! an external signature.

use std::fmt;

/// A named atomic object together with the size of its carrier set.
///
/// Finite theories interpret an atom as the set `{0, .., carrier-1}`. The
/// free theory ignores the carrier (it is conventionally 1 there).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub name: String,
    pub carrier: usize,
}

impl Atom {
    pub fn new(name: impl Into<String>, carrier: usize) -> Self {
        assert!(carrier >= 1, "atom carrier must be positive");
        Atom { name: name.into(), carrier }
    }
}

/// An ordered list of atoms; the objects of a strict monoidal category.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ObjectList(pub Vec<Atom>);

impl ObjectList {
    /// The monoidal unit: the empty list.
    pub fn unit() -> Self {
        ObjectList(Vec::new())
    }

    pub fn single(atom: Atom) -> Self {
        ObjectList(vec![atom])
    }

    /// Builds an object of uniformly-sized atoms, handy in tests.
    pub fn of(names_and_carriers: &[(&str, usize)]) -> Self {
        ObjectList(names_and_carriers.iter().map(|(n, c)| Atom::new(*n, *c)).collect())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Tensor on objects is concatenation.
    pub fn tensor(&self, other: &ObjectList) -> ObjectList {
        let mut atoms = self.0.clone();
        atoms.extend(other.0.iter().cloned());
        ObjectList(atoms)
    }

    /// Tensor of several objects in order.
    pub fn tensor_all(parts: &[&ObjectList]) -> ObjectList {
        let mut atoms = Vec::new();
        for p in parts {
            atoms.extend(p.0.iter().cloned());
        }
        ObjectList(atoms)
    }

    /// Carrier of the whole list: the product of the atom carriers.
    /// The unit has carrier 1.
    pub fn carrier(&self) -> usize {
        self.0.iter().map(|a| a.carrier).product()
    }

    /// Splits `self` as `prefix ⊗ suffix` where `suffix` must match the given
    /// object exactly; returns the prefix. Used to recover residual types.
    pub fn strip_suffix(&self, suffix: &ObjectList) -> Option<ObjectList> {
        if suffix.len() > self.len() {
            return None;
        }
        let cut = self.len() - suffix.len();
        if self.0[cut..] == suffix.0[..] {
            Some(ObjectList(self.0[..cut].to_vec()))
        } else {
            None
        }
    }

    /// As `strip_suffix`, for a prefix.
    pub fn strip_prefix(&self, prefix: &ObjectList) -> Option<ObjectList> {
        if prefix.len() > self.len() {
            return None;
        }
        if self.0[..prefix.len()] == prefix.0[..] {
            Some(ObjectList(self.0[prefix.len()..].to_vec()))
        } else {
            None
        }
    }

    /// Mixed-radix decoding of a point of the carrier set into per-atom
    /// digits, leftmost atom most significant.
    pub fn decode(&self, index: usize) -> Vec<usize> {
        debug_assert!(index < self.carrier());
        let mut digits = vec![0; self.len()];
        let mut rest = index;
        for (k, atom) in self.0.iter().enumerate().rev() {
            digits[k] = rest % atom.carrier;
            rest /= atom.carrier;
        }
        digits
    }

    /// Mixed-radix encoding; inverse of [`ObjectList::decode`].
    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.len());
        let mut index = 0;
        for (atom, d) in self.0.iter().zip(digits) {
            debug_assert!(*d < atom.carrier);
            index = index * atom.carrier + d;
        }
        index
    }
}

impl fmt::Display for ObjectList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "I");
        }
        let names: Vec<&str> = self.0.iter().map(|a| a.name.as_str()).collect();
        write!(f, "{}", names.join("⊗"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_is_concatenation_and_unit_is_empty() {
        let a = ObjectList::of(&[("A", 2)]);
        let b = ObjectList::of(&[("B", 3)]);
        let ab = a.tensor(&b);
        assert_eq!(ab.len(), 2);
        assert_eq!(ab.carrier(), 6);
        assert_eq!(a.tensor(&ObjectList::unit()), a);
        assert_eq!(ObjectList::unit().carrier(), 1);
    }

    #[test]
    fn mixed_radix_roundtrip() {
        let obj = ObjectList::of(&[("A", 2), ("B", 3), ("C", 2)]);
        for i in 0..obj.carrier() {
            assert_eq!(obj.encode(&obj.decode(i)), i);
        }
        // leftmost most significant: (1,0,0) encodes to 6 = 1*3*2
        assert_eq!(obj.encode(&[1, 0, 0]), 6);
    }

    #[test]
    fn prefix_suffix_stripping() {
        let m = ObjectList::of(&[("M", 2)]);
        let x = ObjectList::of(&[("X", 3)]);
        let mx = m.tensor(&x);
        assert_eq!(mx.strip_suffix(&x), Some(m.clone()));
        assert_eq!(mx.strip_prefix(&m), Some(x.clone()));
        assert_eq!(mx.strip_suffix(&m), None);
    }
}

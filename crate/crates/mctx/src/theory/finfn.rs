//! Finite functions between carrier sets: the concrete cartesian theory.
//!
//! A morphism is a lookup table over mixed-radix encoded points. Tensor
//! carriers use row-major encoding with the leftmost atom most significant,
//! so `index(a ⊗ b) = index(a) * carrier(b) + index(b)`.

use crate::error::{Error, Result};
use crate::object::ObjectList;

/// A function `dom → cod` between finite carriers, tabulated pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFnMorphism {
    pub dom: ObjectList,
    pub cod: ObjectList,
    pub table: Vec<usize>,
}

impl FinFnMorphism {
    pub fn new(dom: ObjectList, cod: ObjectList, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.carrier() {
            return Err(Error::Protocol(format!(
                "finfn table length {} does not match domain carrier {}",
                table.len(),
                dom.carrier()
            )));
        }
        let bound = cod.carrier();
        for (position, &entry) in table.iter().enumerate() {
            if entry >= bound {
                return Err(Error::TableEntry { entry, position, carrier: bound });
            }
        }
        Ok(FinFnMorphism { dom, cod, table })
    }

    pub fn identity(obj: &ObjectList) -> Self {
        FinFnMorphism {
            dom: obj.clone(),
            cod: obj.clone(),
            table: (0..obj.carrier()).collect(),
        }
    }

    pub fn compose(&self, other: &FinFnMorphism) -> Result<FinFnMorphism> {
        if self.cod != other.dom {
            return Err(Error::TypeMismatch { expected: self.cod.clone(), found: other.dom.clone() });
        }
        let table = self.table.iter().map(|&i| other.table[i]).collect();
        Ok(FinFnMorphism { dom: self.dom.clone(), cod: other.cod.clone(), table })
    }

    pub fn tensor(&self, other: &FinFnMorphism) -> FinFnMorphism {
        let dom = self.dom.tensor(&other.dom);
        let cod = self.cod.tensor(&other.cod);
        let dc = other.dom.carrier();
        let cc = other.cod.carrier();
        let mut table = Vec::with_capacity(dom.carrier());
        for &l in &self.table {
            for &r in &other.table {
                table.push(l * cc + r);
            }
        }
        // row-major pairing: index = left * carrier(right.dom) + right
        debug_assert_eq!(table.len(), self.table.len() * dc);
        FinFnMorphism { dom, cod, table }
    }

    /// The braiding `a ⊗ b → b ⊗ a` as a permutation table.
    pub fn symmetry(a: &ObjectList, b: &ObjectList) -> FinFnMorphism {
        let ca = a.carrier();
        let cb = b.carrier();
        let mut table = Vec::with_capacity(ca * cb);
        for i in 0..ca {
            for j in 0..cb {
                table.push(j * ca + i);
            }
        }
        FinFnMorphism { dom: a.tensor(b), cod: b.tensor(a), table }
    }

    /// Diagonal `a → a ⊗ a` of the cartesian structure.
    pub fn copy(a: &ObjectList) -> FinFnMorphism {
        let c = a.carrier();
        FinFnMorphism {
            dom: a.clone(),
            cod: a.tensor(a),
            table: (0..c).map(|i| i * c + i).collect(),
        }
    }

    /// Terminal map `a → I`.
    pub fn discard(a: &ObjectList) -> FinFnMorphism {
        FinFnMorphism { dom: a.clone(), cod: ObjectList::unit(), table: vec![0; a.carrier()] }
    }

    /// Projection `left ⊗ mid ⊗ right → mid` extracting the middle block.
    pub fn project(left: &ObjectList, mid: &ObjectList, right: &ObjectList) -> FinFnMorphism {
        let dom = ObjectList::tensor_all(&[left, mid, right]);
        let (cl, cm, cr) = (left.carrier(), mid.carrier(), right.carrier());
        let mut table = Vec::with_capacity(cl * cm * cr);
        for _l in 0..cl {
            for m in 0..cm {
                for _r in 0..cr {
                    table.push(m);
                }
            }
        }
        FinFnMorphism { dom, cod: mid.clone(), table }
    }

    /// Constant map picking one point of the codomain.
    pub fn constant(dom: &ObjectList, cod: &ObjectList, point: usize) -> Result<FinFnMorphism> {
        FinFnMorphism::new(dom.clone(), cod.clone(), vec![point; dom.carrier()])
    }
}

/// All function tables `a → b` in a fixed deterministic order (the table seen
/// as a base-`carrier(b)` number, counting up). Errors out above `limit`
/// tables rather than attempting an astronomically large enumeration.
pub fn enumerate_hom(a: &ObjectList, b: &ObjectList, limit: usize) -> Result<Vec<FinFnMorphism>> {
    let ca = a.carrier();
    let cb = b.carrier();
    let mut count: usize = 1;
    for _ in 0..ca {
        count = count.checked_mul(cb).filter(|&c| c <= limit).ok_or_else(|| {
            Error::NotEnumerable(format!("|{b}|^|{a}| = {cb}^{ca} exceeds limit {limit}"))
        })?;
    }
    let mut out = Vec::with_capacity(count);
    let mut table = vec![0usize; ca];
    loop {
        out.push(FinFnMorphism { dom: a.clone(), cod: b.clone(), table: table.clone() });
        // increment rightmost-fastest
        let mut k = ca;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            table[k] += 1;
            if table[k] < cb {
                break;
            }
            table[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> ObjectList {
        ObjectList::of(&[("B", 2)])
    }

    #[test]
    fn compose_copy_then_and() {
        // copy: 2 -> 4 as [0,3]; AND: 4 -> 2 as [0,0,0,1]; composite [0,1]
        let four = two().tensor(&two());
        let copy = FinFnMorphism::new(two(), four.clone(), vec![0, 3]).unwrap();
        let and = FinFnMorphism::new(four, two(), vec![0, 0, 0, 1]).unwrap();
        let composite = copy.compose(&and).unwrap();
        assert_eq!(composite.table, vec![0, 1]);
    }

    #[test]
    fn tensor_not_not() {
        let not = FinFnMorphism::new(two(), two(), vec![1, 0]).unwrap();
        let nn = not.tensor(&not);
        assert_eq!(nn.table, vec![3, 2, 1, 0]);
    }

    #[test]
    fn symmetry_2_3_permutation() {
        // carriers 2,3: index 3i+j goes to 2j+i
        let a = ObjectList::of(&[("A", 2)]);
        let b = ObjectList::of(&[("B", 3)]);
        let s = FinFnMorphism::symmetry(&a, &b);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(s.table[3 * i + j], 2 * j + i);
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        let one = ObjectList::of(&[("U", 1)]);
        assert_eq!(enumerate_hom(&one, &two(), 1 << 20).unwrap().len(), 2);
        assert_eq!(enumerate_hom(&two(), &ObjectList::unit(), 1 << 20).unwrap().len(), 1);
        let homs = enumerate_hom(&two(), &two(), 1 << 20).unwrap();
        let tables: Vec<Vec<usize>> = homs.into_iter().map(|m| m.table).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn bad_entry_rejected() {
        assert!(FinFnMorphism::new(two(), two(), vec![0, 2]).is_err());
    }
}

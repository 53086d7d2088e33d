//! Finite stochastic maps with exact rational entries.
//!
//! A morphism is a row-stochastic matrix: `carrier(dom)` rows by
//! `carrier(cod)` columns, every entry nonnegative, every row summing to
//! exactly 1. Composition is the exact matrix product and tensor is the
//! Kronecker product, indexed consistently with the finite-function theory.

use crate::error::{Error, Result};
use crate::object::ObjectList;
use crate::rational::{format_ratio, one, zero, Rational};
use crate::theory::finfn::FinFnMorphism;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinStochMorphism {
    pub dom: ObjectList,
    pub cod: ObjectList,
    /// `matrix[i][j]` is the probability of `j` given `i`.
    pub matrix: Vec<Vec<Rational>>,
}

impl FinStochMorphism {
    pub fn new(dom: ObjectList, cod: ObjectList, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        if matrix.len() != dom.carrier() {
            return Err(Error::Protocol(format!(
                "stochastic matrix has {} rows, domain carrier is {}",
                matrix.len(),
                dom.carrier()
            )));
        }
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != cod.carrier() {
                return Err(Error::Protocol(format!(
                    "stochastic matrix row {} has {} columns, codomain carrier is {}",
                    row,
                    r.len(),
                    cod.carrier()
                )));
            }
            let mut sum = zero();
            for entry in r {
                if entry < &zero() {
                    return Err(Error::Protocol(format!("negative probability {}", format_ratio(entry))));
                }
                sum += entry;
            }
            if sum != one() {
                return Err(Error::RowSum { row, sum: format_ratio(&sum) });
            }
        }
        Ok(FinStochMorphism { dom, cod, matrix })
    }

    pub fn identity(obj: &ObjectList) -> Self {
        let c = obj.carrier();
        let matrix = (0..c)
            .map(|i| (0..c).map(|j| if i == j { one() } else { zero() }).collect())
            .collect();
        FinStochMorphism { dom: obj.clone(), cod: obj.clone(), matrix }
    }

    /// Embeds a deterministic table as a 0/1 stochastic matrix.
    pub fn from_table(f: &FinFnMorphism) -> Self {
        let cols = f.cod.carrier();
        let matrix = f
            .table
            .iter()
            .map(|&j| (0..cols).map(|k| if k == j { one() } else { zero() }).collect())
            .collect();
        FinStochMorphism { dom: f.dom.clone(), cod: f.cod.clone(), matrix }
    }

    pub fn compose(&self, other: &FinStochMorphism) -> Result<FinStochMorphism> {
        if self.cod != other.dom {
            return Err(Error::TypeMismatch { expected: self.cod.clone(), found: other.dom.clone() });
        }
        let rows = self.dom.carrier();
        let cols = other.cod.carrier();
        let mut matrix = vec![vec![zero(); cols]; rows];
        for (out_row, self_row) in matrix.iter_mut().zip(&self.matrix) {
            for (p, other_row) in self_row.iter().zip(&other.matrix) {
                if p.is_zero() {
                    continue;
                }
                for (out, q) in out_row.iter_mut().zip(other_row) {
                    if !q.is_zero() {
                        *out += p * q;
                    }
                }
            }
        }
        Ok(FinStochMorphism { dom: self.dom.clone(), cod: other.cod.clone(), matrix })
    }

    pub fn tensor(&self, other: &FinStochMorphism) -> FinStochMorphism {
        let dom = self.dom.tensor(&other.dom);
        let cod = self.cod.tensor(&other.cod);
        let (r2, c2) = (other.dom.carrier(), other.cod.carrier());
        let mut matrix = Vec::with_capacity(dom.carrier());
        for row1 in &self.matrix {
            for row2 in &other.matrix {
                let mut row = Vec::with_capacity(cod.carrier());
                for a in row1 {
                    for b in row2 {
                        row.push(a * b);
                    }
                }
                matrix.push(row);
            }
        }
        debug_assert_eq!(matrix.len(), self.matrix.len() * r2);
        debug_assert!(matrix.is_empty() || matrix[0].len() == self.matrix[0].len() * c2);
        FinStochMorphism { dom, cod, matrix }
    }

    pub fn symmetry(a: &ObjectList, b: &ObjectList) -> FinStochMorphism {
        FinStochMorphism::from_table(&FinFnMorphism::symmetry(a, b))
    }
}

/// Finite probing family standing in for the infinite hom set, used by
/// dinaturality oracles: every deterministic map, the uniform map, and each
/// deterministic map mixed with uniform at weights with denominator at most 4.
pub fn probe_family(a: &ObjectList, b: &ObjectList, limit: usize) -> Result<Vec<FinStochMorphism>> {
    let deterministic = crate::theory::finfn::enumerate_hom(a, b, limit)?;
    let cb = b.carrier();
    if cb == 1 {
        // every map into a one-point carrier coincides
        return Ok(vec![FinStochMorphism::from_table(&deterministic[0])]);
    }
    let uniform_row: Vec<Rational> = (0..cb).map(|_| Rational::new(1.into(), (cb as i64).into())).collect();
    let uniform = FinStochMorphism {
        dom: a.clone(),
        cod: b.clone(),
        matrix: (0..a.carrier()).map(|_| uniform_row.clone()).collect(),
    };
    let weights = [
        Rational::new(1.into(), 4.into()),
        Rational::new(1.into(), 3.into()),
        Rational::new(1.into(), 2.into()),
        Rational::new(2.into(), 3.into()),
        Rational::new(3.into(), 4.into()),
    ];
    let mut out = Vec::new();
    for d in &deterministic {
        out.push(FinStochMorphism::from_table(d));
    }
    out.push(uniform.clone());
    for d in &deterministic {
        let det = FinStochMorphism::from_table(d);
        for w in &weights {
            let matrix = det
                .matrix
                .iter()
                .zip(&uniform.matrix)
                .map(|(dr, ur)| {
                    dr.iter()
                        .zip(ur)
                        .map(|(dp, up)| w * dp + (one() - w) * up)
                        .collect()
                })
                .collect();
            out.push(FinStochMorphism { dom: a.clone(), cod: b.clone(), matrix });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn two() -> ObjectList {
        ObjectList::of(&[("B", 2)])
    }

    #[test]
    fn coin_then_negation_is_still_fair() {
        let point = ObjectList::unit();
        let coin =
            FinStochMorphism::new(point.clone(), two(), vec![vec![ratio(1, 2), ratio(1, 2)]]).unwrap();
        let neg = FinStochMorphism::from_table(
            &FinFnMorphism::new(two(), two(), vec![1, 0]).unwrap(),
        );
        let out = coin.compose(&neg).unwrap();
        assert_eq!(out.matrix, vec![vec![ratio(1, 2), ratio(1, 2)]]);
    }

    #[test]
    fn rows_stay_stochastic_under_compose_and_tensor() {
        let m = FinStochMorphism::new(
            two(),
            two(),
            vec![vec![ratio(1, 3), ratio(2, 3)], vec![ratio(3, 4), ratio(1, 4)]],
        )
        .unwrap();
        let t = m.tensor(&m);
        let c = m.compose(&m).unwrap();
        for row in t.matrix.iter().chain(c.matrix.iter()) {
            let sum: Rational = row.iter().cloned().sum();
            assert_eq!(sum, one());
        }
    }

    #[test]
    fn bad_row_sum_rejected() {
        let err = FinStochMorphism::new(two(), two(), vec![vec![ratio(1, 2), ratio(1, 3)], vec![one(), zero()]]);
        assert!(err.is_err());
    }

    #[test]
    fn probe_family_is_deterministic_plus_mixtures() {
        let one_obj = ObjectList::of(&[("U", 1)]);
        let fam = probe_family(&one_obj, &two(), 1 << 10).unwrap();
        // 2 deterministic + 1 uniform + 2*5 mixtures
        assert_eq!(fam.len(), 13);
        for m in &fam {
            for row in &m.matrix {
                let sum: Rational = row.iter().cloned().sum();
                assert_eq!(sum, one());
            }
        }
    }
}

//! Conjugacy classes, class functions (the model of `R(G) ⊗ C`) and
//! coordinate localization at a class.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{FiniteGroup, Subgroup};
use crate::exact::CycNumber;

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
    pub centralizer: Subgroup,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// All conjugacy classes of a group, ordered by canonical representative
/// (the smallest member index), so the identity class comes first.
#[derive(Clone, Debug)]
pub struct ClassTable {
    group_order: usize,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ClassTable {
    pub fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut assigned = vec![usize::MAX; n];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for h in 0..n {
            if assigned[h] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n).map(|k| g.conjugate(h, k)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &x in &orbit {
                assigned[x] = raw.len();
            }
            raw.push(orbit);
        }
        let mut class_of = vec![0; n];
        let classes: Vec<ConjugacyClass> = raw
            .into_iter()
            .enumerate()
            .map(|(ci, members)| {
                for &x in &members {
                    class_of[x] = ci;
                }
                let representative = members[0];
                ConjugacyClass {
                    representative,
                    centralizer: g.centralizer(representative),
                    members,
                }
            })
            .collect();
        let inverse_class = classes.iter().map(|c| class_of[g.inv(c.representative)]).collect();
        Self {
            group_order: n,
            classes,
            class_of,
            inverse_class,
        }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &ConjugacyClass {
        &self.classes[i]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// Class function from a function on elements (assumed conjugation-invariant).
    pub fn class_function(&self, f: impl Fn(usize) -> CycNumber) -> ClassFunction {
        ClassFunction {
            values: self.classes.iter().map(|c| f(c.representative)).collect(),
        }
    }

    /// `(1/|G|) Σ_g a(g) · conj(b(g))`.
    pub fn inner_product(&self, a: &ClassFunction, b: &ClassFunction) -> CycNumber {
        let mut acc = CycNumber::zero();
        for (i, c) in self.classes.iter().enumerate() {
            let term = &a.values[i] * &b.values[i].conj();
            acc += &term.scale(&BigRational::from_integer(BigInt::from(c.size())));
        }
        acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.group_order)))
    }

    /// The indicator of class `c` (the idempotent of the maximal ideal `m_c`).
    pub fn indicator(&self, c: usize) -> ClassFunction {
        let mut values = vec![CycNumber::zero(); self.len()];
        values[c] = CycNumber::one();
        ClassFunction { values }
    }
}

/// An element of `R(G) ⊗ C`, as values on conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub values: Vec<CycNumber>,
}

impl ClassFunction {
    pub fn constant(classes: usize, c: CycNumber) -> Self {
        Self {
            values: vec![c; classes],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNumber::is_zero)
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        Self {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Mul for &ClassFunction {
    type Output = ClassFunction;
    fn mul(self, rhs: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect(),
        }
    }
}

/// Objects carrying a direct-sum decomposition indexed by conjugacy classes.
pub trait SectorDecomposable: Sized {
    /// The component supported at class `class`; all others zeroed.
    fn component(&self, class: usize) -> Self;
}

impl SectorDecomposable for ClassFunction {
    fn component(&self, class: usize) -> Self {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if i == class { v.clone() } else { CycNumber::zero() })
            .collect();
        ClassFunction { values }
    }
}

/// The conjugacy classes of `Z` that partition `Ψ ∩ Z`, as sorted member lists
/// in parent indices, ordered by their smallest member.
pub fn class_intersection(g: &FiniteGroup, z: &Subgroup, psi: &ConjugacyClass) -> Vec<Vec<usize>> {
    let mut parts: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut assigned: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in &psi.members {
        if !z.contains(x) || assigned.contains_key(&x) {
            continue;
        }
        let mut orbit: Vec<usize> = z.members().iter().map(|&k| g.conjugate(x, k)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            assigned.insert(y, orbit[0]);
        }
        parts.insert(orbit[0], orbit);
    }
    parts.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, Element};

    #[test]
    fn s3_classes() {
        let g = builtin("S3").unwrap();
        let t = ClassTable::new(&g);
        let sizes: Vec<usize> = t.classes().iter().map(ConjugacyClass::size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        for c in t.classes() {
            assert_eq!(c.size() * c.centralizer.order(), 6);
        }
    }

    #[test]
    fn trivial_and_abelian() {
        assert_eq!(ClassTable::new(&builtin("Z/1").unwrap()).len(), 1);
        let z4 = ClassTable::new(&builtin("Z/4").unwrap());
        assert_eq!(z4.len(), 4);
        assert!(z4.classes().iter().all(|c| c.size() == 1));
    }

    #[test]
    fn classes_partition_group() {
        for name in ["S4", "A4", "D4", "Q8"] {
            let g = builtin(name).unwrap();
            let t = ClassTable::new(&g);
            let mut all: Vec<usize> = t.classes().iter().flat_map(|c| c.members.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..g.order()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn localize_components() {
        let f = ClassFunction {
            values: vec![CycNumber::from_int(2), CycNumber::zero(), CycNumber::from_int(-1)],
        };
        assert!(f.component(1).is_zero());
        let ones = ClassFunction::constant(3, CycNumber::one());
        assert_eq!(
            ones.component(0).values,
            vec![CycNumber::one(), CycNumber::zero(), CycNumber::zero()]
        );
        let total = (0..3).map(|c| f.component(c)).reduce(|a, b| &a + &b).unwrap();
        assert_eq!(total, f);
        assert_eq!(f.component(2).component(2), f.component(2));
    }

    #[test]
    fn intersection_s3_transposition() {
        let g = builtin("S3").unwrap();
        let t = ClassTable::new(&g);
        let tr = g.index_of(&Element::Perm(vec![1, 0, 2])).unwrap();
        let z = g.centralizer(tr);
        let parts = class_intersection(&g, &z, t.class(t.class_of(tr)));
        assert_eq!(parts, vec![vec![tr]]);
        assert_eq!(class_intersection(&g, &z, t.class(0)), vec![vec![0]]);
    }

    #[test]
    fn intersection_klein_in_s4() {
        let g = builtin("S4").unwrap();
        let t = ClassTable::new(&g);
        let a = g.index_of(&Element::Perm(vec![1, 0, 3, 2])).unwrap();
        let b = g.index_of(&Element::Perm(vec![2, 3, 0, 1])).unwrap();
        let v4 = g.generated_subgroup(&[a, b]);
        let parts = class_intersection(&g, &v4, t.class(t.class_of(a)));
        assert_eq!(parts.len(), 3);
        assert!(parts.iter().all(|p| p.len() == 1));
    }
}

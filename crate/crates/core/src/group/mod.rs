//! Finite groups stored by full enumeration, with conjugacy classes, class
//! functions, explicit matrix representations and good-embedding checks.

mod builtins;
mod classes;
pub mod descriptor;
mod embedding;
mod rep;

pub use builtins::builtin;
pub use classes::{class_intersection, ClassFunction, ClassTable, ConjugacyClass, SectorDecomposable};
pub use embedding::{good_embedding_check, tensor_power_search, EmbeddingVerdict};
pub use rep::{hom_dimension, left_transversal, spanning_representations, MatrixRep};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::Matrix;

pub const DEFAULT_GROUP_CAP: usize = 2000;

/// A concrete group element: a permutation of `{0..n}` (images listed) or an
/// invertible matrix over a cyclotomic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Perm(Vec<u32>),
    Matrix(Matrix),
}

impl Element {
    /// `self · other`, acting on the left (`(a·b)(i) = a(b(i))` for permutations).
    fn compose(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Perm(a), Element::Perm(b)) => Element::Perm(b.iter().map(|&i| a[i as usize]).collect()),
            (Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a * b),
            _ => panic!("mixed element kinds"),
        }
    }

    fn identity_like(&self) -> Element {
        match self {
            Element::Perm(p) => Element::Perm((0..p.len() as u32).collect()),
            Element::Matrix(m) => Element::Matrix(Matrix::identity(m.rows())),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Perm(p) => {
                // cycle notation, 1-based
                let mut seen = vec![false; p.len()];
                let mut any = false;
                for s in 0..p.len() {
                    if seen[s] || p[s] as usize == s {
                        continue;
                    }
                    any = true;
                    write!(f, "(")?;
                    let mut i = s;
                    let mut first = true;
                    while !seen[i] {
                        seen[i] = true;
                        if !first {
                            write!(f, " ")?;
                        }
                        first = false;
                        write!(f, "{}", i + 1)?;
                        i = p[i] as usize;
                    }
                    write!(f, ")")?;
                }
                if !any {
                    write!(f, "e")?;
                }
                Ok(())
            }
            Element::Matrix(m) => write!(f, "{m}"),
        }
    }
}

/// A finite group given by its enumerated elements and multiplication table.
///
/// Element `0` is always the identity; the remaining elements are sorted by
/// their canonical form, so indices are deterministic.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    elements: Vec<Element>,
    table: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    exponent: u32,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Closure of the given generators, refusing groups larger than `cap`.
    pub fn generate(name: impl Into<String>, generators: Vec<Element>, cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("a group needs at least one generator".into()));
        }
        let kind_ok = generators.iter().all(|g| {
            std::mem::discriminant(g) == std::mem::discriminant(&generators[0])
                && match (g, &generators[0]) {
                    (Element::Perm(a), Element::Perm(b)) => a.len() == b.len(),
                    (Element::Matrix(a), Element::Matrix(b)) => a.is_square() && a.rows() == b.rows(),
                    _ => false,
                }
        });
        if !kind_ok {
            return Err(Error::Invalid("generators must share kind and size".into()));
        }
        for g in &generators {
            if let Element::Perm(p) = g {
                let mut seen = vec![false; p.len()];
                for &i in p {
                    if i as usize >= p.len() || std::mem::replace(&mut seen[i as usize], true) {
                        return Err(Error::Invalid(format!("not a permutation: {p:?}")));
                    }
                }
            }
        }
        let identity = generators[0].identity_like();
        let mut seen: HashMap<Element, ()> = HashMap::new();
        let mut queue = vec![identity.clone()];
        seen.insert(identity.clone(), ());
        let mut head = 0;
        while head < queue.len() {
            let g = queue[head].clone();
            head += 1;
            for s in &generators {
                let h = g.compose(s);
                if !seen.contains_key(&h) {
                    if queue.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            actual: queue.len() + 1,
                            limit: cap,
                        });
                    }
                    seen.insert(h.clone(), ());
                    queue.push(h);
                }
            }
        }
        let mut rest: Vec<Element> = queue.into_iter().filter(|e| *e != identity).collect();
        rest.sort();
        let mut elements = vec![identity];
        elements.extend(rest);
        Self::from_elements(name.into(), elements, &generators)
    }

    fn from_elements(name: String, elements: Vec<Element>, generators: &[Element]) -> Result<Self> {
        let n = elements.len();
        let index: HashMap<&Element, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let p = elements[i].compose(&elements[j]);
                let k = *index
                    .get(&p)
                    .ok_or_else(|| Error::Invalid("element set is not closed under multiplication".into()))?;
                table[i * n + j] = k as u32;
            }
        }
        let gens = generators.iter().map(|g| index[g]).collect();
        Ok(Self::from_table(name, elements, table, gens))
    }

    fn from_table(name: String, elements: Vec<Element>, table: Vec<u32>, generators: Vec<usize>) -> Self {
        let n = elements.len();
        let mut inverses = vec![0; n];
        for i in 0..n {
            inverses[i] = (0..n)
                .find(|&j| table[i * n + j] == 0)
                .expect("group element has an inverse");
        }
        let mut orders = vec![1u32; n];
        for i in 0..n {
            let mut k = 1;
            let mut acc = i;
            while acc != 0 {
                acc = table[acc * n + i] as usize;
                k += 1;
            }
            orders[i] = k;
        }
        let exponent = orders.iter().fold(1u32, |a, &b| a.lcm(&b));
        Self {
            name,
            elements,
            table,
            inverses,
            orders,
            exponent,
            generators,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `k · g · k⁻¹`.
    pub fn conjugate(&self, g: usize, k: usize) -> usize {
        self.mul(self.mul(k, g), self.inv(k))
    }

    pub fn pow(&self, g: usize, e: i64) -> usize {
        let o = self.orders[g] as i64;
        let e = e.rem_euclid(o);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> u32 {
        self.orders[g]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.commute(a, b)))
    }

    /// Exhaustive check of associativity, identity and inverses on the table.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.mul(a, b);
                (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
            })
        });
        let ident = (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let inv = (0..n).all(|a| self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0);
        let exp = (0..n).all(|a| self.exponent.is_multiple_of(self.orders[a]));
        assoc && ident && inv && exp
    }

    /// `{g : gh = hg}` as a subgroup.
    pub fn centralizer(&self, h: usize) -> Subgroup {
        let members = (0..self.order()).filter(|&g| self.commute(g, h)).collect();
        self.subgroup(members).expect("centralizers are subgroups")
    }

    /// The subgroup generated by the given elements.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut members = vec![0usize];
        let mut in_set = vec![false; self.order()];
        in_set[0] = true;
        let mut head = 0;
        while head < members.len() {
            let g = members[head];
            head += 1;
            for &s in gens {
                let h = self.mul(g, s);
                if !in_set[h] {
                    in_set[h] = true;
                    members.push(h);
                }
            }
        }
        members.sort_unstable();
        self.subgroup(members).expect("closure is a subgroup")
    }

    /// Wraps a set of element indices (must be a subgroup) as a standalone group.
    pub fn subgroup(&self, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::Invalid("subgroup must contain the identity".into()));
        }
        let n = members.len();
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut table = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                let p = self.mul(a, b);
                let k = *local
                    .get(&p)
                    .ok_or_else(|| Error::Invalid("element set is not closed under multiplication".into()))?;
                table[i * n + j] = k as u32;
            }
        }
        let elements: Vec<Element> = members.iter().map(|&g| self.elements[g].clone()).collect();
        // greedy generating set, deterministic
        let mut gens: Vec<usize> = Vec::new();
        let mut covered = vec![false; n];
        covered[0] = true;
        for i in 1..n {
            if covered[i] {
                continue;
            }
            gens.push(i);
            let mut span = vec![0usize];
            let mut mark = vec![false; n];
            mark[0] = true;
            let mut head = 0;
            while head < span.len() {
                let g = span[head];
                head += 1;
                for &s in &gens {
                    let h = table[g * n + s] as usize;
                    if !mark[h] {
                        mark[h] = true;
                        span.push(h);
                    }
                }
            }
            covered = mark;
        }
        let name = format!("{}-subgroup[{}]", self.name, n);
        let group = FiniteGroup::from_table(name, elements, table, gens);
        Ok(Subgroup {
            members,
            group: Arc::new(group),
        })
    }

    /// All subgroups, found as closures of pairs of elements (every subgroup of
    /// the desk-scale fixtures is 2-generated); deduplicated and sorted.
    pub fn two_generated_subgroups(&self) -> Vec<Subgroup> {
        let n = self.order();
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                let s = self.generated_subgroup(&[a, b]);
                if seen.insert(s.members.clone(), ()).is_none() {
                    out.push(s);
                }
            }
        }
        out.sort_by(|x, y| (x.order(), &x.members).cmp(&(y.order(), &y.members)));
        out
    }

    /// Representatives of subgroup conjugacy classes among 2-generated subgroups.
    pub fn subgroup_class_representatives(&self) -> Vec<Subgroup> {
        let all = self.two_generated_subgroups();
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut reps = Vec::new();
        for s in all {
            if seen.contains_key(&s.members) {
                continue;
            }
            for k in 0..self.order() {
                let mut conj: Vec<usize> = s.members.iter().map(|&g| self.conjugate(g, k)).collect();
                conj.sort_unstable();
                seen.insert(conj, ());
            }
            reps.push(s);
        }
        reps
    }

    /// Cyclic subgroups, one per distinct subgroup, with a chosen generator.
    pub fn cyclic_subgroups(&self) -> Vec<(usize, Subgroup)> {
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut out = Vec::new();
        for g in 0..self.order() {
            let s = self.generated_subgroup(&[g]);
            if seen.insert(s.members.clone(), ()).is_none() {
                out.push((g, s));
            }
        }
        out
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }
}

/// A subgroup, remembered both as indices into the parent group and as a
/// standalone group whose element `i` is parent element `members[i]`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    group: Arc<FiniteGroup>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, parent_elem: usize) -> bool {
        self.members.binary_search(&parent_elem).is_ok()
    }

    /// Parent index of a local element.
    pub fn to_parent(&self, local: usize) -> usize {
        self.members[local]
    }

    /// Local index of a parent element, if it belongs to the subgroup.
    pub fn to_local(&self, parent_elem: usize) -> Option<usize> {
        self.members.binary_search(&parent_elem).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let g = builtin("S3").unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.check_axioms());
        assert_eq!(g.exponent(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn centralizer_of_transposition() {
        let g = builtin("S3").unwrap();
        let t = g.index_of(&Element::Perm(vec![1, 0, 2])).unwrap();
        let z = g.centralizer(t);
        assert_eq!(z.order(), 2);
        assert!(z.contains(t));
        assert_eq!(g.centralizer(0).order(), 6);
    }

    #[test]
    fn abelian_centralizers_are_everything() {
        let g = builtin("Z/6").unwrap();
        for h in 0..6 {
            assert_eq!(g.centralizer(h).order(), 6);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::generate(
            "S5",
            vec![Element::Perm(vec![1, 2, 3, 4, 0]), Element::Perm(vec![1, 0, 2, 3, 4])],
            100,
        )
        .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn s4_subgroup_classes() {
        let g = builtin("S4").unwrap();
        // 11 conjugacy classes of subgroups in S4.
        assert_eq!(g.subgroup_class_representatives().len(), 11);
        let sizes: Vec<usize> = g.subgroup_class_representatives().iter().map(Subgroup::order).collect();
        assert_eq!(sizes, vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
    }

    #[test]
    fn subgroup_generators_generate() {
        let g = builtin("S4").unwrap();
        for s in g.two_generated_subgroups() {
            let gens: Vec<usize> = s.group().generators().iter().map(|&l| s.to_parent(l)).collect();
            assert_eq!(g.generated_subgroup(&gens).members(), s.members());
        }
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{EquivariantMap, GSet};
use crate::error::{Error, Result};
use crate::exact::CycNumber;
use crate::group::SectorDecomposable;

/// The global stabilizer `S_X` with `G` acting by `k·(g, x) = (kgk⁻¹, kx)`.
#[derive(Debug)]
pub struct StabilizerPairSet {
    base: Arc<GSet>,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

pub fn build_stabilizer(x: Arc<GSet>) -> Arc<StabilizerPairSet> {
    let g = x.group();
    let mut pairs = Vec::new();
    for a in 0..g.order() {
        for p in x.fixed_points(a) {
            pairs.push((a, p));
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &q)| (q, i)).collect();
    let mut orbit_of = vec![usize::MAX; pairs.len()];
    let mut orbits = Vec::new();
    for i in 0..pairs.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let (a, p) = pairs[i];
        let mut orbit: Vec<usize> = (0..g.order())
            .map(|k| index[&(g.conjugate(a, k), x.act(k, p))])
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &j in &orbit {
            orbit_of[j] = orbits.len();
        }
        orbits.push(orbit);
    }
    Arc::new(StabilizerPairSet {
        base: x,
        pairs,
        index,
        orbits,
        orbit_of,
    })
}

impl StabilizerPairSet {
    pub fn base(&self) -> &Arc<GSet> {
        &self.base
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, g: usize, x: usize) -> Option<usize> {
        self.index.get(&(g, x)).copied()
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    /// Pair indices in the slice `S_Ψ`.
    pub fn slice(&self, class: usize) -> Vec<usize> {
        let t = self.base.classes();
        (0..self.pairs.len())
            .filter(|&i| t.class_of(self.pairs[i].0) == class)
            .collect()
    }
}

/// A G-invariant function on `S_X`, the model of an element of `G₀(G, X) ⊗ C`.
#[derive(Clone, Debug)]
pub struct StabilizerClass {
    carrier: Arc<StabilizerPairSet>,
    values: Vec<CycNumber>,
}

impl StabilizerClass {
    /// Builds a class from a function on pairs, checking G-invariance.
    pub fn new(carrier: Arc<StabilizerPairSet>, f: impl Fn(usize, usize) -> CycNumber) -> Result<Self> {
        let values = carrier.pairs.iter().map(|&(g, x)| f(g, x)).collect();
        let c = Self { carrier, values };
        c.check_invariance()?;
        Ok(c)
    }

    /// Builds a class from values per pair orbit (so invariant by construction).
    pub fn from_orbit_values(carrier: Arc<StabilizerPairSet>, orbit_values: &[CycNumber]) -> Self {
        let values = (0..carrier.len())
            .map(|i| orbit_values[carrier.orbit_of(i)].clone())
            .collect();
        Self { carrier, values }
    }

    pub(crate) fn from_values(carrier: Arc<StabilizerPairSet>, values: Vec<CycNumber>) -> Self {
        debug_assert_eq!(values.len(), carrier.len());
        Self { carrier, values }
    }

    pub fn constant(carrier: Arc<StabilizerPairSet>, c: CycNumber) -> Self {
        let values = vec![c; carrier.len()];
        Self { carrier, values }
    }

    pub fn zero(carrier: Arc<StabilizerPairSet>) -> Self {
        Self::constant(carrier, CycNumber::zero())
    }

    fn check_invariance(&self) -> Result<()> {
        let x = &self.carrier.base;
        let g = x.group();
        for (i, &(a, p)) in self.carrier.pairs.iter().enumerate() {
            for &k in g.generators() {
                let j = self.carrier.index[&(g.conjugate(a, k), x.act(k, p))];
                if self.values[j] != self.values[i] {
                    return Err(Error::Invalid(format!("class is not G-invariant at pair ({a}, {p})")));
                }
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> &Arc<StabilizerPairSet> {
        &self.carrier
    }

    pub fn base(&self) -> &Arc<GSet> {
        &self.carrier.base
    }

    /// Value at `(g, x)`; zero when `g` does not fix `x`.
    pub fn value(&self, g: usize, x: usize) -> CycNumber {
        self.carrier
            .index_of(g, x)
            .map_or_else(CycNumber::zero, |i| self.values[i].clone())
    }

    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNumber::is_zero)
    }

    fn same_carrier(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier.pairs == other.carrier.pairs
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_carrier(other), "classes live on different sets");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Self {
            carrier: self.carrier.clone(),
            values,
        }
    }

    /// Pointwise product (the tensor product of sheaves).
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_carrier(other), "classes live on different sets");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Self {
            carrier: self.carrier.clone(),
            values,
        }
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        Self {
            carrier: self.carrier.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Values rewritten through a function of `(g, x, value)`.
    pub fn map_values(&self, f: impl Fn(usize, usize, &CycNumber) -> CycNumber) -> Self {
        let values = self
            .carrier
            .pairs
            .iter()
            .zip(&self.values)
            .map(|(&(g, x), v)| f(g, x, v))
            .collect();
        Self {
            carrier: self.carrier.clone(),
            values,
        }
    }

    /// Every component `α_Ψ`, indexed by class.
    pub fn decompose(&self) -> Vec<StabilizerClass> {
        (0..self.base().classes().len()).map(|c| self.component(c)).collect()
    }

    /// Classes whose component is nonzero.
    pub fn support(&self) -> Vec<usize> {
        let t = self.base().classes();
        let mut s: Vec<usize> = self
            .carrier
            .pairs
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(g, _), _)| t.class_of(g))
            .collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Action of a class function of `G` (an element of `R(G) ⊗ C`).
    pub fn act_by(&self, r: &crate::group::ClassFunction) -> Self {
        let t = self.base().classes();
        self.map_values(|g, _, v| v * &r.values[t.class_of(g)])
    }
}

impl PartialEq for StabilizerClass {
    fn eq(&self, other: &Self) -> bool {
        self.same_carrier(other) && self.values == other.values
    }
}

impl Eq for StabilizerClass {}

impl SectorDecomposable for StabilizerClass {
    fn component(&self, class: usize) -> Self {
        let t = self.base().classes();
        self.map_values(|g, _, v| {
            if t.class_of(g) == class {
                v.clone()
            } else {
                CycNumber::zero()
            }
        })
    }
}

impl Serialize for StabilizerClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            g: usize,
            x: usize,
            value: &'a CycNumber,
        }
        let entries: Vec<Entry> = self
            .carrier
            .pairs
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(&(g, x), value)| Entry { g, x, value })
            .collect();
        entries.serialize(s)
    }
}

/// `(q_*β)(g, x) = Σ_{q(x') = x, gx' = x'} β(g, x')`.
pub fn pushforward(
    q: &EquivariantMap,
    target_pairs: Arc<StabilizerPairSet>,
    beta: &StabilizerClass,
) -> StabilizerClass {
    assert!(
        Arc::ptr_eq(&target_pairs.base, &q.target),
        "pair set must be built on the target"
    );
    let mut values = vec![CycNumber::zero(); target_pairs.len()];
    for (&(g, xp), v) in beta.carrier.pairs.iter().zip(&beta.values) {
        if v.is_zero() {
            continue;
        }
        let i = target_pairs.index[&(g, q.apply(xp))];
        values[i] += v;
    }
    StabilizerClass {
        carrier: target_pairs,
        values,
    }
}

/// `(q*α)(g, x') = α(g, q(x'))`.
pub fn pullback(q: &EquivariantMap, source_pairs: Arc<StabilizerPairSet>, alpha: &StabilizerClass) -> StabilizerClass {
    assert!(
        Arc::ptr_eq(&source_pairs.base, &q.source),
        "pair set must be built on the source"
    );
    let values = source_pairs
        .pairs
        .iter()
        .map(|&(g, xp)| alpha.value(g, q.apply(xp)))
        .collect();
    StabilizerClass {
        carrier: source_pairs,
        values,
    }
}

/// `α ↦ (1/|G_x|) Σ_{g ∈ G_x} α(g, x)`, one value per orbit of `X`.
pub fn invariants(alpha: &StabilizerClass) -> Vec<CycNumber> {
    let x = alpha.base();
    (0..x.orbits().len())
        .map(|o| {
            let rep = x.orbit_rep(o);
            let stab = x.stabilizer_elements(rep);
            let sum: CycNumber = stab.iter().map(|&g| alpha.value(g, rep)).sum();
            sum.scale(&BigRational::new(BigInt::from(1), BigInt::from(stab.len())))
        })
        .collect()
}

impl GSet {
    /// Elements fixing `x`, as parent indices.
    pub fn stabilizer_elements(&self, x: usize) -> Vec<usize> {
        (0..self.group().order()).filter(|&g| self.act(g, x) == x).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, Element};
    use crate::gset::GroupData;

    fn s3_natural() -> Arc<GSet> {
        Arc::new(GSet::natural(GroupData::new(builtin("S3").unwrap())).unwrap())
    }

    #[test]
    fn s3_natural_pairs() {
        let x = s3_natural();
        let s = build_stabilizer(x.clone());
        assert_eq!(s.len(), 6);
        assert_eq!(s.orbits().len(), 2);
        let g = x.group();
        let t12 = g.index_of(&Element::Perm(vec![1, 0, 2])).unwrap();
        assert!(s.index_of(t12, 2).is_some());
        assert!(s.index_of(t12, 0).is_none());
    }

    #[test]
    fn trivial_and_free_actions() {
        let z2 = GroupData::new(builtin("Z/2").unwrap());
        let s = build_stabilizer(Arc::new(GSet::point(z2)));
        assert_eq!((s.len(), s.orbits().len()), (2, 2));
        let s3 = GroupData::new(builtin("S3").unwrap());
        let s = build_stabilizer(Arc::new(GSet::regular(s3)));
        assert_eq!(s.len(), 6);
        assert!(s.pairs().iter().all(|&(g, _)| g == 0));
        assert_eq!(s.orbits().len(), 1);
    }

    #[test]
    fn permutation_character_by_pushforward() {
        let x = s3_natural();
        let q = EquivariantMap::to_point(x.clone());
        let sx = build_stabilizer(x.clone());
        let spt = build_stabilizer(q.target.clone());
        let one = StabilizerClass::constant(sx, CycNumber::one());
        let pushed = pushforward(&q, spt, &one);
        let t = x.classes();
        let vals: Vec<CycNumber> = t.classes().iter().map(|c| pushed.value(c.representative, 0)).collect();
        assert_eq!(vals, vec![CycNumber::from_int(3), CycNumber::one(), CycNumber::zero()]);
    }

    #[test]
    fn regular_character_by_pushforward() {
        let d = GroupData::new(builtin("S3").unwrap());
        let x = Arc::new(GSet::regular(d));
        let q = EquivariantMap::to_point(x.clone());
        let one = StabilizerClass::constant(build_stabilizer(x), CycNumber::one());
        let pushed = pushforward(&q, build_stabilizer(q.target.clone()), &one);
        assert_eq!(pushed.value(0, 0), CycNumber::from_int(6));
        assert!((1..6).all(|g| pushed.value(g, 0).is_zero()));
    }

    #[test]
    fn decomposition_of_constant() {
        let x = s3_natural();
        let one = StabilizerClass::constant(build_stabilizer(x.clone()), CycNumber::one());
        let parts = one.decompose();
        // classes: identity, transpositions, 3-cycles
        assert_eq!(parts[0].values().iter().filter(|v| v.is_one()).count(), 3);
        assert_eq!(parts[1].values().iter().filter(|v| v.is_one()).count(), 3);
        assert!(parts[2].is_zero());
        let total = parts.iter().skip(1).fold(parts[0].clone(), |a, b| a.add(b));
        assert_eq!(total, one);
        assert_eq!(invariants(&one), vec![CycNumber::one()]);
    }

    #[test]
    fn invariance_is_enforced() {
        let x = s3_natural();
        let s = build_stabilizer(x);
        assert!(StabilizerClass::new(s, |_, p| CycNumber::from_int(p as i64)).is_err());
    }
}

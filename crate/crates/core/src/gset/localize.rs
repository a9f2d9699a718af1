//! Morita transport, global-stabilizer slices, central summands, twisting and
//! the finite-set localization and invariant-sector identities.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{build_stabilizer, invariants, pullback, pushforward, EquivariantMap, GSet, GroupData};
use super::{StabilizerClass, StabilizerPairSet};
use crate::error::{Error, Result};
use crate::exact::CycNumber;
use crate::group::{SectorDecomposable, Subgroup};

/// The mixed space `G ×_Z W = (G × W) / ((k, w) ~ (kz⁻¹, zw))` as a G-set.
#[derive(Debug)]
pub struct MixedSpace {
    pub set: Arc<GSet>,
    pub pairs: Arc<StabilizerPairSet>,
    subgroup: Subgroup,
    fiber: Arc<GSet>,
    fiber_pairs: Arc<StabilizerPairSet>,
    reps: Vec<(usize, usize)>,
    point_of: HashMap<(usize, usize), usize>,
}

impl MixedSpace {
    /// `fiber` must be a set over the standalone group of `subgroup`.
    pub fn new(data: Arc<GroupData>, subgroup: Subgroup, fiber: Arc<GSet>) -> Result<Self> {
        let g = &data.group;
        if fiber.group().order() != subgroup.order() {
            return Err(Error::Invalid("fiber must be acted on by the subgroup".into()));
        }
        let mut canon: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for k in 0..g.order() {
            for w in 0..fiber.points() {
                let c = (0..subgroup.order())
                    .map(|zl| (g.mul(k, g.inv(subgroup.to_parent(zl))), fiber.act(zl, w)))
                    .min()
                    .expect("subgroup is nonempty");
                canon.insert((k, w), c);
            }
        }
        let mut reps: Vec<(usize, usize)> = canon.values().copied().collect();
        reps.sort_unstable();
        reps.dedup();
        let rep_index: HashMap<(usize, usize), usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let point_of: HashMap<(usize, usize), usize> = canon.iter().map(|(&kw, c)| (kw, rep_index[c])).collect();
        let action = (0..g.order())
            .map(|a| reps.iter().map(|&(k, w)| point_of[&(g.mul(a, k), w)]).collect())
            .collect();
        let set = Arc::new(GSet::new(data, reps.len(), action)?);
        let pairs = build_stabilizer(set.clone());
        let fiber_pairs = build_stabilizer(fiber.clone());
        Ok(Self {
            set,
            pairs,
            subgroup,
            fiber,
            fiber_pairs,
            reps,
            point_of,
        })
    }

    /// The point `[k, w]`.
    pub fn point(&self, k: usize, w: usize) -> usize {
        self.point_of[&(k, w)]
    }

    /// Canonical `(k, w)` representing a point.
    pub fn rep(&self, p: usize) -> (usize, usize) {
        self.reps[p]
    }

    pub fn fiber(&self) -> &Arc<GSet> {
        &self.fiber
    }

    pub fn fiber_pairs(&self) -> &Arc<StabilizerPairSet> {
        &self.fiber_pairs
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }
}

/// Transport of a `Z`-class on `W` to a `G`-class on `G ×_Z W`:
/// `(g, [k, w]) ↦ β(k⁻¹gk, w)`.
pub fn morita(mixed: &MixedSpace, beta: &StabilizerClass) -> StabilizerClass {
    let g = mixed.set.group();
    let values: Vec<CycNumber> = mixed
        .pairs
        .pairs()
        .iter()
        .map(|&(a, p)| {
            let (k, w) = mixed.rep(p);
            let z = g.mul(g.mul(g.inv(k), a), k);
            let zl = mixed
                .subgroup
                .to_local(z)
                .expect("stabilizer of [k, w] conjugates into Z");
            beta.value(zl, w)
        })
        .collect();
    StabilizerClass::from_values(mixed.pairs.clone(), values)
}

/// Inverse transport: `β(z, w) = γ(z, [e, w])`.
pub fn morita_inverse(mixed: &MixedSpace, gamma: &StabilizerClass) -> StabilizerClass {
    let values = mixed
        .fiber_pairs
        .pairs()
        .iter()
        .map(|&(zl, w)| gamma.value(mixed.subgroup.to_parent(zl), mixed.point(0, w)))
        .collect();
    StabilizerClass::from_values(mixed.fiber_pairs.clone(), values)
}

/// Twisting by a central element that fixes every point:
/// `β(h)(z, w) = β(hz, w)`.
pub fn twist_central(beta: &StabilizerClass, h: usize) -> Result<StabilizerClass> {
    let w = beta.base();
    let z = w.group();
    if !(0..z.order()).all(|k| z.commute(h, k)) {
        return Err(Error::NotCentral(h));
    }
    if let Some(point) = (0..w.points()).find(|&p| w.act(h, p) != p) {
        return Err(Error::ActsNontrivially { element: h, point });
    }
    Ok(beta.map_values(|a, p, _| beta.value(z.mul(h, a), p)))
}

/// The slice `S_Ψ` of the global stabilizer, as a G-set in its own right,
/// with its projection to `X`.
#[derive(Debug)]
pub struct Slice {
    pub class: usize,
    pub set: Arc<GSet>,
    /// `(g, x)` labels of the points of `set`.
    pub labels: Vec<(usize, usize)>,
    pub projection: EquivariantMap,
    /// Global stabilizer of `set` (second-order stabilizer of `X`).
    pub pairs: Arc<StabilizerPairSet>,
}

pub fn slice(x: &Arc<GSet>, class: usize) -> Result<Slice> {
    let g = x.group();
    let t = x.classes();
    if class >= t.len() {
        return Err(Error::Invalid(format!("no conjugacy class {class}")));
    }
    let mut labels = Vec::new();
    for &a in &t.class(class).members {
        for p in x.fixed_points(a) {
            labels.push((a, p));
        }
    }
    labels.sort_unstable();
    let index: HashMap<(usize, usize), usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let action = (0..g.order())
        .map(|k| {
            labels
                .iter()
                .map(|&(a, p)| index[&(g.conjugate(a, k), x.act(k, p))])
                .collect()
        })
        .collect();
    let set = Arc::new(GSet::new(x.data().clone(), labels.len(), action)?);
    let projection = EquivariantMap::new(set.clone(), x.clone(), labels.iter().map(|&(_, p)| p).collect())?;
    let pairs = build_stabilizer(set.clone());
    Ok(Slice {
        class,
        set,
        labels,
        projection,
        pairs,
    })
}

impl Slice {
    fn check_carrier(&self, beta: &StabilizerClass) -> Result<()> {
        if Arc::ptr_eq(beta.carrier(), &self.pairs) {
            Ok(())
        } else {
            Err(Error::NotASlice("class is not defined on this slice".into()))
        }
    }

    fn check_rep(&self, h: usize) -> Result<()> {
        if self.set.classes().class_of(h) == self.class {
            Ok(())
        } else {
            Err(Error::Invalid(format!("element {h} does not lie in the slice class")))
        }
    }

    /// `S_Ψ ≅ G ×_Z X^h` for `Z = Z_G(h)`, with the isomorphism in both directions.
    fn morita_chart(&self, h: usize) -> Result<(MixedSpace, EquivariantMap, EquivariantMap)> {
        let x = self.projection.target.clone();
        let g = x.group();
        let z = g.centralizer(h);
        let zdata = GroupData::new(z.group().as_ref().clone());
        let (w, wlabels) = x.restrict(&z, zdata, &x.fixed_points(h))?;
        let mixed = MixedSpace::new(x.data().clone(), z, Arc::new(w))?;
        let index: HashMap<(usize, usize), usize> = self.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let phi: Vec<usize> = (0..mixed.set.points())
            .map(|p| {
                let (k, wi) = mixed.rep(p);
                index[&(g.conjugate(h, k), x.act(k, wlabels[wi]))]
            })
            .collect();
        let mut phi_inv = vec![usize::MAX; phi.len()];
        for (p, &s) in phi.iter().enumerate() {
            phi_inv[s] = p;
        }
        if phi_inv.len() != self.set.points() || phi_inv.contains(&usize::MAX) {
            return Err(Error::Invalid("mixed space does not match the slice".into()));
        }
        let to_slice = EquivariantMap::new(mixed.set.clone(), self.set.clone(), phi)?;
        let from_slice = EquivariantMap::new(self.set.clone(), mixed.set.clone(), phi_inv)?;
        Ok((mixed, to_slice, from_slice))
    }

    /// Moves `beta` to `(Z, X^h)`, applies `op` there and moves the result back.
    fn through_centralizer(
        &self,
        beta: &StabilizerClass,
        h: usize,
        op: impl Fn(&StabilizerClass, usize) -> Result<StabilizerClass>,
    ) -> Result<StabilizerClass> {
        self.check_carrier(beta)?;
        self.check_rep(h)?;
        let (mixed, to_slice, from_slice) = self.morita_chart(h)?;
        let on_mixed = pullback(&to_slice, mixed.pairs.clone(), beta);
        let on_fiber = morita_inverse(&mixed, &on_mixed);
        let hl = mixed.subgroup.to_local(h).expect("h is in its centralizer");
        let done = op(&on_fiber, hl)?;
        Ok(pullback(&from_slice, self.pairs.clone(), &morita(&mixed, &done)))
    }
}

/// Central summand by support restriction: keep `(k, (g, x))` with `k = g`.
pub fn central_summand(s: &Slice, beta: &StabilizerClass) -> Result<StabilizerClass> {
    s.check_carrier(beta)?;
    Ok(beta.map_values(|k, p, v| {
        if k == s.labels[p].0 {
            v.clone()
        } else {
            CycNumber::zero()
        }
    }))
}

/// Central summand through Morita: transport to `(Z, X^h)`, keep the component
/// at the one-element class `{h}` of `Z`, transport back.
pub fn central_summand_via_morita(s: &Slice, beta: &StabilizerClass, h: usize) -> Result<StabilizerClass> {
    s.through_centralizer(beta, h, |b, hl| {
        Ok(b.map_values(|z, _, v| if z == hl { v.clone() } else { CycNumber::zero() }))
    })
}

/// Central twist by translation: `(k, (g, x)) ↦ β(gk, (g, x))`.
pub fn central_twist(s: &Slice, beta: &StabilizerClass) -> Result<StabilizerClass> {
    s.check_carrier(beta)?;
    let g = s.set.group();
    Ok(beta.map_values(|k, p, _| beta.value(g.mul(s.labels[p].0, k), p)))
}

/// Central twist through Morita and twisting by `h` on `(Z, X^h)`.
pub fn central_twist_via_morita(s: &Slice, beta: &StabilizerClass, h: usize) -> Result<StabilizerClass> {
    s.through_centralizer(beta, h, twist_central)
}

/// Both routes of the finite-set localization identity for one class.
#[derive(Clone, Debug, Serialize)]
pub struct LocalizationOutcome {
    pub class: usize,
    pub expected: StabilizerClass,
    pub direct: StabilizerClass,
    pub via_morita: Vec<StabilizerClass>,
    pub agree: bool,
}

/// `f_*(λ₋₁(N_f*)⁻¹ · (f*α)_{c_Ψ})` with `f: S_Ψ → X`, computed by support
/// restriction and through Morita with two class representatives, compared
/// with the component `α_Ψ`. On finite sets the normal bundle is zero, so the
/// λ factor is the unit.
pub fn nonabelian_localize(alpha: &StabilizerClass, class: usize) -> Result<LocalizationOutcome> {
    let x = alpha.base().clone();
    let s = slice(&x, class)?;
    let lambda_inv = CycNumber::one();
    let pulled = pullback(&s.projection, s.pairs.clone(), alpha).scale(&lambda_inv);
    let push = |b: &StabilizerClass| pushforward(&s.projection, alpha.carrier().clone(), b);
    let direct = push(&central_summand(&s, &pulled)?);
    let members = &x.classes().class(class).members;
    let mut reps = vec![members[0]];
    if members.len() > 1 {
        reps.push(*members.last().unwrap());
    }
    let via_morita = reps
        .iter()
        .map(|&h| central_summand_via_morita(&s, &pulled, h).map(|c| push(&c)))
        .collect::<Result<Vec<_>>>()?;
    let expected = alpha.component(class);
    let agree = direct == expected && via_morita.iter().all(|m| *m == expected);
    Ok(LocalizationOutcome {
        class,
        expected,
        direct,
        via_morita,
        agree,
    })
}

/// The invariant-sector identity on one class, with the twist lemmas.
#[derive(Clone, Debug, Serialize)]
pub struct SectorCheck {
    pub class: usize,
    /// Invariants of `α_Ψ`, one value per orbit of `X`.
    pub lhs: Vec<CycNumber>,
    /// Pushforward to `X/G` of invariants of the augmentation component of
    /// the centrally twisted `f*α`.
    pub rhs: Vec<CycNumber>,
    /// Invariants are unchanged by the central twist.
    pub invariants_preserved: bool,
    /// The twisted central summand lies in the augmentation component, and
    /// agrees there with the twisted class.
    pub twisted_summand_is_augmented: bool,
    /// The central twist does not depend on the class representative.
    pub representative_independent: bool,
    pub pass: bool,
}

pub fn rr_gset_sector(alpha: &StabilizerClass, class: usize) -> Result<SectorCheck> {
    let x = alpha.base().clone();
    let s = slice(&x, class)?;
    let lhs = invariants(&alpha.component(class));
    let beta = pullback(&s.projection, s.pairs.clone(), alpha).scale(&CycNumber::one());
    let twisted = central_twist(&s, &beta)?;
    let augmented = twisted.component(0);
    let on_slice = invariants(&augmented);
    let mut rhs = vec![CycNumber::zero(); x.orbits().len()];
    for (o, v) in on_slice.iter().enumerate() {
        let target = x.orbit_of(s.projection.apply(s.set.orbit_rep(o)));
        rhs[target] += v;
    }
    let invariants_preserved = invariants(&beta) == invariants(&twisted);
    let ts = central_twist(&s, &central_summand(&s, &beta)?)?;
    let twisted_summand_is_augmented = ts == ts.component(0) && ts.component(0) == augmented;
    let members = &x.classes().class(class).members;
    let mut representative_independent = true;
    for &h in [members[0], *members.last().unwrap()].iter() {
        if s.set.points() > 0 && central_twist_via_morita(&s, &beta, h)? != twisted {
            representative_independent = false;
        }
    }
    let pass = lhs == rhs && invariants_preserved && twisted_summand_is_augmented && representative_independent;
    Ok(SectorCheck {
        class,
        lhs,
        rhs,
        invariants_preserved,
        twisted_summand_is_augmented,
        representative_independent,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, Element};

    fn s3_natural() -> Arc<GSet> {
        Arc::new(GSet::natural(GroupData::new(builtin("S3").unwrap())).unwrap())
    }

    #[test]
    fn mixed_space_over_transposition_is_natural() {
        let x = s3_natural();
        let g = x.group();
        let t = g.index_of(&Element::Perm(vec![1, 0, 2])).unwrap();
        let z = g.generated_subgroup(&[t]);
        let zdata = GroupData::new(z.group().as_ref().clone());
        let w = Arc::new(GSet::point(zdata));
        let mixed = MixedSpace::new(x.data().clone(), z, w).unwrap();
        assert_eq!(mixed.set.points(), 3);
        assert!(mixed.set.is_transitive());
        // sign character of Z transported: -1 on the transposition fixing [e, pt]
        let sign = StabilizerClass::new(mixed.fiber_pairs().clone(), |zl, _| {
            if zl == 0 {
                CycNumber::one()
            } else {
                CycNumber::from_int(-1)
            }
        })
        .unwrap();
        let moved = morita(&mixed, &sign);
        let p = mixed.point(0, 0);
        assert_eq!(moved.value(t, p), CycNumber::from_int(-1));
        assert_eq!(moved.value(0, p), CycNumber::one());
        assert_eq!(morita_inverse(&mixed, &moved), sign);
    }

    #[test]
    fn trivial_subgroup_gives_free_set() {
        let d = GroupData::new(builtin("S3").unwrap());
        let e = d.group.generated_subgroup(&[]);
        let edata = GroupData::new(e.group().as_ref().clone());
        let mixed = MixedSpace::new(d, e, Arc::new(GSet::point(edata.clone()))).unwrap();
        assert_eq!(mixed.set.points(), 6);
        let one = StabilizerClass::constant(mixed.fiber_pairs().clone(), CycNumber::one());
        let moved = morita(&mixed, &one);
        assert!(mixed.pairs.pairs().iter().all(|&(g, _)| g == 0));
        assert!(moved.values().iter().all(CycNumber::is_one));
    }

    #[test]
    fn localization_on_s3_natural() {
        let x = s3_natural();
        let one = StabilizerClass::constant(build_stabilizer(x.clone()), CycNumber::one());
        for c in 0..3 {
            let out = nonabelian_localize(&one, c).unwrap();
            assert!(out.agree, "class {c}");
        }
        assert!(nonabelian_localize(&one, 2).unwrap().direct.is_zero());
    }

    #[test]
    fn twist_of_z3_character() {
        let d = GroupData::new(builtin("Z/3").unwrap());
        let pt = Arc::new(GSet::point(d.clone()));
        let s = build_stabilizer(pt);
        let g = d.group.generators()[0];
        let w = CycNumber::root_of_unity(3, 1);
        // triv ⊕ χ with χ(g) = ω
        let beta = StabilizerClass::new(s, |a, _| {
            let j = (0..3).find(|&j| d.group.pow(g, j) == a).unwrap();
            &CycNumber::one() + &w.pow(j).unwrap()
        })
        .unwrap();
        let tw = twist_central(&beta, g).unwrap();
        let g2 = d.group.pow(g, 2);
        assert_eq!(tw.value(0, 0), &CycNumber::one() + &w);
        assert_eq!(tw.value(g, 0), &CycNumber::one() + &w.pow(2).unwrap());
        assert_eq!(tw.value(g2, 0), CycNumber::from_int(2));
        assert_eq!(twist_central(&tw, g).unwrap(), twist_central(&beta, g2).unwrap());
        assert_eq!(twist_central(&beta, 0).unwrap(), beta);
    }

    #[test]
    fn twist_errors() {
        let x = s3_natural();
        let s = build_stabilizer(x.clone());
        let one = StabilizerClass::constant(s, CycNumber::one());
        let c = x.group().index_of(&Element::Perm(vec![1, 2, 0])).unwrap();
        assert!(matches!(twist_central(&one, c), Err(Error::NotCentral(_))));
        let z3 = GroupData::new(builtin("Z/3").unwrap());
        let r = Arc::new(GSet::regular(z3.clone()));
        let one = StabilizerClass::constant(build_stabilizer(r), CycNumber::one());
        assert!(matches!(twist_central(&one, 1), Err(Error::ActsNontrivially { .. })));
    }

    #[test]
    fn central_summand_routes_agree() {
        let x = s3_natural();
        let one = StabilizerClass::constant(build_stabilizer(x.clone()), CycNumber::one());
        let s = slice(&x, 1).unwrap();
        let beta = pullback(&s.projection, s.pairs.clone(), &one);
        let direct = central_summand(&s, &beta).unwrap();
        for &h in &x.classes().class(1).members {
            assert_eq!(central_summand_via_morita(&s, &beta, h).unwrap(), direct);
            assert_eq!(
                central_twist_via_morita(&s, &beta, h).unwrap(),
                central_twist(&s, &beta).unwrap()
            );
        }
        // a class on the wrong carrier is rejected
        assert!(matches!(central_summand(&s, &one), Err(Error::NotASlice(_))));
    }

    #[test]
    fn identity_slice_summand_is_identity_component() {
        let x = s3_natural();
        let one = StabilizerClass::constant(build_stabilizer(x.clone()), CycNumber::one());
        let s = slice(&x, 0).unwrap();
        let beta = pullback(&s.projection, s.pairs.clone(), &one);
        assert_eq!(central_summand(&s, &beta).unwrap(), beta.component(0));
    }

    #[test]
    fn sector_identity_on_s3() {
        let x = s3_natural();
        let one = StabilizerClass::constant(build_stabilizer(x.clone()), CycNumber::one());
        for c in 0..3 {
            let chk = rr_gset_sector(&one, c).unwrap();
            assert!(chk.pass, "{chk:?}");
        }
        assert!(rr_gset_sector(&one, 2).unwrap().lhs.iter().all(CycNumber::is_zero));
    }
}

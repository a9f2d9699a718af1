//! Equivariant sheaves on finite G-sets, used as an independent oracle for
//! the function model.
//!
//! A sheaf has two interchangeable forms: one representation of the
//! stabilizer per orbit ([`Sheaf`]), or explicit fiber maps
//! `A(g, y): F_y → F_{gy}` for every element and point ([`FullSheaf`]).

use std::sync::Arc;

use super::{EquivariantMap, GSet, StabilizerClass, StabilizerPairSet};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Matrix};
use crate::group::{ClassTable, MatrixRep};

/// Orbit form: `fibers[o]` is a representation of the stabilizer of the
/// representative of orbit `o` (as a standalone group).
#[derive(Clone, Debug)]
pub struct Sheaf {
    pub fibers: Vec<MatrixRep>,
}

impl Sheaf {
    pub fn new(x: &GSet, fibers: Vec<MatrixRep>) -> Result<Self> {
        if fibers.len() != x.orbits().len() {
            return Err(Error::Invalid(format!(
                "expected one fiber per orbit ({})",
                x.orbits().len()
            )));
        }
        for (o, f) in fibers.iter().enumerate() {
            if f.images().len() != x.stabilizer(x.orbit_rep(o)).order() {
                return Err(Error::Invalid(format!(
                    "fiber {o} is not a representation of the stabilizer"
                )));
            }
        }
        Ok(Self { fibers })
    }

    /// The structure sheaf: trivial one-dimensional fibers.
    pub fn structure(x: &GSet) -> Self {
        let fibers = (0..x.orbits().len())
            .map(|o| MatrixRep::trivial(x.stabilizer(x.orbit_rep(o)).group()))
            .collect();
        Self { fibers }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self {
            fibers: self
                .fibers
                .iter()
                .zip(&other.fibers)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }
}

/// `value(g, y) = trace of g on the fiber at y`, computed by conjugating `g`
/// into the stabilizer of the orbit representative.
pub fn class_from_sheaf(pairs: &Arc<StabilizerPairSet>, sheaf: &Sheaf) -> StabilizerClass {
    let x = pairs.base();
    let g = x.group();
    let stabs: Vec<_> = (0..x.orbits().len()).map(|o| x.stabilizer(x.orbit_rep(o))).collect();
    let values = pairs
        .pairs()
        .iter()
        .map(|&(a, y)| {
            let o = x.orbit_of(y);
            let k = x.transporter(y);
            let z = g.mul(g.mul(g.inv(k), a), k);
            sheaf.fibers[o].trace(stabs[o].to_local(z).expect("conjugate lies in the stabilizer"))
        })
        .collect();
    StabilizerClass::from_values(pairs.clone(), values)
}

/// Full form: fiber dimensions and the map `A(g, y)` for every `(g, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSheaf {
    points: usize,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl FullSheaf {
    /// `F_y := F_rep` via the transporter `k_y`, and
    /// `A(g, y) = ρ(k_{gy}⁻¹ g k_y)`.
    pub fn from_orbit_form(x: &GSet, sheaf: &Sheaf) -> Self {
        let g = x.group();
        let n = x.points();
        let stabs: Vec<_> = (0..x.orbits().len()).map(|o| x.stabilizer(x.orbit_rep(o))).collect();
        let transporters: Vec<usize> = (0..n).map(|y| x.transporter(y)).collect();
        let dims = (0..n).map(|y| sheaf.fibers[x.orbit_of(y)].dim()).collect();
        let mut maps = Vec::with_capacity(g.order() * n);
        for a in 0..g.order() {
            for y in 0..n {
                let o = x.orbit_of(y);
                let z = g.mul(g.mul(g.inv(transporters[x.act(a, y)]), a), transporters[y]);
                maps.push(
                    sheaf.fibers[o]
                        .image(stabs[o].to_local(z).expect("lies in the stabilizer"))
                        .clone(),
                );
            }
        }
        Self { points: n, dims, maps }
    }

    pub fn map(&self, g: usize, y: usize) -> &Matrix {
        &self.maps[g * self.points + y]
    }

    pub fn dim(&self, y: usize) -> usize {
        self.dims[y]
    }

    /// Checks `A(gh, y) = A(g, hy) A(h, y)` and `A(e, y) = I`.
    pub fn is_equivariant(&self, x: &GSet) -> bool {
        let g = x.group();
        (0..self.points).all(|y| {
            (self.dims[y] == 0 || self.map(0, y).is_identity())
                && (0..g.order()).all(|a| {
                    g.generators().iter().all(|&s| {
                        self.dims[y] == 0 || *self.map(g.mul(a, s), y) == self.map(a, x.act(s, y)) * self.map(s, y)
                    })
                })
        })
    }

    pub fn class(&self, pairs: &Arc<StabilizerPairSet>) -> StabilizerClass {
        let values = pairs
            .pairs()
            .iter()
            .map(|&(a, y)| {
                if self.dims[y] == 0 {
                    CycNumber::zero()
                } else {
                    self.map(a, y).trace()
                }
            })
            .collect();
        StabilizerClass::from_values(pairs.clone(), values)
    }

    pub fn pullback(q: &EquivariantMap, f: &FullSheaf) -> FullSheaf {
        let src = &q.source;
        let n = src.points();
        let dims = (0..n).map(|y| f.dims[q.apply(y)]).collect();
        let maps = (0..src.group().order())
            .flat_map(|a| (0..n).map(move |y| f.map(a, q.apply(y)).clone()))
            .collect();
        FullSheaf { points: n, dims, maps }
    }

    /// Direct image: the fiber over `y` is `⊕_{q(y') = y} F_{y'}` in increasing `y'`.
    pub fn pushforward(q: &EquivariantMap, f: &FullSheaf) -> FullSheaf {
        let (src, tgt) = (&q.source, &q.target);
        let n = tgt.points();
        let mut offset = vec![0; src.points()];
        let mut dims = vec![0; n];
        for yp in 0..src.points() {
            let y = q.apply(yp);
            offset[yp] = dims[y];
            dims[y] += f.dims[yp];
        }
        let mut maps = Vec::with_capacity(tgt.group().order() * n);
        for a in 0..tgt.group().order() {
            for y in 0..n {
                let mut m = Matrix::zeros(dims[tgt.act(a, y)], dims[y]);
                for yp in (0..src.points()).filter(|&yp| q.apply(yp) == y) {
                    let block = f.map(a, yp);
                    let (r0, c0) = (offset[src.act(a, yp)], offset[yp]);
                    for i in 0..block.rows() {
                        for j in 0..block.cols() {
                            m.set(r0 + i, c0 + j, block.get(i, j).clone());
                        }
                    }
                }
                maps.push(m);
            }
        }
        FullSheaf { points: n, dims, maps }
    }

    pub fn tensor(&self, other: &FullSheaf) -> FullSheaf {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a * b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.kron(b)).collect();
        FullSheaf {
            points: self.points,
            dims,
            maps,
        }
    }

    /// `dim F_x^{G_x}` per orbit, as the nullity of the stacked `A(s, x) − I`
    /// over all stabilizer elements `s`.
    pub fn invariants_dimension(&self, x: &GSet) -> Vec<usize> {
        (0..x.orbits().len())
            .map(|o| {
                let rep = x.orbit_rep(o);
                let d = self.dims[rep];
                if d == 0 {
                    return 0;
                }
                let blocks: Vec<Matrix> = x
                    .stabilizer_elements(rep)
                    .iter()
                    .map(|&s| self.map(s, rep) - &Matrix::identity(d))
                    .collect();
                d - Matrix::vstack(&blocks).rank()
            })
            .collect()
    }
}

/// Twisting through eigensheaves: split each fiber into `h`-eigenspaces
/// `E_χ` and return the class of `Σ χ(h) [E_χ]`.
pub fn twist_via_reps(pairs: &Arc<StabilizerPairSet>, sheaf: &Sheaf, h: usize) -> Result<StabilizerClass> {
    let w = pairs.base();
    let z = w.group();
    if !(0..z.order()).all(|k| z.commute(h, k)) {
        return Err(Error::NotCentral(h));
    }
    if let Some(point) = (0..w.points()).find(|&p| w.act(h, p) != p) {
        return Err(Error::ActsNontrivially { element: h, point });
    }
    let order = z.element_order(h);
    // per orbit: eigenvalue and basis-changed block traces for each stabilizer element
    let mut orbit_values: Vec<Vec<CycNumber>> = Vec::new();
    for (o, rho) in sheaf.fibers.iter().enumerate() {
        let stab = w.stabilizer(w.orbit_rep(o));
        let hl = stab.to_local(h).expect("h fixes every point");
        let d = rho.dim();
        let mut values = vec![CycNumber::zero(); stab.order()];
        if d > 0 {
            let mut basis: Vec<Vec<CycNumber>> = Vec::new();
            let mut blocks: Vec<(usize, usize, CycNumber)> = Vec::new();
            for k in 0..order as i64 {
                let ev = CycNumber::root_of_unity(order, k);
                let vecs = (rho.image(hl) - &Matrix::identity(d).scale(&ev)).nullspace();
                if !vecs.is_empty() {
                    blocks.push((basis.len(), vecs.len(), ev));
                    basis.extend(vecs);
                }
            }
            if basis.len() != d {
                return Err(Error::Invalid(
                    "fiber action of h is not diagonalizable over roots of unity".into(),
                ));
            }
            let p = Matrix::from_columns(&basis);
            let p_inv = p.inverse()?;
            for (zl, v) in values.iter_mut().enumerate() {
                let m = &(&p_inv * rho.image(zl)) * &p;
                let mut acc = CycNumber::zero();
                for (start, len, ev) in &blocks {
                    let block = *start..start + len;
                    for c in block.clone() {
                        if (0..m.rows()).any(|r| !block.contains(&r) && !m.get(r, c).is_zero()) {
                            return Err(Error::Invalid("eigenspaces of h are not stable".into()));
                        }
                    }
                    let block_trace: CycNumber = (*start..start + len).map(|i| m.get(i, i).clone()).sum();
                    acc += &(&block_trace * ev);
                }
                *v = acc;
            }
        }
        orbit_values.push(values);
    }
    let stabs: Vec<_> = (0..w.orbits().len()).map(|o| w.stabilizer(w.orbit_rep(o))).collect();
    let values = pairs
        .pairs()
        .iter()
        .map(|&(a, y)| {
            let o = w.orbit_of(y);
            let k = w.transporter(y);
            let zz = z.mul(z.mul(z.inv(k), a), k);
            orbit_values[o][stabs[o].to_local(zz).expect("lies in the stabilizer")].clone()
        })
        .collect();
    Ok(StabilizerClass::from_values(pairs.clone(), values))
}

/// Coefficients `c_i` with `Σ c_i χ_{V_i} = 1_Ψ`, for representations whose
/// characters form a basis of class functions.
pub fn idempotent_coefficients(table: &ClassTable, reps: &[MatrixRep], class: usize) -> Result<Vec<CycNumber>> {
    let rows: Vec<Vec<CycNumber>> = table
        .classes()
        .iter()
        .map(|c| reps.iter().map(|r| r.trace(c.representative)).collect())
        .collect();
    let m = Matrix::from_rows(rows)?;
    m.solve(&table.indicator(class).values)
        .ok_or_else(|| Error::Invalid("representation characters do not span class functions".into()))
}

/// The component of a sheaf at class `Ψ`, computed at sheaf level as
/// `Σ c_i [V_i ⊗ F]` where `Σ c_i χ_{V_i}` is the indicator of `Ψ`.
pub fn sector_via_idempotent(
    pairs: &Arc<StabilizerPairSet>,
    sheaf: &Sheaf,
    reps: &[MatrixRep],
    class: usize,
) -> Result<StabilizerClass> {
    let x = pairs.base();
    let coeffs = idempotent_coefficients(x.classes(), reps, class)?;
    let stabs: Vec<_> = (0..x.orbits().len()).map(|o| x.stabilizer(x.orbit_rep(o))).collect();
    let mut acc = StabilizerClass::zero(pairs.clone());
    for (c, v) in coeffs.iter().zip(reps) {
        if c.is_zero() {
            continue;
        }
        let fibers = sheaf
            .fibers
            .iter()
            .zip(&stabs)
            .map(|(rho, s)| v.restrict(s).tensor(rho))
            .collect();
        acc = acc.add(&class_from_sheaf(pairs, &Sheaf { fibers }).scale(c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, spanning_representations, Element};
    use crate::gset::{build_stabilizer, invariants, pullback, pushforward, GroupData};

    fn s3_natural() -> Arc<GSet> {
        Arc::new(GSet::natural(GroupData::new(builtin("S3").unwrap())).unwrap())
    }

    fn sign_sheaf(x: &GSet) -> Sheaf {
        let stab = x.stabilizer(0);
        let sign = MatrixRep::from_generator_images(stab.group(), &[Matrix::from_ints(&[&[-1]])]).unwrap();
        Sheaf::new(x, vec![sign]).unwrap()
    }

    #[test]
    fn sign_fiber_values() {
        let x = s3_natural();
        let pairs = build_stabilizer(x.clone());
        let c = class_from_sheaf(&pairs, &sign_sheaf(&x));
        let t12 = x.group().index_of(&Element::Perm(vec![1, 0, 2])).unwrap();
        assert_eq!(c.value(t12, 2), CycNumber::from_int(-1));
        assert_eq!(c.value(0, 2), CycNumber::one());
        assert_eq!(invariants(&c), vec![CycNumber::zero()]);
        assert_eq!(
            FullSheaf::from_orbit_form(&x, &sign_sheaf(&x)).invariants_dimension(&x),
            vec![0]
        );
    }

    #[test]
    fn regular_fiber_values() {
        let x = s3_natural();
        let pairs = build_stabilizer(x.clone());
        let reg = MatrixRep::regular(x.stabilizer(0).group());
        let c = class_from_sheaf(&pairs, &Sheaf::new(&x, vec![reg.clone()]).unwrap());
        assert_eq!(c.value(0, 1), CycNumber::from_int(2));
        assert!(pairs
            .pairs()
            .iter()
            .filter(|p| p.0 != 0)
            .all(|&(g, y)| c.value(g, y).is_zero()));
        assert_eq!(invariants(&c), vec![CycNumber::one()]);
        let full = FullSheaf::from_orbit_form(&x, &Sheaf::new(&x, vec![reg]).unwrap());
        assert!(full.is_equivariant(&x));
        assert_eq!(full.invariants_dimension(&x), vec![1]);
    }

    #[test]
    fn bridge_pushforward_pullback_tensor() {
        let x = s3_natural();
        let q = EquivariantMap::to_point(x.clone());
        let px = build_stabilizer(x.clone());
        let pt = build_stabilizer(q.target.clone());
        let f = sign_sheaf(&x);
        let full = FullSheaf::from_orbit_form(&x, &f);
        let model = class_from_sheaf(&px, &f);
        let pushed = FullSheaf::pushforward(&q, &full);
        assert!(pushed.is_equivariant(&q.target));
        assert_eq!(pushed.class(&pt), pushforward(&q, pt.clone(), &model));
        let defining = Sheaf::new(&q.target, vec![MatrixRep::defining(x.group())]).unwrap();
        let dfull = FullSheaf::from_orbit_form(&q.target, &defining);
        let dclass = class_from_sheaf(&pt, &defining);
        assert_eq!(
            FullSheaf::pullback(&q, &dfull).class(&px),
            pullback(&q, px.clone(), &dclass)
        );
        assert_eq!(full.tensor(&full).class(&px), model.mul(&model));
        assert_eq!(full.class(&px), model);
    }

    #[test]
    fn twist_agrees_with_translation() {
        let d = GroupData::new(builtin("Z/3").unwrap());
        let pt = Arc::new(GSet::point(d.clone()));
        let pairs = build_stabilizer(pt.clone());
        let g = d.group.generators()[0];
        let chi = MatrixRep::cyclic_character(&d.group, g, 1).unwrap();
        let sheaf = Sheaf::new(&pt, vec![MatrixRep::trivial(&d.group).direct_sum(&chi)]).unwrap();
        let via_reps = twist_via_reps(&pairs, &sheaf, g).unwrap();
        let translated = crate::gset::twist_central(&class_from_sheaf(&pairs, &sheaf), g).unwrap();
        assert_eq!(via_reps, translated);
    }

    #[test]
    fn idempotent_sector_matches_support() {
        let x = s3_natural();
        let pairs = build_stabilizer(x.clone());
        let reps = spanning_representations(x.group(), x.classes());
        let f = Sheaf::structure(&x);
        let model = class_from_sheaf(&pairs, &f);
        for c in 0..3 {
            use crate::group::SectorDecomposable;
            assert_eq!(sector_via_idempotent(&pairs, &f, &reps, c).unwrap(), model.component(c));
        }
    }
}

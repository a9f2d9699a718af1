//! Finite G-sets and their equivariant K-theory, modeled as G-invariant
//! functions on the global stabilizer `S_X = {(g, x) : gx = x}`.
//!
//! The sheaf category (one stabilizer representation per orbit) is kept as an
//! independent oracle in [`sheaf`].

mod localize;
pub mod sheaf;
mod stabilizer;

pub use localize::{
    central_summand, central_summand_via_morita, central_twist, central_twist_via_morita, morita, morita_inverse,
    nonabelian_localize, rr_gset_sector, slice, twist_central, LocalizationOutcome, MixedSpace, SectorCheck, Slice,
};
pub use stabilizer::{build_stabilizer, invariants, pullback, pushforward, StabilizerClass, StabilizerPairSet};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{ClassTable, Element, FiniteGroup, Subgroup};

/// A group together with its class table, shared by every set it acts on.
#[derive(Debug)]
pub struct GroupData {
    pub group: FiniteGroup,
    pub classes: ClassTable,
}

impl GroupData {
    pub fn new(group: FiniteGroup) -> Arc<Self> {
        let classes = ClassTable::new(&group);
        Arc::new(Self { group, classes })
    }
}

/// A finite set with a left action, stored as a full `|G| × |X|` table.
#[derive(Clone, Debug)]
pub struct GSet {
    data: Arc<GroupData>,
    points: usize,
    action: Vec<u32>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
}

impl GSet {
    /// `action[g][x] = g·x`; the action axioms are checked exhaustively.
    pub fn new(data: Arc<GroupData>, points: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        let g = &data.group;
        if action.len() != g.order() || action.iter().any(|row| row.len() != points) {
            return Err(Error::Invalid(format!(
                "action table must be {} × {}",
                g.order(),
                points
            )));
        }
        if action.iter().flatten().any(|&y| y >= points) {
            return Err(Error::Invalid("action moves a point outside the set".into()));
        }
        let flat: Vec<u32> = action.iter().flatten().map(|&y| y as u32).collect();
        let set = Self::from_table(data, points, flat);
        set.check_axioms()?;
        Ok(set)
    }

    /// Action given by the images of each group generator (a permutation of
    /// the points per generator), extended to the whole group.
    pub fn from_generator_action(data: Arc<GroupData>, points: usize, images: &[Vec<usize>]) -> Result<Self> {
        let g = &data.group;
        if images.len() != g.generators().len() {
            return Err(Error::Invalid(format!(
                "expected {} generator actions",
                g.generators().len()
            )));
        }
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; g.order()];
        rows[0] = Some((0..points).collect());
        let mut queue = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (s, img) in g.generators().iter().zip(images) {
                if img.len() != points || img.iter().any(|&y| y >= points) {
                    return Err(Error::Invalid("generator action has the wrong shape".into()));
                }
                let y = g.mul(x, *s);
                if rows[y].is_none() {
                    // (x·s)(p) = x(s(p))
                    let base = rows[x].as_ref().unwrap();
                    rows[y] = Some(img.iter().map(|&p| base[p]).collect());
                    queue.push(y);
                }
            }
        }
        Self::new(data, points, rows.into_iter().map(Option::unwrap).collect())
    }

    fn from_table(data: Arc<GroupData>, points: usize, action: Vec<u32>) -> Self {
        let n = data.group.order();
        let mut orbit_of = vec![usize::MAX; points];
        let mut orbits = Vec::new();
        for x in 0..points {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let mut orbit: Vec<usize> = (0..n).map(|g| action[g * points + x] as usize).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                orbit_of[y] = orbits.len();
            }
            orbits.push(orbit);
        }
        Self {
            data,
            points,
            action,
            orbits,
            orbit_of,
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let g = self.group();
        for x in 0..self.points {
            if self.act(0, x) != x {
                return Err(Error::Invalid(format!("identity moves point {x}")));
            }
            for a in 0..g.order() {
                for &s in g.generators() {
                    if self.act(g.mul(a, s), x) != self.act(a, self.act(s, x)) {
                        return Err(Error::Invalid("action is not compatible with multiplication".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(data: Arc<GroupData>) -> Self {
        let n = data.group.order();
        let action = (0..n)
            .flat_map(|a| (0..n).map(|b| data.group.mul(a, b) as u32).collect::<Vec<_>>())
            .collect();
        Self::from_table(data, n, action)
    }

    /// A single point.
    pub fn point(data: Arc<GroupData>) -> Self {
        let n = data.group.order();
        Self::from_table(data, 1, vec![0; n])
    }

    /// The natural action of a permutation group on `{0..n}`.
    pub fn natural(data: Arc<GroupData>) -> Result<Self> {
        let degree = match data.group.element(0) {
            Element::Perm(p) => p.len(),
            Element::Matrix(_) => return Err(Error::Invalid("natural action needs a permutation group".into())),
        };
        let action = data
            .group
            .elements()
            .iter()
            .flat_map(|e| match e {
                Element::Perm(p) => p.clone(),
                Element::Matrix(_) => unreachable!(),
            })
            .collect();
        Ok(Self::from_table(data, degree, action))
    }

    /// Left cosets `G/H`, indexed by their smallest element.
    pub fn coset_space(data: Arc<GroupData>, sub: &Subgroup) -> Self {
        let g = &data.group;
        let transversal = crate::group::left_transversal(g, sub);
        let mut coset_of = vec![0; g.order()];
        for (i, &t) in transversal.iter().enumerate() {
            for &h in sub.members() {
                coset_of[g.mul(t, h)] = i;
            }
        }
        let m = transversal.len();
        let action = (0..g.order())
            .flat_map(|a| {
                transversal
                    .iter()
                    .map(|&t| coset_of[g.mul(a, t)] as u32)
                    .collect::<Vec<_>>()
            })
            .collect();
        Self::from_table(data.clone(), m, action)
    }

    pub fn data(&self) -> &Arc<GroupData> {
        &self.data
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.data.group
    }

    pub fn classes(&self) -> &ClassTable {
        &self.data.classes
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.points + x] as usize
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x]
    }

    /// Canonical orbit representative: the smallest point.
    pub fn orbit_rep(&self, orbit: usize) -> usize {
        self.orbits[orbit][0]
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits.len() <= 1
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        let members = (0..self.group().order()).filter(|&g| self.act(g, x) == x).collect();
        self.group().subgroup(members).expect("stabilizers are subgroups")
    }

    /// The smallest `k` with `k · rep = x`, where `rep` is the orbit representative of `x`.
    pub fn transporter(&self, x: usize) -> usize {
        let rep = self.orbit_rep(self.orbit_of(x));
        (0..self.group().order())
            .find(|&k| self.act(k, rep) == x)
            .expect("x lies in the orbit of its representative")
    }

    pub fn fixed_points(&self, g: usize) -> Vec<usize> {
        (0..self.points).filter(|&x| self.act(g, x) == x).collect()
    }

    /// Restriction of the action to a subgroup and a subset stable under it.
    /// Returns the new set (over the subgroup's standalone group) and the
    /// parent label of each of its points.
    pub fn restrict(&self, sub: &Subgroup, sub_data: Arc<GroupData>, subset: &[usize]) -> Result<(GSet, Vec<usize>)> {
        let mut labels = subset.to_vec();
        labels.sort_unstable();
        labels.dedup();
        let local = |x: usize| labels.binary_search(&x).ok();
        let mut action = Vec::with_capacity(sub.order() * labels.len());
        for &z in sub.members() {
            for &x in &labels {
                let y = local(self.act(z, x))
                    .ok_or_else(|| Error::Invalid("subset is not stable under the subgroup".into()))?;
                action.push(y as u32);
            }
        }
        let n = labels.len();
        Ok((GSet::from_table(sub_data, n, action), labels))
    }
}

/// A map of G-sets commuting with the action.
#[derive(Clone, Debug)]
pub struct EquivariantMap {
    pub source: Arc<GSet>,
    pub target: Arc<GSet>,
    map: Vec<usize>,
}

impl EquivariantMap {
    pub fn new(source: Arc<GSet>, target: Arc<GSet>, map: Vec<usize>) -> Result<Self> {
        if !Arc::ptr_eq(source.data(), target.data()) {
            return Err(Error::Invalid("source and target must share the acting group".into()));
        }
        if map.len() != source.points() || map.iter().any(|&y| y >= target.points()) {
            return Err(Error::Invalid("map has the wrong shape".into()));
        }
        for g in 0..source.group().order() {
            for x in 0..source.points() {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::Invalid(format!("map is not equivariant at point {x}")));
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(x: Arc<GSet>) -> Self {
        let map = (0..x.points()).collect();
        Self {
            source: x.clone(),
            target: x,
            map,
        }
    }

    /// The map to a one-point set.
    pub fn to_point(x: Arc<GSet>) -> Self {
        let target = Arc::new(GSet::point(x.data().clone()));
        Self {
            map: vec![0; x.points()],
            source: x,
            target,
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

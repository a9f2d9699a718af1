use super::{ClassFunction, ClassTable, Element, FiniteGroup, Subgroup};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, Matrix};

/// A matrix representation, stored as the image of every group element
/// (indexed like the group's element list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    dim: usize,
    images: Vec<Matrix>,
}

impl MatrixRep {
    /// Extends generator images (aligned with `g.generators()`) to the whole
    /// group and verifies the homomorphism property on every
    /// (element, generator) edge of the Cayley graph.
    pub fn from_generator_images(g: &FiniteGroup, images: &[Matrix]) -> Result<Self> {
        let gens = g.generators();
        if images.len() != gens.len() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                gens.len(),
                images.len()
            )));
        }
        let dim = images.first().map_or(0, Matrix::rows);
        if images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Invalid("generator images must be square of equal size".into()));
        }
        let n = g.order();
        let mut all: Vec<Option<Matrix>> = vec![None; n];
        all[0] = Some(Matrix::identity(dim));
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (s, img) in gens.iter().zip(images) {
                let y = g.mul(x, *s);
                if all[y].is_none() {
                    all[y] = Some(all[x].as_ref().unwrap() * img);
                    queue.push(y);
                }
            }
        }
        let images: Vec<Matrix> = all.into_iter().map(|m| m.expect("generators generate")).collect();
        let rep = Self { dim, images };
        rep.verify(g)?;
        Ok(rep)
    }

    /// Images for every element given directly; verified like above.
    pub fn from_fn(g: &FiniteGroup, dim: usize, f: impl Fn(usize) -> Matrix) -> Result<Self> {
        let rep = Self {
            dim,
            images: (0..g.order()).map(f).collect(),
        };
        rep.verify(g)?;
        Ok(rep)
    }

    fn verify(&self, g: &FiniteGroup) -> Result<()> {
        if !self.images[0].is_identity() && self.dim > 0 {
            return Err(Error::Invalid("identity does not map to the identity matrix".into()));
        }
        for x in 0..g.order() {
            for &s in g.generators() {
                if self.images[g.mul(x, s)] != &self.images[x] * &self.images[s] {
                    return Err(Error::Invalid("generator images do not define a homomorphism".into()));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self {
            dim: 1,
            images: vec![Matrix::identity(1); g.order()],
        }
    }

    /// The defining representation: permutation matrices, or the matrices themselves.
    pub fn defining(g: &FiniteGroup) -> Self {
        let images: Vec<Matrix> = g
            .elements()
            .iter()
            .map(|e| match e {
                Element::Perm(p) => Matrix::permutation(&p.iter().map(|&i| i as usize).collect::<Vec<_>>()),
                Element::Matrix(m) => m.clone(),
            })
            .collect();
        Self {
            dim: images[0].rows(),
            images,
        }
    }

    /// Left regular representation.
    pub fn regular(g: &FiniteGroup) -> Self {
        let n = g.order();
        let images = (0..n)
            .map(|x| Matrix::permutation(&(0..n).map(|y| g.mul(x, y)).collect::<Vec<_>>()))
            .collect();
        Self { dim: n, images }
    }

    /// One-dimensional character of a cyclic group `⟨c⟩` sending `c ↦ ζ_o^k`.
    pub fn cyclic_character(g: &FiniteGroup, generator: usize, k: i64) -> Result<Self> {
        let o = g.element_order(generator);
        if o as usize != g.order() {
            return Err(Error::Invalid("group is not generated by the given element".into()));
        }
        let mut images = vec![Matrix::identity(1); g.order()];
        let mut x = 0;
        for j in 0..o as i64 {
            images[x] = Matrix::diagonal(&[CycNumber::root_of_unity(o, k * j)]);
            x = g.mul(x, generator);
        }
        Ok(Self { dim: 1, images })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, x: usize) -> &Matrix {
        &self.images[x]
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn trace(&self, x: usize) -> CycNumber {
        if self.dim == 0 {
            return CycNumber::zero();
        }
        self.images[x].trace()
    }

    pub fn character(&self, table: &ClassTable) -> ClassFunction {
        table.class_function(|x| self.trace(x))
    }

    /// Eigenvalue multiplicities of `ρ(x)` at `ζ_N^k`, `k = 0..N`, where `N`
    /// is the group exponent.
    pub fn eigen_profile(&self, g: &FiniteGroup, x: usize) -> Vec<usize> {
        let n = g.exponent();
        let o = g.element_order(x);
        let mut out = vec![0; n as usize];
        if self.dim == 0 {
            return out;
        }
        for (k, m) in self.images[x]
            .root_of_unity_eigen_multiplicities(o)
            .into_iter()
            .enumerate()
        {
            out[k * (n / o) as usize] = m;
        }
        out
    }

    /// Elements acting as the identity.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.images.len())
            .filter(|&x| self.dim == 0 || self.images[x].is_identity())
            .collect()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.kron(b)).collect();
        Self {
            dim: self.dim * other.dim,
            images,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| Matrix::direct_sum(&[a.clone(), b.clone()]))
            .collect();
        Self {
            dim: self.dim + other.dim,
            images,
        }
    }

    /// `x ↦ ρ(x⁻¹)ᵀ`.
    pub fn dual(&self, g: &FiniteGroup) -> Self {
        let images = (0..g.order()).map(|x| self.images[g.inv(x)].transpose()).collect();
        Self { dim: self.dim, images }
    }

    /// Restriction to a subgroup, as a representation of its standalone group.
    pub fn restrict(&self, sub: &Subgroup) -> Self {
        Self {
            dim: self.dim,
            images: sub.members().iter().map(|&x| self.images[x].clone()).collect(),
        }
    }

    /// Induction from a subgroup. Blocks are indexed by left cosets `t_i H`
    /// (transversal = smallest element of each coset); block `(i, j)` of
    /// `ρ(x)` is `θ(t_i⁻¹ x t_j)` when that lies in `H`.
    pub fn induce(g: &FiniteGroup, sub: &Subgroup, theta: &MatrixRep) -> Self {
        let transversal = left_transversal(g, sub);
        let m = transversal.len();
        let d = theta.dim;
        let images = (0..g.order())
            .map(|x| {
                let mut img = Matrix::zeros(m * d, m * d);
                for (j, &tj) in transversal.iter().enumerate() {
                    let xtj = g.mul(x, tj);
                    for (i, &ti) in transversal.iter().enumerate() {
                        if let Some(h) = sub.to_local(g.mul(g.inv(ti), xtj)) {
                            let block = theta.image(h);
                            for a in 0..d {
                                for b in 0..d {
                                    img.set(i * d + a, j * d + b, block.get(a, b).clone());
                                }
                            }
                            break;
                        }
                    }
                }
                img
            })
            .collect();
        Self { dim: m * d, images }
    }
}

/// Smallest element of each left coset `tH`, in increasing order.
pub fn left_transversal(g: &FiniteGroup, sub: &Subgroup) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut out = Vec::new();
    for t in 0..g.order() {
        if covered[t] {
            continue;
        }
        out.push(t);
        for &h in sub.members() {
            covered[g.mul(t, h)] = true;
        }
    }
    out
}

/// `dim Hom_G(V, W)` as the nullity of the intertwiner equations
/// `ρ_W(s) A = A ρ_V(s)` over the generators.
pub fn hom_dimension(g: &FiniteGroup, v: &MatrixRep, w: &MatrixRep) -> usize {
    let (dv, dw) = (v.dim(), w.dim());
    let unknowns = dv * dw;
    if unknowns == 0 {
        return 0;
    }
    let gens = g.generators();
    let mut sys = Matrix::zeros(gens.len() * unknowns, unknowns);
    // A is dw × dv, unknown index a*dv + b
    for (gi, &s) in gens.iter().enumerate() {
        let (rv, rw) = (v.image(s), w.image(s));
        for i in 0..dw {
            for j in 0..dv {
                let row = gi * unknowns + i * dv + j;
                // (ρ_W A)_{ij} = Σ_k ρ_W[i,k] A[k,j]
                for k in 0..dw {
                    let c = rw.get(i, k);
                    if !c.is_zero() {
                        let col = k * dv + j;
                        let cur = sys.get(row, col) + c;
                        sys.set(row, col, cur);
                    }
                }
                // (A ρ_V)_{ij} = Σ_k A[i,k] ρ_V[k,j]
                for k in 0..dv {
                    let c = rv.get(k, j);
                    if !c.is_zero() {
                        let col = i * dv + k;
                        let cur = sys.get(row, col) - c;
                        sys.set(row, col, cur);
                    }
                }
            }
        }
    }
    unknowns - sys.rank()
}

/// A set of representations whose characters span all class functions:
/// monomial representations induced from characters of cyclic subgroups,
/// chosen greedily (smallest dimension first) until the characters reach
/// full rank.
pub fn spanning_representations(g: &FiniteGroup, table: &ClassTable) -> Vec<MatrixRep> {
    let mut candidates: Vec<(usize, usize, i64)> = Vec::new();
    for (c, sub) in g.cyclic_subgroups() {
        for k in 0..sub.order() as i64 {
            candidates.push((g.order() / sub.order(), c, k));
        }
    }
    candidates.sort_by_key(|&(dim, c, k)| (dim, std::cmp::Reverse(g.element_order(c)), c, k));
    let mut chosen: Vec<MatrixRep> = Vec::new();
    let mut rows: Vec<Vec<CycNumber>> = Vec::new();
    let mut rank = 0;
    for (_, c, k) in candidates {
        if rank == table.len() {
            break;
        }
        let sub = g.generated_subgroup(&[c]);
        let local_gen = sub.to_local(c).expect("generator lies in its subgroup");
        let theta = MatrixRep::cyclic_character(sub.group(), local_gen, k).expect("cyclic subgroup");
        let rep = MatrixRep::induce(g, &sub, &theta);
        let chi = rep.character(table).values;
        let mut trial = rows.clone();
        trial.push(chi.clone());
        let r = Matrix::from_rows(trial).expect("equal row lengths").rank();
        if r > rank {
            rank = r;
            rows.push(chi);
            chosen.push(rep);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    #[test]
    fn defining_rep_is_homomorphism() {
        for name in ["S3", "Q8", "D4"] {
            let g = builtin(name).unwrap();
            let d = MatrixRep::defining(&g);
            let gens: Vec<Matrix> = g.generators().iter().map(|&s| d.image(s).clone()).collect();
            assert_eq!(MatrixRep::from_generator_images(&g, &gens).unwrap(), d);
        }
    }

    #[test]
    fn bad_images_rejected() {
        let g = builtin("Z/3").unwrap();
        let m = Matrix::from_ints(&[&[-1]]);
        assert!(MatrixRep::from_generator_images(&g, &[m]).is_err());
    }

    #[test]
    fn orthogonality_matches_hom_dimension() {
        for name in ["S3", "Q8", "A4"] {
            let g = builtin(name).unwrap();
            let t = ClassTable::new(&g);
            let reps = spanning_representations(&g, &t);
            let mut all = reps.clone();
            all.push(MatrixRep::defining(&g));
            for v in &all {
                for w in &all {
                    if v.dim() * w.dim() > 64 {
                        continue;
                    }
                    let ip = t.inner_product(&v.character(&t), &w.character(&t));
                    assert_eq!(ip, CycNumber::from_int(hom_dimension(&g, v, w) as i64), "{name}");
                }
            }
        }
    }

    #[test]
    fn spanning_sets_have_full_rank() {
        for name in ["S3", "S4", "D4", "Q8", "A4", "Z/6"] {
            let g = builtin(name).unwrap();
            let t = ClassTable::new(&g);
            let reps = spanning_representations(&g, &t);
            assert_eq!(reps.len(), t.len(), "{name}");
        }
    }

    #[test]
    fn induced_from_trivial_subgroup_is_regular() {
        let g = builtin("S3").unwrap();
        let t = ClassTable::new(&g);
        let e = g.generated_subgroup(&[]);
        let ind = MatrixRep::induce(&g, &e, &MatrixRep::trivial(e.group()));
        assert_eq!(ind.character(&t), MatrixRep::regular(&g).character(&t));
    }

    #[test]
    fn eigen_profiles() {
        let g = builtin("S3").unwrap();
        let d = MatrixRep::defining(&g);
        let c = g.index_of(&Element::Perm(vec![1, 2, 0])).unwrap();
        // exponent 6: eigenvalues 1, ζ6², ζ6⁴
        assert_eq!(d.eigen_profile(&g, c), vec![1, 0, 1, 0, 1, 0]);
    }
}

use serde::Serialize;

use super::{ClassTable, FiniteGroup, MatrixRep};
use crate::error::{Error, Result};

/// Outcome of testing whether a list of representations separates one class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingVerdict {
    pub separates: bool,
    /// A class whose eigenvalue data coincides with that of `Ψ`, if any.
    pub witness: Option<usize>,
    /// Per class, the tuple of eigenvalue-multiplicity vectors (one per rep).
    pub profiles: Vec<Vec<Vec<usize>>>,
}

/// Checks that the eigenvalue multisets of `ρ_1(h), …, ρ_k(h)` for `h ∈ Ψ`
/// differ from those of every other class. Two diagonalizable matrices are
/// conjugate in `GL(V)` iff their eigenvalue multisets agree, so this decides
/// whether `C_H(h) ∩ G = C_G(h)` for `H = ∏ GL(V_i)`.
pub fn good_embedding_check(
    g: &FiniteGroup,
    table: &ClassTable,
    reps: &[MatrixRep],
    psi: usize,
) -> Result<EmbeddingVerdict> {
    let kernels: Vec<Vec<usize>> = reps.iter().map(MatrixRep::kernel).collect();
    if let Some(x) = (1..g.order()).find(|x| kernels.iter().all(|k| k.contains(x))) {
        return Err(Error::NotFaithful(x));
    }
    let profiles: Vec<Vec<Vec<usize>>> = table
        .classes()
        .iter()
        .map(|c| reps.iter().map(|r| r.eigen_profile(g, c.representative)).collect())
        .collect();
    let witness = (0..table.len()).find(|&c| c != psi && profiles[c] == profiles[psi]);
    Ok(EmbeddingVerdict {
        separates: witness.is_none(),
        witness,
        profiles,
    })
}

/// Bounded search for a separating list `[V, V⊗V, …, V^{⊗k}]` built from one
/// faithful representation; returns the smallest `k ≤ max_power` that works.
pub fn tensor_power_search(
    g: &FiniteGroup,
    table: &ClassTable,
    faithful: &MatrixRep,
    psi: usize,
    max_power: usize,
) -> Result<Option<usize>> {
    let mut reps = vec![faithful.clone()];
    for k in 1..=max_power {
        if good_embedding_check(g, table, &reps, psi)?.separates {
            return Ok(Some(k));
        }
        let next = reps.last().expect("nonempty").tensor(faithful);
        reps.push(next);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    #[test]
    fn s3_natural_separates_everything() {
        let g = builtin("S3").unwrap();
        let t = ClassTable::new(&g);
        let reps = [MatrixRep::defining(&g)];
        for c in 0..t.len() {
            assert!(good_embedding_check(&g, &t, &reps, c).unwrap().separates);
        }
    }

    #[test]
    fn trivial_rep_is_not_faithful() {
        let g = builtin("S3").unwrap();
        let t = ClassTable::new(&g);
        let err = good_embedding_check(&g, &t, &[MatrixRep::trivial(&g)], 0).unwrap_err();
        assert!(matches!(err, Error::NotFaithful(_)));
    }

    #[test]
    fn q8_central_involution() {
        let g = builtin("Q8").unwrap();
        let t = ClassTable::new(&g);
        let minus_one = (0..8).find(|&x| g.element_order(x) == 2).unwrap();
        let v = good_embedding_check(&g, &t, &[MatrixRep::defining(&g)], t.class_of(minus_one)).unwrap();
        assert!(v.separates);
        // the three classes of order-4 elements all have eigenvalues {i, -i}
        let i_class = t.class_of(g.generators()[0]);
        let v = good_embedding_check(&g, &t, &[MatrixRep::defining(&g)], i_class).unwrap();
        assert!(!v.separates);
        assert!(v.witness.is_some());
    }

    #[test]
    fn tensor_square_does_not_help_q8_order_four() {
        // i and j are conjugate in GL(V), hence in every tensor power of V
        let g = builtin("Q8").unwrap();
        let t = ClassTable::new(&g);
        let d = MatrixRep::defining(&g);
        assert_eq!(
            tensor_power_search(&g, &t, &d, t.class_of(g.generators()[0]), 3).unwrap(),
            None
        );
        let minus_one = (0..8).find(|&x| g.element_order(x) == 2).unwrap();
        assert_eq!(
            tensor_power_search(&g, &t, &d, t.class_of(minus_one), 3).unwrap(),
            Some(1)
        );
    }

    #[test]
    fn z4_needs_faithful_character() {
        let g = builtin("Z/4").unwrap();
        let t = ClassTable::new(&g);
        let sq = MatrixRep::from_generator_images(&g, &[crate::exact::Matrix::from_ints(&[&[-1]])]).unwrap();
        assert!(good_embedding_check(&g, &t, &[sq], 0).is_err());
    }
}

//! Flag varieties of `GL_n` and the flag-bundle identities.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::{
    fiberwise_pushforward, pushforward_to_point, EquivClass, FiberedFixedPointData, FixedPoint, FixedPointData,
};
use crate::error::{Error, Result};
use crate::exact::{CycNumber, LaurentPoly, Monomial};
use crate::oracle::permutations;

/// `GL_n` with a standard parabolic given by a composition of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylData {
    pub n: usize,
    pub composition: Vec<usize>,
}

/// Flag varieties past this rank are refused (`n!` fixed points).
pub const MAX_FLAG_RANK: usize = 7;

impl WeylData {
    pub fn new(n: usize, composition: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("GL_0 has no flag variety".into()));
        }
        if n > MAX_FLAG_RANK {
            return Err(Error::CapExceeded {
                what: "flag rank",
                actual: n,
                limit: MAX_FLAG_RANK,
            });
        }
        if composition.contains(&0) || composition.iter().sum::<usize>() != n {
            return Err(Error::Invalid(format!("{composition:?} is not a composition of {n}")));
        }
        Ok(Self { n, composition })
    }

    /// The Borel: composition `(1, …, 1)`.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, vec![1; n])
    }

    pub fn is_full(&self) -> bool {
        self.composition.iter().all(|&c| c == 1)
    }

    fn factorial(k: usize) -> BigInt {
        (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
    }

    /// `|W(G,T)| = n!`.
    pub fn weyl_order(&self) -> BigInt {
        Self::factorial(self.n)
    }

    /// `|W(Z,T)| = ∏ n_i!`.
    pub fn levi_weyl_order(&self) -> BigInt {
        self.composition.iter().map(|&c| Self::factorial(c)).product()
    }

    pub fn index(&self) -> BigInt {
        self.weyl_order() / self.levi_weyl_order()
    }

    /// The block of the composition containing position `i`.
    fn block_of_position(&self) -> Vec<usize> {
        self.composition
            .iter()
            .enumerate()
            .flat_map(|(b, &c)| std::iter::repeat_n(b, c))
            .collect()
    }
}

/// Ordered set partitions of `0..n` of the given shape, in the order of
/// their lexicographically smallest permutation.
pub fn flag_cosets(weyl: &WeylData) -> Vec<Vec<Vec<usize>>> {
    let blocks_of = weyl.block_of_position();
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for w in permutations(weyl.n) {
        let mut blocks = vec![Vec::new(); weyl.composition.len()];
        for (i, &wi) in w.iter().enumerate() {
            blocks[blocks_of[i]].push(wi);
        }
        for b in &mut blocks {
            b.sort();
        }
        if seen.insert(blocks.clone()) {
            out.push(blocks);
        }
    }
    out
}

fn coset_label(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

fn coset_tangent(n: usize, blocks: &[Vec<usize>]) -> Vec<Monomial> {
    let mut out = Vec::new();
    for (i, bi) in blocks.iter().enumerate() {
        for bj in &blocks[i + 1..] {
            for &a in bi {
                for &b in bj {
                    out.push(Monomial::ratio(n, a, b));
                }
            }
        }
    }
    out
}

/// Fixed points of `GL_n / P`: tangent weights `x_a / x_b` with `a` in an
/// earlier block than `b`.
pub fn flag_data(weyl: &WeylData) -> FixedPointData {
    let n = weyl.n;
    let points = flag_cosets(weyl)
        .iter()
        .map(|blocks| FixedPoint {
            label: coset_label(blocks),
            tangent: coset_tangent(n, blocks),
        })
        .collect();
    FixedPointData::new(FixedPointData::standard_variables(n), points).expect("flag tangents are nontrivial")
}

/// The line bundle whose restriction at a coset is `∏_i ∏_{a ∈ B_i} x_a^{μ_i}`.
/// On the full flag this is `L_λ` with `L_λ|_w = ∏ x_{w(i)}^{λ_i}`.
pub fn line_bundle_class(weyl: &WeylData, data: Arc<FixedPointData>, mu: &[i32]) -> Result<EquivClass> {
    if mu.len() != weyl.composition.len() {
        return Err(Error::Invalid(format!(
            "weight has {} entries, expected {}",
            mu.len(),
            weyl.composition.len()
        )));
    }
    if *data != flag_data(weyl) {
        return Err(Error::Invalid(
            "data is not the flag variety of this composition".into(),
        ));
    }
    let n = weyl.n;
    let polys = flag_cosets(weyl)
        .iter()
        .map(|blocks| {
            let mut e = vec![0i32; n];
            for (b, &m) in blocks.iter().zip(mu) {
                for &a in b {
                    e[a] += m;
                }
            }
            LaurentPoly::monomial(Monomial(e))
        })
        .collect();
    EquivClass::from_polys(data, polys)
}

/// `χ(GL_n/B, L_λ)`; for dominant `λ` this is the Schur polynomial `s_λ`.
pub fn weyl_character(lambda: &[i32]) -> Result<LaurentPoly> {
    let weyl = WeylData::full(lambda.len())?;
    let data = Arc::new(flag_data(&weyl));
    pushforward_to_point(&line_bundle_class(&weyl, data, lambda)?)
}

/// The projection from the full flag to the partial flag of `weyl`.
pub fn flag_fibration(weyl: &WeylData) -> Result<FiberedFixedPointData> {
    let n = weyl.n;
    let full = WeylData::full(n)?;
    let source_cosets = flag_cosets(&full);
    let target_cosets = flag_cosets(weyl);
    let blocks_of = weyl.block_of_position();
    let mut map = Vec::with_capacity(source_cosets.len());
    let mut relative = Vec::with_capacity(source_cosets.len());
    for c in &source_cosets {
        let w: Vec<usize> = c.iter().map(|b| b[0]).collect();
        let mut blocks = vec![Vec::new(); weyl.composition.len()];
        for (i, &wi) in w.iter().enumerate() {
            blocks[blocks_of[i]].push(wi);
        }
        let mut rel = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if blocks_of[i] == blocks_of[j] {
                    rel.push(Monomial::ratio(n, w[i], w[j]));
                }
            }
        }
        relative.push(rel);
        for b in &mut blocks {
            b.sort();
        }
        map.push(
            target_cosets
                .iter()
                .position(|t| *t == blocks)
                .expect("every coset is enumerated"),
        );
    }
    FiberedFixedPointData::new(Arc::new(flag_data(&full)), Arc::new(flag_data(weyl)), map, relative)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: Vec<LaurentPoly>,
    pub rhs: Vec<LaurentPoly>,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(name: &str, lhs: Vec<LaurentPoly>, rhs: Vec<LaurentPoly>) -> Self {
        let pass = lhs == rhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagIdentityReport {
    pub weyl: WeylData,
    pub weyl_order: String,
    pub levi_weyl_order: String,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

fn big_to_cyc(b: &BigInt) -> CycNumber {
    CycNumber::from_rational(num_rational::BigRational::from_integer(b.clone()))
}

/// Checks the flag-bundle identities for `GL_n ⊃ P ⊃ B` over a point, with
/// `α ∈ R(GL_n)` given as a symmetric Laurent polynomial:
///
/// * `π_*(λ₋₁(T_π*)·π*α) = |W(G,T)|·α` for `π: G/B → pt`,
/// * `q_*(λ₋₁(T_q*)·q*α) = |W(G,T)|/|W(Z,T)|·α` for `q: G/P → pt`,
/// * `p_*(λ₋₁(T_π*)·p*β) = |W(Z,T)|·λ₋₁(T_q*)·β` for `p: G/B → G/P`, with
///   `β = q*α` and with `β = q*α` twisted by a line bundle on `G/P`,
/// * `π_* = q_* ∘ p_*` on `α·L_ρ`.
///
/// Failing identities are reported, not raised.
pub fn verify_flag_identities(weyl: &WeylData, alpha: &LaurentPoly) -> Result<FlagIdentityReport> {
    let n = weyl.n;
    if alpha.nvars() != n {
        return Err(Error::Invalid(format!(
            "α has {} variables, expected {n}",
            alpha.nvars()
        )));
    }
    if !alpha.is_symmetric() {
        return Err(Error::Invalid(
            "α is not symmetric, so it is not pulled back from a point".into(),
        ));
    }
    let full = WeylData::full(n)?;
    let fib = flag_fibration(weyl)?;
    let src = fib.source().clone();
    let tgt = fib.target().clone();
    let w_g = weyl.weyl_order();
    let w_z = weyl.levi_weyl_order();
    let mut checks = Vec::new();

    let euler_full = EquivClass::euler(src.clone());
    let lhs_i = pushforward_to_point(&euler_full.mul_poly(alpha))?;
    checks.push(IdentityCheck::new(
        "full flag to point",
        vec![lhs_i],
        vec![alpha.scale(&big_to_cyc(&w_g))],
    ));

    let euler_partial = EquivClass::euler(tgt.clone());
    let lhs_ii = pushforward_to_point(&euler_partial.mul_poly(alpha))?;
    checks.push(IdentityCheck::new(
        "partial flag to point",
        vec![lhs_ii],
        vec![alpha.scale(&big_to_cyc(&weyl.index()))],
    ));

    let k = weyl.composition.len();
    let twist: Vec<i32> = (0..k).map(|i| (k - 1 - i) as i32).collect();
    let betas = [
        ("full flag to partial flag", EquivClass::constant(tgt.clone(), alpha)?),
        (
            "full flag to partial flag, twisted",
            line_bundle_class(weyl, tgt.clone(), &twist)?.mul_poly(alpha),
        ),
    ];
    for (name, beta) in betas {
        let lhs = fiberwise_pushforward(&fib, &euler_full.mul(&fib.pullback(&beta)?)?)?;
        let rhs = euler_partial.mul(&beta)?.scale(&big_to_cyc(&w_z));
        checks.push(IdentityCheck::new(name, lhs.as_polys()?, rhs.as_polys()?));
    }

    let rho: Vec<i32> = (0..n).map(|i| (n - 1 - i) as i32).collect();
    let x = line_bundle_class(&full, src, &rho)?.mul_poly(alpha);
    let direct = pushforward_to_point(&x)?;
    let staged = pushforward_to_point(&fiberwise_pushforward(&fib, &x)?)?;
    checks.push(IdentityCheck::new(
        "pushforward factors through the partial flag",
        vec![staged],
        vec![direct],
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(FlagIdentityReport {
        weyl: weyl.clone(),
        weyl_order: w_g.to_string(),
        levi_weyl_order: w_z.to_string(),
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkm::euler_class_expansion;
    use crate::oracle::{random_symmetric, schur_ssyt, weyl_dimension};
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coset_counts() {
        assert_eq!(flag_cosets(&WeylData::full(3).unwrap()).len(), 6);
        assert_eq!(flag_cosets(&WeylData::new(3, vec![2, 1]).unwrap()).len(), 3);
        assert_eq!(flag_cosets(&WeylData::new(4, vec![2, 2]).unwrap()).len(), 6);
        assert!(WeylData::new(3, vec![2, 2]).is_err());
        assert!(WeylData::new(3, vec![3, 0]).is_err());
    }

    #[test]
    fn gl2_line_bundle() {
        let s1 = &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1);
        assert_eq!(weyl_character(&[1, 0]).unwrap(), s1);
        assert_eq!(weyl_character(&[0, 0]).unwrap(), LaurentPoly::one(2));
    }

    #[test]
    fn schur_agreement() {
        for lambda in [
            vec![2, 1, 0],
            vec![3, 1, 0],
            vec![2, 2, 0],
            vec![1, 1, 1],
            vec![4, 0, 0],
        ] {
            let got = weyl_character(&lambda).unwrap();
            let shape: Vec<u32> = lambda.iter().map(|&l| l as u32).collect();
            assert_eq!(got, schur_ssyt(&shape, 3), "{lambda:?}");
            let l64: Vec<i64> = lambda.iter().map(|&l| l as i64).collect();
            let dim = weyl_dimension(&l64);
            assert_eq!(got.coefficient_sum(), CycNumber::from_rational(dim));
        }
        let s21 = weyl_character(&[2, 1, 0]).unwrap();
        assert_eq!(s21.num_terms(), 7);
        assert_eq!(
            s21.coefficient_sum(),
            CycNumber::from_rational(BigRational::from_integer(8.into()))
        );
        assert!(s21.is_symmetric());
        assert_eq!(weyl_character(&[2, 1, 0, 0]).unwrap(), schur_ssyt(&[2, 1], 4));
    }

    #[test]
    fn fibration_shape() {
        let weyl = WeylData::new(3, vec![2, 1]).unwrap();
        let fib = flag_fibration(&weyl).unwrap();
        for q in 0..fib.target().len() {
            assert_eq!(fib.fiber(q).len(), 2);
        }
        let full = WeylData::full(3).unwrap();
        let id = flag_fibration(&full).unwrap();
        let data = id.source().clone();
        let l = line_bundle_class(&full, data, &[2, 1, 0]).unwrap();
        assert!(fiberwise_pushforward(&id, &l).unwrap().equals(&l));
    }

    #[test]
    fn identities_hold() {
        let gl2 = WeylData::full(2).unwrap();
        let a = &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1);
        let r = verify_flag_identities(&gl2, &a).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.checks[0].lhs[0], a.scale(&CycNumber::from_int(2)));

        let weyl = WeylData::new(3, vec![2, 1]).unwrap();
        let r = verify_flag_identities(&weyl, &LaurentPoly::one(3)).unwrap();
        assert!(r.pass);
        assert_eq!(r.checks[1].lhs[0], LaurentPoly::constant(3, CycNumber::from_int(3)));
        assert!(verify_flag_identities(&weyl, &LaurentPoly::zero(3)).unwrap().pass);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let a = random_symmetric(3, 2, 1, &mut rng);
            assert!(verify_flag_identities(&weyl, &a).unwrap().pass);
        }
        assert!(verify_flag_identities(&weyl, &LaurentPoly::var(3, 0)).is_err());
    }

    #[test]
    fn flag_euler_characteristic() {
        let e = euler_class_expansion(Arc::new(flag_data(&WeylData::full(2).unwrap()))).unwrap();
        assert_eq!(e.total, LaurentPoly::constant(2, CycNumber::from_int(2)));
        let e = euler_class_expansion(Arc::new(flag_data(&WeylData::full(3).unwrap()))).unwrap();
        assert!(e.sum_matches && e.each_pushes_to_one && e.total_matches_count);
    }

    #[test]
    fn pushforwards_are_symmetric() {
        let weyl = WeylData::new(3, vec![1, 2]).unwrap();
        let data = Arc::new(flag_data(&weyl));
        let l = line_bundle_class(&weyl, data, &[2, -1]).unwrap();
        assert!(pushforward_to_point(&l).unwrap().is_symmetric());
    }
}

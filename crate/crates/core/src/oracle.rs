//! Independent combinatorial oracles: monomial enumeration, semistandard
//! tableaux, the Weyl dimension formula and random symmetric polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::exact::{CycNumber, LaurentPoly, Monomial};

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All exponent vectors of length `nvars` with entries summing to `d`.
pub fn compositions(nvars: usize, d: u32) -> Vec<Vec<i32>> {
    fn go(rest: usize, d: u32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if rest == 1 {
            cur.push(d as i32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=d).rev() {
            cur.push(a as i32);
            go(rest - 1, d - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(nvars, d, &mut Vec::new(), &mut out);
    out
}

/// `h_d(x_0, …, x_{n-1})`: every degree-`d` monomial with coefficient 1.
pub fn complete_homogeneous(nvars: usize, d: u32) -> LaurentPoly {
    LaurentPoly::from_terms(
        nvars,
        compositions(nvars, d)
            .into_iter()
            .map(|e| (Monomial(e), CycNumber::one())),
    )
}

/// Schur polynomial `s_λ(x_0, …, x_{n-1})` as the sum over semistandard
/// tableaux of shape `λ` with entries in `0..n`.
pub fn schur_ssyt(lambda: &[u32], n: usize) -> LaurentPoly {
    let shape: Vec<usize> = lambda.iter().map(|&l| l as usize).filter(|&l| l > 0).collect();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut tableau: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = LaurentPoly::zero(n);
    fn fill(i: usize, cells: &[(usize, usize)], t: &mut Vec<Vec<usize>>, n: usize, out: &mut LaurentPoly) {
        if i == cells.len() {
            let mut e = vec![0i32; n];
            for row in t.iter() {
                for &v in row {
                    e[v] += 1;
                }
            }
            out.add_term(Monomial(e), &CycNumber::one());
            return;
        }
        let (r, c) = cells[i];
        let lo_row = if c > 0 { t[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { t[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            t[r][c] = v;
            fill(i + 1, cells, t, n, out);
        }
    }
    fill(0, &cells, &mut tableau, n, &mut out);
    out
}

/// `∏_{i<j} (λ_i − λ_j + j − i) / (j − i)`.
pub fn weyl_dimension(lambda: &[i64]) -> BigRational {
    let n = lambda.len();
    let mut acc = BigRational::one();
    for i in 0..n {
        for j in i + 1..n {
            acc *= BigRational::new(
                BigInt::from(lambda[i] - lambda[j] + (j - i) as i64),
                BigInt::from((j - i) as i64),
            );
        }
    }
    acc
}

/// A random symmetric Laurent polynomial: a combination of a few orbit sums
/// of monomials with exponents in `-range..=range` and small integer coefficients.
pub fn random_symmetric<R: Rng>(nvars: usize, terms: usize, range: i32, rng: &mut R) -> LaurentPoly {
    let perms = permutations(nvars);
    let mut out = LaurentPoly::zero(nvars);
    for _ in 0..terms {
        let e: Vec<i32> = (0..nvars).map(|_| rng.gen_range(-range..=range)).collect();
        let c = CycNumber::from_int(rng.gen_range(-3..=3));
        let mut orbit: Vec<Vec<i32>> = perms.iter().map(|p| p.iter().map(|&i| e[i]).collect()).collect();
        orbit.sort();
        orbit.dedup();
        for m in orbit {
            out.add_term(Monomial(m), &c);
        }
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn counts() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(complete_homogeneous(3, 2).num_terms(), 6);
        assert_eq!(complete_homogeneous(1, 4).num_terms(), 1);
        assert_eq!(complete_homogeneous(4, 0), LaurentPoly::one(4));
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn schur_small_cases() {
        let s21 = schur_ssyt(&[2, 1, 0], 3);
        assert_eq!(s21.num_terms(), 7);
        assert_eq!(s21.coefficient_sum(), CycNumber::from_int(8));
        assert_eq!(schur_ssyt(&[1], 2), &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1));
        assert_eq!(schur_ssyt(&[3], 3), complete_homogeneous(3, 3));
        assert_eq!(weyl_dimension(&[2, 1, 0]), BigRational::from_integer(8.into()));
    }

    #[test]
    fn random_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            assert!(random_symmetric(3, 3, 2, &mut rng).is_symmetric());
        }
    }
}

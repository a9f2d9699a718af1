//! Multivariate Laurent polynomials with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::CycNumber;
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial; negative entries allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// `x_a / x_b`.
    pub fn ratio(nvars: usize, a: usize, b: usize) -> Self {
        let mut e = vec![0; nvars];
        e[a] += 1;
        e[b] -= 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn inverse(&self) -> Self {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: i32) -> Self {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// Sign of the first nonzero exponent (0 for the identity).
    pub fn leading_sign(&self) -> i32 {
        self.0.iter().find(|&&e| e != 0).map_or(0, |e| e.signum())
    }

    pub fn evaluate(&self, point: &[CycNumber]) -> Result<CycNumber> {
        let mut acc = CycNumber::one();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e < 0 && point[i].is_zero() {
                return Err(Error::ZeroAtNegativeExponent(i));
            }
            acc = &acc * &point[i].pow(e as i64)?;
        }
        Ok(acc)
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut e = vec![0; self.nvars()];
        for (i, &x) in self.0.iter().enumerate() {
            e[perm[i]] = x;
        }
        Monomial(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial in a fixed number of variables.
///
/// Terms are kept in lexicographic exponent order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, CycNumber>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, CycNumber::one())
    }

    pub fn constant(nvars: usize, c: CycNumber) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, CycNumber::one())
    }

    pub fn term(m: Monomial, c: CycNumber) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, CycNumber)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNumber)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNumber {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<CycNumber> {
        match self.terms.len() {
            0 => Some(CycNumber::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &CycNumber) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &CycNumber) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[CycNumber]) -> Result<CycNumber> {
        if point.len() != self.nvars {
            return Err(Error::Invalid(format!(
                "evaluation point has {} values for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = CycNumber::zero();
        for (m, c) in &self.terms {
            acc += &(c * &m.evaluate(point)?);
        }
        Ok(acc)
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect(),
        }
    }

    /// Invariance under all adjacent transpositions of variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            self.permute_vars(&perm) == *self
        })
    }

    /// Sum of coefficients, the value at the all-ones point.
    pub fn coefficient_sum(&self) -> CycNumber {
        self.terms.values().sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (m.is_one(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "({c})*{m}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct TermRepr {
    m: Monomial,
    c: CycNumber,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    m: m.clone(),
                    c: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        if r.terms.iter().any(|t| t.m.nvars() != r.nvars) {
            return Err(serde::de::Error::custom("monomial arity does not match nvars"));
        }
        Ok(LaurentPoly::from_terms(
            r.nvars,
            r.terms.into_iter().map(|t| (t.m, t.c)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::var(2, i)
    }

    #[test]
    fn evaluate_h2_at_cube_root() {
        let h2 = &(&(&x(0) * &x(0)) + &(&x(0) * &x(1))) + &(&x(1) * &x(1));
        let w = CycNumber::root_of_unity(3, 1);
        let v = h2.evaluate(&[CycNumber::one(), w]).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn evaluate_ratio_and_ones() {
        let p = LaurentPoly::monomial(Monomial::ratio(2, 0, 1));
        let i = CycNumber::root_of_unity(4, 1);
        assert!(p.evaluate(&[i.clone(), i]).unwrap().is_one());
        let q = &p + &LaurentPoly::constant(2, CycNumber::from_int(5));
        assert_eq!(
            q.evaluate(&[CycNumber::one(), CycNumber::one()]).unwrap(),
            q.coefficient_sum()
        );
    }

    #[test]
    fn evaluate_zero_at_negative_exponent() {
        let p = LaurentPoly::monomial(Monomial(vec![1, -1]));
        let err = p.evaluate(&[CycNumber::one(), CycNumber::zero()]).unwrap_err();
        assert!(matches!(err, Error::ZeroAtNegativeExponent(1)));
        let q = LaurentPoly::monomial(Monomial(vec![1, 2]));
        assert!(q.evaluate(&[CycNumber::one(), CycNumber::zero()]).unwrap().is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &x(0) - &x(0);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn symmetry_detection() {
        assert!((&x(0) + &x(1)).is_symmetric());
        assert!(!(&x(0) + &(&x(1) * &x(1))).is_symmetric());
    }

    #[test]
    fn serde_round_trip() {
        let p = &x(0).scale(&CycNumber::root_of_unity(5, 2)) - &LaurentPoly::monomial(Monomial(vec![-3, 1]));
        let s = serde_json::to_string(&p).unwrap();
        let q: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(s, serde_json::to_string(&q).unwrap());
    }
}

//! Laurent polynomials divided by products of binomials `(1 - c·m)`.
//!
//! Denominators are never expanded. Each factor is stored in a canonical
//! associate class (the monomial's first nonzero exponent is positive), so
//! `1/(1-t) + 1/(1-t⁻¹)` shares a single denominator factor and collapses.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{CycNumber, LaurentPoly, Monomial};
use crate::error::{Error, Result};

/// The binomial `1 - scalar·monomial`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BinomialFactor {
    #[serde(rename = "m")]
    pub monomial: Monomial,
    #[serde(rename = "c")]
    pub scalar: CycNumber,
}

impl BinomialFactor {
    pub fn new(scalar: CycNumber, monomial: Monomial) -> Result<Self> {
        if scalar.is_zero() {
            return Err(Error::Invalid("binomial factor with zero scalar".into()));
        }
        if monomial.is_one() && scalar.is_one() {
            return Err(Error::Invalid("binomial factor 1 - 1 is zero".into()));
        }
        Ok(Self { monomial, scalar })
    }

    /// `1 - χ`.
    pub fn one_minus(m: Monomial) -> Result<Self> {
        Self::new(CycNumber::one(), m)
    }

    pub fn to_poly(&self) -> LaurentPoly {
        let n = self.monomial.nvars();
        let mut p = LaurentPoly::one(n);
        p.add_term(self.monomial.clone(), &(-&self.scalar));
        p
    }

    /// Splits `1 - c·m` as `unit · canonical` where `unit = u_c·u_m` is a
    /// scalar times a monomial and the canonical factor has a monomial with
    /// positive leading exponent.
    fn canonicalize(self) -> (CycNumber, Monomial, Option<BinomialFactor>) {
        let n = self.monomial.nvars();
        if self.monomial.is_one() {
            // A pure scalar 1 - c, absorbed into the unit.
            let s = &CycNumber::one() - &self.scalar;
            return (s, Monomial::one(n), None);
        }
        if self.monomial.leading_sign() > 0 {
            return (CycNumber::one(), Monomial::one(n), Some(self));
        }
        // 1 - c m = (-c m)(1 - c⁻¹ m⁻¹)
        let inv = self.scalar.inv().expect("nonzero scalar");
        let unit_c = -&self.scalar;
        let unit_m = self.monomial.clone();
        let f = BinomialFactor {
            scalar: inv,
            monomial: self.monomial.inverse(),
        };
        (unit_c, unit_m, Some(f))
    }
}

impl fmt::Display for BinomialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scalar.is_one() {
            write!(f, "(1 - {})", self.monomial)
        } else {
            write!(f, "(1 - ({})*{})", self.scalar, self.monomial)
        }
    }
}

/// Exact division of `p` by `1 - c·m`; `None` if the division leaves a remainder.
///
/// Monomials of `p` are grouped into strings `r·m^k`; on each string the
/// division is a univariate recurrence, so the cost is linear in the size of `p`.
pub fn divide_by_binomial(p: &LaurentPoly, f: &BinomialFactor) -> Option<LaurentPoly> {
    let m = &f.monomial;
    let c = &f.scalar;
    let n = p.nvars();
    if p.is_zero() {
        return Some(p.clone());
    }
    if m.is_one() {
        let s = &CycNumber::one() - c;
        return Some(p.scale(&s.inv().ok()?));
    }
    let pivot = m.0.iter().position(|&e| e != 0).unwrap();
    let step = m.0[pivot];
    let mut strings: BTreeMap<Monomial, BTreeMap<i64, CycNumber>> = BTreeMap::new();
    for (u, coeff) in p.terms() {
        let k = (u.0[pivot] as i64).div_euclid(step as i64);
        let base = u.mul(&m.pow(-(k as i32)));
        strings.entry(base).or_default().insert(k, coeff.clone());
    }
    let mut q = LaurentPoly::zero(n);
    for (base, coeffs) in strings {
        let lo = *coeffs.keys().next().unwrap();
        let hi = *coeffs.keys().next_back().unwrap();
        if lo == hi {
            return None;
        }
        let mut prev = CycNumber::zero();
        for k in lo..hi {
            let pk = coeffs.get(&k).cloned().unwrap_or_default();
            let qk = &pk + &(c * &prev);
            if !qk.is_zero() {
                q.add_term(base.mul(&m.pow(k as i32)), &qk);
            }
            prev = qk;
        }
        let top = &coeffs[&hi] + &(c * &prev);
        if !top.is_zero() {
            return None;
        }
    }
    Some(q)
}

/// `numerator / ∏ denominator` with denominators kept as a sorted multiset.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    numerator: LaurentPoly,
    denominator: Vec<BinomialFactor>,
}

impl LocalizedElement {
    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            numerator: p,
            denominator: Vec::new(),
        }
    }

    /// Builds `numerator / ∏ factors` and reduces it.
    pub fn new(numerator: LaurentPoly, factors: Vec<BinomialFactor>) -> Self {
        let n = numerator.nvars();
        let mut num = numerator;
        let mut den = Vec::with_capacity(factors.len());
        for f in factors {
            let (uc, um, canon) = f.canonicalize();
            let inv = uc.inv().expect("binomial units are nonzero");
            num = num.mul_monomial(&um.inverse(), &inv);
            if let Some(cf) = canon {
                den.push(cf);
            }
        }
        debug_assert!(den.iter().all(|f| f.monomial.nvars() == n));
        den.sort();
        let mut e = Self {
            numerator: num,
            denominator: den,
        };
        e.reduce();
        e
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(nvars))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[BinomialFactor] {
        &self.denominator
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    pub fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let mut i = 0;
        while i < self.denominator.len() {
            if let Some(q) = divide_by_binomial(&self.numerator, &self.denominator[i]) {
                self.numerator = q;
                self.denominator.remove(i);
            } else {
                i += 1;
            }
        }
    }

    pub fn as_polynomial(&self) -> Result<LaurentPoly> {
        if self.denominator.is_empty() {
            Ok(self.numerator.clone())
        } else {
            Err(Error::ResidualDenominator(self.to_string()))
        }
    }

    fn expand(factors: &[BinomialFactor], nvars: usize) -> LaurentPoly {
        factors
            .iter()
            .fold(LaurentPoly::one(nvars), |acc, f| &acc * &f.to_poly())
    }

    /// Multiset difference `a \ b` of sorted factor lists.
    fn difference(a: &[BinomialFactor], b: &[BinomialFactor]) -> Vec<BinomialFactor> {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() {
            if j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => {
                        out.push(a[i].clone());
                        i += 1;
                    }
                    std::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    std::cmp::Ordering::Greater => j += 1,
                }
            } else {
                out.push(a[i].clone());
                i += 1;
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        let mut e = Self {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        };
        e.reduce();
        e
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        let mut e = Self {
            numerator: &self.numerator * p,
            denominator: self.denominator.clone(),
        };
        e.reduce();
        e
    }

    /// Cross-multiplied polynomial equality.
    pub fn equals(&self, other: &Self) -> bool {
        let n = self.nvars();
        let lhs = &self.numerator * &Self::expand(&other.denominator, n);
        let rhs = &other.numerator * &Self::expand(&self.denominator, n);
        lhs == rhs
    }
}

impl PartialEq for LocalizedElement {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / ", self.numerator)?;
        for d in &self.denominator {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a LocalizedElement> for &'a LocalizedElement {
    type Output = LocalizedElement;
    fn add(self, rhs: &'a LocalizedElement) -> LocalizedElement {
        let n = self.nvars();
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let only_rhs = LocalizedElement::difference(&rhs.denominator, &self.denominator);
        let only_lhs = LocalizedElement::difference(&self.denominator, &rhs.denominator);
        let num = &(&self.numerator * &LocalizedElement::expand(&only_rhs, n))
            + &(&rhs.numerator * &LocalizedElement::expand(&only_lhs, n));
        let mut den = self.denominator.clone();
        den.extend(only_rhs);
        den.sort();
        let mut e = LocalizedElement {
            numerator: num,
            denominator: den,
        };
        e.reduce();
        e
    }
}

impl Neg for &LocalizedElement {
    type Output = LocalizedElement;
    fn neg(self) -> LocalizedElement {
        LocalizedElement {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl<'a> Sub<&'a LocalizedElement> for &'a LocalizedElement {
    type Output = LocalizedElement;
    fn sub(self, rhs: &'a LocalizedElement) -> LocalizedElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LocalizedElement> for &'a LocalizedElement {
    type Output = LocalizedElement;
    fn mul(self, rhs: &'a LocalizedElement) -> LocalizedElement {
        let mut den = self.denominator.clone();
        den.extend(rhs.denominator.iter().cloned());
        den.sort();
        let mut e = LocalizedElement {
            numerator: &self.numerator * &rhs.numerator,
            denominator: den,
        };
        e.reduce();
        e
    }
}

impl std::iter::Sum for LocalizedElement {
    fn sum<I: Iterator<Item = LocalizedElement>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of empty localized iterator has no arity");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

#[derive(Serialize, Deserialize)]
struct LocalizedRepr {
    num: LaurentPoly,
    den: Vec<BinomialFactor>,
}

impl Serialize for LocalizedElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LocalizedRepr {
            num: self.numerator.clone(),
            den: self.denominator.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalizedElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LocalizedRepr::deserialize(d)?;
        for f in &r.den {
            BinomialFactor::new(f.scalar.clone(), f.monomial.clone()).map_err(serde::de::Error::custom)?;
        }
        Ok(LocalizedElement::new(r.num, r.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: i32) -> Monomial {
        Monomial(vec![e])
    }

    fn inv_one_minus(m: Monomial) -> LocalizedElement {
        let n = m.nvars();
        LocalizedElement::new(LaurentPoly::one(n), vec![BinomialFactor::one_minus(m).unwrap()])
    }

    #[test]
    fn geometric_pair_collapses() {
        let s = &inv_one_minus(t(1)) + &inv_one_minus(t(-1));
        assert_eq!(s.as_polynomial().unwrap(), LaurentPoly::one(1));
    }

    #[test]
    fn cancellation_by_multiplication() {
        let f = BinomialFactor::one_minus(t(1)).unwrap();
        let e = inv_one_minus(t(1)).mul_poly(&f.to_poly());
        assert_eq!(e.as_polynomial().unwrap(), LaurentPoly::one(1));
    }

    #[test]
    fn residual_denominator() {
        assert!(matches!(
            inv_one_minus(t(1)).as_polynomial(),
            Err(Error::ResidualDenominator(_))
        ));
    }

    #[test]
    fn p1_o1_sum() {
        // x0/(1 - x1 x0⁻¹) + x1/(1 - x0 x1⁻¹) = x0 + x1
        let x0sq = LaurentPoly::monomial(Monomial(vec![1, 0]));
        let x1sq = LaurentPoly::monomial(Monomial(vec![0, 1]));
        let a = LocalizedElement::new(x0sq, vec![BinomialFactor::one_minus(Monomial(vec![-1, 1])).unwrap()]);
        let b = LocalizedElement::new(x1sq, vec![BinomialFactor::one_minus(Monomial(vec![1, -1])).unwrap()]);
        let s = (&a + &b).as_polynomial().unwrap();
        let expected = &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1);
        assert_eq!(s, expected);
    }

    #[test]
    fn division_with_scalar_and_gaps() {
        // (1 - ζ t²)(t⁻³ + 5 t) divided back
        let f = BinomialFactor::new(CycNumber::root_of_unity(3, 1), t(2)).unwrap();
        let q = &LaurentPoly::monomial(t(-3)) + &LaurentPoly::term(t(1), CycNumber::from_int(5));
        let p = &q * &f.to_poly();
        assert_eq!(divide_by_binomial(&p, &f).unwrap(), q);
        assert!(divide_by_binomial(&q, &f).is_none());
    }

    #[test]
    fn equality_is_cross_multiplied() {
        let f = BinomialFactor::one_minus(t(1)).unwrap();
        let a = LocalizedElement {
            numerator: f.to_poly(),
            denominator: vec![f.clone(), f.clone()],
        };
        let b = inv_one_minus(t(1));
        assert_eq!(a, b);
    }

    #[test]
    fn serde_round_trip() {
        let e = inv_one_minus(Monomial(vec![1, -2])).scale(&CycNumber::root_of_unity(4, 1));
        let s = serde_json::to_string(&e).unwrap();
        let back: LocalizedElement = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
        assert_eq!(back, e);
    }
}

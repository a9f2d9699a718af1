//! Exact elements of cyclotomic fields `Q(ζ_N)`.
//!
//! An element is stored over the power basis `1, ζ, …, ζ^{φ(N)-1}` of the
//! field of its declared order `N`. Mixed-order arithmetic promotes both
//! operands to `Q(ζ_L)` with `L = lcm`, embedding `ζ_M ↦ ζ_L^{L/M}`.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

thread_local! {
    static CYCLOTOMIC_POLYS: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Integer coefficients of `Φ_N`, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    if let Some(p) = CYCLOTOMIC_POLYS.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // Φ_N = (x^N - 1) / ∏_{d | N, d < N} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    let p = Rc::new(num);
    CYCLOTOMIC_POLYS.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduces a coefficient vector (any length) modulo `Φ_N` in place and
/// truncates it to length `φ(N)`.
fn reduce_mod_cyclotomic(coeffs: &mut Vec<BigRational>, n: u32) {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut coeffs[i], BigRational::zero());
        for (j, pj) in phi.iter().enumerate().take(deg) {
            if *pj != 0 {
                coeffs[i - deg + j] -= &c * BigRational::from_integer(BigInt::from(*pj));
            }
        }
    }
    coeffs.resize(deg, BigRational::zero());
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycNumber {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    /// Builds an element from power-basis coefficients of length `φ(order)`.
    pub fn new(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("cyclotomic order must be positive".into()));
        }
        let phi = totient(order) as usize;
        if coeffs.len() != phi {
            return Err(Error::Invalid(format!(
                "order {order} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self { order, coeffs }.normalized())
    }

    pub fn zero() -> Self {
        Self {
            order: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self {
            order: 1,
            coeffs: vec![BigRational::from_integer(BigInt::from(v))],
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); (n as usize).max(1)];
        v[e] = BigRational::one();
        reduce_mod_cyclotomic(&mut v, n);
        Self { order: n, coeffs: v }.normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = self.coeffs.swap_remove(0);
            return Self {
                order: 1,
                coeffs: vec![c],
            };
        }
        self
    }

    /// Re-expresses the element in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn promote(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.order),
            "cannot promote order {} to {}",
            self.order,
            target
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut v = vec![BigRational::zero(); target as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[k * step] = c.clone();
            }
        }
        reduce_mod_cyclotomic(&mut v, target);
        Self {
            order: target,
            coeffs: v,
        }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self, u32) {
        let l = a.order.lcm(&b.order);
        (a.promote(l), b.promote(l), l)
    }

    /// The Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the order).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        if n == 1 {
            return self.clone();
        }
        debug_assert_eq!((k.rem_euclid(n)).gcd(&n), 1);
        let mut v = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((j as i64) * k).rem_euclid(n) as usize;
                v[e] += c;
            }
        }
        reduce_mod_cyclotomic(&mut v, self.order);
        Self {
            order: self.order,
            coeffs: v,
        }
        .normalized()
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let n = self.order as i64;
        let mut others = CycNumber::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (&others * self).to_rational().expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
        .normalized()
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNumber::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `Tr_{Q(ζ_N)/Q}(a) / φ(N)`: independent of the field the element is
    /// expressed in, so it serves as a representation-independent hash.
    pub fn normalized_trace(&self) -> BigRational {
        let n = self.order;
        let mut acc = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let g = (k as u32).gcd(&n);
            let m = n / g;
            let mu = mobius(m);
            if mu != 0 {
                acc += c * BigRational::new(BigInt::from(mu), BigInt::from(totient(m)));
            }
        }
        acc
    }

    /// Approximate complex value; only for display.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            let v = c.to_f64().unwrap_or(f64::NAN);
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNumber {}

impl Hash for CycNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.normalized_trace().hash(state);
    }
}

impl Ord for CycNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::common(self, other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialOrd for CycNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for CycNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z{}^{}", self.order, k)?,
                (_, false) => write!(f, "{abs}*z{}^{}", self.order, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &'a CycNumber) -> CycNumber {
        if self.order == rhs.order {
            let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
            return CycNumber {
                order: self.order,
                coeffs,
            }
            .normalized();
        }
        let (a, b, l) = CycNumber::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycNumber { order: l, coeffs }.normalized()
    }
}

impl<'a> Sub<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &'a CycNumber) -> CycNumber {
        self + &(-rhs)
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        -&self
    }
}

impl<'a> Mul<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &'a CycNumber) -> CycNumber {
        if self.order == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let (a, b, l) = CycNumber::common(self, rhs);
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        let mut v = vec![BigRational::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        reduce_mod_cyclotomic(&mut v, l);
        CycNumber { order: l, coeffs: v }.normalized()
    }
}

impl<'a> Div<&'a CycNumber> for &'a CycNumber {
    type Output = CycNumber;
    /// Panics on division by zero; use [`CycNumber::inv`] to handle it.
    fn div(self, rhs: &'a CycNumber) -> CycNumber {
        self * &rhs.inv().expect("division by zero cyclotomic")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &'a CycNumber) -> CycNumber {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&CycNumber> for CycNumber {
    fn add_assign(&mut self, rhs: &CycNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNumber> for CycNumber {
    fn sub_assign(&mut self, rhs: &CycNumber) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNumber> for CycNumber {
    fn mul_assign(&mut self, rhs: &CycNumber) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for CycNumber {
    fn sum<I: Iterator<Item = CycNumber>>(iter: I) -> Self {
        iter.fold(CycNumber::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a CycNumber> for CycNumber {
    fn sum<I: Iterator<Item = &'a CycNumber>>(iter: I) -> Self {
        iter.fold(CycNumber::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for CycNumber {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<BigRational> for CycNumber {
    fn from(v: BigRational) -> Self {
        Self::from_rational(v)
    }
}

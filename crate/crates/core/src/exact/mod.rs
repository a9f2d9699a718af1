//! Exact coefficient arithmetic: cyclotomic numbers, Laurent polynomials,
//! localized elements and dense matrices over cyclotomic fields.

mod cyclotomic;
mod laurent;
mod localized;
mod matrix;

pub use cyclotomic::{cyclotomic_polynomial, totient, CycNumber};
pub use laurent::{LaurentPoly, Monomial};
pub use localized::{divide_by_binomial, BinomialFactor, LocalizedElement};
pub use matrix::Matrix;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// Rationals travel as `"p/q"` (or `"p"`) strings.
pub fn rational_to_string(q: &BigRational) -> String {
    q.to_string()
}

pub fn rational_from_str(s: &str) -> Option<BigRational> {
    s.trim().parse().ok()
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycRepr {
            order: self.order(),
            coeffs: self.coeffs().iter().map(rational_to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycRepr::deserialize(d)?;
        let coeffs = r
            .coeffs
            .iter()
            .map(|c| rational_from_str(c).ok_or_else(|| serde::de::Error::custom(format!("bad rational {c:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        CycNumber::new(r.order, coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyc_serde() {
        let a = CycNumber::root_of_unity(5, 3).scale(&BigRational::new(3.into(), 7.into()));
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"order":5,"coeffs":["0","0","0","3/7"]}"#);
        let b: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<CycNumber>(r#"{"order":5,"coeffs":["1"]}"#).is_err());
    }
}

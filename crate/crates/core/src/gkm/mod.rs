//! Torus-fixed-point localization for spaces with isolated fixed points.
//!
//! A space is recorded by its fixed points and the torus weights of the
//! tangent space at each. Classes are tuples of restrictions; pushforwards
//! are sums of `α_p / λ₋₁(T_p*)` that must collapse to Laurent polynomials.
//!
//! Weight convention: the tangent space of `P^n` at `p_i` has weights
//! `x_i / x_j`, `O(d)` restricts to `x_i^d`, and on a flag variety the
//! tangent at a coset has weights `x_a / x_b` for `a` in an earlier block
//! than `b`. With these, `χ(P¹, O(1)) = x₀ + x₁` and dominant line bundles
//! on full flags push forward to Schur polynomials.

mod flag;

pub use flag::{
    flag_cosets, flag_data, flag_fibration, line_bundle_class, verify_flag_identities, weyl_character,
    FlagIdentityReport, IdentityCheck, WeylData,
};

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{BinomialFactor, CycNumber, LaurentPoly, LocalizedElement, Monomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub label: String,
    pub tangent: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointData {
    variables: Vec<String>,
    points: Vec<FixedPoint>,
}

impl FixedPointData {
    pub fn new(variables: Vec<String>, points: Vec<FixedPoint>) -> Result<Self> {
        let n = variables.len();
        if points.is_empty() {
            return Err(Error::Invalid("fixed-point data needs at least one point".into()));
        }
        let is_point = points.len() == 1 && points[0].tangent.is_empty();
        for (i, p) in points.iter().enumerate() {
            if p.tangent.is_empty() && !is_point {
                return Err(Error::Invalid(format!("fixed point {i} has an empty tangent space")));
            }
            for w in &p.tangent {
                if w.nvars() != n {
                    return Err(Error::Invalid(format!("weight {w} at point {i} has the wrong arity")));
                }
                if w.is_one() {
                    return Err(Error::Invalid(format!(
                        "fixed point {i} is not isolated (trivial weight)"
                    )));
                }
            }
        }
        Ok(Self { variables, points })
    }

    pub fn standard_variables(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    /// The one-point space.
    pub fn point(nvars: usize) -> Self {
        Self {
            variables: Self::standard_variables(nvars),
            points: vec![FixedPoint {
                label: "pt".into(),
                tangent: Vec::new(),
            }],
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FixedPoint] {
        &self.points
    }

    pub fn tangent(&self, p: usize) -> &[Monomial] {
        &self.points[p].tangent
    }

    /// Parses `{variables, points: [{label, tangent: [[e…], …]}]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let variables = match v.get("variables") {
            Some(Value::Array(a)) => a
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    s.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| Error::descriptor(format!("/variables/{i}"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?,
            Some(Value::Number(k)) => {
                let k = k
                    .as_u64()
                    .ok_or_else(|| Error::descriptor("/variables", "expected a count"))?;
                Self::standard_variables(k as usize)
            }
            _ => return Err(Error::descriptor("/variables", "expected a list of names or a count")),
        };
        let n = variables.len();
        let pts = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::descriptor("/points", "expected a list"))?;
        let mut points = Vec::with_capacity(pts.len());
        for (i, p) in pts.iter().enumerate() {
            let label = match p.get("label") {
                Some(Value::String(s)) => s.clone(),
                None => format!("p{i}"),
                Some(_) => return Err(Error::descriptor(format!("/points/{i}/label"), "expected a string")),
            };
            let tangent = p
                .get("tangent")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::descriptor(format!("/points/{i}/tangent"), "expected a list"))?;
            let mut weights = Vec::with_capacity(tangent.len());
            for (j, w) in tangent.iter().enumerate() {
                let ptr = format!("/points/{i}/tangent/{j}");
                let e: Vec<i32> = serde_json::from_value(w.clone())
                    .map_err(|_| Error::descriptor(&ptr, "expected an exponent vector"))?;
                if e.len() != n {
                    return Err(Error::descriptor(
                        &ptr,
                        format!("expected {n} exponents, got {}", e.len()),
                    ));
                }
                if e.iter().all(|&x| x == 0) {
                    return Err(Error::descriptor(&ptr, "trivial weight: fixed point is not isolated"));
                }
                weights.push(Monomial(e));
            }
            points.push(FixedPoint {
                label,
                tangent: weights,
            });
        }
        Self::new(variables, points).map_err(|e| match e {
            Error::Invalid(m) => Error::descriptor("/points", m),
            other => other,
        })
    }
}

/// `∏_χ (1 − χ⁻¹)`, expanded.
pub fn lambda_minus_one(nvars: usize, weights: &[Monomial]) -> LaurentPoly {
    weights.iter().fold(LaurentPoly::one(nvars), |acc, w| {
        let mut f = LaurentPoly::one(nvars);
        f.add_term(w.inverse(), &CycNumber::from_int(-1));
        &acc * &f
    })
}

fn dual_factors(weights: &[Monomial]) -> Result<Vec<BinomialFactor>> {
    weights.iter().map(|w| BinomialFactor::one_minus(w.inverse())).collect()
}

/// An equivariant class given by its restriction to each fixed point.
#[derive(Clone, Debug)]
pub struct EquivClass {
    data: Arc<FixedPointData>,
    restrictions: Vec<LocalizedElement>,
}

impl EquivClass {
    pub fn new(data: Arc<FixedPointData>, restrictions: Vec<LocalizedElement>) -> Result<Self> {
        if restrictions.len() != data.len() {
            return Err(Error::Invalid(format!(
                "{} restrictions for {} fixed points",
                restrictions.len(),
                data.len()
            )));
        }
        if restrictions.iter().any(|r| r.nvars() != data.nvars()) {
            return Err(Error::Invalid("restriction arity does not match the torus".into()));
        }
        Ok(Self { data, restrictions })
    }

    pub fn from_polys(data: Arc<FixedPointData>, polys: Vec<LaurentPoly>) -> Result<Self> {
        Self::new(data, polys.into_iter().map(LocalizedElement::from_poly).collect())
    }

    /// The class pulled back from the point: the same polynomial everywhere.
    pub fn constant(data: Arc<FixedPointData>, p: &LaurentPoly) -> Result<Self> {
        let n = data.len();
        Self::from_polys(data, vec![p.clone(); n])
    }

    /// The class restricting to `λ₋₁(T_p*)` at each `p`.
    pub fn euler(data: Arc<FixedPointData>) -> Self {
        let n = data.nvars();
        let r = data
            .points
            .iter()
            .map(|p| LocalizedElement::from_poly(lambda_minus_one(n, &p.tangent)))
            .collect();
        Self { data, restrictions: r }
    }

    /// `i_{l*}1`: `λ₋₁(T_{p_l}*)` at `p_l` and zero elsewhere.
    pub fn point_class(data: Arc<FixedPointData>, l: usize) -> Self {
        let n = data.nvars();
        let r = (0..data.len())
            .map(|m| {
                if m == l {
                    LocalizedElement::from_poly(lambda_minus_one(n, &data.points[m].tangent))
                } else {
                    LocalizedElement::zero(n)
                }
            })
            .collect();
        Self { data, restrictions: r }
    }

    pub fn data(&self) -> &Arc<FixedPointData> {
        &self.data
    }

    pub fn restrictions(&self) -> &[LocalizedElement] {
        &self.restrictions
    }

    pub fn restriction(&self, p: usize) -> &LocalizedElement {
        &self.restrictions[p]
    }

    fn zip(&self, other: &Self, f: impl Fn(&LocalizedElement, &LocalizedElement) -> LocalizedElement) -> Result<Self> {
        if !Arc::ptr_eq(&self.data, &other.data) && self.data != other.data {
            return Err(Error::Invalid("classes live on different spaces".into()));
        }
        let r = self
            .restrictions
            .iter()
            .zip(&other.restrictions)
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(Self {
            data: self.data.clone(),
            restrictions: r,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: &CycNumber) -> Self {
        Self {
            data: self.data.clone(),
            restrictions: self.restrictions.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        Self {
            data: self.data.clone(),
            restrictions: self.restrictions.iter().map(|r| r.mul_poly(p)).collect(),
        }
    }

    /// Restrictions as polynomials; fails on any residual denominator.
    pub fn as_polys(&self) -> Result<Vec<LaurentPoly>> {
        self.restrictions.iter().map(LocalizedElement::as_polynomial).collect()
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.data == other.data && self.restrictions.iter().zip(&other.restrictions).all(|(a, b)| a == b)
    }
}

impl Serialize for EquivClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            labels: Vec<&'a str>,
            restrictions: &'a [LocalizedElement],
        }
        Repr {
            labels: self.data.points.iter().map(|p| p.label.as_str()).collect(),
            restrictions: &self.restrictions,
        }
        .serialize(s)
    }
}

/// `Σ_{p ∈ points} α_p / λ₋₁(T_p*)` over the given points, left uncollapsed.
fn localized_sum(
    nvars: usize,
    terms: impl IndexedParallelIterator<Item = Result<LocalizedElement>>,
) -> Result<LocalizedElement> {
    // Terms are formed in parallel and summed in index order.
    let terms: Vec<LocalizedElement> = terms.collect::<Result<Vec<_>>>()?;
    Ok(terms.iter().fold(LocalizedElement::zero(nvars), |acc, t| &acc + t))
}

fn localized_term(alpha: &LocalizedElement, weights: &[Monomial]) -> Result<LocalizedElement> {
    let inv = LocalizedElement::new(LaurentPoly::one(alpha.nvars()), dual_factors(weights)?);
    Ok(alpha * &inv)
}

/// The pushforward to a point in localized form.
pub fn pushforward_localized(alpha: &EquivClass) -> Result<LocalizedElement> {
    let data = &alpha.data;
    localized_sum(
        data.nvars(),
        (0..data.len())
            .into_par_iter()
            .map(|p| localized_term(&alpha.restrictions[p], &data.points[p].tangent)),
    )
}

/// `Σ_p α_p / λ₋₁(T_p*)`, which must collapse to a Laurent polynomial.
pub fn pushforward_to_point(alpha: &EquivClass) -> Result<LaurentPoly> {
    pushforward_localized(alpha)?.as_polynomial()
}

/// `P^n` with fixed points `p_0 … p_n`.
pub fn projective_space_data(n: usize) -> FixedPointData {
    let nv = n + 1;
    let points = (0..nv)
        .map(|i| FixedPoint {
            label: format!("p{i}"),
            tangent: (0..nv).filter(|&j| j != i).map(|j| Monomial::ratio(nv, i, j)).collect(),
        })
        .collect();
    FixedPointData {
        variables: FixedPointData::standard_variables(nv),
        points,
    }
}

/// `O(d)` on projective space data: `x_i^d` at `p_i`.
pub fn o_d_class(data: Arc<FixedPointData>, d: i32) -> Result<EquivClass> {
    let nv = data.nvars();
    if data.len() != nv {
        return Err(Error::Invalid("O(d) needs projective space data".into()));
    }
    let polys = (0..nv)
        .map(|i| LaurentPoly::monomial(Monomial::var(nv, i).pow(d)))
        .collect();
    EquivClass::from_polys(data, polys)
}

/// A surjection of fixed-point sets with the relative tangent weights of
/// each source point.
#[derive(Clone, Debug)]
pub struct FiberedFixedPointData {
    source: Arc<FixedPointData>,
    target: Arc<FixedPointData>,
    map: Vec<usize>,
    relative: Vec<Vec<Monomial>>,
}

fn sorted(ws: impl IntoIterator<Item = Monomial>) -> Vec<Monomial> {
    let mut v: Vec<Monomial> = ws.into_iter().collect();
    v.sort();
    v
}

impl FiberedFixedPointData {
    pub fn new(
        source: Arc<FixedPointData>,
        target: Arc<FixedPointData>,
        map: Vec<usize>,
        relative: Vec<Vec<Monomial>>,
    ) -> Result<Self> {
        if source.nvars() != target.nvars() {
            return Err(Error::Invalid("source and target tori differ".into()));
        }
        if map.len() != source.len() || relative.len() != source.len() {
            return Err(Error::Invalid(
                "map and relative weights must cover every source point".into(),
            ));
        }
        let mut hit = vec![false; target.len()];
        for (p, &q) in map.iter().enumerate() {
            if q >= target.len() {
                return Err(Error::Invalid(format!("source point {p} maps outside the target")));
            }
            hit[q] = true;
            let total = sorted(source.tangent(p).iter().cloned());
            let split = sorted(relative[p].iter().cloned().chain(target.tangent(q).iter().cloned()));
            if total != split {
                return Err(Error::Invalid(format!(
                    "tangent at source point {p} is not the relative tangent plus the base tangent"
                )));
            }
        }
        if let Some(q) = hit.iter().position(|h| !h) {
            return Err(Error::Invalid(format!("target point {q} has an empty fiber")));
        }
        Ok(Self {
            source,
            target,
            map,
            relative,
        })
    }

    /// The map from a space to the point.
    pub fn to_point(source: Arc<FixedPointData>) -> Self {
        let target = Arc::new(FixedPointData::point(source.nvars()));
        let relative = source.points.iter().map(|p| p.tangent.clone()).collect();
        Self {
            map: vec![0; source.len()],
            source,
            target,
            relative,
        }
    }

    pub fn source(&self) -> &Arc<FixedPointData> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FixedPointData> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn relative(&self, p: usize) -> &[Monomial] {
        &self.relative[p]
    }

    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&p| self.map[p] == q).collect()
    }

    /// The class on the source restricting to `β_{map(p)}` at `p`.
    pub fn pullback(&self, beta: &EquivClass) -> Result<EquivClass> {
        if *beta.data != *self.target {
            return Err(Error::Invalid("class does not live on the target".into()));
        }
        let r = self.map.iter().map(|&q| beta.restrictions[q].clone()).collect();
        EquivClass::new(self.source.clone(), r)
    }

    /// `λ₋₁` of the dual relative tangent bundle.
    pub fn relative_euler(&self) -> EquivClass {
        let n = self.source.nvars();
        let r = self
            .relative
            .iter()
            .map(|w| LocalizedElement::from_poly(lambda_minus_one(n, w)))
            .collect();
        EquivClass {
            data: self.source.clone(),
            restrictions: r,
        }
    }
}

/// Per target point `q`: `Σ_{p ↦ q} β_p / λ₋₁(relative T_p*)`, uncollapsed.
pub fn fiberwise_pushforward_localized(fib: &FiberedFixedPointData, beta: &EquivClass) -> Result<EquivClass> {
    if *beta.data != *fib.source {
        return Err(Error::Invalid("class does not live on the source".into()));
    }
    let n = fib.source.nvars();
    let r = (0..fib.target.len())
        .map(|q| {
            let fiber = fib.fiber(q);
            localized_sum(
                n,
                fiber
                    .into_par_iter()
                    .map(|p| localized_term(&beta.restrictions[p], &fib.relative[p])),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    EquivClass::new(fib.target.clone(), r)
}

/// Fiberwise pushforward whose every coordinate must collapse.
pub fn fiberwise_pushforward(fib: &FiberedFixedPointData, beta: &EquivClass) -> Result<EquivClass> {
    let out = fiberwise_pushforward_localized(fib, beta)?;
    out.as_polys()?;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerExpansion {
    pub euler: EquivClass,
    /// `i_{l*}1` equals `λ₋₁(T*)` summed over all `l`.
    pub sum_matches: bool,
    pub point_pushforwards: Vec<LaurentPoly>,
    pub each_pushes_to_one: bool,
    pub total: LaurentPoly,
    /// The total equals the number of fixed points.
    pub total_matches_count: bool,
}

/// Expands `λ₋₁(T*)` as the sum of the point classes `i_{l*}1`.
pub fn euler_class_expansion(data: Arc<FixedPointData>) -> Result<EulerExpansion> {
    let n = data.nvars();
    let euler = EquivClass::euler(data.clone());
    let classes: Vec<EquivClass> = (0..data.len())
        .map(|l| EquivClass::point_class(data.clone(), l))
        .collect();
    let mut sum = EquivClass::new(data.clone(), vec![LocalizedElement::zero(n); data.len()])?;
    for c in &classes {
        sum = sum.add(c)?;
    }
    let point_pushforwards = classes.iter().map(pushforward_to_point).collect::<Result<Vec<_>>>()?;
    let one = LaurentPoly::one(n);
    let total = pushforward_to_point(&euler)?;
    let count = LaurentPoly::constant(n, CycNumber::from_int(data.len() as i64));
    Ok(EulerExpansion {
        sum_matches: sum.equals(&euler),
        each_pushes_to_one: point_pushforwards.iter().all(|p| *p == one),
        total_matches_count: total == count,
        point_pushforwards,
        total,
        euler,
    })
}

/// Whether `χ(point) ≠ 1` for every weight, so that `λ₋₁` of the dual is a
/// unit after localizing at `point`.
pub fn invertible_at(weights: &[Monomial], point: &[CycNumber]) -> Result<bool> {
    for w in weights {
        if w.nvars() != point.len() {
            return Err(Error::Invalid("evaluation point has the wrong arity".into()));
        }
        if w.evaluate(point)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::complete_homogeneous;

    fn p(n: usize) -> Arc<FixedPointData> {
        Arc::new(projective_space_data(n))
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_minus_one(2, &[]), LaurentPoly::one(2));
        let w = Monomial::ratio(2, 0, 1);
        let mut expect = LaurentPoly::one(2);
        expect.add_term(Monomial::ratio(2, 1, 0), &CycNumber::from_int(-1));
        assert_eq!(lambda_minus_one(2, std::slice::from_ref(&w)), expect);
        assert_eq!(lambda_minus_one(2, &[w.clone(), w]), expect.pow(2));
    }

    #[test]
    fn projective_pushforwards_are_complete_homogeneous() {
        let p1 = p(1);
        let o1 = o_d_class(p1.clone(), 1).unwrap();
        assert_eq!(
            pushforward_to_point(&o1).unwrap(),
            &LaurentPoly::var(2, 0) + &LaurentPoly::var(2, 1)
        );
        for n in 1..=3 {
            for d in 0..=4 {
                let got = pushforward_to_point(&o_d_class(p(n), d).unwrap()).unwrap();
                assert_eq!(got, complete_homogeneous(n + 1, d as u32), "n={n} d={d}");
            }
        }
        assert_eq!(
            pushforward_to_point(&o_d_class(p(2), 2).unwrap()).unwrap().num_terms(),
            6
        );
    }

    #[test]
    fn negative_degree_on_p1() {
        // χ(P¹, O(-1)) = 0 and χ(P¹, O(-2)) = -x0⁻¹x1⁻¹ by Serre duality.
        assert!(pushforward_to_point(&o_d_class(p(1), -1).unwrap()).unwrap().is_zero());
        let got = pushforward_to_point(&o_d_class(p(1), -2).unwrap()).unwrap();
        assert_eq!(got, LaurentPoly::term(Monomial(vec![-1, -1]), CycNumber::from_int(-1)));
    }

    #[test]
    fn single_point_and_residuals() {
        let pt = Arc::new(FixedPointData::point(1));
        let c = EquivClass::constant(pt, &LaurentPoly::constant(1, CycNumber::from_int(7))).unwrap();
        assert_eq!(
            pushforward_to_point(&c).unwrap(),
            LaurentPoly::constant(1, CycNumber::from_int(7))
        );
        // A single nonzero point class on P¹ with numerator 1 is not genuine.
        let p1 = p(1);
        let bad = EquivClass::from_polys(p1, vec![LaurentPoly::one(2), LaurentPoly::zero(2)]).unwrap();
        assert!(matches!(pushforward_to_point(&bad), Err(Error::ResidualDenominator(_))));
    }

    #[test]
    fn euler_expansion_counts_points() {
        for n in 1..=3 {
            let e = euler_class_expansion(p(n)).unwrap();
            assert!(e.sum_matches && e.each_pushes_to_one && e.total_matches_count);
            assert_eq!(e.total, LaurentPoly::constant(n + 1, CycNumber::from_int(n as i64 + 1)));
        }
    }

    #[test]
    fn invertibility() {
        let w = [Monomial::ratio(2, 0, 1)];
        let omega = CycNumber::root_of_unity(3, 1);
        assert!(invertible_at(&w, &[CycNumber::one(), omega]).unwrap());
        assert!(!invertible_at(&w, &[CycNumber::one(), CycNumber::one()]).unwrap());
    }

    #[test]
    fn data_validation() {
        let vars = FixedPointData::standard_variables(2);
        let trivial = FixedPoint {
            label: "a".into(),
            tangent: vec![Monomial::one(2)],
        };
        assert!(FixedPointData::new(vars.clone(), vec![trivial]).is_err());
        let empty = FixedPoint {
            label: "a".into(),
            tangent: vec![],
        };
        assert!(FixedPointData::new(vars, vec![empty.clone(), empty]).is_err());
        let json = serde_json::json!({"variables": ["a", "b"], "points": [
            {"label": "p0", "tangent": [[1, -1]]}, {"label": "p1", "tangent": [[-1, 1, 0]]}]});
        match FixedPointData::from_json(&json) {
            Err(Error::Descriptor { pointer, .. }) => assert_eq!(pointer, "/points/1/tangent/0"),
            other => panic!("unexpected {other:?}"),
        }
        let ok = serde_json::to_value(projective_space_data(1)).unwrap();
        assert_eq!(FixedPointData::from_json(&ok).unwrap(), projective_space_data(1));
    }

    #[test]
    fn fibered_validation() {
        let p1 = p(1);
        let fib = FiberedFixedPointData::to_point(p1.clone());
        let target = fib.target().clone();
        let bad = FiberedFixedPointData::new(p1.clone(), target, vec![0, 0], vec![vec![], vec![]]);
        assert!(bad.is_err());
        let o1 = o_d_class(p1, 1).unwrap();
        let pushed = fiberwise_pushforward(&fib, &o1).unwrap();
        assert_eq!(pushed.as_polys().unwrap()[0], pushforward_to_point(&o1).unwrap());
    }
}

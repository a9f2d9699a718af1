//! Euler characteristics `χ(P(V)/G, O(d))` for a finite group `G ⊂ GL(V)`,
//! split into one contribution per conjugacy class and checked against an
//! element-by-element average of traces on degree-`d` forms.
//!
//! `G` acts on degree-`d` forms through `Sym^d` of the given matrices, so the
//! trace of `h` is `h_d` evaluated at the eigenvalues of `h`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::{CycNumber, LaurentPoly, Matrix, Monomial};
use crate::gkm::{o_d_class, projective_space_data, pushforward_to_point};
use crate::group::descriptor::{parse_group, parse_matrix};
use crate::group::{ClassTable, Element, FiniteGroup, MatrixRep};
use crate::oracle::{binomial, compositions};

pub const FIXTURES: [&str; 4] = ["Z3-P1", "S3-irrep2", "Z5-weights(1,2)", "A4-std"];

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// A faithful linear action of a finite group on `V`, hence on `P(V)`.
#[derive(Clone, Debug)]
pub struct LinearAction {
    name: String,
    group: Arc<FiniteGroup>,
    table: ClassTable,
    rep: MatrixRep,
}

impl LinearAction {
    pub fn new(name: impl Into<String>, group: FiniteGroup, rep: MatrixRep) -> Result<Self> {
        if rep.dim() == 0 {
            return Err(Error::Invalid("V must be nonzero".into()));
        }
        if let Some(&x) = rep.kernel().iter().find(|&&x| x != group.identity()) {
            return Err(Error::NotFaithful(x));
        }
        let table = ClassTable::new(&group);
        Ok(Self {
            name: name.into(),
            group: Arc::new(group),
            table,
            rep,
        })
    }

    /// The matrix group generated by `gens`, acting on `V` by those matrices.
    pub fn from_matrices(name: &str, gens: Vec<Matrix>, caps: &Caps) -> Result<Self> {
        let g = FiniteGroup::generate(name, gens.into_iter().map(Element::Matrix).collect(), caps.group_order)?;
        let rep = MatrixRep::defining(&g);
        Self::new(name, g, rep)
    }

    pub fn fixture(name: &str, caps: &Caps) -> Result<Self> {
        let z = CycNumber::zero;
        let one = CycNumber::one;
        let w = |n, k| CycNumber::root_of_unity(n, k);
        let gens = match name {
            "Z3-P1" => vec![Matrix::diagonal(&[one(), w(3, 1)])],
            "S3-irrep2" => vec![
                Matrix::diagonal(&[w(3, 1), w(3, 2)]),
                Matrix::from_ints(&[&[0, 1], &[1, 0]]),
            ],
            "Z5-weights(1,2)" => vec![Matrix::diagonal(&[w(5, 1), w(5, 2)])],
            "A4-std" => vec![
                Matrix::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
                Matrix::from_ints(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]),
                Matrix::from_rows(vec![
                    vec![z(), z(), one()],
                    vec![one(), z(), z()],
                    vec![z(), one(), z()],
                ])?,
            ],
            other => {
                return Err(Error::Invalid(format!(
                    "unknown action fixture {other:?}; known: {}",
                    FIXTURES.join(", ")
                )))
            }
        };
        Self::from_matrices(name, gens, caps)
    }

    /// `{"group": <group descriptor>, "rep": [generator images]}`; without
    /// `rep` the group acts by its defining matrices (or permutation matrices).
    /// Pointers are reported relative to `pointer`.
    pub fn from_json(v: &Value, pointer: &str, caps: &Caps) -> Result<Self> {
        let gv = v
            .get("group")
            .ok_or_else(|| Error::descriptor(pointer, "missing field \"group\""))?;
        let g = parse_group(gv, &format!("{pointer}/group"), caps.group_order)?;
        let rep = match v.get("rep") {
            None => MatrixRep::defining(&g),
            Some(Value::Array(imgs)) => {
                let mats = imgs
                    .iter()
                    .enumerate()
                    .map(|(i, m)| parse_matrix(m, &format!("{pointer}/rep/{i}")))
                    .collect::<Result<Vec<_>>>()?;
                MatrixRep::from_generator_images(&g, &mats)
                    .map_err(|e| Error::descriptor(format!("{pointer}/rep"), e.to_string()))?
            }
            Some(_) => {
                return Err(Error::descriptor(
                    format!("{pointer}/rep"),
                    "expected a list of matrices",
                ))
            }
        };
        let name = g.name().to_owned();
        Self::new(name, g, rep).map_err(|e| match e {
            Error::NotFaithful(x) => Error::descriptor(format!("{pointer}/rep"), format!("element {x} acts trivially")),
            other => other,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &ClassTable {
        &self.table
    }

    pub fn rep(&self) -> &MatrixRep {
        &self.rep
    }

    /// `dim V = n + 1`.
    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    /// Eigenvalues of `ρ(x)` with multiplicity, as roots of unity.
    pub fn eigenvalues(&self, x: usize) -> Vec<CycNumber> {
        let o = self.group.element_order(x);
        let mult = self.rep.image(x).root_of_unity_eigen_multiplicities(o);
        let eig: Vec<CycNumber> = mult
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| std::iter::repeat_n(CycNumber::root_of_unity(o, k as i64), m))
            .collect();
        debug_assert_eq!(eig.len(), self.dim(), "finite-order matrices are diagonalizable");
        eig
    }
}

/// `h_d` as the pushforward of `O(d)` from `P^n` to a point.
pub fn complete_symmetric_via_localization(nvars: usize, d: u32) -> Result<LaurentPoly> {
    let data = Arc::new(projective_space_data(nvars - 1));
    pushforward_to_point(&o_d_class(data, d as i32)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorReport {
    pub class: usize,
    pub representative: usize,
    pub class_size: usize,
    pub eigenvalues: Vec<CycNumber>,
    /// Dimensions of the projectivized eigenspaces making up `P(V)^h`.
    pub fixed_components: Vec<usize>,
    pub contribution: CycNumber,
    pub rational: bool,
}

fn check_degree(d: i64, caps: &Caps) -> Result<u32> {
    if d < 0 {
        return Err(Error::Invalid(format!(
            "degree {d} is negative; only d ≥ 0 is supported"
        )));
    }
    let d = u32::try_from(d).map_err(|_| Error::Invalid("degree too large".into()))?;
    caps.check_degree(d)?;
    Ok(d)
}

fn sector_from_hd(act: &LinearAction, class: usize, hd: &LaurentPoly) -> Result<SectorReport> {
    let c = act.table.class(class);
    let h = c.representative;
    let eig = act.eigenvalues(h);
    let mut distinct: BTreeMap<&CycNumber, usize> = BTreeMap::new();
    for e in &eig {
        *distinct.entry(e).or_default() += 1;
    }
    let value = hd.evaluate(&eig)?;
    let contribution = value.scale(&BigRational::new(c.size().into(), act.group.order().into()));
    Ok(SectorReport {
        class,
        representative: h,
        class_size: c.size(),
        fixed_components: distinct.values().map(|&m| m - 1).collect(),
        rational: contribution.is_rational(),
        eigenvalues: eig,
        contribution,
    })
}

/// `(|Ψ|/|G|)·h_d(eigenvalues of h)` for `h ∈ Ψ`.
pub fn sector_contribution(act: &LinearAction, class: usize, d: i64, caps: &Caps) -> Result<SectorReport> {
    let d = check_degree(d, caps)?;
    if class >= act.table.len() {
        return Err(Error::Invalid(format!("class {class} out of range")));
    }
    let hd = complete_symmetric_via_localization(act.dim(), d)?;
    sector_from_hd(act, class, &hd)
}

/// Classes grouped into orbits under `g ↦ g^k`, `k` prime to the exponent.
pub fn galois_orbits(act: &LinearAction) -> Vec<Vec<usize>> {
    let g = &act.group;
    let e = g.exponent() as i64;
    let mut orbit_of = vec![usize::MAX; act.table.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for c in 0..act.table.len() {
        if orbit_of[c] != usize::MAX {
            continue;
        }
        let rep = act.table.class(c).representative;
        let mut members: Vec<usize> = (1..=e)
            .filter(|&k| num_integer::gcd(k, e) == 1)
            .map(|k| act.table.class_of(g.pow(rep, k)))
            .collect();
        members.sort();
        members.dedup();
        for &m in &members {
            orbit_of[m] = out.len();
        }
        out.push(members);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MolienResult {
    #[serde(serialize_with = "ser_rational")]
    pub average_trace: BigRational,
    pub projector_rank: usize,
    pub basis_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RRResult {
    pub action: String,
    pub degree: u32,
    #[serde(serialize_with = "ser_rational")]
    pub total: BigRational,
    pub sectors: Vec<SectorReport>,
    /// Sums of sectors over Galois-conjugate classes; each is rational.
    pub galois_orbit_sums: Vec<CycNumber>,
    pub oracle: MolienResult,
    pub total_is_nonnegative_integer: bool,
    pub verdict: bool,
}

/// The per-class decomposition of `dim H⁰(P(V), O(d))^G`, compared with the
/// averaged-trace oracle.
pub fn kawasaki_chi(act: &LinearAction, d: i64, caps: &Caps) -> Result<RRResult> {
    let d = check_degree(d, caps)?;
    let hd = complete_symmetric_via_localization(act.dim(), d)?;
    let sectors = (0..act.table.len())
        .into_par_iter()
        .map(|c| sector_from_hd(act, c, &hd))
        .collect::<Result<Vec<_>>>()?;
    let sum: CycNumber = sectors.iter().map(|s| &s.contribution).sum();
    let total = sum
        .to_rational()
        .ok_or_else(|| Error::Invalid(format!("sector sum {sum} is not rational")))?;
    let galois_orbit_sums = galois_orbits(act)
        .iter()
        .map(|o| o.iter().map(|&c| &sectors[c].contribution).sum())
        .collect();
    let oracle = molien_oracle(act, d as i64, caps)?;
    Ok(RRResult {
        action: act.name.clone(),
        degree: d,
        total_is_nonnegative_integer: total.is_integer() && total >= BigRational::zero(),
        verdict: total == oracle.average_trace && BigRational::from_integer(oracle.projector_rank.into()) == total,
        total,
        sectors,
        galois_orbit_sums,
        oracle,
    })
}

/// Monomial basis of degree-`d` forms in `nvars` variables, with its index.
fn form_basis(nvars: usize, d: u32, caps: &Caps) -> Result<(Vec<Vec<i32>>, BTreeMap<Vec<i32>, usize>)> {
    let size = binomial((nvars as u64 + d as u64).saturating_sub(1), d as u64);
    let size = size.to_usize().unwrap_or(usize::MAX);
    if size > caps.monomial_basis {
        return Err(Error::CapExceeded {
            what: "monomial basis",
            actual: size,
            limit: caps.monomial_basis,
        });
    }
    let basis = compositions(nvars, d);
    let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
    Ok((basis, index))
}

/// The matrix of `A` on degree-`d` forms in the monomial basis:
/// `x^α ↦ ∏_j (Σ_i A_ij x_i)^{α_j}`.
pub fn sym_power_matrix(a: &Matrix, d: u32, caps: &Caps) -> Result<Matrix> {
    let n = a.rows();
    let (basis, index) = form_basis(n, d, caps)?;
    let linear: Vec<LaurentPoly> = (0..n)
        .map(|j| LaurentPoly::from_terms(n, (0..n).map(|i| (Monomial::var(n, i), a.get(i, j).clone()))))
        .collect();
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (col, alpha) in basis.iter().enumerate() {
        let image = alpha
            .iter()
            .enumerate()
            .fold(LaurentPoly::one(n), |acc, (j, &e)| &acc * &linear[j].pow(e as u32));
        for (mono, c) in image.terms() {
            m.set(index[&mono.0], col, c.clone());
        }
    }
    Ok(m)
}

/// `(1/|G|)·Σ_g trace(g | degree-d forms)` from explicit monomial-basis
/// matrices, and the rank of the averaging projector.
pub fn molien_oracle(act: &LinearAction, d: i64, caps: &Caps) -> Result<MolienResult> {
    let d = check_degree(d, caps)?;
    let n = act.group.order();
    let mats = (0..n)
        .into_par_iter()
        .map(|x| sym_power_matrix(act.rep.image(x), d, caps))
        .collect::<Result<Vec<_>>>()?;
    let size = mats[0].rows();
    let total: CycNumber = mats.iter().map(Matrix::trace).sum();
    let inv = BigRational::new(1.into(), BigInt::from(n));
    let average = total.scale(&inv);
    let average_trace = average
        .to_rational()
        .ok_or_else(|| Error::Invalid(format!("average trace {average} is not rational")))?;
    let sum = mats.iter().skip(1).fold(mats[0].clone(), |acc, m| &acc + m);
    let projector = sum.scale(&CycNumber::from_rational(inv));
    Ok(MolienResult {
        average_trace,
        projector_rank: projector.rank(),
        basis_size: size,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzCheck {
    pub class: usize,
    pub symbolic: CycNumber,
    pub lefschetz: CycNumber,
    /// The trace is the same at every member of the class.
    pub representative_independent: bool,
    pub pass: bool,
}

/// Compares the sector with `(|Ψ|/|G|)·trace(h | degree-d forms)` taken from
/// the explicit monomial-basis matrix of each member of the class.
pub fn sector_vs_lefschetz(act: &LinearAction, class: usize, d: i64, caps: &Caps) -> Result<LefschetzCheck> {
    let sector = sector_contribution(act, class, d, caps)?;
    let c = act.table.class(class);
    let weight = BigRational::new(c.size().into(), act.group.order().into());
    let traces = c
        .members
        .iter()
        .map(|&x| Ok(sym_power_matrix(act.rep.image(x), d as u32, caps)?.trace()))
        .collect::<Result<Vec<_>>>()?;
    let lefschetz = traces[0].scale(&weight);
    let representative_independent = traces.iter().all(|t| *t == traces[0]);
    Ok(LefschetzCheck {
        class,
        pass: sector.contribution == lefschetz && representative_independent,
        symbolic: sector.contribution,
        lefschetz,
        representative_independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::complete_homogeneous;

    fn fixture(name: &str) -> LinearAction {
        LinearAction::fixture(name, &Caps::default()).unwrap()
    }

    fn q(n: i64, d: i64) -> CycNumber {
        CycNumber::from_ratio(n, d)
    }

    #[test]
    fn z3_sectors() {
        let act = fixture("Z3-P1");
        let r = kawasaki_chi(&act, 6, &Caps::default()).unwrap();
        let got: Vec<CycNumber> = r.sectors.iter().map(|s| s.contribution.clone()).collect();
        assert_eq!(got, vec![q(7, 3), q(1, 3), q(1, 3)]);
        assert_eq!(r.total, BigRational::from_integer(3.into()));
        assert!(r.verdict);
    }

    #[test]
    fn known_totals() {
        let caps = Caps::default();
        let s3 = fixture("S3-irrep2");
        assert_eq!(
            kawasaki_chi(&s3, 6, &caps).unwrap().total,
            BigRational::from_integer(2.into())
        );
        let m = molien_oracle(&s3, 2, &caps).unwrap();
        assert_eq!(
            (m.average_trace, m.projector_rank),
            (BigRational::from_integer(1.into()), 1)
        );
        for name in FIXTURES {
            let act = fixture(name);
            let r = kawasaki_chi(&act, 0, &caps).unwrap();
            assert_eq!(r.total, BigRational::from_integer(1.into()), "{name}");
        }
    }

    #[test]
    fn identity_sector_counts_monomials() {
        let caps = Caps::default();
        let act = fixture("A4-std");
        for d in 0..5 {
            let s = sector_contribution(&act, 0, d, &caps).unwrap();
            let count = binomial(2 + d as u64, d as u64);
            assert_eq!(
                s.contribution,
                CycNumber::from_rational(BigRational::new(count, 12.into()))
            );
        }
        assert!(sector_contribution(&act, 0, -1, &caps).is_err());
    }

    #[test]
    fn localization_route_gives_hd() {
        for n in 1..4 {
            assert_eq!(
                complete_symmetric_via_localization(n, 3).unwrap(),
                complete_homogeneous(n, 3)
            );
        }
    }

    #[test]
    fn z5_sectors_are_not_individually_rational() {
        let act = fixture("Z5-weights(1,2)");
        let r = kawasaki_chi(&act, 3, &Caps::default()).unwrap();
        assert!(r.verdict);
        assert!(r.sectors.iter().any(|s| !s.rational));
        assert!(r.galois_orbit_sums.iter().all(CycNumber::is_rational));
    }

    #[test]
    fn lefschetz_agreement() {
        let caps = Caps::default();
        let act = fixture("S3-irrep2");
        for c in 0..act.classes().len() {
            assert!(sector_vs_lefschetz(&act, c, 5, &caps).unwrap().pass);
        }
        let z3 = fixture("Z3-P1");
        let chk = sector_vs_lefschetz(&z3, 1, 6, &caps).unwrap();
        assert_eq!((chk.symbolic.clone(), chk.lefschetz), (q(1, 3), q(1, 3)));
    }

    #[test]
    fn caps_and_faithfulness() {
        let act = fixture("A4-std");
        let small = Caps {
            monomial_basis: 10,
            ..Caps::default()
        };
        assert!(matches!(molien_oracle(&act, 4, &small), Err(Error::CapExceeded { .. })));
        assert!(matches!(
            kawasaki_chi(&act, 61, &Caps::default()),
            Err(Error::CapExceeded { .. })
        ));
        let g = crate::group::builtin("S3").unwrap();
        let triv = MatrixRep::trivial(&g);
        assert!(matches!(LinearAction::new("S3", g, triv), Err(Error::NotFaithful(_))));
    }

    #[test]
    fn descriptor_with_rep() {
        let v = serde_json::json!({"group": "S3", "rep": [[[0, 1, 0], [1, 0, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]]});
        let act = LinearAction::from_json(&v, "/action", &Caps::default()).unwrap();
        let r = kawasaki_chi(&act, 3, &Caps::default()).unwrap();
        // Symmetric cubics in three variables: e1³, e1e2, e3.
        assert_eq!(r.total, BigRational::from_integer(3.into()));
        let bad = serde_json::json!({"group": "S3", "rep": [[[1]], [[1]]]});
        match LinearAction::from_json(&bad, "/action", &Caps::default()) {
            Err(Error::Descriptor { pointer, .. }) => assert_eq!(pointer, "/action/rep"),
            other => panic!("unexpected {other:?}"),
        }
    }
}

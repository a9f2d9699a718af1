//! The acceptance suite: nine families of exact checks plus a report
//! round-trip, collected into a deterministic, serializable report.

use std::fmt::Display;
use std::sync::Arc;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::{CycNumber, LaurentPoly};
use crate::gkm::{
    euler_class_expansion, flag_data, o_d_class, projective_space_data, pushforward_to_point, verify_flag_identities,
    weyl_character, FixedPointData, WeylData,
};
use crate::group::{
    builtin, good_embedding_check, spanning_representations, tensor_power_search, ClassTable, FiniteGroup, MatrixRep,
    SectorDecomposable,
};
use crate::gset::sheaf::{class_from_sheaf, sector_via_idempotent, twist_via_reps, FullSheaf, Sheaf};
use crate::gset::{
    build_stabilizer, central_twist, central_twist_via_morita, invariants, nonabelian_localize, pullback,
    rr_gset_sector, slice, twist_central, GSet, GroupData, StabilizerClass,
};
use crate::oracle::{complete_homogeneous, random_symmetric, schur_ssyt, weyl_dimension};
use crate::quotient::{kawasaki_chi, sector_vs_lefschetz, LinearAction};

pub const CRITERIA: [&str; 10] = [
    "pushforward of O(d) on P^n equals h_d",
    "fixed-point expansion of the Euler class",
    "flag-bundle projection identities",
    "Weyl character formula",
    "nonabelian localization on finite G-sets",
    "twisting consistency",
    "invariants and the central twist",
    "Riemann-Roch sectors for quotients of projective space",
    "good-embedding check",
    "report determinism",
];

/// Groups used for the finite G-set criteria.
pub const GSET_GROUPS: [&str; 6] = ["S3", "S4", "Z/6", "D4", "Q8", "A4"];

/// Largest transitive G-set enumerated per group.
pub const MAX_GSET_SIZE: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

fn show<T: Display>(v: &T) -> Value {
    Value::String(v.to_string())
}

fn show_all<T: Display>(v: &[T]) -> Value {
    Value::Array(v.iter().map(show).collect())
}

fn show_class(c: &StabilizerClass) -> Value {
    show_all(c.values())
}

impl Check {
    pub fn new(criterion: u8, name: impl Into<String>, expected: Value, actual: Value, pass: bool) -> Self {
        Self {
            criterion,
            name: name.into(),
            expected,
            actual,
            pass,
        }
    }

    /// Exact comparison of two values, displayed in their canonical form.
    pub fn equal<T: PartialEq + Display>(criterion: u8, name: impl Into<String>, expected: &T, actual: &T) -> Self {
        Self::new(criterion, name, show(expected), show(actual), expected == actual)
    }

    pub fn holds(criterion: u8, name: impl Into<String>, actual: bool) -> Self {
        Self::new(criterion, name, Value::Bool(true), Value::Bool(actual), actual)
    }

    fn error(criterion: u8, name: impl Into<String>, expected: Value, err: &Error) -> Self {
        Self::new(criterion, name, expected, json!({ "error": err.to_string() }), false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionSummary {
    pub criterion: u8,
    pub title: String,
    pub checks: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub options: Value,
    pub results: Value,
    pub criteria: Vec<CriterionSummary>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, options: Value, results: Value, checks: Vec<Check>) -> Self {
        let mut ids: Vec<u8> = checks.iter().map(|c| c.criterion).collect();
        ids.sort_unstable();
        ids.dedup();
        let criteria = ids
            .into_iter()
            .map(|id| {
                let of: Vec<&Check> = checks.iter().filter(|c| c.criterion == id).collect();
                let failed = of.iter().filter(|c| !c.pass).count();
                CriterionSummary {
                    criterion: id,
                    title: CRITERIA
                        .get(id as usize - 1)
                        .map_or_else(String::new, |t| (*t).to_owned()),
                    checks: of.len(),
                    failed,
                    pass: failed == 0,
                }
            })
            .collect();
        let pass = checks.iter().all(|c| c.pass);
        Self {
            command: command.into(),
            options,
            results,
            criteria,
            checks,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs `f`, turning an error into a single failing check.
fn guarded(criterion: u8, name: &str, f: impl FnOnce(&mut Vec<Check>) -> Result<()>) -> Vec<Check> {
    let mut out = Vec::new();
    if let Err(e) = f(&mut out) {
        out.push(Check::error(criterion, format!("{name}: aborted"), Value::Null, &e));
    }
    out
}

pub fn criterion_1() -> Vec<Check> {
    guarded(1, "projective pushforwards", |out| {
        for n in 0..=4 {
            let data = Arc::new(projective_space_data(n));
            for d in 0..=6u32 {
                let name = format!("P^{n}, O({d})");
                match pushforward_to_point(&o_d_class(data.clone(), d as i32)?) {
                    Ok(p) => out.push(Check::equal(1, name, &complete_homogeneous(n + 1, d), &p)),
                    Err(e) => out.push(Check::error(1, name, show(&complete_homogeneous(n + 1, d)), &e)),
                }
            }
        }
        Ok(())
    })
}

fn criterion_2_spaces() -> Result<Vec<(String, FixedPointData)>> {
    let mut spaces: Vec<(String, FixedPointData)> =
        (1..=3).map(|n| (format!("P^{n}"), projective_space_data(n))).collect();
    for comp in [vec![1, 1], vec![1, 1, 1], vec![2, 1], vec![1, 2]] {
        let n = comp.iter().sum();
        let w = WeylData::new(n, comp.clone())?;
        spaces.push((format!("GL{n} flag {comp:?}"), flag_data(&w)));
    }
    Ok(spaces)
}

pub fn criterion_2() -> Vec<Check> {
    guarded(2, "Euler class expansion", |out| {
        for (name, data) in criterion_2_spaces()? {
            let count = LaurentPoly::constant(data.nvars(), CycNumber::from_int(data.len() as i64));
            let e = euler_class_expansion(Arc::new(data))?;
            out.push(Check::holds(
                2,
                format!("{name}: λ₋₁(T*) is the sum of the point classes"),
                e.sum_matches,
            ));
            out.push(Check::new(
                2,
                format!("{name}: each point class pushes forward to 1"),
                show_all(&vec!["1"; e.point_pushforwards.len()]),
                show_all(&e.point_pushforwards),
                e.each_pushes_to_one,
            ));
            out.push(Check::equal(
                2,
                format!("{name}: pushforward of λ₋₁(T*) is the fixed-point count"),
                &count,
                &e.total,
            ));
        }
        Ok(())
    })
}

/// Number of random symmetric classes per flag variety.
pub const RANDOM_ALPHAS: usize = 20;

pub fn criterion_3(seed: u64) -> Vec<Check> {
    guarded(3, "flag-bundle identities", |out| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (n, comp, wg, index) in [(2, vec![1, 1], 2, 2), (3, vec![1, 1, 1], 6, 6), (3, vec![2, 1], 6, 3)] {
            let weyl = WeylData::new(n, comp.clone())?;
            let label = format!("GL{n} {comp:?}");
            out.push(Check::equal(
                3,
                format!("{label}: |W(G,T)|"),
                &wg.to_string(),
                &weyl.weyl_order().to_string(),
            ));
            out.push(Check::equal(
                3,
                format!("{label}: |W(G,T)|/|W(Z,T)|"),
                &index.to_string(),
                &weyl.index().to_string(),
            ));
            for i in 0..RANDOM_ALPHAS {
                let terms = rng.gen_range(1..=3);
                let alpha = random_symmetric(n, terms, 2, &mut rng);
                let report = verify_flag_identities(&weyl, &alpha)?;
                for c in report.checks {
                    out.push(Check::new(
                        3,
                        format!("{label}, α#{i}: {}", c.name),
                        show_all(&c.rhs),
                        show_all(&c.lhs),
                        c.pass,
                    ));
                }
            }
        }
        Ok(())
    })
}

/// Dominant weights `λ_1 ≥ … ≥ λ_n ≥ 0` with `λ_1 ≤ max`.
pub fn dominant_weights(n: usize, max: i32) -> Vec<Vec<i32>> {
    fn go(n: usize, cap: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in (0..=cap).rev() {
            cur.push(v);
            go(n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

pub fn criterion_4() -> Vec<Check> {
    guarded(4, "Weyl character formula", |out| {
        for n in 1..=3 {
            for lambda in dominant_weights(n, 3) {
                let shape: Vec<u32> = lambda.iter().map(|&l| l as u32).collect();
                let chi = weyl_character(&lambda)?;
                out.push(Check::equal(
                    4,
                    format!("GL{n}, λ={lambda:?}: character"),
                    &schur_ssyt(&shape, n),
                    &chi,
                ));
                let dim =
                    CycNumber::from_rational(weyl_dimension(&lambda.iter().map(|&l| l as i64).collect::<Vec<_>>()));
                out.push(Check::equal(
                    4,
                    format!("GL{n}, λ={lambda:?}: dimension"),
                    &dim,
                    &chi.coefficient_sum(),
                ));
            }
        }
        Ok(())
    })
}

/// A transitive G-set `G/H` with its stabilizer representations.
struct Fixture {
    label: String,
    set: Arc<GSet>,
    stab_reps: Vec<MatrixRep>,
}

fn transitive_fixtures(data: &Arc<GroupData>) -> Vec<Fixture> {
    let g = &data.group;
    g.subgroup_class_representatives()
        .into_iter()
        .filter(|h| g.order() / h.order() <= MAX_GSET_SIZE)
        .map(|h| {
            let set = Arc::new(GSet::coset_space(data.clone(), &h));
            let stab = set.stabilizer(set.orbit_rep(0));
            let table = ClassTable::new(stab.group());
            let stab_reps = spanning_representations(stab.group(), &table);
            Fixture {
                label: format!("{}/H (|H|={})", g.name(), h.order()),
                set,
                stab_reps,
            }
        })
        .collect()
}

fn group_data(name: &str) -> Result<Arc<GroupData>> {
    Ok(GroupData::new(builtin(name)?))
}

pub fn criterion_5() -> Vec<Check> {
    let mut out = Vec::new();
    for name in GSET_GROUPS {
        out.extend(guarded(5, name, |out| {
            let data = group_data(name)?;
            let reps = spanning_representations(&data.group, &data.classes);
            for fx in transitive_fixtures(&data) {
                let pairs = build_stabilizer(fx.set.clone());
                for (v, rho) in fx.stab_reps.iter().enumerate() {
                    let sheaf = Sheaf::new(&fx.set, vec![rho.clone()])?;
                    let alpha = class_from_sheaf(&pairs, &sheaf);
                    for psi in 0..data.classes.len() {
                        let label = format!("{}, V{v}, class {psi}", fx.label);
                        let brute = sector_via_idempotent(&pairs, &sheaf, &reps, psi)?;
                        let got = nonabelian_localize(&alpha, psi)?;
                        let pass =
                            got.direct == brute && got.via_morita.iter().all(|m| *m == brute) && got.expected == brute;
                        out.push(Check::new(5, label, show_class(&brute), show_class(&got.direct), pass));
                    }
                }
            }
            Ok(())
        }));
    }
    out
}

/// Central elements of `g`.
fn center(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order())
        .filter(|&h| (0..g.order()).all(|k| g.commute(h, k)))
        .collect()
}

pub fn criterion_6() -> Vec<Check> {
    let mut out = Vec::new();
    for name in GSET_GROUPS {
        out.extend(guarded(6, name, |out| {
            let data = group_data(name)?;
            let g = &data.group;
            for fx in transitive_fixtures(&data) {
                let pairs = build_stabilizer(fx.set.clone());
                let sheaves: Vec<Sheaf> = fx
                    .stab_reps
                    .iter()
                    .map(|r| Sheaf::new(&fx.set, vec![r.clone()]))
                    .collect::<Result<_>>()?;
                // Eigensheaf and translation forms of the twist, for central h fixing every point.
                for h in center(g)
                    .into_iter()
                    .filter(|&h| fx.set.fixed_points(h).len() == fx.set.points())
                {
                    let hc = data.classes.class_of(h);
                    for (v, sheaf) in sheaves.iter().enumerate() {
                        let beta = class_from_sheaf(&pairs, sheaf);
                        let label = format!("{}, V{v}, h={h}", fx.label);
                        let translated = twist_central(&beta, h)?;
                        let eigen = twist_via_reps(&pairs, sheaf, h)?;
                        out.push(Check::new(
                            6,
                            format!("{label}: translation = eigensheaf"),
                            show_class(&eigen),
                            show_class(&translated),
                            eigen == translated,
                        ));
                        let moved = twist_central(&beta.component(hc), h)?;
                        let target = translated.component(0);
                        let pass = moved == target && moved.component(0) == moved;
                        out.push(Check::new(
                            6,
                            format!("{label}: component at h goes to the identity component"),
                            show_class(&target),
                            show_class(&moved),
                            pass,
                        ));
                    }
                }
                // Representative independence of the central twist on each slice.
                for psi in 0..data.classes.len() {
                    let s = slice(&fx.set, psi)?;
                    if s.set.points() == 0 {
                        continue;
                    }
                    for (v, sheaf) in sheaves.iter().enumerate() {
                        let alpha = class_from_sheaf(&pairs, sheaf);
                        let beta = pullback(&s.projection, s.pairs.clone(), &alpha);
                        let direct = central_twist(&s, &beta)?;
                        let mut pass = true;
                        let mut last = direct.clone();
                        for &h in &data.classes.class(psi).members {
                            last = central_twist_via_morita(&s, &beta, h)?;
                            pass &= last == direct;
                        }
                        out.push(Check::new(
                            6,
                            format!("{}, V{v}, class {psi}: twist independent of representative", fx.label),
                            show_class(&direct),
                            show_class(&last),
                            pass,
                        ));
                    }
                }
            }
            Ok(())
        }));
    }
    out
}

pub fn criterion_7(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7);
    let mut out = Vec::new();
    for name in GSET_GROUPS {
        out.extend(guarded(7, name, |out| {
            let data = group_data(name)?;
            for fx in transitive_fixtures(&data) {
                let pairs = build_stabilizer(fx.set.clone());
                for (v, rho) in fx.stab_reps.iter().enumerate() {
                    let sheaf = Sheaf::new(&fx.set, vec![rho.clone()])?;
                    let alpha = class_from_sheaf(&pairs, &sheaf);
                    let label = format!("{}, V{v}", fx.label);
                    let dims: Vec<CycNumber> = FullSheaf::from_orbit_form(&fx.set, &sheaf)
                        .invariants_dimension(&fx.set)
                        .into_iter()
                        .map(|d| CycNumber::from_int(d as i64))
                        .collect();
                    let inv = invariants(&alpha);
                    out.push(Check::new(
                        7,
                        format!("{label}: invariants = projector rank"),
                        show_all(&dims),
                        show_all(&inv),
                        dims == inv,
                    ));
                    for psi in 0..data.classes.len() {
                        let s = slice(&fx.set, psi)?;
                        if s.set.points() == 0 {
                            continue;
                        }
                        let beta = pullback(&s.projection, s.pairs.clone(), &alpha);
                        let randomized = StabilizerClass::from_orbit_values(
                            s.pairs.clone(),
                            &(0..s.pairs.orbits().len())
                                .map(|_| CycNumber::from_int(rng.gen_range(-5..=5)))
                                .collect::<Vec<_>>(),
                        );
                        for (kind, b) in [("pulled back", &beta), ("random", &randomized)] {
                            let lhs = invariants(b);
                            let rhs = invariants(&central_twist(&s, b)?);
                            out.push(Check::new(
                                7,
                                format!("{label}, class {psi}, {kind}: invariants unchanged by the central twist"),
                                show_all(&lhs),
                                show_all(&rhs),
                                lhs == rhs,
                            ));
                        }
                        let sector = rr_gset_sector(&alpha, psi)?;
                        out.push(Check::new(
                            7,
                            format!("{label}, class {psi}: invariant sector through the slice"),
                            show_all(&sector.lhs),
                            show_all(&sector.rhs),
                            sector.pass,
                        ));
                    }
                }
            }
            Ok(())
        }));
    }
    out
}

/// Localization and invariant-sector checks for an arbitrary finite G-set,
/// over sheaves carrying one spanning stabilizer representation on a single
/// orbit and the trivial one elsewhere.
pub fn gset_checks(set: &Arc<GSet>, label: &str) -> Result<Vec<Check>> {
    let data = set.data().clone();
    let reps = spanning_representations(&data.group, &data.classes);
    let pairs = build_stabilizer(set.clone());
    let base = Sheaf::structure(set);
    let mut out = Vec::new();
    for o in 0..set.orbits().len() {
        let stab = set.stabilizer(set.orbit_rep(o));
        let table = ClassTable::new(stab.group());
        for (v, rho) in spanning_representations(stab.group(), &table).into_iter().enumerate() {
            let mut fibers = base.fibers.clone();
            fibers[o] = rho;
            let sheaf = Sheaf::new(set, fibers)?;
            let alpha = class_from_sheaf(&pairs, &sheaf);
            for psi in 0..data.classes.len() {
                let name = format!("{label}, orbit {o}, V{v}, class {psi}");
                let brute = sector_via_idempotent(&pairs, &sheaf, &reps, psi)?;
                let got = nonabelian_localize(&alpha, psi)?;
                let pass = got.direct == brute && got.via_morita.iter().all(|m| *m == brute);
                out.push(Check::new(
                    5,
                    format!("{name}: localization"),
                    show_class(&brute),
                    show_class(&got.direct),
                    pass,
                ));
                let sector = rr_gset_sector(&alpha, psi)?;
                out.push(Check::new(
                    7,
                    format!("{name}: invariant sector"),
                    show_all(&sector.lhs),
                    show_all(&sector.rhs),
                    sector.pass,
                ));
            }
        }
    }
    Ok(out)
}

/// The transitive G-sets `G/H` with `|G/H| ≤ 12`, one per conjugacy class of `H`.
pub fn transitive_gsets(data: &Arc<GroupData>) -> Vec<(String, Arc<GSet>)> {
    transitive_fixtures(data)
        .into_iter()
        .map(|f| (f.label, f.set))
        .collect()
}

pub fn criterion_8(caps: &Caps) -> Vec<Check> {
    let mut out = Vec::new();
    let plan: [(&str, u32); 4] = [("Z3-P1", 12), ("Z5-weights(1,2)", 20), ("S3-irrep2", 12), ("A4-std", 6)];
    for (fixture, max_d) in plan {
        out.extend(guarded(8, fixture, |out| {
            let act = LinearAction::fixture(fixture, caps)?;
            for d in 0..=max_d {
                let r = kawasaki_chi(&act, d as i64, caps)?;
                let label = format!("{fixture}, d={d}");
                out.push(Check::equal(
                    8,
                    format!("{label}: sector sum = averaged trace"),
                    &r.oracle.average_trace,
                    &r.total,
                ));
                out.push(Check::equal(
                    8,
                    format!("{label}: sector sum = projector rank"),
                    &BigRational::from_integer(r.oracle.projector_rank.into()),
                    &r.total,
                ));
                out.push(Check::holds(
                    8,
                    format!("{label}: Galois-orbit sums are rational"),
                    r.galois_orbit_sums.iter().all(CycNumber::is_rational),
                ));
                for c in 0..act.classes().len() {
                    let l = sector_vs_lefschetz(&act, c, d as i64, caps)?;
                    out.push(Check::new(
                        8,
                        format!("{label}, class {c}: sector = Lefschetz trace"),
                        show(&l.lefschetz),
                        show(&l.symbolic),
                        l.pass,
                    ));
                }
            }
            Ok(())
        }));
    }
    out.extend(guarded(8, "fixed values", |out| {
        let z3 = LinearAction::fixture("Z3-P1", caps)?;
        let r = kawasaki_chi(&z3, 6, caps)?;
        let want = [
            CycNumber::from_ratio(7, 3),
            CycNumber::from_ratio(1, 3),
            CycNumber::from_ratio(1, 3),
        ];
        let got: Vec<CycNumber> = r.sectors.iter().map(|s| s.contribution.clone()).collect();
        out.push(Check::new(
            8,
            "Z3-P1, d=6: sectors",
            show_all(&want),
            show_all(&got),
            got == want,
        ));
        out.push(Check::equal(
            8,
            "Z3-P1, d=6: total",
            &BigRational::from_integer(3.into()),
            &r.total,
        ));
        let s3 = LinearAction::fixture("S3-irrep2", caps)?;
        out.push(Check::equal(
            8,
            "S3-irrep2, d=6: total",
            &BigRational::from_integer(2.into()),
            &kawasaki_chi(&s3, 6, caps)?.total,
        ));
        Ok(())
    }));
    out
}

pub fn criterion_9() -> Vec<Check> {
    guarded(9, "good embeddings", |out| {
        for name in ["S3", "S4"] {
            let g = builtin(name)?;
            let t = ClassTable::new(&g);
            let natural = [MatrixRep::defining(&g)];
            for psi in 0..t.len() {
                let v = good_embedding_check(&g, &t, &natural, psi)?;
                out.push(Check::holds(
                    9,
                    format!("{name} natural representation separates class {psi}"),
                    v.separates,
                ));
            }
        }
        let q8 = builtin("Q8")?;
        let t = ClassTable::new(&q8);
        let irrep = MatrixRep::defining(&q8);
        let minus_one = (0..q8.order()).find(|&x| q8.element_order(x) == 2).expect("Q8 has -1");
        let c = t.class_of(minus_one);
        out.push(Check::holds(
            9,
            "Q8 2-dim irrep separates {-1}",
            good_embedding_check(&q8, &t, std::slice::from_ref(&irrep), c)?.separates,
        ));
        out.push(Check::equal(
            9,
            "Q8 tensor-power search for {-1}",
            &"1".to_string(),
            &format!("{:?}", tensor_power_search(&q8, &t, &irrep, c, 3)?.unwrap_or(0)),
        ));
        let s3 = builtin("S3")?;
        let t3 = ClassTable::new(&s3);
        let rejected = good_embedding_check(&s3, &t3, &[MatrixRep::trivial(&s3)], 1);
        out.push(Check::new(
            9,
            "non-faithful representation list is rejected",
            show(&"NotFaithful"),
            show(&match &rejected {
                Err(Error::NotFaithful(_)) => "NotFaithful".to_owned(),
                Err(e) => e.to_string(),
                Ok(_) => "accepted".to_owned(),
            }),
            matches!(rejected, Err(Error::NotFaithful(_))),
        ));
        Ok(())
    })
}

/// Serializing, parsing and re-serializing the report reproduces it byte for byte.
pub fn criterion_10(report_without: &Report) -> Check {
    let text = report_without.to_json();
    let again = serde_json::from_str::<Report>(&text).map(|r| r.to_json());
    match again {
        Ok(t) => Check::new(
            10,
            "report round-trips through JSON",
            json!(text.len()),
            json!(t.len()),
            t == text,
        ),
        Err(e) => Check::error(
            10,
            "report round-trips through JSON",
            json!(text.len()),
            &Error::Invalid(e.to_string()),
        ),
    }
}

pub fn run_criterion(id: u8, seed: u64, caps: &Caps) -> Result<Vec<Check>> {
    Ok(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(seed),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(seed),
        8 => criterion_8(caps),
        9 => criterion_9(),
        10 => {
            let r = Report::new("verify", json!({ "seed": seed }), Value::Null, criterion_9());
            vec![criterion_10(&r)]
        }
        other => return Err(Error::Invalid(format!("no criterion {other}"))),
    })
}

/// Runs every criterion and assembles the report.
pub fn run_suite(seed: u64, caps: &Caps) -> Report {
    let mut checks = Vec::new();
    for id in 1..=9 {
        checks.extend(run_criterion(id, seed, caps).expect("criteria 1-9 exist"));
    }
    let options = json!({ "seed": seed, "caps": caps });
    let partial = Report::new("verify", options.clone(), Value::Null, checks.clone());
    checks.push(criterion_10(&partial));
    Report::new("verify", options, Value::Null, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_weight_counts() {
        assert_eq!(dominant_weights(1, 3).len(), 4);
        assert_eq!(dominant_weights(2, 3).len(), 10);
        assert_eq!(dominant_weights(3, 3).len(), 20);
    }

    #[test]
    fn report_summaries() {
        let checks = vec![
            Check::holds(1, "a", true),
            Check::holds(1, "b", false),
            Check::holds(2, "c", true),
        ];
        let r = Report::new("x", Value::Null, Value::Null, checks);
        assert!(!r.pass);
        assert_eq!(r.criteria.len(), 2);
        assert_eq!((r.criteria[0].checks, r.criteria[0].failed), (2, 1));
        assert!(r.criteria[1].pass);
        assert!(criterion_10(&r).pass);
    }

    #[test]
    fn errors_become_failures() {
        let out = guarded(1, "boom", |_| Err(Error::ResidualDenominator("1/(1-x0)".into())));
        assert_eq!(out.len(), 1);
        assert!(!out[0].pass);
    }
}

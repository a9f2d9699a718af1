use std::sync::Arc;

use proptest::prelude::*;

use kloc::exact::{divide_by_binomial, BinomialFactor, CycNumber, LaurentPoly, LocalizedElement, Monomial};
use kloc::gkm::{o_d_class, projective_space_data, pushforward_to_point, EquivClass};
use kloc::group::{builtin, SectorDecomposable};
use kloc::gset::{
    build_stabilizer, invariants, pullback, pushforward, EquivariantMap, GSet, GroupData, StabilizerClass,
};
use kloc::oracle::complete_homogeneous;

const ORDERS: [u32; 6] = [1, 3, 4, 5, 8, 12];

fn cyc() -> impl Strategy<Value = CycNumber> {
    (
        prop::sample::select(ORDERS.to_vec()),
        prop::collection::vec(-4i64..=4, 1..4),
    )
        .prop_map(|(n, cs)| {
            cs.iter()
                .enumerate()
                .map(|(k, &c)| &CycNumber::root_of_unity(n, 2 * k as i64 + 1) * &CycNumber::from_int(c))
                .sum()
        })
}

fn poly(nvars: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, nvars), -3i64..=3), 0..5).prop_map(move |terms| {
        LaurentPoly::from_terms(
            nvars,
            terms.into_iter().map(|(e, c)| (Monomial(e), CycNumber::from_int(c))),
        )
    })
}

fn root_point(nvars: usize) -> impl Strategy<Value = Vec<CycNumber>> {
    prop::collection::vec((prop::sample::select(vec![1u32, 2, 3, 4, 6]), 0i64..12), nvars)
        .prop_map(|v| v.into_iter().map(|(n, k)| CycNumber::root_of_unity(n, k)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_action_is_a_ring_map(a in cyc(), b in cyc()) {
        // 7 is prime to every order in use.
        prop_assert_eq!((&a * &b).galois(7), &a.galois(7) * &b.galois(7));
        prop_assert_eq!((&a + &b).galois(7), &a.galois(7) + &b.galois(7));
    }

    #[test]
    fn laurent_ring_axioms(p in poly(2), q in poly(2), r in poly(2)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(3), q in poly(3), x in root_point(3)) {
        let (pv, qv) = (p.evaluate(&x).unwrap(), q.evaluate(&x).unwrap());
        prop_assert_eq!((&p * &q).evaluate(&x).unwrap(), &pv * &qv);
        prop_assert_eq!((&p + &q).evaluate(&x).unwrap(), &pv + &qv);
    }

    #[test]
    fn binomial_division_round_trips(p in poly(2), e in prop::collection::vec(-2i32..=2, 2), k in 0i64..6) {
        prop_assume!(e.iter().any(|&x| x != 0));
        let f = BinomialFactor::new(CycNumber::root_of_unity(6, k), Monomial(e)).unwrap();
        let prod = &p * &f.to_poly();
        prop_assert_eq!(divide_by_binomial(&prod, &f), Some(p.clone()));
        let reduced = LocalizedElement::new(prod, vec![f]);
        prop_assert_eq!(reduced.as_polynomial().unwrap(), p);
    }

    #[test]
    fn localized_sums_match_cross_multiplication(p in poly(2), q in poly(2), a in 1i32..3, b in 1i32..3) {
        let f = BinomialFactor::one_minus(Monomial(vec![a, -1])).unwrap();
        let g = BinomialFactor::one_minus(Monomial(vec![-1, b])).unwrap();
        let x = LocalizedElement::new(p.clone(), vec![f.clone()]);
        let y = LocalizedElement::new(q.clone(), vec![g.clone()]);
        let sum = &x + &y;
        let expected = LocalizedElement::new(&(&p * &g.to_poly()) + &(&q * &f.to_poly()), vec![f, g]);
        prop_assert!(sum.equals(&expected));
        prop_assert!((&sum - &x).equals(&y));
    }

    #[test]
    fn projective_pushforward_is_linear(cs in prop::collection::vec(-3i64..=3, 4), n in 1usize..=3) {
        // Σ c_d O(d) pushes forward to Σ c_d h_d, with no residual denominator.
        let data = Arc::new(projective_space_data(n));
        let mut class = EquivClass::from_polys(data.clone(), vec![LaurentPoly::zero(n + 1); n + 1]).unwrap();
        let mut expect = LaurentPoly::zero(n + 1);
        for (d, &c) in cs.iter().enumerate() {
            let c = CycNumber::from_int(c);
            class = class.add(&o_d_class(data.clone(), d as i32).unwrap().scale(&c)).unwrap();
            expect = &expect + &complete_homogeneous(n + 1, d as u32).scale(&c);
        }
        let got = pushforward_to_point(&class).unwrap();
        prop_assert!(got.is_symmetric());
        prop_assert_eq!(got, expect);
    }
}

fn random_class(pairs: &Arc<kloc::gset::StabilizerPairSet>, values: &[i64]) -> StabilizerClass {
    let vals: Vec<CycNumber> = (0..pairs.orbits().len())
        .map(|o| CycNumber::from_int(values[o % values.len()]))
        .collect();
    StabilizerClass::from_orbit_values(pairs.clone(), &vals)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_sums_to_the_class(group in prop::sample::select(vec!["S3", "D4", "Q8", "A4", "Z/6"]),
                                       sub in 0usize..8, values in prop::collection::vec(-5i64..=5, 1..6)) {
        let data = GroupData::new(builtin(group).unwrap());
        let subs = data.group.subgroup_class_representatives();
        let h = &subs[sub % subs.len()];
        let x = Arc::new(GSet::coset_space(data.clone(), h));
        let pairs = build_stabilizer(x);
        let alpha = random_class(&pairs, &values);
        let total = alpha.decompose().iter().fold(StabilizerClass::zero(pairs.clone()), |acc, c| acc.add(c));
        prop_assert_eq!(&total, &alpha);
        for c in 0..data.classes.len() {
            prop_assert_eq!(alpha.component(c).component(c), alpha.component(c));
        }
    }

    #[test]
    fn projection_formula(group in prop::sample::select(vec!["S3", "D4", "A4"]), sub in 0usize..8,
                          a in prop::collection::vec(-4i64..=4, 1..5), b in prop::collection::vec(-4i64..=4, 1..5)) {
        // q: G → G/H, g ↦ gH; q_*(β · q*α) = q_*β · α.
        let data = GroupData::new(builtin(group).unwrap());
        let subs = data.group.subgroup_class_representatives();
        let h = &subs[sub % subs.len()];
        let target = Arc::new(GSet::coset_space(data.clone(), h));
        let source = Arc::new(GSet::regular(data.clone()));
        let map: Vec<usize> = (0..source.points()).map(|g| target.act(g, 0)).collect();
        let q = EquivariantMap::new(source.clone(), target.clone(), map).unwrap();
        let sp = build_stabilizer(source);
        let tp = build_stabilizer(target);
        let alpha = random_class(&tp, &a);
        let beta = random_class(&sp, &b);
        let lhs = pushforward(&q, tp.clone(), &beta.mul(&pullback(&q, sp.clone(), &alpha)));
        let rhs = pushforward(&q, tp.clone(), &beta).mul(&alpha);
        prop_assert_eq!(&lhs, &rhs);
        // Pushforward preserves invariants summed over the base.
        let before: CycNumber = invariants(&beta).iter().sum();
        let after: CycNumber = invariants(&pushforward(&q, tp, &beta)).iter().sum();
        prop_assert_eq!(before, after);
    }
}

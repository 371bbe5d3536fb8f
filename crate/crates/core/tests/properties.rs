use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use icis::bounds::{c_coefficient, c_poly, d_poly};
use icis::conjecture::{compare_scaled, search, verify, Classification, SearchMode, SearchParams};
use icis::exactmath::{binomial, compositions, stirling2};
use icis::invariants::{genus, milnor};
use icis::{DegreeSpec, GenusMethod, InvariantReport, MilnorMethod, Rational};

#[test]
fn pascal_rule_through_thirty() {
    for m in 1..=30u64 {
        for k in 1..=m {
            assert_eq!(
                binomial(m, k),
                binomial(m - 1, k - 1) + binomial(m - 1, k),
                "C({m},{k})"
            );
        }
        assert_eq!(binomial(m, 0), BigInt::one());
        assert_eq!(binomial(m, m + 1), BigInt::zero());
    }
}

#[test]
fn stirling_recurrence_through_twenty() {
    for m in 1..=20u64 {
        for r in 1..=m {
            let expect = stirling2(m - 1, r).unwrap() * r + stirling2(m - 1, r - 1).unwrap();
            assert_eq!(stirling2(m, r).unwrap(), expect, "S2({m},{r})");
        }
    }
}

fn spec_strategy(n_max: u32, r_max: usize, p_max: u32) -> impl Strategy<Value = DegreeSpec> {
    (1..=n_max, prop::collection::vec(2..=p_max, 1..=r_max))
        .prop_map(|(n, d)| DegreeSpec::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn compositions_are_distinct_and_complete(n in 0u32..9, r in 1usize..5) {
        let all: Vec<Vec<u32>> = compositions(n, r).map(|c| c.parts().to_vec()).collect();
        prop_assert_eq!(BigInt::from(all.len()), binomial(n as u64 + r as u64 - 1, n as u64));
        prop_assert!(all.iter().all(|c| c.len() == r && c.iter().sum::<u32>() == n));
        let distinct: HashSet<_> = all.iter().collect();
        prop_assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn coefficients_are_reduced_and_above_floor(n in 1u32..9, r in 1u32..25) {
        let c = c_coefficient(n, r).unwrap();
        prop_assert!(c.denom().is_positive());
        prop_assert!(c.numer().gcd(c.denom()).is_one());
        prop_assert!(c >= Rational::from_integer(BigInt::from(2u32).pow(n)));
        prop_assert!(c_coefficient(n, r + 1).unwrap() <= c);
    }

    #[test]
    fn linear_equations_do_not_change_invariants(
        spec in spec_strategy(4, 3, 7),
        ones in 1usize..3,
        at in 0usize..4,
    ) {
        let mut padded = spec.degrees().to_vec();
        for _ in 0..ones {
            padded.insert(at.min(padded.len()), 1);
        }
        let padded = DegreeSpec::new(spec.n(), padded).unwrap();
        let a = InvariantReport::checked(&spec).unwrap();
        let b = InvariantReport::checked(&padded).unwrap();
        prop_assert!(b.was_reduced());
        prop_assert_eq!((a.mu, a.pg, a.chi), (b.mu, b.pg, b.chi));
    }

    #[test]
    fn series_route_equals_inclusion_exclusion(spec in spec_strategy(5, 4, 9)) {
        prop_assert_eq!(
            genus(&spec, GenusMethod::SeriesCoeff).unwrap(),
            genus(&spec, GenusMethod::InclusionExclusion).unwrap()
        );
    }

    #[test]
    fn verdicts_do_not_depend_on_the_route(spec in spec_strategy(5, 4, 8)) {
        let v = verify(&spec).unwrap();
        let mu = milnor(&spec, MilnorMethod::Series).unwrap();
        let pg = genus(&spec, GenusMethod::SeriesCoeff).unwrap();
        let curve_lhs = &mu + spec.degree_product() - 1u32;
        for check in [&v.strong, &v.conjecture, &v.c_bound] {
            let lhs = if spec.n() == 1 && check.name == v.conjecture.name { &curve_lhs } else { &mu };
            prop_assert_eq!(compare_scaled(lhs, &check.coefficient, &pg), check.comparison);
        }
    }

    #[test]
    fn classification_follows_comparison(spec in spec_strategy(5, 4, 8)) {
        let v = verify(&spec).unwrap();
        let strong_ok = v.pg().is_zero() || v.strong.comparison != Ordering::Less;
        prop_assert_eq!(v.strong.holds(), strong_ok);
        prop_assert_eq!(
            v.strong_class,
            if strong_ok { Classification::StrongDurfeeHolds } else { Classification::StrongDurfeeViolated }
        );
        if spec.n() >= 2 {
            prop_assert_eq!(
                v.conjecture_class == Classification::NewConjectureHolds,
                v.conjecture.holds()
            );
        }
    }

    #[test]
    fn c_poly_dominates_d_poly(n in 1u32..6, d in prop::collection::vec(2u32..9, 1..4)) {
        prop_assert!(c_poly(n, &d) >= d_poly(n, &d));
    }
}

#[test]
fn method_agreement_on_the_grid() {
    for spec in icis::selftest::degree_grid(1..=5, 4, 2, 7) {
        let mus: Vec<BigInt> = MilnorMethod::ALL
            .iter()
            .filter_map(|&m| milnor(&spec, m).ok())
            .collect();
        let pgs: Vec<BigInt> = GenusMethod::ALL
            .iter()
            .map(|&m| genus(&spec, m).unwrap())
            .collect();
        assert!(
            mus.len() >= 2 && mus.windows(2).all(|w| w[0] == w[1]),
            "{spec}"
        );
        assert!(pgs.windows(2).all(|w| w[0] == w[1]), "{spec}");
        assert!(!mus[0].is_negative() && !pgs[0].is_negative(), "{spec}");
    }
}

#[test]
fn reported_violations_reverify() {
    for (n, r, mode) in [
        (2, 2, SearchMode::EqualDegrees),
        (2, 3, SearchMode::FullGrid),
        (3, 2, SearchMode::FullGrid),
    ] {
        let params = SearchParams {
            n,
            r,
            p_min: 2,
            p_max: 8,
            mode,
            jobs: 2,
        };
        let result = search(&params).unwrap();
        for v in &result.strong_violations {
            let again = verify(v.spec()).unwrap();
            assert!(again.strong_violated(), "{}", v.spec());
            assert!(again.pg() * 6u32 > *again.mu() || n != 2, "{}", v.spec());
        }
        for v in &result.conjecture_violations {
            assert!(
                !verify(v.spec()).unwrap().conjecture.holds(),
                "{}",
                v.spec()
            );
        }
        let keys: Vec<_> = result
            .strong_violations
            .iter()
            .map(|v| v.spec().minimality_key())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "violations sorted");
    }
}

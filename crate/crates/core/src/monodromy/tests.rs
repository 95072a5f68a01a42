use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::datasets;
use crate::resolution::{denef_zeta, smooth_zeta};
use crate::ring::UniPoly;
use crate::series::{DenomFactor, QValue, ZetaRational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn cyclo(pairs: &[(u64, i64)]) -> CycloProduct {
    CycloProduct::from_factors(pairs.iter().copied()).unwrap()
}

/// `Phi_d` by dividing `T^d - 1` by `Phi_k` for the proper divisors `k`.
fn cyclotomic(d: u64, cache: &mut BTreeMap<u64, QPoly>) -> QPoly {
    if let Some(p) = cache.get(&d) {
        return p.clone();
    }
    let mut p = QPoly::monomial(Rational::one(), d as usize) - QPoly::one();
    for k in 1..d {
        if d % k == 0 {
            p = p.div_rem(&cyclotomic(k, cache)).0;
        }
    }
    cache.insert(d, p.clone());
    p
}

fn multiplicity(mut poly: QPoly, factor: &QPoly) -> i64 {
    let mut k = 0;
    loop {
        let (quot, rem) = poly.div_rem(factor);
        if !rem.is_zero() {
            return k;
        }
        poly = quot;
        k += 1;
    }
}

/// Expands the product and reads off net cyclotomic exponents by trial
/// division.
fn oracle_orders(z: &CycloProduct) -> BTreeSet<u64> {
    let (num, den) = z.to_fraction();
    let top = z.factors().keys().copied().max().unwrap_or(0);
    let mut cache = BTreeMap::new();
    (1..=top)
        .filter(|&d| {
            let phi = cyclotomic(d, &mut cache);
            multiplicity(num.clone(), &phi) != multiplicity(den.clone(), &phi)
        })
        .collect()
}

#[test]
fn cusp_acampo_at_origin() {
    let cusp = datasets::resolution("cusp").unwrap();
    let z = acampo_zeta(&cusp, "origin").unwrap();
    assert_eq!(z, cyclo(&[(2, -1), (3, -1), (6, 1)]));
    assert_eq!(z.to_string(), "(1 - T^2)^-1 * (1 - T^3)^-1 * (1 - T^6)");
    assert_eq!(z.cyclotomic_exponent(1), -1);
    assert_eq!(z.cyclotomic_exponent(2), 0);
    assert_eq!(z.cyclotomic_exponent(3), 0);
    assert_eq!(z.cyclotomic_exponent(6), 1);
    assert_eq!(eigenvalue_orders(&z), BTreeSet::from([1, 6]));
    let regular = acampo_zeta(&cusp, "regular").unwrap();
    assert_eq!(regular, cyclo(&[(1, -1)]));
    assert_eq!(eigenvalue_orders(&regular), BTreeSet::from([1]));
    assert!(matches!(acampo_zeta(&cusp, "nowhere"), Err(ZetaError::UnknownPoint(_))));
}

#[test]
fn acampo_combines_equal_multiplicities() {
    let res = ResolutionData::from_json(
        r#"{"ambient_dim": 2, "components": [{"id": "A", "N": 2, "nu": 1}, {"id": "B", "N": 2, "nu": 3}],
            "strata": {}, "fiber_points": {"x": {"A": 1, "B": 2}, "y": {"A": 1, "B": -1}, "z": {"A": 0}}}"#,
    )
    .unwrap();
    assert_eq!(acampo_zeta(&res, "x").unwrap(), cyclo(&[(2, -3)]));
    assert!(acampo_zeta(&res, "y").unwrap().is_one());
    assert!(acampo_zeta(&res, "z").unwrap().is_one());
    assert_eq!(acampo_zeta(&res, "z").unwrap().to_string(), "1");
}

#[test]
fn small_products() {
    assert_eq!(eigenvalue_orders(&cyclo(&[(2, 1), (1, -1)])), BTreeSet::from([2]));
    assert!(eigenvalue_orders(&CycloProduct::one()).is_empty());
    assert!(CycloProduct::from_factors([(0, 1)]).is_err());
    let z = cyclo(&[(2, 1), (1, -1)]);
    let (num, den) = z.to_fraction();
    assert_eq!(num.div_rem(&den), (UniPoly::new(vec![q(1, 1), q(1, 1)]), QPoly::zero()));
}

#[test]
fn oracle_on_examples() {
    for z in [cyclo(&[(2, -1), (3, -1), (6, 1)]), cyclo(&[(12, 2), (4, -1), (6, -3)]), cyclo(&[(5, 1)])] {
        assert_eq!(z.eigenvalue_orders(), oracle_orders(&z), "{z}");
    }
}

#[test]
fn cusp_poles() {
    let cusp = datasets::resolution("cusp").unwrap();
    for p in [5u64, 7, 11] {
        let report = actual_poles(&denef_zeta(&cusp, p).unwrap());
        let expect = vec![
            PoleEntry { real_part: q(-1, 1), multiplicity: 1 },
            PoleEntry { real_part: q(-5, 6), multiplicity: 1 },
        ];
        assert_eq!(report.entries, expect, "p = {p}");
    }
}

#[test]
fn smooth_and_constant_poles() {
    let z = smooth_zeta(&BigInt::from(5), 2, 5).unwrap();
    assert_eq!(actual_poles(&z).entries, vec![PoleEntry { real_part: q(-1, 1), multiplicity: 1 }]);
    let one = ZetaRational::constant(QValue::Prime(5), Rational::one()).unwrap();
    assert!(actual_poles(&one).entries.is_empty());
    assert_eq!(actual_poles(&one).to_string(), "real_part\tmultiplicity\n");
}

#[test]
fn cancelled_factor_is_not_a_pole() {
    let z = smooth_zeta(&BigInt::from(3), 2, 3).unwrap();
    let extra = DenomFactor::new(4, 3);
    let mut factors = z.factors().to_vec();
    factors.push(extra);
    let padded = ZetaRational::new(
        QValue::Prime(3),
        z.numerator().clone() * z.factor_poly(extra),
        factors,
    )
    .unwrap();
    assert_eq!(actual_poles(&padded), actual_poles(&z));
}

#[test]
fn double_pole() {
    // ((p-1)/p)^2 / (1 - p^-1 t)^2 for f = xy
    let p = 3;
    let c = q(4, 9);
    let z = ZetaRational::new(
        QValue::Prime(p),
        UniPoly::constant(c),
        vec![DenomFactor::new(1, 1), DenomFactor::new(1, 1)],
    )
    .unwrap();
    assert_eq!(actual_poles(&z).entries, vec![PoleEntry { real_part: q(-1, 1), multiplicity: 2 }]);
    // (1 - p^-1 t)(1 - p^-2 t^2) shares only (1 - p^-1 t) with each other.
    let z = ZetaRational::new(
        QValue::Prime(p),
        UniPoly::constant(Rational::one()),
        vec![DenomFactor::new(1, 1), DenomFactor::new(2, 2)],
    )
    .unwrap();
    assert_eq!(actual_poles(&z).entries, vec![PoleEntry { real_part: q(-1, 1), multiplicity: 2 }]);
}

#[test]
fn root_orders() {
    assert_eq!(root_of_unity_order(&q(-1, 1)), 1);
    assert_eq!(root_of_unity_order(&q(-5, 6)), 6);
    assert_eq!(root_of_unity_order(&q(-3, 4)), 4);
    assert_eq!(root_of_unity_order(&q(-2, 2)), 1);
}

#[test]
fn conjecture_holds_for_cusp() {
    let cusp = datasets::resolution("cusp").unwrap();
    for p in [5u64, 7, 11] {
        let report = check_conjecture(&cusp, &denef_zeta(&cusp, p).unwrap()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.verdicts.len(), 2);
        assert!(report.verdicts.iter().all(|v| v.witness.as_deref() == Some("origin")));
        assert!(report.unexplained().is_empty());
    }
}

#[test]
fn conjecture_for_smooth_model() {
    let parabola = datasets::resolution("parabola").unwrap();
    let report = check_conjecture(&parabola, &denef_zeta(&parabola, 5).unwrap()).unwrap();
    assert!(report.passed());
    assert_eq!(report.verdicts[0].order, 1);
}

#[test]
fn synthetic_component_fails() {
    let bad = datasets::resolution("cusp_bad").unwrap();
    let z = denef_zeta(&bad, 5).unwrap();
    assert!(actual_poles(&z).real_parts().contains(&q(-3, 4)));
    let report = check_conjecture(&bad, &z).unwrap();
    assert!(!report.passed());
    let failures: Vec<_> = report.failures().collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].pole, q(-3, 4));
    assert_eq!(failures[0].order, 4);
    let text = report.to_string();
    assert!(text.contains("FAIL (no witness among declared points)"));
    assert!(text.ends_with("FAIL"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn eigenvalue_orders_match_cyclotomic_oracle(
        pairs in prop::collection::vec((1u64..=12, -3i64..=3), 0..5)
    ) {
        let z = CycloProduct::from_factors(pairs).unwrap();
        prop_assert_eq!(z.eigenvalue_orders(), oracle_orders(&z));
    }

    #[test]
    fn actual_poles_are_candidates(p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        for name in ["cusp", "parabola", "line", "cusp_bad"] {
            let res = datasets::resolution(name).unwrap();
            let z = denef_zeta(&res, p).unwrap();
            prop_assert!(actual_poles(&z).real_parts().is_subset(&candidate_poles(&res)));
        }
    }
}

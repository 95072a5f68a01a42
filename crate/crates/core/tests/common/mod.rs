//! Property suites and brute-force oracles shared by the property and
//! acceptance targets.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use zeta_core::counting::{is_smooth_mod_p, CountRequest, Counter};
use zeta_core::monodromy::CycloProduct;
use zeta_core::parse::parse_poly;
use zeta_core::ring::{MultiPolynomial, PrimePowerRing, TruncatedSeriesRing, UniPoly};
use zeta_core::series::{fit_rational, DenomFactor, FitOptions, QValue, ZetaRational};
use zeta_core::{LaurentL, MultiPoly, QPoly, Rational};

pub type Check = Result<(), String>;

/// Deterministic runner so acceptance output is reproducible.
fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn poly(s: &str) -> MultiPoly {
    parse_poly(s, None).expect("test polynomial parses")
}

/// Nonzero polynomials in `x, y` of total degree at most 3.
pub fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(-3i64..=3, 10)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(|coeffs| {
            let mut exps = Vec::new();
            for deg in 0..=3u32 {
                for i in 0..=deg {
                    exps.push(vec![i, deg - i]);
                }
            }
            let terms = coeffs.into_iter().zip(exps).map(|(c, e)| (BigInt::from(c), e));
            MultiPolynomial::from_terms(vec!["x".into(), "y".into()], terms).expect("arity 2")
        })
}

fn laurent() -> impl Strategy<Value = LaurentL> {
    prop::collection::vec((-3i64..=3, -5i64..=5), 0..4)
        .prop_map(|terms| LaurentL::from_terms(terms.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
}

pub fn prime_power_ring_axioms() -> Check {
    let strategy = (
        prop::sample::select(vec![2u64, 3, 5, 7]),
        1u32..=4,
        -1_000_000i64..1_000_000,
        -1_000_000i64..1_000_000,
        -1_000_000i64..1_000_000,
    );
    run(256, strategy, |(p, m, a, b, c)| {
        let r = PrimePowerRing::new(p, m).unwrap();
        let (a, b, c) = (r.reduce(&int(a)), r.reduce(&int(b)), r.reduce(&int(c)));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), BigUint::zero());
        prop_assert_eq!(r.mul(&a, &r.one()), a.clone());
        prop_assert_eq!(r.sub(&a, &b), r.add(&a, &r.neg(&b)));
        Ok(())
    })
}

pub fn truncated_ring_axioms() -> Check {
    let coeffs = || prop::collection::vec(-20i64..20, 5);
    let strategy = (prop::sample::select(vec![2u64, 3, 5]), 1usize..=5, coeffs(), coeffs(), coeffs());
    run(256, strategy, |(p, len, a, b, c)| {
        let r = TruncatedSeriesRing::new(p, len).unwrap();
        let (a, b, c) = (r.element(&a), r.element(&b), r.element(&c));
        prop_assert_eq!(r.add(&a, &b), r.add(&b, &a));
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
        prop_assert_eq!(r.mul(&a, &r.element(&[1])), a.clone());
        // ord is additive until the truncation swallows the product
        match (r.ord(&a), r.ord(&b)) {
            (Some(i), Some(j)) if i + j < len => prop_assert_eq!(r.ord(&r.mul(&a, &b)), Some(i + j)),
            _ => prop_assert_eq!(r.ord(&r.mul(&a, &b)), None),
        }
        Ok(())
    })
}

/// `v_p` and the angular component are multiplicative below the modulus.
pub fn valuation_multiplicative() -> Check {
    let strategy = (
        prop::sample::select(vec![2u64, 3, 5]),
        1u32..=6,
        -100_000i64..100_000,
        -100_000i64..100_000,
    );
    run(256, strategy, |(p, m, a, b)| {
        let r = PrimePowerRing::new(p, m).unwrap();
        let (a, b) = (r.reduce(&int(a)), r.reduce(&int(b)));
        let ab = r.mul(&a, &b);
        match (r.vp(&a), r.vp(&b)) {
            (Some(i), Some(j)) if i + j < m => {
                prop_assert_eq!(r.vp(&ab), Some(i + j));
                prop_assert_eq!(r.acp(&ab), r.acp(&a) * r.acp(&b) % p);
            }
            _ => prop_assert_eq!(r.vp(&ab), None),
        }
        Ok(())
    })
}

/// `L <- p` and `L <- uv` are ring morphisms.
pub fn specialization_morphisms() -> Check {
    let strategy = (laurent(), laurent(), prop::sample::select(vec![2u64, 3, 5, 7, 11]));
    run(256, strategy, |(a, b, p)| {
        let sum = a.clone() + b.clone();
        let prod = a.clone() * b.clone();
        let (sa, sb) = (a.specialize_at_prime(p), b.specialize_at_prime(p));
        prop_assert_eq!(sum.specialize_at_prime(p), sa.clone() + sb.clone());
        prop_assert_eq!(prod.specialize_at_prime(p), sa * sb);
        prop_assert_eq!(sum.hodge_deligne(), a.hodge_deligne() + b.hodge_deligne());
        prop_assert_eq!(prod.hodge_deligne(), a.hodge_deligne() * b.hodge_deligne());
        prop_assert_eq!(LaurentL::one().specialize_at_prime(p), Rational::one());
        Ok(())
    })
}

/// The measure of `{f = 0 mod p^c}` does not depend on the truncation level.
pub fn cylinder_stabilization() -> Check {
    let counter = Counter::default();
    let strategy = (small_poly(), prop::sample::select(vec![2u64, 3]), 1u32..=3);
    run(5, strategy, |(f, p, cond)| {
        let base = counter
            .count_cylinder(&CountRequest::new(f.clone(), p, cond, cond).unwrap())
            .unwrap();
        for level in cond + 1..=3 {
            let finer = counter
                .count_cylinder(&CountRequest::new(f.clone(), p, cond, level).unwrap())
                .unwrap();
            prop_assert_eq!(&finer, &base, "f = {}, p = {}, levels {}/{}", f, p, cond, level);
        }
        Ok(())
    })
}

/// `N_{m+1} = p^(d-1) N_m` for three hypersurfaces smooth mod p.
pub fn hensel_lifting() -> Check {
    let counter = Counter::default();
    for (src, p) in [("y - x^2", 3u64), ("x^2 + y^2 - 1", 3), ("x*y - 1", 2)] {
        let f = poly(src);
        if !is_smooth_mod_p(&f, p) {
            return Err(format!("{src} is not smooth mod {p}"));
        }
        let d = f.arity() as u32;
        for m in 1..=3 {
            let a = counter.count_congruence(&f, p, m).map_err(|e| e.to_string())?;
            let b = counter.count_congruence(&f, p, m + 1).map_err(|e| e.to_string())?;
            if b != p.pow(d - 1) * a {
                return Err(format!("{src} mod {p}: N_{} = {b}, N_{m} = {a}", m + 1));
            }
        }
    }
    Ok(())
}

/// Expansion followed by reconstruction returns the same function.
pub fn fit_round_trip() -> Check {
    let pool = vec![
        DenomFactor::new(1, 1),
        DenomFactor::new(2, 1),
        DenomFactor::new(3, 2),
        DenomFactor::new(6, 5),
    ];
    let strategy = (
        prop::collection::vec((-9i64..=9, 0u32..3), 1..=4),
        prop::sample::subsequence(pool, 0..=3),
        prop::sample::select(vec![3u64, 5, 7]),
    );
    run(64, strategy, |(num, factors, p)| {
        let coeffs: Vec<Rational> = num
            .into_iter()
            .map(|(c, k)| Rational::new(c.into(), BigInt::from(p).pow(k)))
            .collect();
        let z = ZetaRational::new(QValue::Prime(p), UniPoly::new(coeffs), factors.clone()).unwrap();
        let bound = factors.iter().map(|f| f.n as usize).sum::<usize>().max(3);
        let opts = FitOptions {
            degree_bound: Some(bound),
            margin: 5,
        };
        let fitted = fit_rational(&z.expand(bound + 6), &factors, p, opts).unwrap();
        prop_assert_eq!(fitted, z);
        Ok(())
    })
}

/// Rendering is canonical: parsing it back gives the same polynomial.
pub fn parse_render_idempotent() -> Check {
    run(256, small_poly(), |f| {
        let text = f.to_string();
        let g = parse_poly(&text, Some(&["x", "y"])).unwrap();
        prop_assert_eq!(&g, &f);
        let once = parse_poly(&text, None).unwrap();
        let twice = parse_poly(&once.to_string(), None).unwrap();
        prop_assert_eq!(twice, once);
        Ok(())
    })
}

/// `Phi_d` by dividing `T^d - 1` by `Phi_k` for proper divisors `k`.
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
pub fn oracle_orders(z: &CycloProduct) -> BTreeSet<u64> {
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

pub fn cyclo_oracle() -> Check {
    let strategy = prop::collection::vec((1u64..=12, -3i64..=3), 0..5);
    run(50, strategy, |pairs| {
        let z = CycloProduct::from_factors(pairs).unwrap();
        prop_assert_eq!(z.eigenvalue_orders(), oracle_orders(&z), "{}", z);
        Ok(())
    })
}

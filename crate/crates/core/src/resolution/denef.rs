use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ResolutionData;
use crate::error::{Result, ZetaError};
use crate::ring::{is_prime, UniPoly};
use crate::series::{DenomFactor, QValue, ZetaCoeff, ZetaRational};
use crate::{LaurentL, NumericZeta, Rational};

/// `q^-d sum_J c_J prod_{j in J} (q-1) q^-nu_j t^N_j / (1 - q^-nu_j t^N_j)`
/// over the common denominator. Each `(N, nu)` factor appears as often as it
/// occurs within a single nonzero stratum.
pub(crate) fn assemble<C: ZetaCoeff>(
    res: &ResolutionData,
    q: QValue,
    class: impl Fn(&[String], &LaurentL) -> Result<C>,
) -> Result<ZetaRational<C>> {
    res.check_structure()?;
    let data: BTreeMap<&str, DenomFactor> = res
        .components
        .iter()
        .map(|c| (c.id.as_str(), DenomFactor::new(c.n, c.nu)))
        .collect();

    let mut terms = Vec::new();
    let mut common: BTreeMap<DenomFactor, usize> = BTreeMap::new();
    for (key, cls) in &res.strata {
        let c = class(key, cls)?;
        if c.is_zero() {
            continue;
        }
        let mut counts: BTreeMap<DenomFactor, usize> = BTreeMap::new();
        for id in key {
            *counts.entry(data[id.as_str()]).or_default() += 1;
        }
        for (f, k) in &counts {
            let e = common.entry(*f).or_default();
            *e = (*e).max(*k);
        }
        terms.push((key, c, counts));
    }

    let factors: Vec<DenomFactor> = common
        .iter()
        .flat_map(|(f, k)| std::iter::repeat_n(*f, *k))
        .collect();
    let shell = ZetaRational::<C>::new(q, UniPoly::zero(), factors.clone())?;
    let q_minus_one = C::q_power(q, 1)? - C::one();

    let mut numerator = UniPoly::<C>::zero();
    for (key, c, counts) in terms {
        let mut coeff = c * C::q_power(q, -(res.ambient_dim as i64))?;
        let mut degree = 0usize;
        for id in key {
            let f = data[id.as_str()];
            coeff = coeff * q_minus_one.clone() * C::q_power(q, -f.nu)?;
            degree += f.n as usize;
        }
        let mut term = UniPoly::monomial(coeff, degree);
        for (f, k) in &common {
            let used = counts.get(f).copied().unwrap_or(0);
            for _ in used..*k {
                term = term * shell.factor_poly(*f);
            }
        }
        numerator = numerator + term;
    }
    ZetaRational::new(q, numerator, factors)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ZetaError::NotPrime(p))
    }
}

/// Denef's formula with `c_J = [E_J^o](L = p)`.
pub fn denef_zeta(res: &ResolutionData, p: u64) -> Result<NumericZeta> {
    check_prime(p)?;
    assemble(res, QValue::Prime(p), |key, cls| {
        let c = cls.specialize_at_prime(p);
        if !c.is_integer() || c.is_negative() {
            return Err(ZetaError::InvalidResolution(format!(
                "stratum `{}` specializes to {c} at L = {p}, not a point count",
                key.join(",")
            )));
        }
        Ok(c)
    })
}

/// Zeta function of `f` smooth mod `p` with `point_count` zeros in `F_p^d`:
/// `p^-d c (p-1) p^-1 t / (1 - p^-1 t) + 1 - p^-d c`.
pub fn smooth_zeta(point_count: &BigInt, d: usize, p: u64) -> Result<NumericZeta> {
    check_prime(p)?;
    let q = QValue::Prime(p);
    let total = Rational::q_power(q, d as i64)?;
    let c = Rational::from_integer(point_count.clone());
    if c.is_negative() || c > total {
        return Err(ZetaError::InvalidArgument(format!(
            "point count {point_count} outside [0, {p}^{d}]"
        )));
    }
    if c.is_zero() {
        return ZetaRational::constant(q, Rational::one());
    }
    let inv_total = Rational::one() / total;
    let pr = Rational::from_integer(BigInt::from(p));
    let inv_p = Rational::one() / pr.clone();
    let pole = DenomFactor::new(1, 1);
    let shell = ZetaRational::<Rational>::new(q, UniPoly::zero(), vec![pole])?;
    let constant = UniPoly::constant(Rational::one() - c.clone() * inv_total.clone()) * shell.factor_poly(pole);
    let tail = UniPoly::monomial(c * inv_total * (pr - Rational::one()) * inv_p, 1);
    ZetaRational::new(q, constant + tail, vec![pole])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::Counter;
    use crate::datasets;
    use crate::parse::parse_poly;
    use crate::series::zeta_series;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cusp_matches_closed_form_at_5() {
        // 1 + (t - 1)(p^-1 + (p-1)p^-3 t + (p-1)p^-6 t^5 - p^-6 t^6)
        //   / ((1 - p^-1 t)(1 - p^-5 t^6)) with |V(F_p)| = p
        let cusp = datasets::resolution("cusp").unwrap();
        let p = q(5, 1);
        let pi = |k: i32| num_traits::Pow::pow(p.clone(), k);
        let one = q(1, 1);
        let inner = UniPoly::new(vec![
            pi(-1),
            (p.clone() - one.clone()) * pi(-3),
            q(0, 1),
            q(0, 1),
            q(0, 1),
            (p.clone() - one.clone()) * pi(-6),
            -pi(-6),
        ]);
        let factors = vec![DenomFactor::new(1, 1), DenomFactor::new(6, 5)];
        let shell = ZetaRational::new(QValue::Prime(5), UniPoly::zero(), factors.clone()).unwrap();
        let num = shell.denominator() + UniPoly::new(vec![-one.clone(), one]) * inner;
        let reference = ZetaRational::new(QValue::Prime(5), num, factors).unwrap();
        let z = denef_zeta(&cusp, 5).unwrap();
        assert!(z.same_function(&reference));
        assert_eq!(z.to_fraction().1, reference.denominator());
    }

    #[test]
    fn cusp_matches_brute_force() {
        let cusp = datasets::resolution("cusp").unwrap();
        let f = parse_poly("y^2 - x^3", None).unwrap();
        let counter = Counter::default();
        for p in [5u64, 7] {
            let z = denef_zeta(&cusp, p).unwrap();
            let brute = zeta_series(&counter, &f, p, 8).unwrap();
            assert_eq!(z.expand(8), brute, "p = {p}");
        }
    }

    #[test]
    fn parabola_equals_smooth_form() {
        let parabola = datasets::resolution("parabola").unwrap();
        for p in [3u64, 5, 7] {
            let a = denef_zeta(&parabola, p).unwrap();
            let b = smooth_zeta(&BigInt::from(p), 2, p).unwrap();
            assert_eq!(a, b);
        }
        let z = smooth_zeta(&BigInt::from(3), 2, 3).unwrap();
        assert_eq!(z.expand(3).coeffs(), &[q(2, 3), q(2, 9), q(2, 27)]);
    }

    #[test]
    fn smooth_edge_cases() {
        assert_eq!(
            smooth_zeta(&BigInt::zero(), 2, 5).unwrap(),
            ZetaRational::constant(QValue::Prime(5), Rational::one()).unwrap()
        );
        let full = smooth_zeta(&BigInt::from(25), 2, 5).unwrap();
        assert_eq!(full.numerator().coeffs(), &[q(0, 1), q(4, 5)]);
        assert!(smooth_zeta(&BigInt::from(26), 2, 5).is_err());
        assert!(smooth_zeta(&BigInt::from(-1), 2, 5).is_err());
        assert!(smooth_zeta(&BigInt::from(1), 2, 4).is_err());
    }

    #[test]
    fn only_empty_stratum_gives_one() {
        let cusp = datasets::resolution("cusp").unwrap();
        let mut trivial = cusp.clone();
        trivial.strata.clear();
        trivial.strata.insert(Vec::new(), LaurentL::lefschetz_pow(2));
        let z = denef_zeta(&trivial, 5).unwrap();
        assert!(z.same_function(&ZetaRational::constant(QValue::Prime(5), Rational::one()).unwrap()));
        assert!(z.factors().is_empty());
    }

    #[test]
    fn negative_or_fractional_counts_rejected() {
        let mut res = datasets::resolution("line").unwrap();
        res.strata.insert(vec!["E".into()], LaurentL::lefschetz_pow(-1));
        assert!(matches!(denef_zeta(&res, 5), Err(ZetaError::InvalidResolution(_))));
        res.strata.insert(vec!["E".into()], -LaurentL::one());
        assert!(denef_zeta(&res, 5).is_err());
        assert!(denef_zeta(&datasets::resolution("line").unwrap(), 6).is_err());
    }

    #[test]
    fn repeated_numerical_data_raises_multiplicity() {
        let res = ResolutionData::from_json(
            r#"{"ambient_dim": 2, "components": [{"id": "A", "N": 1, "nu": 1}, {"id": "B", "N": 1, "nu": 1}],
                "strata": {"": "L^2 - 2*L + 1", "A": "L - 1", "B": "L - 1", "A,B": "1"}}"#,
        )
        .unwrap();
        let z = denef_zeta(&res, 3).unwrap();
        assert_eq!(z.factors(), &[DenomFactor::new(1, 1), DenomFactor::new(1, 1)]);
        // xy: |f| = |x||y|, Z = ((p-1)/p / (1 - p^-1 t))^2
        let f = parse_poly("x*y", None).unwrap();
        let brute = zeta_series(&Counter::default(), &f, 3, 6).unwrap();
        assert_eq!(z.expand(6), brute);
    }
}

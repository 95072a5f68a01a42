//! Motivic zeta functions with coefficients in `Z[L, L^-1]`, their
//! specialization to primes, and the jet-count prediction derived from them.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ZetaError};
use crate::resolution::{assemble, ResolutionData};
use crate::ring::{is_prime, HodgeDeligne};
use crate::series::{PowerSeries, QValue};
use crate::{LaurentL, MotivicZeta, NumericZeta};

/// `L^-d sum_J [E_J^o] prod_{j in J} (L-1) L^-nu_j T^N_j / (1 - L^-nu_j T^N_j)`.
pub fn motivic_zeta(res: &ResolutionData) -> Result<MotivicZeta> {
    assemble(res, QValue::Symbol, |_, cls| Ok(cls.clone()))
}

/// `L <- p` in every coefficient; the factor multiset is kept.
pub fn specialize_motivic(z: &MotivicZeta, p: u64) -> Result<NumericZeta> {
    if !is_prime(p) {
        return Err(ZetaError::NotPrime(p));
    }
    z.map_coeffs(QValue::Prime(p), |c| c.specialize_at_prime(p))
}

/// Classes `[L_m(V_f)]` for `m < precision`, read off
/// `Q_mot(L^-d T) = T/(1-T) (1 - Z_mot)`.
pub fn motivic_poincare_series(z: &MotivicZeta, d: usize, precision: usize) -> Vec<LaurentL> {
    let one_minus = PowerSeries::from_poly(&crate::ring::UniPoly::one(), precision)
        - z.expand(precision);
    let mut partial = LaurentL::zero();
    let mut out = Vec::with_capacity(precision);
    for m in 0..precision {
        partial = partial + one_minus.coeff(m).clone();
        out.push(partial.shift(d as i64 * (m as i64 + 1)));
    }
    out
}

/// Predicted `|L_m(V_f)(F_p)|` for `m < precision`.
pub fn motivic_poincare_predict(z: &MotivicZeta, d: usize, p: u64, precision: usize) -> Result<Vec<BigInt>> {
    if !is_prime(p) {
        return Err(ZetaError::NotPrime(p));
    }
    motivic_poincare_series(z, d, precision)
        .iter()
        .enumerate()
        .map(|(m, class)| {
            let v = class.specialize_at_prime(p);
            if v.is_integer() && !v.is_negative() {
                Ok(v.to_integer())
            } else {
                Err(ZetaError::ModelInconsistency {
                    m,
                    value: v.to_string(),
                })
            }
        })
        .collect()
}

/// `L <- uv`.
pub fn hodge_deligne_class(c: &LaurentL) -> HodgeDeligne {
    c.hodge_deligne()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::Counter;
    use crate::datasets;
    use crate::parse::{parse_laurent, parse_poly};
    use crate::resolution::denef_zeta;
    use crate::series::{DenomFactor, ZetaRational};
    use crate::Rational;

    fn l(s: &str) -> LaurentL {
        parse_laurent(s).unwrap()
    }

    #[test]
    fn line_model() {
        let z = motivic_zeta(&datasets::resolution("line").unwrap()).unwrap();
        let expect = ZetaRational::new(
            QValue::Symbol,
            crate::ring::UniPoly::constant(l("1 - L^-1")),
            vec![DenomFactor::new(1, 1)],
        )
        .unwrap();
        assert_eq!(z, expect);
        assert_eq!(z.to_string(), "(1 - L^-1) / (1 - L^-1*T)");
        let at5 = specialize_motivic(&z, 5).unwrap();
        assert_eq!(at5.expand(3).coeffs()[0], Rational::new(4.into(), 5.into()));
        let f = parse_poly("x", None).unwrap();
        let brute = crate::series::zeta_series(&Counter::default(), &f, 5, 6).unwrap();
        assert_eq!(at5.expand(6), brute);
        let pred = motivic_poincare_predict(&z, 1, 3, 6).unwrap();
        assert!(pred.iter().all(|v| v == &BigInt::one()));
    }

    #[test]
    fn trivial_models() {
        let one = ZetaRational::constant(QValue::Symbol, LaurentL::one()).unwrap();
        assert_eq!(
            specialize_motivic(&one, 7).unwrap(),
            ZetaRational::constant(QValue::Prime(7), Rational::one()).unwrap()
        );
        let pred = motivic_poincare_predict(&one, 2, 5, 4).unwrap();
        assert!(pred.iter().all(|v| v.is_zero()));
        assert!(specialize_motivic(&one, 9).is_err());
    }

    #[test]
    fn cusp_specializes_to_denef() {
        let cusp = datasets::resolution("cusp").unwrap();
        let z = motivic_zeta(&cusp).unwrap();
        for p in [5u64, 7, 11] {
            assert_eq!(specialize_motivic(&z, p).unwrap(), denef_zeta(&cusp, p).unwrap());
        }
    }

    #[test]
    fn cusp_jet_classes() {
        let z = motivic_zeta(&datasets::resolution("cusp").unwrap()).unwrap();
        let classes = motivic_poincare_series(&z, 2, 5);
        assert_eq!(classes[0], l("L"));
        for (m, c) in classes.iter().enumerate().skip(1) {
            assert_eq!(c, &(l("2*L - 1") * LaurentL::lefschetz_pow(m as i64)), "m = {m}");
        }
    }

    #[test]
    fn cusp_predictions_match_jets() {
        let z = motivic_zeta(&datasets::resolution("cusp").unwrap()).unwrap();
        let f = parse_poly("x^2 - y^3", None).unwrap();
        let counter = Counter::default();
        for p in [2u64, 3, 5] {
            let pred = motivic_poincare_predict(&z, 2, p, 5).unwrap();
            for (m, v) in pred.iter().enumerate() {
                assert_eq!(*v, BigInt::from(counter.count_jets(&f, p, m as u32).unwrap()), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn inconsistent_model_is_reported() {
        // [E^o] = L^-1 cannot come from a variety.
        let res = crate::resolution::ResolutionData::from_json(
            r#"{"ambient_dim": 1, "components": [{"id": "E", "N": 1, "nu": 1}],
                "strata": {"": "L - 1", "E": "L^-1"}}"#,
        )
        .unwrap();
        let z = motivic_zeta(&res).unwrap();
        assert!(matches!(
            motivic_poincare_predict(&z, 1, 3, 3),
            Err(ZetaError::ModelInconsistency { m: 1, .. })
        ));
    }

    #[test]
    fn hodge_deligne_examples() {
        assert_eq!(hodge_deligne_class(&l("L^2 + L + 1")).to_string(), "u^2*v^2 + u*v + 1");
        assert_eq!(hodge_deligne_class(&l("1")).to_string(), "1");
        assert_eq!(
            hodge_deligne_class(&(l("L^-1") * l("L - 1"))).to_string(),
            "1 - u^-1*v^-1"
        );
    }
}

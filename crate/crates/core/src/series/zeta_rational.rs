use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PowerSeries;
use crate::error::{Result, ZetaError};
use crate::ring::UniPoly;
use crate::scalar::Scalar;
use crate::{LaurentL, QPoly, Rational};

/// The residue field cardinality `q`: a concrete prime, or the Lefschetz
/// symbol `L` for motivic functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QValue {
    Prime(u64),
    Symbol,
}

impl QValue {
    fn base(&self) -> String {
        match self {
            QValue::Prime(p) => p.to_string(),
            QValue::Symbol => "L".into(),
        }
    }

    fn var(&self) -> &'static str {
        match self {
            QValue::Prime(_) => "t",
            QValue::Symbol => "T",
        }
    }
}

/// The denominator factor `1 - q^(-nu) t^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DenomFactor {
    pub n: u32,
    pub nu: i64,
}

impl DenomFactor {
    pub fn new(n: u32, nu: i64) -> Self {
        DenomFactor { n, nu }
    }
}

/// Coefficient rings that can host powers of `q`.
pub trait ZetaCoeff: Scalar {
    fn q_power(q: QValue, k: i64) -> Result<Self>;
}

impl ZetaCoeff for Rational {
    fn q_power(q: QValue, k: i64) -> Result<Self> {
        match q {
            QValue::Prime(p) => {
                let base = Rational::from_integer(BigInt::from(p));
                let e: i32 = k
                    .try_into()
                    .map_err(|_| ZetaError::InvalidArgument(format!("exponent {k} out of range")))?;
                Ok(num_traits::Pow::pow(base, e))
            }
            QValue::Symbol => Err(ZetaError::Unsupported(
                "a symbolic q needs Laurent coefficients".into(),
            )),
        }
    }
}

impl ZetaCoeff for LaurentL {
    fn q_power(q: QValue, k: i64) -> Result<Self> {
        match q {
            QValue::Symbol => Ok(LaurentL::lefschetz_pow(k)),
            QValue::Prime(_) => Err(ZetaError::Unsupported(
                "Laurent coefficients need the symbolic q".into(),
            )),
        }
    }
}

/// Rational function `numerator(t) / prod (1 - q^(-nu) t^n)`. Factors are
/// kept sorted by `(n, nu)` with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaRational<C> {
    q: QValue,
    numerator: UniPoly<C>,
    factors: Vec<DenomFactor>,
}

impl<C: ZetaCoeff> ZetaRational<C> {
    pub fn new(q: QValue, numerator: UniPoly<C>, mut factors: Vec<DenomFactor>) -> Result<Self> {
        C::q_power(q, 0)?;
        if let Some(f) = factors.iter().find(|f| f.n == 0) {
            return Err(ZetaError::InvalidArgument(format!(
                "denominator factor with t-degree 0 (nu = {})",
                f.nu
            )));
        }
        factors.sort();
        Ok(ZetaRational {
            q,
            numerator,
            factors,
        })
    }

    pub fn constant(q: QValue, c: C) -> Result<Self> {
        Self::new(q, UniPoly::constant(c), Vec::new())
    }

    pub fn q(&self) -> QValue {
        self.q
    }

    pub fn numerator(&self) -> &UniPoly<C> {
        &self.numerator
    }

    pub fn factors(&self) -> &[DenomFactor] {
        &self.factors
    }

    /// `1 - q^(-nu) t^n`
    pub fn factor_poly(&self, f: DenomFactor) -> UniPoly<C> {
        let c = C::q_power(self.q, -f.nu).expect("q validated at construction");
        UniPoly::one() - UniPoly::monomial(c, f.n as usize)
    }

    pub fn denominator(&self) -> UniPoly<C> {
        self.factors
            .iter()
            .fold(UniPoly::one(), |acc, &f| acc * self.factor_poly(f))
    }

    /// Formal expansion to `precision` coefficients.
    pub fn expand(&self, precision: usize) -> PowerSeries<C> {
        let mut s = PowerSeries::from_poly(&self.numerator, precision);
        for &f in &self.factors {
            let c = C::q_power(self.q, -f.nu).expect("q validated at construction");
            s = s.div_geometric(&c, f.n as usize);
        }
        s
    }

    /// Applies a coefficient map, e.g. the specialization `L <- p`.
    pub fn map_coeffs<D: ZetaCoeff>(&self, q: QValue, f: impl Fn(&C) -> D) -> Result<ZetaRational<D>> {
        ZetaRational::new(q, self.numerator.map(f), self.factors.clone())
    }
}

impl ZetaRational<Rational> {
    pub fn prime(&self) -> u64 {
        match self.q {
            QValue::Prime(p) => p,
            QValue::Symbol => unreachable!("rational coefficients force a numeric q"),
        }
    }

    /// Fully reduced `(numerator, denominator)` with denominator constant term 1.
    pub fn to_fraction(&self) -> (QPoly, QPoly) {
        let num = self.numerator.clone();
        let den = self.denominator();
        if num.is_zero() {
            return (num, QPoly::one());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let c0 = den.coeff(0);
        let inv = Rational::one() / c0;
        (num.scale(&inv), den.scale(&inv))
    }

    /// Equality as rational functions of `t` (after cancellation).
    pub fn same_function(&self, other: &Self) -> bool {
        self.q == other.q && self.to_fraction() == other.to_fraction()
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, q: QValue, fac: DenomFactor) -> fmt::Result {
    let t = match fac.n {
        1 => q.var().to_string(),
        n => format!("{}^{n}", q.var()),
    };
    match -fac.nu {
        0 => write!(f, "(1 - {t})"),
        1 => write!(f, "(1 - {}*{t})", q.base()),
        e => write!(f, "(1 - {}^{e}*{t})", q.base()),
    }
}

/// `numerator / ((1 - q^-nu*t^N) * ...)` with the prime (or `L`, `T`) spelled
/// out; factors appear sorted by `(N, nu)`.
impl<C: ZetaCoeff> fmt::Display for ZetaRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator.display(self.q.var()).to_string();
        if self.factors.is_empty() {
            return write!(f, "{num}");
        }
        if self.numerator.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "({num}) / ")?;
        } else {
            write!(f, "{num} / ")?;
        }
        let several = self.factors.len() > 1;
        if several {
            write!(f, "(")?;
        }
        for (i, &fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write_factor(f, self.q, fac)?;
        }
        if several {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn expand_geometric() {
        let z = ZetaRational::new(
            QValue::Prime(5),
            UniPoly::constant(q(1, 1)),
            vec![DenomFactor::new(1, -1)],
        )
        .unwrap();
        assert_eq!(z.expand(3).coeffs(), &[q(1, 1), q(5, 1), q(25, 1)]);
        let zero = ZetaRational::<Rational>::new(QValue::Prime(5), UniPoly::zero(), vec![DenomFactor::new(1, 1)]).unwrap();
        assert_eq!(zero.expand(4), PowerSeries::zero(4));
    }

    #[test]
    fn symbolic_q_needs_laurent_coefficients() {
        let err = ZetaRational::<Rational>::constant(QValue::Symbol, q(1, 1)).unwrap_err();
        assert!(matches!(err, ZetaError::Unsupported(_)));
        assert!(ZetaRational::<LaurentL>::constant(QValue::Prime(3), LaurentL::one()).is_err());
    }

    #[test]
    fn reduced_fraction_cancels_common_factors() {
        // (1 - t^2/25) / ((1 - t/5)(1 - t^2/25)) = 1 / (1 - t/5)
        let base = ZetaRational::new(QValue::Prime(5), UniPoly::one(), vec![DenomFactor::new(1, 1)]).unwrap();
        let z = ZetaRational::new(
            QValue::Prime(5),
            base.factor_poly(DenomFactor::new(2, 2)),
            vec![DenomFactor::new(2, 2), DenomFactor::new(1, 1)],
        )
        .unwrap();
        assert!(z.same_function(&base));
        assert_eq!(z.factors(), &[DenomFactor::new(1, 1), DenomFactor::new(2, 2)]);
    }

    #[test]
    fn rendering() {
        let z = ZetaRational::new(
            QValue::Prime(5),
            UniPoly::new(vec![q(4, 5), q(0, 1), q(-1, 25)]),
            vec![DenomFactor::new(6, 5), DenomFactor::new(1, 1)],
        )
        .unwrap();
        assert_eq!(z.to_string(), "(4/5 - 1/25*t^2) / ((1 - 5^-1*t) * (1 - 5^-5*t^6))");
        let m = ZetaRational::new(
            QValue::Symbol,
            UniPoly::constant(LaurentL::one() - LaurentL::lefschetz_pow(-1)),
            vec![DenomFactor::new(1, 1)],
        )
        .unwrap();
        assert_eq!(m.to_string(), "(1 - L^-1) / (1 - L^-1*T)");
    }
}

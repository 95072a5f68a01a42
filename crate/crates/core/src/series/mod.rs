//! Igusa Poincaré series `Q(f;t)`, zeta series `Z(f;s)` in `t = p^-s`, the
//! identity `Q(f; p^-d t) = t/(1-t) (1 - Z(f;s))` linking them, and
//! reconstruction of rational functions from a truncated expansion once the
//! denominator shape is known.

mod power_series;
mod zeta_rational;

pub use power_series::{PowerSeries, Tsv};
pub use zeta_rational::{DenomFactor, QValue, ZetaCoeff, ZetaRational};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::counting::Counter;
use crate::error::{Result, ZetaError};
use crate::ring::UniPoly;
use crate::{MultiPoly, NumericZeta, QSeries, Rational};

/// `[0, N_1(f), ..., N_M(f)]`, each count by direct enumeration.
pub fn poincare_series(counter: &Counter, f: &MultiPoly, p: u64, precision: u32) -> Result<QSeries> {
    let mut coeffs = vec![Rational::zero()];
    for m in 1..=precision {
        let n = counter.count_congruence(f, p, m)?;
        coeffs.push(Rational::from_integer(n.into()));
    }
    Ok(PowerSeries::new(coeffs))
}

/// Coefficients `mu(v_p(f) = i)` for `i < precision`: the expansion of
/// `Z(f;s)` in `t = p^-s`.
pub fn zeta_series(counter: &Counter, f: &MultiPoly, p: u64, precision: u32) -> Result<QSeries> {
    let mut mu = counter.refined_level_sets(f, p, precision)?;
    mu.pop();
    Ok(PowerSeries::new(mu))
}

/// Checks `Q(f; p^-d t)(1 - t) = t (1 - Z(f;s))` coefficientwise. `q` must
/// carry exactly one more coefficient than `z` (both built with the same M).
pub fn transform_check(q: &QSeries, z: &QSeries, p: u64, d: usize) -> Result<bool> {
    if q.precision() != z.precision() + 1 {
        return Err(ZetaError::PrecisionMismatch(format!(
            "Poincaré series has {} coefficients, zeta series {}; expected one more",
            q.precision(),
            z.precision()
        )));
    }
    let inv = Rational::new(BigInt::one(), BigInt::from(p).pow(d as u32));
    let scaled = q.rescale(&inv);
    for k in 0..q.precision() {
        let lhs = if k == 0 {
            scaled.coeff(0).clone()
        } else {
            scaled.coeff(k).clone() - scaled.coeff(k - 1).clone()
        };
        let rhs = match k {
            0 => Rational::zero(),
            1 => Rational::one() - z.coeff(0).clone(),
            _ => -z.coeff(k - 1).clone(),
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z_k = [k = 0] + p^(-dk) Q_k - p^(-d(k+1)) Q_(k+1)`, the expansion of
/// `Z(f;s) = 1 + (p^-s - 1) Q(f; p^(-s-d)) / p^-s`.
pub fn zeta_from_poincare(q: &QSeries, p: u64, d: usize) -> QSeries {
    let inv = Rational::new(BigInt::one(), BigInt::from(p).pow(d as u32));
    let scaled = q.rescale(&inv);
    let n = q.precision().saturating_sub(1);
    let coeffs = (0..n)
        .map(|k| {
            let base = if k == 0 { Rational::one() } else { scaled.coeff(k).clone() };
            base - scaled.coeff(k + 1).clone()
        })
        .collect();
    PowerSeries::new(coeffs)
}

#[derive(Clone, Copy, Debug)]
pub struct FitOptions {
    /// Numerator degree bound; defaults to the sum of the factor degrees.
    pub degree_bound: Option<usize>,
    /// Coefficients past the fitted ones that must also match.
    pub margin: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            degree_bound: None,
            margin: 5,
        }
    }
}

/// The unique `num(t) / prod (1 - p^-nu t^N)` with `deg num <= bound`
/// matching `series`.
///
/// With the denominator fixed, the linear system for the numerator is
/// triangular: `num = series * den mod t^(bound+1)`. Every later coefficient
/// of `series * den` must vanish; the first that does not is reported, and
/// it is also the first coefficient at which the fitted function would
/// disagree with `series`.
pub fn fit_rational(series: &QSeries, factors: &[DenomFactor], p: u64, opts: FitOptions) -> Result<NumericZeta> {
    let shape = ZetaRational::new(QValue::Prime(p), UniPoly::one(), factors.to_vec())?;
    let bound = opts
        .degree_bound
        .unwrap_or_else(|| factors.iter().map(|f| f.n as usize).sum());
    let needed = bound + 1 + opts.margin;
    if series.precision() < needed {
        return Err(ZetaError::Ambiguous {
            needed,
            available: series.precision(),
        });
    }
    let den = PowerSeries::from_poly(&shape.denominator(), series.precision());
    let product = series.clone() * den;
    if let Some(k) = (bound + 1..product.precision()).find(|&k| !product.coeff(k).is_zero()) {
        return Err(ZetaError::FitFailure { index: k });
    }
    let numerator = UniPoly::new(product.coeffs()[..=bound].to_vec());
    ZetaRational::new(QValue::Prime(p), numerator, factors.to_vec())
}

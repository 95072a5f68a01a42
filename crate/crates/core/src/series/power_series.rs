use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::UniPoly;
use crate::scalar::Scalar;
use crate::Rational;

/// Truncated power series `sum_{i < precision} c_i t^i`. Arithmetic keeps the
/// smaller precision of its operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> PowerSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(precision: usize) -> Self {
        PowerSeries {
            coeffs: vec![C::zero(); precision],
        }
    }

    pub fn from_poly(p: &UniPoly<C>, precision: usize) -> Self {
        PowerSeries {
            coeffs: (0..precision).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn truncate(&self, precision: usize) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().take(precision).cloned().collect(),
        }
    }

    /// `S(c t)`: coefficient `i` is multiplied by `c^i`.
    pub fn rescale(&self, c: &C) -> Self {
        let mut pw = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        PowerSeries { coeffs: out }
    }

    /// Multiplies by `1 / (1 - c t^n)`, whose expansion is `sum_k c^k t^(nk)`.
    pub fn div_geometric(&self, c: &C, n: usize) -> Self {
        assert!(n >= 1, "geometric factor needs a positive t-degree");
        let mut out = self.coeffs.clone();
        for i in n..out.len() {
            let carry = out[i - n].clone() * c.clone();
            out[i] = out[i].clone() + carry;
        }
        PowerSeries { coeffs: out }
    }
}

impl<C: Scalar> Add for PowerSeries<C> {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        PowerSeries {
            coeffs: self
                .coeffs
                .into_iter()
                .zip(other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<C: Scalar> Neg for PowerSeries<C> {
    type Output = Self;
    fn neg(self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<C: Scalar> Sub for PowerSeries<C> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl<C: Scalar> Mul for PowerSeries<C> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![C::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out }
    }
}

/// One line per coefficient: `index<TAB>numerator/denominator`.
pub struct Tsv<'a>(pub &'a PowerSeries<Rational>);

impl fmt::Display for Tsv<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.coeffs.iter().enumerate() {
            writeln!(f, "{i}\t{}/{}", c.numer(), c.denom())?;
        }
        Ok(())
    }
}

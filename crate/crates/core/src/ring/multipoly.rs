use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Result, ZetaError};
use crate::scalar::Scalar;

/// Sparse multivariate polynomial in expanded form.
///
/// Two polynomials over different variable lists can be combined; the result
/// lives over the union of the lists, in first-appearance order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPolynomial<C> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Scalar> MultiPolynomial<C> {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: C, vars: Vec<String>) -> Self {
        let mut p = Self::zero(vars);
        let exps = vec![0; p.vars.len()];
        p.insert(exps, c);
        p
    }

    pub fn variable(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], C::one());
        MultiPolynomial {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; like
    /// monomials are merged and zero coefficients dropped.
    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (C, Vec<u32>)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (c, e) in terms {
            if e.len() != p.vars.len() {
                return Err(ZetaError::ArityMismatch {
                    expected: p.vars.len(),
                    got: e.len(),
                });
            }
            p.insert(e, c);
        }
        Ok(p)
    }

    fn insert(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(exps, sum);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Largest exponent of each variable.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut out = vec![0; self.vars.len()];
        for e in self.terms.keys() {
            for (o, &x) in out.iter_mut().zip(e) {
                *o = (*o).max(x);
            }
        }
        out
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable actually occurring.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero(vars.to_vec());
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => ne[j] = x,
                    None if x == 0 => {}
                    None => {
                        return Err(ZetaError::InvalidArgument(format!(
                            "variable `{}` is not in the requested variable list",
                            self.vars[i]
                        )))
                    }
                }
            }
            out.insert(ne, c.clone());
        }
        Ok(out)
    }

    fn unify(self, other: Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self, other);
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let a = self.with_vars(&vars).expect("superset of variables");
        let b = other.with_vars(&vars).expect("superset of variables");
        (a, b)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(C::one(), self.vars.clone());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.insert(ne, c.clone() * C::from_i64(e[i] as i64));
        }
        out
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPolynomial<D> {
        let mut out = MultiPolynomial::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.insert(e.clone(), f(c));
        }
        out
    }

    /// Evaluates at a point using any ring the coefficients map into.
    pub fn eval_with<R, F>(&self, point: &[R], coeff: F) -> Result<R>
    where
        R: Scalar,
        F: Fn(&C) -> R,
    {
        if point.len() != self.vars.len() {
            return Err(ZetaError::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            let mut term = coeff(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }
}

impl<C: Scalar> Add for MultiPolynomial<C> {
    type Output = Self;
    fn add(self, other: Self) -> Self {
        let (mut a, b) = self.unify(other);
        for (e, c) in b.terms {
            a.insert(e, c);
        }
        a
    }
}

impl<C: Scalar> Neg for MultiPolynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        let terms = self.terms.into_iter().map(|(e, c)| (e, -c)).collect();
        MultiPolynomial {
            vars: self.vars,
            terms,
        }
    }
}

impl<C: Scalar> Sub for MultiPolynomial<C> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl<C: Scalar> Mul for MultiPolynomial<C> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        let (a, b) = self.unify(other);
        let mut out = Self::zero(a.vars.clone());
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], exps: &[u32]) -> fmt::Result {
    let mut first = true;
    for (v, &k) in vars.iter().zip(exps) {
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if k == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{k}")?;
        }
    }
    Ok(())
}

/// Canonical rendering: terms by descending total degree, then descending
/// exponent vector. The output parses back to the same polynomial.
impl<C: Scalar + Signed> fmt::Display for MultiPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let is_const = e.iter().all(|&k| k == 0);
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_monomial(f, &self.vars, e)?;
            } else {
                write!(f, "{mag}*")?;
                write_monomial(f, &self.vars, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = MultiPolynomial<BigInt>;

    fn x() -> P {
        P::variable("x")
    }
    fn y() -> P {
        P::variable("y")
    }
    fn c(v: i64) -> P {
        P::constant(BigInt::from(v), vec![])
    }

    #[test]
    fn expansion_and_rendering() {
        let p = x() * (y() + c(1)).pow(2);
        assert_eq!(p.to_string(), "x*y^2 + 2*x*y + x");
        let h = y().pow(2) - x().pow(3);
        assert_eq!(h.vars(), ["y", "x"]);
        assert_eq!(h.to_string(), "-x^3 + y^2");
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = x() - x();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn derivative_of_cusp() {
        let h = (y().pow(2) - x().pow(3)).with_vars(&["x".into(), "y".into()]).unwrap();
        assert_eq!(h.derivative(0).to_string(), "-3*x^2");
        assert_eq!(h.derivative(1).to_string(), "2*y");
    }

    #[test]
    fn eval_arity_checked() {
        let h = y().pow(2) - x().pow(3);
        let err = h.eval_with(&[BigInt::from(1)], |c| c.clone()).unwrap_err();
        assert_eq!(err, ZetaError::ArityMismatch { expected: 2, got: 1 });
    }

    #[test]
    fn with_vars_rejects_missing_variable() {
        let p = x() * y();
        assert!(p.with_vars(&["x".into()]).is_err());
    }
}

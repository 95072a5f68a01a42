use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, ZetaError};
use crate::scalar::{Field, Scalar};
use crate::Rational;

/// Element of `C[L, L^-1]`, the coefficient ring for classes in the
/// Grothendieck ring that are polynomial in the Lefschetz class `L = [A^1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Scalar> Laurent<C> {
    pub fn monomial(c: C, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    /// `L`
    pub fn lefschetz() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `L^k`, any integer k.
    pub fn lefschetz_pow(k: i64) -> Self {
        Self::monomial(C::one(), k)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `L <- q` in any field the coefficients map into.
    pub fn eval<F: Field>(&self, q: &F, coeff: impl Fn(&C) -> F) -> Result<F> {
        let mut acc = F::zero();
        for (&k, c) in &self.terms {
            let mut pw = F::one();
            if k < 0 {
                if q.is_zero() {
                    return Err(ZetaError::DivisionByZero);
                }
                let inv = F::one() / q.clone();
                for _ in 0..(-k) {
                    pw = pw * inv.clone();
                }
            } else {
                for _ in 0..k {
                    pw = pw * q.clone();
                }
            }
            acc = acc + coeff(c) * pw;
        }
        Ok(acc)
    }
}

impl Laurent<BigInt> {
    /// Point-counting specialization `L <- q`.
    pub fn specialize(&self, q: &Rational) -> Result<Rational> {
        self.eval(q, |c| Rational::from_integer(c.clone()))
    }

    pub fn specialize_at_prime(&self, p: u64) -> Rational {
        self.specialize(&Rational::from_integer(BigInt::from(p)))
            .expect("a prime is nonzero")
    }

    /// Hodge-Deligne specialization `L <- uv`.
    pub fn hodge_deligne(&self) -> HodgeDeligne {
        let mut out = HodgeDeligne::default();
        for (&k, c) in &self.terms {
            out.add_term((k, k), c.clone());
        }
        out
    }
}

impl<C: Scalar> Zero for Laurent<C> {
    fn zero() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Scalar> One for Laurent<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Scalar> Add for Laurent<C> {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        for (k, c) in other.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<C: Scalar> Neg for Laurent<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Laurent {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<C: Scalar> Sub for Laurent<C> {
    type Output = Self;
    fn sub(self, other: Self) -> Self {
        self + (-other)
    }
}

impl<C: Scalar> Mul for Laurent<C> {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        let mut out = Self::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(a + b, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar + Signed> Scalar for Laurent<C> {
    fn from_i64(v: i64) -> Self {
        Self::constant(C::from_i64(v))
    }
}

fn write_signed<C: Scalar + Signed>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &C,
    monomial: &str,
) -> fmt::Result {
    let mag = c.abs();
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if monomial.is_empty() {
        write!(f, "{mag}")
    } else if mag.is_one() {
        write!(f, "{monomial}")
    } else {
        write!(f, "{mag}*{monomial}")
    }
}

fn power(var: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Renders in the grammar accepted by [`crate::parse::parse_laurent`],
/// highest power first, e.g. `L^2 - 2*L + 1` or `1 - L^-1`.
impl<C: Scalar + Signed> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            write_signed(f, i == 0, c, &power("L", k))?;
        }
        Ok(())
    }
}

/// Laurent polynomial in `u, v` with integer coefficients; the target of the
/// Hodge-Deligne specialization.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeDeligne {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl HodgeDeligne {
    fn add_term(&mut self, e: (i64, i64), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let s = self.terms.remove(&e).unwrap_or_default() + c;
        if !s.is_zero() {
            self.terms.insert(e, s);
        }
    }

    pub fn coeff(&self, i: i64, j: i64) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }
}

impl Add for HodgeDeligne {
    type Output = Self;
    fn add(mut self, other: Self) -> Self {
        for (e, c) in other.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Mul for HodgeDeligne {
    type Output = Self;
    fn mul(self, other: Self) -> Self {
        let mut out = HodgeDeligne::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term((a.0 + b.0, a.1 + b.1), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for HodgeDeligne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| (b.0 + b.1, b).cmp(&(a.0 + a.1, a)));
        for (i, ((a, b), c)) in terms.into_iter().enumerate() {
            let mono = [power("u", *a), power("v", *b)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            write_signed(f, i == 0, c, &mono)?;
        }
        Ok(())
    }
}

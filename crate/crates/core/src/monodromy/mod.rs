//! Monodromy zeta functions from A'Campo's formula, eigenvalue orders, actual
//! poles of rational zeta functions, and the monodromy conjecture check.
//!
//! Eigenvalues are roots of unity and are carried as their orders; the pole
//! `-nu/N` corresponds to `exp(-2 pi i nu/N)` of order `N / gcd(N, nu)`.

mod report;

pub use report::{ConjectureReport, PoleVerdict};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::One;

use crate::error::{Result, ZetaError};
use crate::resolution::{candidate_poles, ResolutionData};
use crate::{NumericZeta, QPoly, Rational};

/// `prod_a (1 - T^a)^(e_a)` with no zero exponents stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycloProduct {
    factors: BTreeMap<u64, i64>,
}

impl CycloProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds from `(a, e_a)` pairs, adding exponents of repeated `a`.
    pub fn from_factors(pairs: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        let mut out = Self::one();
        for (a, e) in pairs {
            if a == 0 {
                return Err(ZetaError::InvalidArgument("factor 1 - T^0 is zero".into()));
            }
            out.push(a, e);
        }
        Ok(out)
    }

    fn push(&mut self, a: u64, e: i64) {
        let slot = self.factors.entry(a).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&a);
        }
    }

    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Net exponent of the cyclotomic polynomial `Phi_d`.
    pub fn cyclotomic_exponent(&self, d: u64) -> i64 {
        if d == 0 {
            return 0;
        }
        self.factors
            .iter()
            .filter(|(a, _)| *a % d == 0)
            .map(|(_, e)| e)
            .sum()
    }

    /// Orders of the roots of unity that are zeros or poles.
    pub fn eigenvalue_orders(&self) -> BTreeSet<u64> {
        let mut divisors = BTreeSet::new();
        for &a in self.factors.keys() {
            let mut k = 1;
            while k * k <= a {
                if a % k == 0 {
                    divisors.insert(k);
                    divisors.insert(a / k);
                }
                k += 1;
            }
        }
        divisors
            .into_iter()
            .filter(|&d| self.cyclotomic_exponent(d) != 0)
            .collect()
    }

    /// Numerator and denominator as integer-coefficient polynomials in `T`.
    pub fn to_fraction(&self) -> (QPoly, QPoly) {
        let mut num = QPoly::one();
        let mut den = QPoly::one();
        for (&a, &e) in &self.factors {
            let f = QPoly::one() - QPoly::monomial(Rational::one(), a as usize);
            if e > 0 {
                num = num * f.pow(e as u32);
            } else {
                den = den * f.pow((-e) as u32);
            }
        }
        (num, den)
    }
}

impl fmt::Display for CycloProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (a, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            match a {
                1 => write!(f, "(1 - T)")?,
                a => write!(f, "(1 - T^{a})")?,
            }
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// `prod_i (1 - T^N_i)^(-chi_i)` over the fiber data of `point`.
pub fn acampo_zeta(res: &ResolutionData, point: &str) -> Result<CycloProduct> {
    let chis = res
        .fiber_points
        .get(point)
        .ok_or_else(|| ZetaError::UnknownPoint(point.to_string()))?;
    let mut out = CycloProduct::one();
    for (id, &chi) in chis {
        let c = res
            .component(id)
            .ok_or_else(|| ZetaError::InvalidResolution(format!("unknown component `{id}`")))?;
        if chi != 0 {
            out.push(c.n as u64, -chi);
        }
    }
    Ok(out)
}

pub fn eigenvalue_orders(z: &CycloProduct) -> BTreeSet<u64> {
    z.eigenvalue_orders()
}

/// Order of `exp(2 pi i r)` for rational `r`.
pub fn root_of_unity_order(r: &Rational) -> u64 {
    let den = r.denom();
    let g = r.numer().gcd(den);
    let d = den / g;
    u64::try_from(d).unwrap_or(u64::MAX)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleEntry {
    pub real_part: Rational,
    pub multiplicity: u32,
}

/// Actual poles, sorted by real part (most negative first).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleReport {
    pub entries: Vec<PoleEntry>,
}

impl PoleReport {
    pub fn real_parts(&self) -> BTreeSet<Rational> {
        self.entries.iter().map(|e| e.real_part.clone()).collect()
    }
}

impl fmt::Display for PoleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "real_part\tmultiplicity")?;
        for e in &self.entries {
            writeln!(f, "{}\t{}", e.real_part, e.multiplicity)?;
        }
        Ok(())
    }
}

/// Poles surviving cancellation. A candidate `-nu/N` is kept when some
/// original factor with that ratio shares a root with the reduced
/// denominator; its multiplicity is the largest `k` with `g^k` dividing it.
pub fn actual_poles(z: &NumericZeta) -> PoleReport {
    let (_, den) = z.to_fraction();
    let mut by_ratio: BTreeMap<Rational, u32> = BTreeMap::new();
    for &fac in z.factors() {
        let ratio = Rational::new(BigInt::from(-fac.nu), BigInt::from(fac.n));
        let g = den.gcd(&z.factor_poly(fac));
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut k = 0;
        let mut power = QPoly::one();
        loop {
            let next = power.clone() * g.clone();
            if !next.divides(&den) {
                break;
            }
            power = next;
            k += 1;
        }
        let slot = by_ratio.entry(ratio).or_insert(0);
        *slot = (*slot).max(k);
    }
    PoleReport {
        entries: by_ratio
            .into_iter()
            .filter(|(_, k)| *k > 0)
            .map(|(real_part, multiplicity)| PoleEntry {
                real_part,
                multiplicity,
            })
            .collect(),
    }
}

/// Checks every actual pole of `z` against the eigenvalue orders of the
/// A'Campo products at the declared fiber points of `res`.
pub fn check_conjecture(res: &ResolutionData, z: &NumericZeta) -> Result<ConjectureReport> {
    let mut orders = BTreeMap::new();
    for point in res.fiber_points.keys() {
        orders.insert(point.clone(), acampo_zeta(res, point)?.eigenvalue_orders());
    }
    let poles = actual_poles(z);
    let verdicts = poles
        .entries
        .iter()
        .map(|e| {
            let order = root_of_unity_order(&e.real_part);
            let witness = orders
                .iter()
                .find(|(_, set)| set.contains(&order))
                .map(|(p, _)| p.clone());
            PoleVerdict {
                pole: e.real_part.clone(),
                multiplicity: e.multiplicity,
                order,
                witness,
            }
        })
        .collect();
    Ok(ConjectureReport {
        prime: z.prime(),
        verdicts,
        candidates: candidate_poles(res),
        actual: poles.real_parts(),
        orders,
    })
}

#[cfg(test)]
mod tests;

//! User-supplied embedded resolution data and Denef's formula for the
//! untwisted p-adic zeta function.
//!
//! Resolutions are inputs: numerical data `(N_i, nu_i)` per component, the
//! classes `[E_J^o]` of the strata as Laurent polynomials in `L`, and the
//! Euler characteristics `chi(E_i^o ∩ h^-1(x))` of fibers over named points.

mod denef;

pub use denef::{denef_zeta, smooth_zeta};
pub(crate) use denef::assemble;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use crate::error::{Result, ZetaError};
use crate::parse::{parse_laurent, parse_poly};
use crate::ring::is_prime;
use crate::{LaurentL, MultiPoly, Rational};

/// An exceptional or strict-transform component with numerical data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub n: u32,
    pub nu: i64,
}

/// A stratum key: the sorted set of component ids `J`.
pub type StratumKey = Vec<String>;

#[derive(Clone, Debug, PartialEq)]
pub struct ResolutionData {
    pub ambient_dim: usize,
    pub polynomial: Option<MultiPoly>,
    pub components: Vec<Component>,
    /// `[E_J^o]`; missing keys are empty strata.
    pub strata: BTreeMap<StratumKey, LaurentL>,
    /// point name -> component id -> `chi_top(E_i^o ∩ h^-1(x))`.
    pub fiber_points: BTreeMap<String, BTreeMap<String, i64>>,
    pub bad_primes: Vec<u64>,
    pub ambient_class: Option<LaurentL>,
}

#[derive(Deserialize)]
struct RawComponent {
    id: String,
    #[serde(rename = "N")]
    n: i64,
    nu: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawResolution {
    ambient_dim: i64,
    #[serde(default)]
    polynomial: Option<String>,
    components: Vec<RawComponent>,
    strata: BTreeMap<String, String>,
    #[serde(default)]
    fiber_points: BTreeMap<String, BTreeMap<String, i64>>,
    #[serde(default)]
    bad_primes: Vec<u64>,
    #[serde(default)]
    ambient_class: Option<String>,
    #[serde(default)]
    #[allow(dead_code)]
    description: Option<String>,
}

fn invalid(msg: impl Into<String>) -> ZetaError {
    ZetaError::InvalidResolution(msg.into())
}

/// Splits a comma-joined id list; `""` is the empty set.
pub fn parse_stratum_key(key: &str) -> Result<StratumKey> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut ids: Vec<String> = key.split(',').map(|s| s.trim().to_string()).collect();
    if ids.iter().any(|s| s.is_empty()) {
        return Err(invalid(format!("empty component id in stratum key `{key}`")));
    }
    ids.sort();
    if ids.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid(format!("repeated component id in stratum key `{key}`")));
    }
    Ok(ids)
}

impl ResolutionData {
    /// Parses the JSON resolution format. Syntax errors fail here; semantic
    /// problems are reported by [`validate`](Self::validate).
    pub fn from_json(src: &str) -> Result<Self> {
        let raw: RawResolution = serde_json::from_str(src).map_err(|e| invalid(e.to_string()))?;
        if raw.ambient_dim < 0 {
            return Err(invalid("ambient_dim is negative"));
        }
        let polynomial = match &raw.polynomial {
            Some(s) => Some(parse_poly(s, None).map_err(|e| invalid(format!("polynomial: {e}")))?),
            None => None,
        };
        let mut components = Vec::new();
        for c in raw.components {
            let n: u32 = c
                .n
                .try_into()
                .map_err(|_| invalid(format!("component `{}` has N = {}", c.id, c.n)))?;
            components.push(Component { id: c.id, n, nu: c.nu });
        }
        let mut strata = BTreeMap::new();
        for (k, v) in &raw.strata {
            let key = parse_stratum_key(k)?;
            let class = parse_laurent(v).map_err(|e| invalid(format!("stratum `{k}`: {e}")))?;
            if strata.insert(key, class).is_some() {
                return Err(invalid(format!("stratum `{k}` given twice")));
            }
        }
        let ambient_class = match &raw.ambient_class {
            Some(s) => Some(parse_laurent(s).map_err(|e| invalid(format!("ambient_class: {e}")))?),
            None => None,
        };
        Ok(ResolutionData {
            ambient_dim: raw.ambient_dim as usize,
            polynomial,
            components,
            strata,
            fiber_points: raw.fiber_points,
            bad_primes: raw.bad_primes,
            ambient_class,
        })
    }

    /// Parses and rejects data with structural problems.
    pub fn from_json_checked(src: &str) -> Result<Self> {
        let res = Self::from_json(src)?;
        res.check_structure()?;
        Ok(res)
    }

    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub(crate) fn check_structure(&self) -> Result<()> {
        match self.structural_problems().into_iter().next() {
            Some(p) => Err(invalid(p)),
            None => Ok(()),
        }
    }

    fn structural_problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.ambient_dim == 0 {
            out.push("ambient_dim must be at least 1".into());
        }
        let mut seen = BTreeSet::new();
        for c in &self.components {
            if !seen.insert(c.id.as_str()) {
                out.push(format!("duplicate component id `{}`", c.id));
            }
            if c.n < 1 {
                out.push(format!("component `{}` has N < 1", c.id));
            }
            if c.nu < 1 {
                out.push(format!("component `{}` has nu < 1", c.id));
            }
        }
        for key in self.strata.keys() {
            for id in key {
                if !seen.contains(id.as_str()) {
                    out.push(format!("stratum `{}` references unknown component `{id}`", key.join(",")));
                }
            }
        }
        for (point, chis) in &self.fiber_points {
            for id in chis.keys() {
                if !seen.contains(id.as_str()) {
                    out.push(format!("fiber point `{point}` references unknown component `{id}`"));
                }
            }
        }
        if let Some(f) = &self.polynomial {
            if f.arity() > self.ambient_dim {
                out.push(format!(
                    "polynomial has {} variables but ambient_dim is {}",
                    f.arity(),
                    self.ambient_dim
                ));
            }
        }
        for &p in &self.bad_primes {
            if !is_prime(p) {
                out.push(format!("bad prime {p} is not prime"));
            }
        }
        out
    }

    /// The polynomial over exactly `ambient_dim` variables (extra variables
    /// are appended when the expression uses fewer).
    pub fn polynomial_in_ambient(&self) -> Option<MultiPoly> {
        let f = self.polynomial.as_ref()?;
        let mut vars = f.vars().to_vec();
        let mut i = 0;
        while vars.len() < self.ambient_dim {
            let name = format!("w{i}");
            if !vars.contains(&name) {
                vars.push(name);
            }
            i += 1;
        }
        f.with_vars(&vars).ok()
    }

    /// `sum_J [E_J^o]`
    pub fn total_class(&self) -> LaurentL {
        self.strata
            .values()
            .fold(LaurentL::zero(), |acc, c| acc + c.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        let structural = self.structural_problems();
        let mut consistency = Vec::new();
        if let Some(ambient) = &self.ambient_class {
            let total = self.total_class();
            if &total != ambient {
                consistency.push(format!(
                    "strata sum to {total} but the ambient class is {ambient}"
                ));
            }
        }
        let nonzero_strata = self
            .strata
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        ValidationReport {
            structural,
            consistency,
            candidate_poles: candidate_poles(self),
            nonzero_strata,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    pub structural: Vec<String>,
    pub consistency: Vec<String>,
    pub candidate_poles: BTreeSet<Rational>,
    pub nonzero_strata: Vec<StratumKey>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.structural.is_empty() && self.consistency.is_empty()
    }
}

/// Real parts `-nu_i/N_i` of the candidate poles, reduced and deduplicated.
pub fn candidate_poles(res: &ResolutionData) -> BTreeSet<Rational> {
    res.components
        .iter()
        .filter(|c| c.n > 0)
        .map(|c| Rational::new(BigInt::from(-c.nu), BigInt::from(c.n)))
        .collect()
}

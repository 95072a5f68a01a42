//! Exact enumeration engines: congruence counts `N_m(f)`, cylinder measures,
//! jet counts over `F_p[t]/(t^(m+1))`, ideal-order measures and
//! Hensel-certified bounds on projections of exact solutions.
//!
//! Every count is exact. A request whose point set exceeds the budget fails
//! with [`ZetaError::BudgetExceeded`] before any work is done.

mod eval;
mod hensel;
mod refine;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Result, ZetaError};
use crate::ring::is_prime;
use crate::{MultiPoly, Rational};

use eval::{odometer, JetArith, JetPoly, Modulus, SplitPoly};

pub use hensel::is_smooth_mod_p;

/// Default cap on the number of points a single enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Cylinder count request: solutions of `f = 0 mod p^condition_level`
/// inside `(Z/p^precision_level)^d`.
#[derive(Clone, Debug)]
pub struct CountRequest {
    pub f: MultiPoly,
    pub p: u64,
    pub condition_level: u32,
    pub precision_level: u32,
}

impl CountRequest {
    pub fn new(f: MultiPoly, p: u64, condition_level: u32, precision_level: u32) -> Result<Self> {
        if condition_level == 0 {
            return Err(ZetaError::InvalidLevel("condition level must be at least 1".into()));
        }
        if precision_level < condition_level {
            return Err(ZetaError::InvalidLevel(format!(
                "precision level {precision_level} is below condition level {condition_level}"
            )));
        }
        Ok(CountRequest {
            f,
            p,
            condition_level,
            precision_level,
        })
    }
}

/// Haar (or motivic, specialized) measure of a subset of `Z_p^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureValue {
    pub value: Rational,
}

impl MeasureValue {
    fn from_count(count: u64, p: u64, exponent: u64) -> Self {
        let denom = BigInt::from(p).pow(exponent as u32);
        MeasureValue {
            value: Rational::new(BigInt::from(count), denom),
        }
    }
}

/// Enumeration front end carrying the point budget.
#[derive(Clone, Copy, Debug)]
pub struct Counter {
    budget: u64,
}

impl Default for Counter {
    fn default() -> Self {
        Counter {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Counter {
    pub fn new(budget: u64) -> Self {
        Counter { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// Checks that `p^exponent` points fit in the budget and returns the count.
    fn admit(&self, p: u64, exponent: u64) -> Result<u64> {
        let e: u32 = exponent.try_into().map_err(|_| ZetaError::BudgetExceeded {
            required: format!("{p}^{exponent}"),
            budget: self.budget,
        })?;
        let total = BigUint::from(p).pow(e);
        match total.to_u64() {
            Some(n) if n <= self.budget => Ok(n),
            _ => Err(ZetaError::BudgetExceeded {
                required: total.to_string(),
                budget: self.budget,
            }),
        }
    }

    fn check_prime(p: u64) -> Result<()> {
        if is_prime(p) {
            Ok(())
        } else {
            Err(ZetaError::NotPrime(p))
        }
    }

    fn check_nonzero(f: &MultiPoly) -> Result<()> {
        if f.is_zero() {
            Err(ZetaError::InvalidArgument("the zero polynomial has no zeta function".into()))
        } else {
            Ok(())
        }
    }

    /// `N_m(f) = #{z in (Z/p^m)^d : f(z) = 0}`.
    pub fn count_congruence(&self, f: &MultiPoly, p: u64, m: u32) -> Result<u64> {
        let req = CountRequest::new(f.clone(), p, m, m)?;
        self.count_cylinder_raw(&req)
    }

    /// Normalized count `p^(-d*prec) * #{z mod p^prec : f(z) = 0 mod p^cond}`.
    /// The value does not depend on `precision_level`.
    pub fn count_cylinder(&self, req: &CountRequest) -> Result<MeasureValue> {
        let count = self.count_cylinder_raw(req)?;
        let d = req.f.arity() as u64;
        Ok(MeasureValue::from_count(count, req.p, d * req.precision_level as u64))
    }

    fn count_cylinder_raw(&self, req: &CountRequest) -> Result<u64> {
        Self::check_prime(req.p)?;
        Self::check_nonzero(&req.f)?;
        let d = req.f.arity() as u64;
        self.admit(req.p, d * req.precision_level as u64)?;
        let n = self.admit_modulus(req.p, req.precision_level)?;
        let cond = req.p.pow(req.condition_level);
        Ok(sweep(&req.f, n, |v| v % cond == 0))
    }

    fn admit_modulus(&self, p: u64, level: u32) -> Result<u64> {
        BigUint::from(p)
            .pow(level)
            .to_u64()
            .ok_or_else(|| ZetaError::BudgetExceeded {
                required: format!("{p}^{level}"),
                budget: self.budget,
            })
    }

    /// Histogram of `v_p(f(z))` over `z in (Z/p^level)^d`: entry `i < level`
    /// counts points of valuation exactly `i`, the last entry counts points
    /// with `f(z) = 0 mod p^level`.
    pub fn valuation_histogram(&self, f: &MultiPoly, p: u64, level: u32) -> Result<Vec<u64>> {
        Self::check_prime(p)?;
        Self::check_nonzero(f)?;
        if level == 0 {
            return Err(ZetaError::InvalidLevel("level must be at least 1".into()));
        }
        let d = f.arity() as u64;
        self.admit(p, d * level as u64)?;
        let n = self.admit_modulus(p, level)?;
        let hist = sweep_bins(f, n, level as usize + 1, |v| {
            if v == 0 {
                return Some(level as usize);
            }
            let mut v = v;
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            Some(e)
        });
        Ok(hist)
    }

    /// Exact measures `mu(v_p(f) = i)` for `i < levels`, followed by
    /// `mu(v_p(f) >= levels)`, by refinement of p-adic balls. The budget caps
    /// the number of balls visited. Agrees with [`level_set_measures`] of a
    /// [`valuation_histogram`](Self::valuation_histogram) at the same level.
    pub fn refined_level_sets(&self, f: &MultiPoly, p: u64, levels: u32) -> Result<Vec<Rational>> {
        Self::check_prime(p)?;
        Self::check_nonzero(f)?;
        if levels == 0 {
            return Err(ZetaError::InvalidLevel("level must be at least 1".into()));
        }
        refine::level_sets(f, p, levels, self.budget)
    }

    /// `|L_m(V_f)(F_p)|`: d-tuples over `F_p[t]/(t^(m+1))` with
    /// `f = 0 mod t^(m+1)`.
    pub fn count_jets(&self, f: &MultiPoly, p: u64, m: u32) -> Result<u64> {
        Self::check_prime(p)?;
        Self::check_nonzero(f)?;
        let len = m as usize + 1;
        self.admit(p, len as u64 * f.arity() as u64)?;
        let ar = JetArith {
            p: Modulus::new(p),
            len,
        };
        Ok(jet_sweep(&[JetPoly::new(f, p)], ar, |ords| ords[0] == len))
    }

    /// Measure of the cylinder of jets at `level` on which the order of the
    /// ideal generated by `gens` is exactly `e`, i.e. the minimum over
    /// generators of `ord_t g`, with orders capped at `level + 1`.
    pub fn ideal_order_measure(&self, gens: &[MultiPoly], e: u32, p: u64, level: u32) -> Result<MeasureValue> {
        Self::check_prime(p)?;
        if gens.is_empty() {
            return Err(ZetaError::InvalidArgument("at least one generator is required".into()));
        }
        if level < e {
            return Err(ZetaError::InvalidLevel(format!(
                "jet level {level} cannot determine order {e}"
            )));
        }
        let vars = union_vars(gens);
        let gens: Vec<MultiPoly> = gens
            .iter()
            .map(|g| g.with_vars(&vars))
            .collect::<Result<_>>()?;
        let d = vars.len() as u64;
        let len = level as usize + 1;
        self.admit(p, len as u64 * d)?;
        let ar = JetArith {
            p: Modulus::new(p),
            len,
        };
        let compiled: Vec<JetPoly> = gens.iter().map(|g| JetPoly::new(g, p)).collect();
        let e = e as usize;
        let count = jet_sweep(&compiled, ar, |ords| ords.iter().copied().min() == Some(e));
        Ok(MeasureValue::from_count(count, p, d * len as u64))
    }

    /// Bounds on the number of residues mod `p^m` that lift to exact
    /// solutions. See [`hensel`](self) for the certificate.
    pub fn serre_oesterle_bounds(&self, f: &MultiPoly, p: u64, m: u32, probe_level: u32) -> Result<(u64, u64)> {
        Self::check_prime(p)?;
        Self::check_nonzero(f)?;
        if m == 0 || probe_level <= m {
            return Err(ZetaError::InvalidLevel(format!(
                "probe level {probe_level} must exceed m = {m} >= 1"
            )));
        }
        let d = f.arity() as u64;
        self.admit(p, d * probe_level as u64)?;
        Ok(hensel::bounds(f, p, m, probe_level))
    }
}

fn union_vars(polys: &[MultiPoly]) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    for g in polys {
        for v in g.vars() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
    }
    vars
}

/// Counts points of `(Z/n)^d` whose value `f(z) mod n` satisfies `accept`.
fn sweep(f: &MultiPoly, n: u64, accept: impl Fn(u64) -> bool + Sync) -> u64 {
    sweep_bins(f, n, 1, |v| if accept(v) { Some(0) } else { None })[0]
}

/// Sorts the points of `(Z/n)^d` into `bins` by the value `f(z) mod n`.
fn sweep_bins(f: &MultiPoly, n: u64, bins: usize, classify: impl Fn(u64) -> Option<usize> + Sync) -> Vec<u64> {
    let m = Modulus::new(n);
    let split = SplitPoly::new(f, n);
    let add = |mut a: Vec<u64>, b: Vec<u64>| {
        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
        a
    };
    let inner = |coeffs: &[u64], range: std::ops::Range<u64>, hist: &mut [u64]| {
        for x in range {
            if let Some(b) = classify(SplitPoly::horner(&m, coeffs, x)) {
                hist[b] += 1;
            }
        }
    };
    let mut coeffs = Vec::new();
    if !split.has_inner {
        split.outer_coeffs(&m, &[], &mut coeffs);
        let mut hist = vec![0; bins];
        if let Some(b) = classify(coeffs[0]) {
            hist[b] += 1;
        }
        return hist;
    }
    if split.outer == 0 {
        split.outer_coeffs(&m, &[], &mut coeffs);
        const CHUNK: u64 = 1 << 16;
        return (0..n.div_ceil(CHUNK))
            .into_par_iter()
            .map(|k| {
                let mut hist = vec![0; bins];
                inner(&coeffs, k * CHUNK..((k + 1) * CHUNK).min(n), &mut hist);
                hist
            })
            .reduce(|| vec![0; bins], add);
    }
    (0..n)
        .into_par_iter()
        .map(|lead| {
            let mut point = vec![0u64; split.outer];
            point[0] = lead;
            let mut coeffs = Vec::new();
            let mut hist = vec![0; bins];
            loop {
                split.outer_coeffs(&m, &point, &mut coeffs);
                inner(&coeffs, 0..n, &mut hist);
                if !odometer(&mut point[1..], n) {
                    break;
                }
            }
            hist
        })
        .reduce(|| vec![0; bins], add)
}

/// Advances a jet point (list of coefficient vectors) as one odometer.
fn jet_odometer(point: &mut [Vec<u64>], p: u64) -> bool {
    for jet in point.iter_mut() {
        if odometer(jet, p) {
            return true;
        }
    }
    false
}

/// Counts jet points over `F_p[t]/(t^len)` (in the common variables of
/// `polys`) for which `accept` holds on the vector of capped orders.
fn jet_sweep(polys: &[JetPoly], ar: JetArith, accept: impl Fn(&[usize]) -> bool + Sync) -> u64 {
    let p = ar.p.get();
    let len = ar.len;
    let outer = polys[0].outer;
    let has_inner = polys[0].has_inner;
    let npolys = polys.len();

    let count_outer = |outer_point: &[Vec<u64>], bufs: &mut JetBufs| -> u64 {
        for (poly, c) in polys.iter().zip(bufs.coeffs.iter_mut()) {
            poly.outer_coeffs(&ar, outer_point, c);
        }
        if !has_inner {
            let ords: Vec<usize> = bufs.coeffs.iter().map(|c| JetArith::ord(&c[0])).collect();
            return accept(&ords) as u64;
        }
        // generators constant in the inner variable are evaluated once
        let mut ords = vec![len; npolys];
        let mut varying = Vec::new();
        for (i, poly) in polys.iter().enumerate() {
            if poly.inner_degree() == 0 {
                ords[i] = JetArith::ord(&bufs.coeffs[i][0]);
            } else {
                varying.push(i);
            }
        }
        if varying.is_empty() {
            return accept(&ords) as u64 * p.pow(len as u32);
        }
        let mut x = vec![0u64; len];
        let mut total = 0;
        loop {
            for &i in &varying {
                ar.horner(&bufs.coeffs[i], &x, &mut bufs.acc, &mut bufs.tmp);
                ords[i] = JetArith::ord(&bufs.acc);
            }
            total += accept(&ords) as u64;
            if !odometer(&mut x, p) {
                break;
            }
        }
        total
    };

    if outer == 0 {
        let mut bufs = JetBufs::new(npolys, len);
        return count_outer(&[], &mut bufs);
    }
    let leads = p.pow(len as u32);
    (0..leads)
        .into_par_iter()
        .map(|lead| {
            let mut bufs = JetBufs::new(npolys, len);
            let mut point = vec![vec![0u64; len]; outer];
            let mut l = lead;
            for c in point[0].iter_mut() {
                *c = l % p;
                l /= p;
            }
            let mut total = 0;
            loop {
                total += count_outer(&point, &mut bufs);
                if !jet_odometer(&mut point[1..], p) {
                    break;
                }
            }
            total
        })
        .sum()
}

struct JetBufs {
    coeffs: Vec<Vec<Vec<u64>>>,
    acc: Vec<u64>,
    tmp: Vec<u64>,
}

impl JetBufs {
    fn new(npolys: usize, len: usize) -> Self {
        JetBufs {
            coeffs: vec![Vec::new(); npolys],
            acc: vec![0; len],
            tmp: vec![0; len],
        }
    }
}

/// Level-set measures `mu(v_p(f) = i)` for `i < level` and the tail
/// `mu(v_p(f) >= level)`, from a valuation histogram. They sum to 1.
pub fn level_set_measures(hist: &[u64], p: u64, d: usize) -> Vec<Rational> {
    let level = hist.len() as u32 - 1;
    let denom = BigInt::from(p).pow(d as u32 * level);
    hist.iter()
        .map(|&c| Rational::new(BigInt::from(c), denom.clone()))
        .collect()
}

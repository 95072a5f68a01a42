use crate::error::{Result, ZetaError};
use crate::MultiPoly;

use super::prime::is_prime;
use super::residue_u64;

/// `F_p[t]/(t^m)`. An element is a coefficient vector of length `m`, lowest
/// degree first, with entries in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeriesRing {
    p: u64,
    m: usize,
}

impl TruncatedSeriesRing {
    pub fn new(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(ZetaError::NotPrime(p));
        }
        if m == 0 {
            return Err(ZetaError::InvalidLevel("truncation length must be at least 1".into()));
        }
        Ok(TruncatedSeriesRing { p, m })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.m]
    }

    /// The element with the given low-order coefficients (reduced mod p,
    /// padded or truncated to length m).
    pub fn element(&self, coeffs: &[i64]) -> Vec<u64> {
        let mut out = self.zero();
        for (o, &c) in out.iter_mut().zip(coeffs) {
            *o = c.rem_euclid(self.p as i64) as u64;
        }
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().take(self.m - i).enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % self.p as u128) as u64;
            }
        }
        out
    }

    /// t-adic order; `None` for the zero element.
    pub fn ord(&self, a: &[u64]) -> Option<usize> {
        a.iter().position(|&c| c != 0)
    }

    pub fn eval_series(&self, f: &MultiPoly, point: &[Vec<u64>]) -> Result<Vec<u64>> {
        if point.len() != f.arity() {
            return Err(ZetaError::ArityMismatch {
                expected: f.arity(),
                got: point.len(),
            });
        }
        let mut acc = self.zero();
        for (exps, c) in f.terms() {
            let mut term = self.zero();
            term[0] = residue_u64(c, self.p);
            for (x, &k) in point.iter().zip(exps) {
                for _ in 0..k {
                    term = self.mul(&term, x);
                }
            }
            acc = self.add(&acc, &term);
        }
        Ok(acc)
    }
}

//! Compiled evaluators for the enumeration loops.
//!
//! A polynomial in `d` variables is split as `sum_k c_k(x_1..x_{d-1}) x_d^k`.
//! The outer coefficients are evaluated once per outer point and the
//! innermost variable is swept with Horner's rule.

use crate::ring::residue_u64;
use crate::MultiPoly;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Modulus {
    n: u64,
    small: bool,
}

impl Modulus {
    pub(crate) fn new(n: u64) -> Self {
        Modulus {
            n,
            small: n <= u32::MAX as u64,
        }
    }

    pub(crate) fn get(&self) -> u64 {
        self.n
    }

    #[inline(always)]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if self.small {
            a * b % self.n
        } else {
            (a as u128 * b as u128 % self.n as u128) as u64
        }
    }

    #[inline(always)]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        if s >= self.n as u128 {
            (s - self.n as u128) as u64
        } else {
            s as u64
        }
    }
}

/// A polynomial with coefficients reduced mod `n`.
#[derive(Clone, Debug)]
pub(crate) struct ModPoly {
    terms: Vec<(u64, Vec<u32>)>,
}

impl ModPoly {
    fn eval(&self, m: &Modulus, point: &[u64]) -> u64 {
        let mut acc = 0;
        for (c, exps) in &self.terms {
            let mut t = *c;
            for (&x, &k) in point.iter().zip(exps) {
                for _ in 0..k {
                    t = m.mul(t, x);
                }
            }
            acc = m.add(acc, t);
        }
        acc
    }
}

/// `f` split along its last variable, reduced mod `n`.
#[derive(Clone, Debug)]
pub(crate) struct SplitPoly {
    /// Number of outer variables (`d - 1`, or 0 when `d = 0`).
    pub(crate) outer: usize,
    pub(crate) has_inner: bool,
    coeffs: Vec<ModPoly>,
}

impl SplitPoly {
    pub(crate) fn new(f: &MultiPoly, n: u64) -> Self {
        let d = f.arity();
        let has_inner = d > 0;
        let outer = d.saturating_sub(1);
        let inner_deg = if has_inner {
            f.max_exponents()[d - 1] as usize
        } else {
            0
        };
        let mut coeffs = vec![ModPoly { terms: Vec::new() }; inner_deg + 1];
        for (exps, c) in f.terms() {
            let r = residue_u64(c, n);
            if r == 0 {
                continue;
            }
            let k = if has_inner { exps[d - 1] as usize } else { 0 };
            coeffs[k].terms.push((r, exps[..outer].to_vec()));
        }
        SplitPoly {
            outer,
            has_inner,
            coeffs,
        }
    }

    /// Inner-variable coefficients at an outer point.
    pub(crate) fn outer_coeffs(&self, m: &Modulus, outer_point: &[u64], out: &mut Vec<u64>) {
        out.clear();
        out.extend(self.coeffs.iter().map(|c| c.eval(m, outer_point)));
    }

    #[inline(always)]
    pub(crate) fn horner(m: &Modulus, coeffs: &[u64], x: u64) -> u64 {
        let mut acc = 0;
        for &c in coeffs.iter().rev() {
            acc = m.add(m.mul(acc, x), c);
        }
        acc
    }
}

/// Arithmetic in `F_p[t]/(t^len)` on fixed-length slices.
#[derive(Clone, Copy, Debug)]
pub(crate) struct JetArith {
    pub(crate) p: Modulus,
    pub(crate) len: usize,
}

impl JetArith {
    /// `out = a * b` truncated; `out` must not alias the inputs.
    #[inline]
    pub(crate) fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        out.iter_mut().for_each(|o| *o = 0);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b[..self.len - i].iter().enumerate() {
                if y != 0 {
                    out[i + j] = self.p.add(out[i + j], self.p.mul(x, y));
                }
            }
        }
    }

    /// Horner evaluation of `sum_k coeffs[k] x^k`, each coefficient a jet.
    pub(crate) fn horner(&self, coeffs: &[Vec<u64>], x: &[u64], acc: &mut [u64], tmp: &mut [u64]) {
        acc.iter_mut().for_each(|a| *a = 0);
        for c in coeffs.iter().rev() {
            self.mul_into(acc, x, tmp);
            for ((a, t), ci) in acc.iter_mut().zip(tmp.iter()).zip(c) {
                *a = self.p.add(*t, *ci);
            }
        }
    }

    pub(crate) fn ord(v: &[u64]) -> usize {
        v.iter().position(|&c| c != 0).unwrap_or(v.len())
    }
}

/// `f` split along its last variable with jet-valued outer coefficients.
#[derive(Clone, Debug)]
pub(crate) struct JetPoly {
    /// Per inner power k: terms (coefficient mod p, outer exponents).
    coeffs: Vec<Vec<(u64, Vec<u32>)>>,
    pub(crate) outer: usize,
    pub(crate) has_inner: bool,
}

impl JetPoly {
    pub(crate) fn new(f: &MultiPoly, p: u64) -> Self {
        let split = SplitPoly::new(f, p);
        JetPoly {
            coeffs: split.coeffs.into_iter().map(|c| c.terms).collect(),
            outer: split.outer,
            has_inner: split.has_inner,
        }
    }

    pub(crate) fn inner_degree(&self) -> usize {
        let mut k = self.coeffs.len();
        while k > 0 && self.coeffs[k - 1].is_empty() {
            k -= 1;
        }
        k.saturating_sub(1)
    }

    /// Jet coefficients of the inner variable at an outer jet point.
    pub(crate) fn outer_coeffs(&self, ar: &JetArith, outer_point: &[Vec<u64>], out: &mut Vec<Vec<u64>>) {
        out.resize(self.coeffs.len(), vec![0; ar.len]);
        let mut term = vec![0; ar.len];
        let mut tmp = vec![0; ar.len];
        for (slot, terms) in out.iter_mut().zip(&self.coeffs) {
            slot.iter_mut().for_each(|s| *s = 0);
            for (c, exps) in terms {
                term.iter_mut().for_each(|t| *t = 0);
                term[0] = *c;
                for (x, &k) in outer_point.iter().zip(exps) {
                    for _ in 0..k {
                        ar.mul_into(&term, x, &mut tmp);
                        std::mem::swap(&mut term, &mut tmp);
                    }
                }
                for (s, t) in slot.iter_mut().zip(&term) {
                    *s = ar.p.add(*s, *t);
                }
            }
        }
    }
}

/// Advances a little-endian digit vector in base `base`; false on wraparound.
#[inline]
pub(crate) fn odometer(digits: &mut [u64], base: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

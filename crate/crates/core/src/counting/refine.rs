//! Exact level-set measures `mu(v_p(f) = i)` by recursive refinement of
//! p-adic balls `B = a + p^k Z_p^d`.
//!
//! All Taylor coefficients of an integer polynomial are integral, so
//! `f(a + p^k y) = f(a) + p^k (...)`. Hence on `B`:
//! * if `w = v_p(f(a)) < k`, the valuation of `f` is constantly `w`;
//! * if `j = min_i v_p(df/dx_i (a)) < k` and `w < k + j`, it is constantly `w`;
//! * if `j < k` and `w >= k + j`, then `f(a + p^k y) = p^(k+j) h(y)` with `h`
//!   an isometry in the coordinate attaining `j`, so `v_p(f) = k + j + r`
//!   on a subset of relative measure `(1 - 1/p) p^-r`.
//!
//! Any other ball is split into its `p^d` children. Balls still unresolved
//! at depth `levels` lie entirely in `v_p(f) >= levels`.

use num_bigint::BigInt;

use super::eval::{odometer, Modulus, SplitPoly};
use crate::error::{Result, ZetaError};
use crate::{MultiPoly, Rational};

struct Evaluator {
    m: Modulus,
    split: SplitPoly,
    buf: Vec<u64>,
}

impl Evaluator {
    fn new(f: &MultiPoly, n: u64) -> Self {
        Evaluator {
            m: Modulus::new(n),
            split: SplitPoly::new(f, n),
            buf: Vec::new(),
        }
    }

    fn eval(&mut self, point: &[u64]) -> u64 {
        let d = point.len();
        if !self.split.has_inner {
            self.split.outer_coeffs(&self.m, &[], &mut self.buf);
            return self.buf[0];
        }
        self.split.outer_coeffs(&self.m, &point[..d - 1], &mut self.buf);
        SplitPoly::horner(&self.m, &self.buf, point[d - 1])
    }
}

fn valuation(mut v: u64, p: u64, cap: u32) -> u32 {
    if v == 0 {
        return cap;
    }
    let mut e = 0;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    e.min(cap)
}

/// Accumulates measures `c * p^-e` over the common denominator `p^top`.
struct Tally {
    pows: Vec<BigInt>,
    top: u32,
    numer: Vec<BigInt>,
}

impl Tally {
    fn new(p: u64, top: u32, bins: usize) -> Self {
        let base = BigInt::from(p);
        let mut pows = vec![BigInt::from(1)];
        for i in 0..top as usize {
            let next = &pows[i] * &base;
            pows.push(next);
        }
        Tally {
            pows,
            top,
            numer: vec![BigInt::from(0); bins],
        }
    }

    fn add(&mut self, bin: usize, coeff: u64, exp: u32) {
        let bin = bin.min(self.numer.len() - 1);
        self.numer[bin] += &self.pows[(self.top - exp) as usize] * coeff;
    }

    fn finish(self) -> Vec<Rational> {
        let denom = self.pows[self.top as usize].clone();
        self.numer
            .into_iter()
            .map(|n| Rational::new(n, denom.clone()))
            .collect()
    }
}

pub(super) fn level_sets(f: &MultiPoly, p: u64, levels: u32, budget: u64) -> Result<Vec<Rational>> {
    let n = (p as u128)
        .checked_pow(levels)
        .filter(|&n| n <= u64::MAX as u128)
        .ok_or_else(|| ZetaError::InvalidLevel(format!("{p}^{levels} does not fit in 64 bits")))?
        as u64;
    let d = f.arity();
    let mut fe = Evaluator::new(f, n);
    let mut partials: Vec<Evaluator> = (0..d).map(|i| Evaluator::new(&f.derivative(i), n)).collect();

    let du = d as u32;
    let top = du * levels + levels + 1;
    let mut tally = Tally::new(p, top, levels as usize + 1);
    let tail = levels as usize;

    let mut visited: u64 = 0;
    let mut stack: Vec<(Vec<u64>, u32)> = vec![(vec![0; d], 0)];
    while let Some((a, k)) = stack.pop() {
        visited += 1;
        if visited > budget {
            return Err(ZetaError::BudgetExceeded {
                required: format!("more than {budget} balls"),
                budget,
            });
        }
        let ball = du * k;
        if k > 0 {
            let w = valuation(fe.eval(&a), p, levels);
            if w < k {
                tally.add(w as usize, 1, ball);
                continue;
            }
            let j = partials
                .iter_mut()
                .map(|e| valuation(e.eval(&a), p, levels))
                .min()
                .unwrap_or(levels);
            if j < k {
                if w < k + j {
                    tally.add(w as usize, 1, ball);
                } else {
                    let start = k + j;
                    for r in 0..levels.saturating_sub(start) {
                        tally.add((start + r) as usize, p - 1, ball + r + 1);
                    }
                    let rest = levels.saturating_sub(start);
                    tally.add(tail, 1, ball + rest);
                }
                continue;
            }
            if k >= levels {
                tally.add(tail, 1, ball);
                continue;
            }
        }
        let step = p.pow(k);
        let mut digits = vec![0u64; d];
        loop {
            let child: Vec<u64> = a.iter().zip(&digits).map(|(x, b)| x + b * step).collect();
            stack.push((child, k + 1));
            if !odometer(&mut digits, p) {
                break;
            }
        }
    }
    Ok(tally.finish())
}

//! Bounds for the number `Ñ_m(f)` of residues mod `p^m` that are reductions
//! of exact solutions in `Z_p^d`.
//!
//! A lift `a` mod `p^probe` certifies its residue when either
//! * `f(a) = 0` over `Z` for the canonical representative of `a`, or
//! * with `k = min_i v_p(df/dx_i (a)) < probe` and `w` a lower bound for
//!   `v_p(f(a))` (`probe` when `f(a) = 0 mod p^probe`), `w > 2k` and
//!   `w - k >= m`. Hensel's lemma along the coordinate attaining `k` then
//!   gives an exact root congruent to `a` modulo `p^(w-k)`.
//!
//! The upper bound counts residues with some lift solving `f = 0 mod p^probe`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::eval::{odometer, Modulus, SplitPoly};
use crate::MultiPoly;

struct PointEval {
    m: Modulus,
    split: SplitPoly,
    buf: Vec<u64>,
}

impl PointEval {
    fn new(f: &MultiPoly, n: u64) -> Self {
        PointEval {
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
    e
}

pub(super) fn bounds(f: &MultiPoly, p: u64, m: u32, probe: u32) -> (u64, u64) {
    let n = p.pow(probe);
    let residue_mod = p.pow(m);
    let d = f.arity();
    let mut fe = PointEval::new(f, n);
    let mut partials: Vec<PointEval> = (0..d).map(|i| PointEval::new(&f.derivative(i), n)).collect();

    let mut upper: HashSet<u64> = HashSet::new();
    let mut lower: HashSet<u64> = HashSet::new();
    let mut point = vec![0u64; d];
    loop {
        let v = fe.eval(&point);
        let w = valuation(v, p, probe);
        if w > 0 {
            let key = point
                .iter()
                .rev()
                .fold(0u64, |acc, &x| acc * residue_mod + x % residue_mod);
            if v == 0 {
                upper.insert(key);
            }
            if !lower.contains(&key) && certified(f, &point, v, w, m, probe, p, &mut partials) {
                lower.insert(key);
            }
        }
        if !odometer(&mut point, n) {
            break;
        }
    }
    (lower.len() as u64, upper.len() as u64)
}

#[allow(clippy::too_many_arguments)]
fn certified(
    f: &MultiPoly,
    point: &[u64],
    value: u64,
    w: u32,
    m: u32,
    probe: u32,
    p: u64,
    partials: &mut [PointEval],
) -> bool {
    let k = partials
        .iter_mut()
        .map(|de| valuation(de.eval(point), p, probe))
        .min()
        .unwrap_or(probe);
    if k < probe && w > 2 * k && w - k >= m {
        return true;
    }
    if value == 0 {
        let lift: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        return f
            .eval_with(&lift, |c| c.clone())
            .map(|z| z.is_zero())
            .unwrap_or(false);
    }
    false
}

/// True when `f mod p` is nonzero and `f` and all its partial derivatives
/// have no common zero over `F_p` (checked by enumeration of `F_p^d`).
pub fn is_smooth_mod_p(f: &MultiPoly, p: u64) -> bool {
    let d = f.arity();
    if f.terms().all(|(_, c)| (c % BigInt::from(p)).is_zero()) {
        return false;
    }
    let mut fe = PointEval::new(f, p);
    let mut partials: Vec<PointEval> = (0..d).map(|i| PointEval::new(&f.derivative(i), p)).collect();
    let mut point = vec![0u64; d];
    loop {
        if fe.eval(&point) == 0 && partials.iter_mut().all(|de| de.eval(&point) == 0) {
            return false;
        }
        if !odometer(&mut point, p) {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::counting::{is_smooth_mod_p, Counter};
    use crate::parse::parse_poly;

    #[test]
    fn smooth_parabola_bounds_are_exact() {
        let g = parse_poly("y - x^2", Some(&["x", "y"])).unwrap();
        assert_eq!(Counter::default().serre_oesterle_bounds(&g, 3, 2, 3).unwrap(), (9, 9));
        assert_eq!(Counter::default().serre_oesterle_bounds(&g, 3, 2, 4).unwrap(), (9, 9));
    }

    #[test]
    fn double_root_only_lifts_zero() {
        let f = parse_poly("x^2", None).unwrap();
        let c = Counter::default();
        for probe in [5, 6] {
            assert_eq!(c.serre_oesterle_bounds(&f, 5, 2, probe).unwrap(), (1, 1));
        }
        assert_eq!(c.count_congruence(&f, 5, 2).unwrap(), 5);
    }

    #[test]
    fn unit_constant_has_no_solutions() {
        let f = parse_poly("1", None).unwrap();
        assert_eq!(Counter::default().serre_oesterle_bounds(&f, 7, 1, 2).unwrap(), (0, 0));
    }

    #[test]
    fn probe_must_exceed_level() {
        let f = parse_poly("x", None).unwrap();
        assert!(Counter::default().serre_oesterle_bounds(&f, 5, 2, 2).is_err());
    }

    #[test]
    fn cusp_bounds_are_ordered() {
        let h = parse_poly("y^2 - x^3", Some(&["x", "y"])).unwrap();
        let (lo, hi) = Counter::default().serre_oesterle_bounds(&h, 5, 1, 3).unwrap();
        assert!(lo <= hi);
        assert!(hi <= Counter::default().count_congruence(&h, 5, 1).unwrap());
    }

    #[test]
    fn smoothness() {
        let xy = |s| parse_poly(s, Some(&["x", "y"])).unwrap();
        assert!(is_smooth_mod_p(&xy("y - x^2"), 5));
        assert!(!is_smooth_mod_p(&xy("y^2 - x^3"), 5));
        assert!(is_smooth_mod_p(&xy("x*y - 1"), 3));
        assert!(!is_smooth_mod_p(&xy("5*x"), 5));
    }
}

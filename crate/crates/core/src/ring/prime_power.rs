use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};

use super::prime::is_prime;
use crate::error::{Result, ZetaError};
use crate::MultiPoly;

/// The finite local ring `Z/p^m`. Elements are canonical residues in
/// `[0, p^m)`, which is also the lifting section used by [`vp`] and [`acp`].
///
/// [`vp`]: PrimePowerRing::vp
/// [`acp`]: PrimePowerRing::acp
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerRing {
    p: u64,
    m: u32,
    modulus: BigUint,
}

impl PrimePowerRing {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(ZetaError::NotPrime(p));
        }
        if m == 0 {
            return Err(ZetaError::InvalidLevel("level must be at least 1".into()));
        }
        Ok(PrimePowerRing {
            p,
            m,
            modulus: BigUint::from(p).pow(m),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// Reduces any integer to its canonical residue.
    pub fn reduce(&self, z: &BigInt) -> BigUint {
        let n = BigInt::from(self.modulus.clone());
        z.mod_floor(&n).to_biguint().expect("mod_floor is nonnegative")
    }

    pub fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.modulus
    }

    pub fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + &self.modulus - (b % &self.modulus)) % &self.modulus
    }

    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.modulus
    }

    pub fn neg(&self, a: &BigUint) -> BigUint {
        self.sub(&BigUint::zero(), a)
    }

    /// p-adic valuation of a residue; `None` stands for infinity (z = 0).
    pub fn vp(&self, z: &BigUint) -> Option<u32> {
        let mut z = z % &self.modulus;
        if z.is_zero() {
            return None;
        }
        let p = BigUint::from(self.p);
        let mut e = 0;
        loop {
            let (q, r) = z.div_rem(&p);
            if !r.is_zero() {
                return Some(e);
            }
            z = q;
            e += 1;
        }
    }

    /// Reduced angular component: `z / p^vp(z) mod p`, and 0 at 0.
    pub fn acp(&self, z: &BigUint) -> u64 {
        let z = z % &self.modulus;
        match self.vp(&z) {
            None => 0,
            Some(e) => {
                let unit = z / BigUint::from(self.p).pow(e);
                (unit % self.p).to_u64().expect("residue below p")
            }
        }
    }

    pub fn eval_mod(&self, f: &MultiPoly, point: &[BigUint]) -> Result<BigUint> {
        if point.len() != f.arity() {
            return Err(ZetaError::ArityMismatch {
                expected: f.arity(),
                got: point.len(),
            });
        }
        let mut acc = BigUint::zero();
        for (exps, c) in f.terms() {
            let mut term = self.reduce(c);
            for (x, &k) in point.iter().zip(exps) {
                if k > 0 {
                    term = term * x.modpow(&BigUint::from(k), &self.modulus) % &self.modulus;
                }
            }
            acc = (acc + term) % &self.modulus;
        }
        Ok(acc)
    }

    pub fn one(&self) -> BigUint {
        BigUint::one() % &self.modulus
    }
}

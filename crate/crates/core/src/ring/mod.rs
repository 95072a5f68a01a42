//! Exact arithmetic: finite local rings, polynomials and Laurent
//! polynomials in the Lefschetz class.

mod laurent;
mod multipoly;
mod prime;
mod prime_power;
mod truncated;
mod unipoly;

pub use laurent::{HodgeDeligne, Laurent};
pub use multipoly::MultiPolynomial;
pub use prime::is_prime;
pub use prime_power::PrimePowerRing;
pub use truncated::TruncatedSeriesRing;
pub use unipoly::{PolyDisplay, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::ToPrimitive;

/// Canonical residue of an integer modulo `n`.
pub(crate) fn residue_u64(c: &BigInt, n: u64) -> u64 {
    c.mod_floor(&BigInt::from(n))
        .to_u64()
        .expect("residue fits below the modulus")
}

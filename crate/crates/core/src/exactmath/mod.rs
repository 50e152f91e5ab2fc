//! Exact integer, modular and polynomial arithmetic shared by every other module.

mod polymod;
mod primes;

pub use polymod::{roots_mod_p, PolyModP};
pub use primes::{
    factor, factor_u64, gcd_u64, inv_mod, is_prime, is_squarefree, isqrt_u64, jacobi,
    kronecker_prime, mul_mod, order_dividing, pow_mod, prime_divisors, primes_in_progression,
    primitive_root, sqrt_mod, discrete_log, PrimePower,
};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision signed integer used throughout the crate.
pub type Integer = BigInt;

/// Natural logarithm of `|n|` for `n != 0`, valid far beyond the `f64` range.
pub fn bigint_ln(n: &BigInt) -> f64 {
    let a = n.abs();
    let bits = a.bits();
    if bits <= 1000 {
        return a.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (&a >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `floor(sqrt(n))` for `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(n.sign() != Sign::Minus);
    if n.is_zero() {
        return BigInt::zero();
    }
    n.sqrt()
}

/// Exact square root if `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    (&r * &r == *n).then_some(r)
}

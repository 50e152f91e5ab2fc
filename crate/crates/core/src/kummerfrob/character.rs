use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::{inv_mod, is_prime, kronecker_prime, mul_mod, pow_mod, primitive_root, sqrt_mod};
use crate::quadfield::QuadUnit;

/// Quadratic integer `(x + y sqrt D) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadInteger {
    #[serde(with = "crate::bigstr")]
    pub x: BigInt,
    #[serde(with = "crate::bigstr")]
    pub y: BigInt,
}

impl QuadInteger {
    pub fn rational(n: i64) -> Self {
        QuadInteger { x: BigInt::from(2 * n), y: BigInt::zero() }
    }

    pub fn norm(&self, disc: i64) -> BigInt {
        (&self.x * &self.x - BigInt::from(disc) * &self.y * &self.y) / 4
    }

    pub fn mul(&self, o: &Self, disc: i64) -> Self {
        // ((x1 x2 + D y1 y2) + (x1 y2 + x2 y1) sqrt D) / 4
        let x = &self.x * &o.x + BigInt::from(disc) * &self.y * &o.y;
        let y = &self.x * &o.y + &o.x * &self.y;
        QuadInteger { x: x / 2, y: y / 2 }
    }

    /// Image in `F_p` under `sqrt D -> root`.
    pub fn reduce(&self, p: u64, root: u64) -> u64 {
        let pb = BigInt::from(p);
        let x = self.x.mod_floor(&pb).to_u64().unwrap();
        let y = self.y.mod_floor(&pb).to_u64().unwrap();
        let num = (x + mul_mod(y, root, p)) % p;
        mul_mod(num, inv_mod(2 % p, p).unwrap(), p)
    }
}

impl From<&QuadUnit> for QuadInteger {
    fn from(u: &QuadUnit) -> Self {
        QuadInteger { x: u.x.clone(), y: u.y.clone() }
    }
}

/// Value of `eta^((p-1)/l^n)` in the cyclic group `mu_{l^n}` of `F_p^*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCharacter {
    pub p: u64,
    pub ell: u64,
    pub n: u32,
    /// Element of `F_p^*`.
    pub value: u64,
    /// `value = zeta^exponent`, `zeta = g^((p-1)/l^n)` for the least primitive root `g`.
    pub exponent: u64,
    pub order: u64,
}

/// Square root `r` of `D` mod `p` with `0 < r < p/2`.
pub fn standard_root(disc: i64, p: u64) -> Option<u64> {
    let a = disc.rem_euclid(p as i64) as u64;
    if a == 0 {
        return None;
    }
    let r = sqrt_mod(a, p)?;
    Some(r.min(p - r))
}

/// `p ≡ 1 mod l^n`, and `mod 2^(n+1)` when `l = 2` and `sqrt(-1)` radicals are included.
pub fn is_split_cyclotomic(p: u64, ell: u64, n: u32, includes_sqrt_units: bool) -> bool {
    let Some(mut m) = ell.checked_pow(n) else { return false };
    if includes_sqrt_units && ell == 2 {
        m *= 2;
    }
    p % m == 1
}

/// Exponent `e` with `zeta^e = v`, by Pohlig-Hellman in the cyclic group of order `l^n`.
fn mu_log(zeta: u64, v: u64, ell: u64, n: u32, p: u64) -> Result<u64> {
    let ln = ell.pow(n);
    let gamma = pow_mod(zeta, ln / ell, p);
    let zinv = inv_mod(zeta, p).unwrap();
    let mut e = 0u64;
    let mut lk = 1u64;
    for k in 0..n {
        let w = mul_mod(v, pow_mod(zinv, e, p), p);
        let h = pow_mod(w, ell.pow(n - 1 - k), p);
        let d = (0..ell)
            .find(|&d| pow_mod(gamma, d, p) == h)
            .ok_or_else(|| crate::Error::Inconsistent("value outside mu_{l^n}".into()))?;
        e += d * lk;
        lk *= ell;
    }
    Ok(e)
}

/// Residue character of `eta` at the prime of `Q(sqrt D)` fixed by `root`.
pub fn residue_character(disc: i64, eta: &QuadInteger, p: u64, ell: u64, n: u32, root: u64) -> Result<ResidueCharacter> {
    if !is_prime(p) || p == 2 || kronecker_prime(disc, p) != 1 {
        return invalid(format!("{p} does not split in Q(sqrt {disc})"));
    }
    if mul_mod(root, root, p) != disc.rem_euclid(p as i64) as u64 {
        return invalid(format!("{root} is not a square root of {disc} mod {p}"));
    }
    if eta.norm(disc).is_multiple_of(&BigInt::from(p)) {
        return invalid(format!("{p} divides the norm of eta"));
    }
    let ln = ell.checked_pow(n).filter(|&m| (p - 1).is_multiple_of(m));
    let Some(ln) = ln else {
        return invalid(format!("{p} is not 1 mod {ell}^{n}"));
    };
    let e0 = eta.reduce(p, root);
    let value = pow_mod(e0, (p - 1) / ln, p);
    let zeta = pow_mod(primitive_root(p), (p - 1) / ln, p);
    let exponent = mu_log(zeta, value, ell, n, p)?;
    let mut order = ln;
    let mut e = exponent;
    if e == 0 {
        order = 1;
    } else {
        while e % ell == 0 {
            e /= ell;
            order /= ell;
        }
    }
    Ok(ResidueCharacter { p, ell, n, value, exponent, order })
}

//! Splitting conditions and power-residue characters of units.

mod character;
mod hk;

pub use character::{is_split_cyclotomic, residue_character, standard_root, QuadInteger, ResidueCharacter};
pub use hk::{h_k_constant, sqrt2_layer_unramified, HkConstant};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::abgroup::GroupElement;
use crate::error::{invalid, Result};
use crate::exactmath::{inv_mod, is_prime, kronecker_prime, mul_mod};
use crate::nf::{Ideal, PrimeIdeal};
use crate::quadfield::{QIdeal, QuadUnit, QuadraticField, RayClassGroup};

/// Largest supported `l^n`.
pub const MAX_LEVEL: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub ell: u64,
    /// Ramification exponent: `e_p(F/Q) = l^n`.
    pub n: u32,
    /// Character defect.
    pub h: u32,
    pub h_k: u32,
    pub bound: u64,
    /// Informational only; never computed.
    pub delta_m: Option<u64>,
    /// Informational only; never computed.
    pub c_km: Option<u64>,
}

impl SearchParams {
    pub fn new(ell: u64, n: u32, h: u32, h_k: u32, bound: u64) -> Result<Self> {
        if ell != 2 && ell != 3 {
            return invalid(format!("unsupported prime l = {ell}"));
        }
        if h >= n {
            return invalid(format!("need n > h, got n = {n}, h = {h}"));
        }
        if ell.checked_pow(n).is_none_or(|m| m > MAX_LEVEL) {
            return invalid(format!("{ell}^{n} exceeds the supported level {MAX_LEVEL}"));
        }
        Ok(SearchParams { ell, n, h, h_k, bound, delta_m: None, c_km: None })
    }

    /// Parameters with `h = min(h_K, n - 1)`.
    pub fn with_default_h(ell: u64, n: u32, h_k: u32, bound: u64) -> Result<Self> {
        Self::new(ell, n, h_k.min(n.saturating_sub(1)), h_k, bound)
    }

    pub fn level(&self) -> u64 {
        self.ell.pow(self.n)
    }
}

/// First failed condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// `p ≢ 1 mod l^n`.
    Cyclotomic,
    /// `p` not split in `K`.
    NotSplit,
    /// `-1` not an `l^n`-th power mod `p`.
    UnitRadical,
    /// Wrong ray class.
    Class,
    /// Wrong character order of `eps`.
    Character,
    /// Target not an `l^h`-th power.
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub splitting: bool,
    pub class: bool,
    pub character: bool,
    pub power: bool,
}

impl Checks {
    pub fn all(&self) -> bool {
        self.splitting && self.class && self.character && self.power
    }
}

/// A prime `p` satisfying all four conditions for a target ray class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateCertificate {
    pub d: i64,
    pub modulus: Vec<QIdeal>,
    pub invariants: Vec<u64>,
    pub target: GroupElement,
    pub ell: u64,
    pub n: u32,
    pub h: u32,
    pub h_k: u32,
    pub p: u64,
    pub root: u64,
    pub prime: QIdeal,
    pub eps: QuadUnit,
    pub char_eps: ResidueCharacter,
    pub char_minus_one: ResidueCharacter,
    pub checks: Checks,
    pub bound: Option<u64>,
}

/// The prime of `K` above `p` on which `sqrt D` reduces to `root`.
pub fn prime_above(k: &QuadraticField, p: u64, root: u64) -> PrimeIdeal {
    let f = k.field();
    let t = k.disc().rem_euclid(2) as u64;
    let c = mul_mod((t + root) % p, inv_mod(2, p).unwrap(), p);
    let ideal = Ideal::from_gens(f, &[f.from_int(&BigInt::from(p)), vec![-BigInt::from(c), BigInt::from(1)]]);
    PrimeIdeal { ideal, p, e: 1, f: 1 }
}

/// Splitting, class, character and power conditions for `p`, in that order.
pub fn check_conditions(
    k: &QuadraticField,
    rcg: &RayClassGroup,
    target: &[u64],
    eps: &QuadUnit,
    p: u64,
    params: &SearchParams,
) -> Result<std::result::Result<CandidateCertificate, Rejection>> {
    let disc = k.disc();
    if !is_prime(p) || p == 2 || p == params.ell || disc % p as i64 == 0 || rcg.modulus.rational_primes().contains(&p) {
        return invalid(format!("{p} divides 2 l disc(K) N(m) or is not prime"));
    }
    if !is_split_cyclotomic(p, params.ell, params.n, false) {
        return Ok(Err(Rejection::Cyclotomic));
    }
    if kronecker_prime(disc, p) != 1 {
        return Ok(Err(Rejection::NotSplit));
    }
    if !is_split_cyclotomic(p, params.ell, params.n, true) {
        return Ok(Err(Rejection::UnitRadical));
    }
    let root = standard_root(disc, p).expect("split prime has a root");
    let prime = prime_above(k, p, root);
    if rcg.dlog(k, &prime.ideal)? != target {
        return Ok(Err(Rejection::Class));
    }
    let char_eps = residue_character(disc, &QuadInteger::from(eps), p, params.ell, params.n, root)?;
    if char_eps.order != params.ell.pow(params.n - params.h) {
        return Ok(Err(Rejection::Character));
    }
    if !rcg.group.power_subgroup_contains(target, params.ell.pow(params.h)) {
        return Ok(Err(Rejection::Power));
    }
    let char_minus_one = residue_character(disc, &QuadInteger::rational(-1), p, params.ell, params.n, root)?;
    Ok(Ok(CandidateCertificate {
        d: k.d(),
        modulus: rcg.modulus.primes.iter().map(|q| k.standard_form(&q.ideal)).collect(),
        invariants: rcg.group.invariants().to_vec(),
        target: target.to_vec(),
        ell: params.ell,
        n: params.n,
        h: params.h,
        h_k: params.h_k,
        p,
        root,
        prime: k.standard_form(&prime.ideal),
        eps: eps.clone(),
        char_eps,
        char_minus_one,
        checks: Checks { splitting: true, class: true, character: true, power: true },
        bound: None,
    }))
}

#[cfg(test)]
mod tests;

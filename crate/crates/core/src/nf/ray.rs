//! Helpers shared by ray class computations: ideal reduction and unit
//! adjustment of generators modulo a squarefree modulus.

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::{Elem, NumberField};
use super::ideal::Ideal;
use super::lattice::ScaledLattice;
use super::principal::{unit_pow, UnitGroup};
use super::residue::UnitsMod;
use crate::abgroup::signed_vec;
use crate::error::{Error, Result};

/// Short `beta` in `x` with `(beta) = x * j` and `j` coprime to `avoid`.
/// Returns `(beta, j)`.
pub fn reduce_ideal(field: &NumberField, x: &Ideal, avoid: &[Ideal]) -> (Elem, Ideal) {
    let mut lat = ScaledLattice::new(field, x.basis(), vec![1.0; field.degree()]);
    lat.lll();
    let xp = x.conj_product(field);
    let nx = x.norm();
    let try_one = |b: &Elem| -> Option<Ideal> {
        if b.iter().all(Zero::is_zero) {
            return None;
        }
        let j = Ideal::principal(field, b).mul(field, &xp).div_int(&nx)?;
        avoid.iter().all(|q| j.is_coprime(field, q)).then_some(j)
    };
    for b in &lat.basis {
        if let Some(j) = try_one(b) {
            return (b.clone(), j);
        }
    }
    let first = lat.image(&lat.basis[0]).iter().map(|v| v * v).sum::<f64>();
    let mut bound = first.max(1e-300) * 2.0;
    loop {
        for b in lat.enumerate(bound, 1 << 16) {
            if let Some(j) = try_one(&b) {
                return (b, j);
            }
        }
        bound *= 4.0;
    }
}

/// A unit multiple `u * alpha` with `u * alpha ≡ 1` modulo every prime of
/// `um`, or `None` when the residue of `alpha` is outside the unit image.
pub fn unit_adjust(field: &NumberField, units: &UnitGroup, um: &UnitsMod, alpha: &Elem) -> Result<Option<Elem>> {
    let target = um.dlog(alpha)?;
    if um.primes.is_empty() {
        return Ok(Some(alpha.clone()));
    }
    let g = um.group();
    let gens = units.generators();
    let images: Vec<Vec<u64>> = gens
        .iter()
        .map(|u| um.dlog(u).map(|v| g.dlog(&signed_vec(&v)).unwrap()))
        .collect::<Result<_>>()?;
    let t = g.dlog(&signed_vec(&target))?;
    let neg = g.neg(&t);
    match g.subgroup_dlog(&images, &neg) {
        Ok(c) => {
            let mut x = alpha.clone();
            for ((u, k), img) in gens.iter().zip(&c).zip(&images) {
                let o = g.element_order(img) as i64;
                let mut k = k.rem_euclid(o);
                if 2 * k > o {
                    k -= o;
                }
                if k != 0 {
                    x = field.mul(&x, &unit_pow(field, u, k));
                }
            }
            debug_assert!(um.is_one(&x));
            Ok(Some(x))
        }
        Err(Error::NotInSubgroup) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Dlog vector of a rational integer, as signed entries.
pub fn int_dlog(field: &NumberField, um: &UnitsMod, k: &BigInt) -> Result<Vec<u64>> {
    um.dlog(&field.from_int(k))
}

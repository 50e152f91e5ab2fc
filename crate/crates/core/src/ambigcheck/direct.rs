use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::biquad::BiquadField;
use crate::error::{Error, Result};
use crate::nf::hnf::{hnf_lower, triangular_det};
use crate::nf::ray::unit_adjust;
use crate::nf::{Ideal, UnitsMod};

/// Whether `i` has a generator `≡ 1 mod^× m` in `L`.
pub fn ray_principal(l: &BiquadField, um: &UnitsMod, i: &Ideal, budget: u64) -> Result<bool> {
    match l.is_principal(i, budget)? {
        None => Ok(false),
        Some(g) => Ok(unit_adjust(l.field(), l.units().group(), um, &g)?.is_some()),
    }
}

/// Order of the subgroup of `Cl^m_L` generated by `gens`, where the class
/// of `gens[j]` has order dividing `bounds[j]`.
pub fn subgroup_order_by_relations(l: &BiquadField, um: &UnitsMod, gens: &[Ideal], bounds: &[u64], budget: u64) -> Result<u64> {
    let s = gens.len();
    if s == 0 {
        return Ok(1);
    }
    let f = l.field();
    let powers: Vec<Vec<Ideal>> = gens
        .iter()
        .zip(bounds)
        .map(|(g, &b)| {
            let mut v = vec![Ideal::unit(f)];
            for _ in 1..b {
                let next = v.last().unwrap().mul(f, g);
                v.push(next);
            }
            v
        })
        .collect();
    let mut rows: Vec<Vec<BigInt>> = (0..s)
        .map(|j| (0..s).map(|i| BigInt::from(if i == j { bounds[j] } else { 0 })).collect())
        .collect();
    let mut e = vec![0u64; s];
    loop {
        let mut j = 0;
        loop {
            if j == s {
                let h = hnf_lower(&rows, s, None).ok_or_else(|| Error::Inconsistent("relation lattice".into()))?;
                return triangular_det(&h).abs().to_u64().ok_or_else(|| Error::OutOfRange("subgroup order".into()));
            }
            e[j] += 1;
            if e[j] < bounds[j] {
                break;
            }
            e[j] = 0;
            j += 1;
        }
        let mut i = Ideal::unit(f);
        for (k, &x) in e.iter().enumerate() {
            if x > 0 {
                i = i.mul(f, &powers[k][x as usize]);
            }
        }
        if ray_principal(l, um, &i, budget)? {
            rows.push(e.iter().map(|&x| BigInt::from(x)).collect());
        }
    }
}

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::abgroup::{left_kernel, IntMatrix};
use crate::error::{Error, Result};
use crate::nf::hnf::{hnf_lower, triangular_det};
use crate::nf::{unit_pow, Elem, NumberField, UnitGroup, UnitsMod};
use crate::quadfield::QuadraticField;

/// Exponent vectors (on `units.generators()`) of a basis of the units `≡ 1 mod^× m`.
pub fn congruence_kernel(units: &UnitGroup, um: &UnitsMod) -> Result<Vec<Vec<BigInt>>> {
    let gens = units.generators();
    let r = gens.len();
    let t = um.primes.len();
    if t == 0 {
        return Ok((0..r).map(|i| (0..r).map(|j| BigInt::from(u8::from(i == j))).collect()).collect());
    }
    let mut m = IntMatrix::with_cols(t);
    for g in &gens {
        m.push_row(um.dlog(g)?.into_iter().map(BigInt::from).collect());
    }
    for (j, o) in um.orders().iter().enumerate() {
        let mut row = vec![BigInt::zero(); t];
        row[j] = BigInt::from(*o);
        m.push_row(row);
    }
    Ok(left_kernel(&m).into_iter().map(|v| v[..r].to_vec()).collect())
}

/// Coordinates of a unit of `K` as `(sign bit, exponent of the fundamental unit)`.
pub fn unit_coords(k: Option<&QuadraticField>, x: &Elem, field: &NumberField) -> Result<Vec<BigInt>> {
    match k {
        None => {
            let v = field.as_int(x).ok_or_else(|| Error::Inconsistent("norm to Q is not rational".into()))?;
            if !v.abs().is_one() {
                return Err(Error::Inconsistent("norm of a unit is not ±1".into()));
            }
            Ok(vec![BigInt::from(u8::from(v.is_negative()))])
        }
        Some(k) => {
            let f = k.field();
            let u = k.unit_to_elem(&k.fundamental_unit()?);
            let lu = f.abs_logs(&u)[0];
            let e = (f.abs_logs(x)[0] / lu).round() as i64;
            let y = unit_pow(f, &u, e);
            let sign = if &y == x {
                0u8
            } else if f.neg(&y) == *x {
                1
            } else {
                return Err(Error::Inconsistent("unit is not ± a power of the fundamental unit".into()));
            };
            Ok(vec![BigInt::from(sign), BigInt::from(e)])
        }
    }
}

/// Index of the lattice spanned by `rows` together with `(2, 0, ...)`.
pub fn lattice_det(rows: &[Vec<BigInt>], dim: usize) -> Result<BigInt> {
    let mut all = rows.to_vec();
    let mut two = vec![BigInt::zero(); dim];
    two[0] = BigInt::from(2);
    all.push(two);
    let h = hnf_lower(&all, dim, None).ok_or_else(|| Error::Inconsistent("unit lattice is not of full rank".into()))?;
    Ok(triangular_det(&h).abs())
}

/// Map exponent vectors through `x -> coords(N(x))`.
pub fn norm_image(
    gens_norm_coords: &[Vec<BigInt>],
    kernel: &[Vec<BigInt>],
    dim: usize,
) -> Vec<Vec<BigInt>> {
    kernel
        .iter()
        .map(|c| {
            let mut out = vec![BigInt::zero(); dim];
            for (cj, g) in c.iter().zip(gens_norm_coords) {
                for (o, x) in out.iter_mut().zip(g) {
                    *o += cj * x;
                }
            }
            out
        })
        .collect()
}

use num_bigint::BigInt;

use crate::abgroup::{FiniteAbelianGroup, IntMatrix};
use crate::error::{invalid, Error, Result};
use crate::exactmath::{factor_u64, gcd_u64, mul_mod, pow_mod, primitive_root};

/// Cyclic factors of `(Z/m)^*`: `(prime power, generator, order)`.
fn components(m: u64) -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for pp in factor_u64(m) {
        let q = pp.p.pow(pp.k);
        if pp.p == 2 {
            match pp.k {
                1 => {}
                2 => out.push((4, 3, 2)),
                k => {
                    out.push((q, q - 1, 2));
                    out.push((q, 5, 1 << (k - 2)));
                }
            }
        } else {
            let mut g = primitive_root(pp.p);
            if pp.k > 1 && pow_mod(g, pp.p - 1, pp.p * pp.p) == 1 {
                g += pp.p;
            }
            out.push((q, g, q / pp.p * (pp.p - 1)));
        }
    }
    out
}

fn brute_log(g: u64, x: u64, q: u64, order: u64) -> Option<u64> {
    let mut y = 1 % q;
    for e in 0..order {
        if y == x % q {
            return Some(e);
        }
        y = mul_mod(y, g, q);
    }
    None
}

/// Exponents of `a` on [`components`].
fn ambient(m: u64, a: u64) -> Result<Vec<BigInt>> {
    if gcd_u64(a, m) != 1 {
        return Err(Error::NotCoprime);
    }
    let comps = components(m);
    let mut v = Vec::new();
    let mut i = 0;
    while i < comps.len() {
        let (q, g, o) = comps[i];
        if q >= 8 && q % 2 == 0 {
            // x = (-1)^s 5^t mod 2^k
            let x = a % q;
            let s = u64::from(x % 4 == 3);
            let y = if s == 1 { q - x } else { x };
            v.push(BigInt::from(s));
            v.push(BigInt::from(brute_log(comps[i + 1].1, y, q, comps[i + 1].2).ok_or(Error::NotCoprime)?));
            i += 2;
        } else {
            v.push(BigInt::from(brute_log(g, a, q, o).ok_or(Error::NotCoprime)?));
            i += 1;
        }
    }
    Ok(v)
}

/// `Cl^m_Q = (Z/m)^* / {±1}`.
pub fn rayclass_q(m: u64) -> Result<FiniteAbelianGroup> {
    if m == 0 {
        return invalid("modulus must be positive");
    }
    let comps = components(m);
    if comps.is_empty() {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let t = comps.len();
    let mut rel = IntMatrix::with_cols(t);
    for (i, c) in comps.iter().enumerate() {
        let mut row = vec![BigInt::from(0); t];
        row[i] = BigInt::from(c.2);
        rel.push_row(row);
    }
    rel.push_row(ambient(m, m - 1)?);
    let labels = comps.iter().map(|c| format!("{} mod {}", c.1, c.0)).collect();
    FiniteAbelianGroup::from_relations(labels, &rel)
}

/// Class of `a` (coprime to `m`) in [`rayclass_q`].
pub fn rayclass_q_dlog(g: &FiniteAbelianGroup, m: u64, a: u64) -> Result<Vec<u64>> {
    if components(m).is_empty() {
        return Ok(vec![]);
    }
    g.dlog(&ambient(m, a)?)
}

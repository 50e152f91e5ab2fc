//! Lower-triangular Hermite normal form of integer row modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Hermite basis of the row module spanned by `gens` in `Z^n`.
///
/// Row `i` of the result vanishes after column `i`, has a positive
/// diagonal entry, and entries left of the diagonal in later rows are
/// reduced into `[0, diag)`. When `modulus` is given it must lie in the
/// module along every axis (`D * e_i` in the span); entries are then kept
/// reduced modulo `D`. Returns `None` when the module has rank below `n`.
pub fn hnf_lower(gens: &[Vec<BigInt>], n: usize, modulus: Option<&BigInt>) -> Option<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<BigInt>> = gens.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if let Some(d) = modulus {
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x = x.mod_floor(d);
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for c in (0..n).rev() {
        // D e_j for j < c stay implicit; D e_c joins the elimination
        if let Some(d) = modulus {
            let mut e = vec![BigInt::zero(); n];
            e[c] = d.clone();
            rows.push(e);
        }
        let pivot = loop {
            let best = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero())
                .min_by(|a, b| a.1[c].abs().cmp(&b.1[c].abs()))
                .map(|(i, _)| i)?;
            let p = rows.swap_remove(best);
            let mut clean = true;
            for r in rows.iter_mut() {
                if r[c].is_zero() {
                    continue;
                }
                let q = r[c].div_floor(&p[c]);
                for j in 0..=c {
                    let t = &q * &p[j];
                    r[j] -= t;
                }
                if let Some(d) = modulus {
                    for x in r[..c].iter_mut() {
                        *x = x.mod_floor(d);
                    }
                }
                clean &= r[c].is_zero();
            }
            if clean {
                break p;
            }
            rows.push(p);
        };
        let mut p = pivot;
        if p[c].is_negative() {
            for x in p.iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(d) = modulus {
            for x in p[..c].iter_mut() {
                *x = x.mod_floor(d);
            }
            for r in rows.iter_mut() {
                for x in r[..c].iter_mut() {
                    *x = x.mod_floor(d);
                }
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        out[c] = p;
    }
    for k in 1..n {
        for c in (0..k).rev() {
            let q = out[k][c].div_floor(&out[c][c]);
            if !q.is_zero() {
                let pc = out[c].clone();
                for (x, y) in out[k].iter_mut().zip(pc.iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
    Some(out)
}

/// Determinant of a lower-triangular basis.
pub fn triangular_det(b: &[Vec<BigInt>]) -> BigInt {
    b.iter().enumerate().fold(BigInt::one(), |acc, (i, r)| acc * &r[i])
}

/// Solve `x * B = v` for a lower-triangular `B`; `None` if not integral.
pub fn solve_lower(b: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = b.len();
    let mut rem = v.to_vec();
    let mut x = vec![BigInt::zero(); n];
    for c in (0..n).rev() {
        let (q, r) = rem[c].div_rem(&b[c][c]);
        if !r.is_zero() {
            return None;
        }
        for j in 0..=c {
            let t = &q * &b[c][j];
            rem[j] -= t;
        }
        x[c] = q;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn small_module() {
        let h = hnf_lower(&[v(&[2, 4]), v(&[6, 8])], 2, None).unwrap();
        assert_eq!(h, vec![v(&[2, 0]), v(&[0, 4])]);
        assert_eq!(triangular_det(&h), BigInt::from(8));
        let h2 = hnf_lower(&[v(&[2, 4]), v(&[6, 8])], 2, Some(&BigInt::from(8))).unwrap();
        assert_eq!(h, h2);
        assert!(hnf_lower(&[v(&[1, 1]), v(&[2, 2])], 2, None).is_none());
        assert_eq!(solve_lower(&h, &v(&[4, 12])), Some(v(&[2, 3])));
        assert_eq!(solve_lower(&h, &v(&[1, 0])), None);
    }

    #[test]
    fn modular_agrees_with_plain() {
        let mut s = 7u64;
        for _ in 0..300 {
            let mut gens = Vec::new();
            for _ in 0..4 {
                let row: Vec<BigInt> = (0..3)
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        BigInt::from((s >> 40) as i64 % 41 - 20)
                    })
                    .collect();
                gens.push(row);
            }
            let Some(h) = hnf_lower(&gens, 3, None) else { continue };
            let d = triangular_det(&h);
            assert_eq!(hnf_lower(&gens, 3, Some(&d)).unwrap(), h);
            assert_eq!(hnf_lower(&gens, 3, Some(&(&d * 3))).unwrap(), h);
        }
    }
}

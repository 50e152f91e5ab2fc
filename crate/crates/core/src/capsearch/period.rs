use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactmath::{is_prime, mul_mod, primitive_root};

/// The degree-`m` subfield of `Q(zeta_p)`, ramified only at `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicFieldDesc {
    pub p: u64,
    pub degree: u64,
    /// Minimal polynomial of the Gaussian period, lowest degree first.
    #[serde(with = "crate::bigstr::vec")]
    pub poly: Vec<BigInt>,
    /// `p^(degree - 1)`.
    #[serde(with = "crate::bigstr")]
    pub discriminant: BigInt,
}

impl CyclicFieldDesc {
    pub fn new(p: u64, degree: u64) -> Result<Self> {
        let poly = gaussian_period_min_poly(p, degree)?;
        let discriminant = num_traits::pow(BigInt::from(p), (degree - 1) as usize);
        Ok(CyclicFieldDesc { p, degree, poly, discriminant })
    }
}

/// Characteristic polynomial by Faddeev-LeVerrier, lowest degree first.
pub fn char_poly(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    let mut mk: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for t in 0..n {
                    s += &m[i][t] * &mk[t][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        mk = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &m[i][t] * &mk[t][i];
            }
        }
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

/// Minimal polynomial of `sum_j zeta_p^(g^(m j))`, lowest degree first.
pub fn gaussian_period_min_poly(p: u64, m: u64) -> Result<Vec<BigInt>> {
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    if m == 0 || !(p - 1).is_multiple_of(m) {
        return invalid(format!("{m} does not divide {p} - 1"));
    }
    let f = (p - 1) / m;
    let g = primitive_root(p);
    let n = m as usize;
    // coset index of each nonzero residue: x = g^i lies in coset i mod m
    let mut coset = vec![0u32; p as usize];
    let mut x = 1u64;
    for i in 0..p - 1 {
        coset[x as usize] = (i % m) as u32;
        x = mul_mod(x, g, p);
    }
    // eta_0 eta_k = sum_{h in H} sigma_h(zeta eta_k); zeta^(1 + y) with y in coset k
    let mut mat = vec![vec![BigInt::zero(); n]; n];
    let mut counts = vec![vec![0i64; n]; n];
    let mut constant = vec![0i64; n];
    for y in 1..p {
        let k = coset[y as usize] as usize;
        let s = (y + 1) % p;
        if s == 0 {
            constant[k] += f as i64;
        } else {
            counts[k][coset[s as usize] as usize] += 1;
        }
    }
    for k in 0..n {
        for c in 0..n {
            // 1 = -sum_c eta_c
            mat[k][c] = BigInt::from(counts[k][c] - constant[k]);
        }
    }
    Ok(char_poly(&mat))
}
